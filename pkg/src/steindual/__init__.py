"""Finite-structure engine for the duality between Steinberg semigroups/rings
and ample (ringoid) bundles over finite groupoids."""

__version__ = "0.1.0"

from .axioms import PROFILES, check_expectation_laws, check_profile, require_profile
from .bundles import build_bundle, equivalent, hat, ultrafilter_bundle
from .core import (
    FiniteBundle, FiniteCategory, FiniteGroupoid, FiniteRing, FiniteRingoidBundle,
    FiniteSemigroup, pair_groupoid, discrete_groupoid, trivial_bundle,
)
from .duality import (
    EtaleMorphism, PierceMorphism, SteinbergMorphism, check_naturality, compose_pierce,
    epsilon, eta, functor_S, functor_U, identity_morphism, identity_pierce,
    induced_bundle_morphism, induced_groupoid_map, pullback_bundle, pullback_sections,
    pushforward_sections, validate_etale_morphism, validate_pierce_morphism,
    validate_steinberg_morphism,
)
from .filters import enumerate_filters, enumerate_ultrafilters, ultrafilter_groupoid
from .fixtures import FIXTURES, MORPHISMS, fixture, morphism_fixture
from .kernels import BACKEND
from .propositions import PROPERTIES, run_properties
from .sections import Section, relation_characterizations, section_structure
from .structured import StructuredData

__all__ = [name for name in dir() if not name.startswith("_")]
