import pytest
from hypothesis import given, settings

from steindual import fixture
from steindual.propositions import PROPERTIES, property_named, run_properties
from steindual.relations import restriction
from steindual.structured import StructuredData

from conftest import cached_fixture, discrete_bundles, plain_bundles, ringoid_bundles


def _failures(results):
    return [(r.name, r.witness) for r in results if r.applicable and not r.passed]


def test_registry_has_unique_names_and_kinds():
    names = [p.name for p in PROPERTIES]
    assert len(names) == len(set(names)) == 62
    assert {p.kind for p in PROPERTIES} == {"structure", "ultrafilter-bundle", "bundle"}


def test_fixture_satisfies_every_applicable_property(any_fixture):
    name, obj = any_fixture
    results = run_properties(obj)
    assert not _failures(results)
    assert sum(r.applicable for r in results) >= 25


def test_commutative_spectrum_applies_only_to_commutative_identity_cases():
    name = "with commutative multiplication and Phi the identity, every ultrafilter is a unit"
    applied = {key: run_properties(cached_fixture(key), [name])[0].applicable
               for key in ("FIX-POW2", "PIERCE-F2xF2", "FIX-I2", "FIX-M2F2")}
    assert applied == {"FIX-POW2": True, "PIERCE-F2xF2": True,
                       "FIX-I2": False, "FIX-M2F2": False}


@settings(max_examples=10)
@given(ringoid_bundles())
def test_random_ringoid_bundles(bundle):
    results = run_properties(bundle)
    assert not _failures(results)
    assert sum(r.applicable for r in results) >= 25


@settings(max_examples=10)
@given(plain_bundles())
def test_random_plain_bundles(bundle):
    results = run_properties(bundle)
    assert not _failures(results)
    assert sum(r.applicable for r in results) >= 25


@settings(max_examples=3)
@given(discrete_bundles())
def test_random_discrete_ringoid_bundles(bundle):
    assert not _failures(run_properties(bundle))


# A damaged expectation on the symmetric inverse monoid: Phi sends the
# first diagonal idempotent to 0.  The finders must notice, and what they
# report must be a genuine counterexample.

@pytest.fixture(scope="module")
def damaged():
    ctx = fixture("FIX-I2")
    phi = list(ctx.phi)
    phi[1] = 0
    return StructuredData(ctx.carrier, ctx.S, ctx.Z, phi, name="damaged")


def test_damaged_expectation_breaks_nondegeneracy(damaged):
    witness = property_named("every nonzero a has some s in S with Phi(as) nonzero").find(damaged)
    assert witness is not None
    (a,) = witness
    assert a != damaged.zero
    assert all(damaged.phi[damaged.mul(a, s)] == damaged.zero for s in damaged.S)


def test_damaged_expectation_breaks_auxiliarity(damaged):
    witness = property_named("a <= b and b <_t c give a <_t c").find(damaged)
    a, b, t, c = witness
    rel = damaged.relations
    assert restriction(damaged, a, b)
    assert rel.dominates_witnessed(b, t, c)
    assert not rel.dominates_witnessed(a, t, c)


def test_damaged_expectation_breaks_join_preservation(damaged):
    witness = property_named("Phi(a v b) = Phi(a) v Phi(b)").find(damaged)
    assert witness is not None


def test_identity_expectation_breaks_multiplicativity():
    ctx = cached_fixture("FIX-I2")
    plain = StructuredData(ctx.carrier, ctx.S, ctx.Z, range(ctx.n), name="identity")
    prop = property_named("a <_b' b and c <_d' d give ac <_(d'b') bd")
    a, b1, b, c, d1, d = prop.find(plain)
    rel = plain.relations
    assert rel.dominates_witnessed(a, b1, b) and rel.dominates_witnessed(c, d1, d)
    assert not rel.dominates_witnessed(plain.mul(a, c), plain.mul(d1, b1), plain.mul(b, d))
