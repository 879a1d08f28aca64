import pytest

from steindual import (
    MORPHISMS, check_naturality, compose_pierce, epsilon, eta, functor_S, functor_U,
    identity_morphism, identity_pierce, morphism_fixture, validate_pierce_morphism,
    validate_steinberg_morphism,
)
from steindual.core import pair_groupoid
from steindual.duality import (
    EtaleMorphism, PierceMorphism, SteinbergMorphism, compose_etale, compose_morphisms,
    epsilon_low_matches_agreement, groupoid_isomorphism, identity_etale, induced_groupoid_map,
    validate_etale_morphism,
)
from steindual.errors import DomainMismatch
from steindual.fixtures import (
    inverse_monoid_to_matrices, powerset_into_inverse_monoid, symmetric_inverse_monoid,
)
from steindual.sections import sections_of

from conftest import cached_fixture


def _chain():
    """POW2 -> I2 -> M2F2-S sharing the middle object."""
    into = powerset_into_inverse_monoid()
    iso = inverse_monoid_to_matrices()
    first = SteinbergMorphism(into.source, iso.source, into.values)
    return first, iso


@pytest.mark.parametrize("name", list(MORPHISMS))
def test_morphism_fixtures_validate(name):
    m = morphism_fixture(name)
    assert validate_steinberg_morphism(m).passed


@pytest.mark.parametrize("name", list(MORPHISMS))
def test_functors_produce_valid_morphisms(name):
    m = morphism_fixture(name)
    p = functor_U(m)
    assert validate_pierce_morphism(p).passed
    back = functor_S(p)
    assert validate_steinberg_morphism(back).passed


@pytest.mark.parametrize("name", list(MORPHISMS))
def test_eta_natural_on_fixture_morphisms(name):
    report = check_naturality(morphism_fixture(name))
    assert report.passed, report.checks


def test_induced_groupoid_maps():
    iso = inverse_monoid_to_matrices()
    assert induced_groupoid_map(iso).values == {0: 3, 1: 1, 2: 2, 3: 0}
    into = powerset_into_inverse_monoid()
    assert induced_groupoid_map(into).values == {0: 0, 3: 1}
    zero = morphism_fixture("MOR-ZERO-I2")
    assert induced_groupoid_map(zero).values == {}


def test_non_multiplicative_map_is_rejected():
    ctx = symmetric_inverse_monoid(2)
    values = list(range(ctx.n))
    p, q = ctx.idx("[1>1]"), ctx.idx("[2>2]")
    values[p], values[q] = q, p
    report = validate_steinberg_morphism(SteinbergMorphism(ctx, ctx, tuple(values)))
    assert not report.passed
    law = report.failures()[0]
    assert law.law == "multiplicative"


def test_composition_needs_shared_object():
    into = powerset_into_inverse_monoid()
    iso = inverse_monoid_to_matrices()
    with pytest.raises(DomainMismatch):
        compose_morphisms(iso, into)


def test_functor_u_respects_composition():
    first, second = _chain()
    composite = compose_morphisms(second, first)
    assert validate_steinberg_morphism(composite).passed
    assert functor_U(composite) == compose_pierce(functor_U(second), functor_U(first))


def test_functor_s_respects_composition():
    first, second = _chain()
    p1, p2 = functor_U(first), functor_U(second)
    assert functor_S(compose_pierce(p2, p1)) == compose_morphisms(functor_S(p2), functor_S(p1))


def test_functors_preserve_identities():
    ctx = cached_fixture("FIX-I2")
    p = functor_U(identity_morphism(ctx))
    from steindual import ultrafilter_bundle

    assert p == identity_pierce(ultrafilter_bundle(ctx).bundle)
    assert functor_S(p) == identity_morphism(sections_of(p.source))


def test_eta_on_i2_and_m2f2():
    m = eta(cached_fixture("FIX-I2"))
    assert tuple(m.values) == (0, 5, 3, 2, 1, 6, 4)
    ring = cached_fixture("FIX-M2F2")
    m = eta(ring)
    target = m.target
    assert sorted(m.values) == list(range(16))
    for a in range(16):
        for b in range(16):
            assert m.values[ring.mul(a, b)] == target.mul(m.values[a], m.values[b])
            assert m.values[ring.carrier.plus(a, b)] == target.carrier.plus(m.values[a],
                                                                           m.values[b])


def test_epsilon_on_trivbun():
    bundle = cached_fixture("FIX-TRIVBUN")
    p = epsilon(bundle)
    assert validate_pierce_morphism(p).passed
    assert p.phi.values == {0: 3, 1: 2, 2: 1, 3: 0}
    assert len(p.beta) == 8
    assert epsilon_low_matches_agreement(bundle) is None


def _swap_automorphism(bundle):
    """Exchange the two objects of the pair groupoid, fibers carried along."""
    G = bundle.base
    swap = {g: G.index[f"({b},{a})"] for g, (a, b) in
            ((g, G.arrows[g].strip("()").split(",")) for g in range(G.size))}
    swap = {g: G.index["(" + ",".join(
        str(3 - int(x)) for x in G.arrows[g].strip("()").split(",")) + ")"]
        for g in range(G.size)}
    phi = EtaleMorphism(G, G, swap)
    beta = {}
    for g in range(G.size):
        for c in bundle.fibers[swap[g]]:
            value = bundle.total.arrows[c].split("@")[0]
            beta[(g, c)] = bundle.total.index[f"{value}@{G.arrows[g]}"]
    return PierceMorphism(bundle, bundle, phi, beta)


def test_epsilon_natural_on_automorphisms():
    bundle = cached_fixture("FIX-TRIVBUN")
    swap = _swap_automorphism(bundle)
    assert validate_pierce_morphism(swap).passed
    assert compose_pierce(swap, swap) == identity_pierce(bundle)
    for p in (identity_pierce(bundle), swap):
        report = check_naturality(p)
        assert report.passed, report.checks


def test_etale_composition_and_validation():
    G = pair_groupoid(2)
    ident = identity_etale(G)
    assert validate_etale_morphism(ident).passed
    assert compose_etale(ident, ident) == ident
    bad = EtaleMorphism(G, G, {g: 0 for g in range(G.size)})
    assert not validate_etale_morphism(bad).passed


def test_groupoid_isomorphism_is_functorial():
    from steindual.core import is_functor

    G = pair_groupoid(2)
    iso = groupoid_isomorphism(G, G)
    assert iso is not None and is_functor(G, G, iso) is None
