import pytest

from steindual.core import (
    UNDEFINED, FiniteBundle, FiniteCategory, FiniteGroupoid, FiniteRing, FiniteSemigroup, core,
    cyclic_groupoid, discrete_groupoid, disjoint_union, groupoid_product, pair_groupoid,
    trivial_bundle, validate_bundle,
)
from steindual.errors import (
    BadZero, CoreNotSurjective, NonAssociative, NotAbelianGroup, NotCategory, NotGroupoid,
)
from steindual.fixtures import prime_field, product_ring


def test_semigroup_finds_its_zero():
    s = FiniteSemigroup(["0", "e"], [[0, 0], [0, 1]])
    assert s.zero == 0
    assert s.mul(1, 1) == 1


def test_nonassociative_table_reports_triple():
    # x*y = y for x != 0 ... a hand-made non-associative table
    table = [[0, 0], [1, 0]]
    with pytest.raises(NonAssociative) as info:
        FiniteSemigroup(["a", "b"], table)
    a, b, c = info.value.witness
    assert table[table[a][b]][c] != table[a][table[b][c]]


def test_declared_zero_must_absorb():
    with pytest.raises(BadZero):
        FiniteSemigroup(["0", "e"], [[0, 0], [0, 1]], zero=1)


def test_ring_rejects_bad_negation():
    f2 = prime_field(2)
    with pytest.raises(NotAbelianGroup):
        FiniteRing(f2.elements, f2.add_rows, [0, 0], 0, f2.rows)


def test_product_ring_of_fields():
    r = product_ring(prime_field(2), prime_field(3))
    assert r.size == 6
    assert r.plus(r.index["(1,2)"], r.index["(1,1)"]) == r.index["(0,0)"]


def test_pair_groupoid_shape():
    G = pair_groupoid(2)
    assert G.size == 4 and len(G.units) == 2
    for g in range(G.size):
        assert G.comp(G.invs[g], g) == G.srcs[g]


def test_category_rejects_wrong_composite_ends():
    G = pair_groupoid(2)
    compose = [list(row) for row in G.comp_rows]
    compose[0][0] = 1
    with pytest.raises(NotCategory):
        FiniteCategory(G.arrows, G.srcs, G.rngs, compose)


def test_groupoid_rejects_bad_inverse():
    G = pair_groupoid(2)
    with pytest.raises(NotGroupoid):
        FiniteGroupoid(G.arrows, G.srcs, G.rngs, G.comp_rows, list(range(4)))


def test_core_of_groupoid_is_everything():
    G = cyclic_groupoid(3)
    c = core(G)
    assert len(c) == 3
    assert all(c.inverse[c.inverse[a]] == a for a in c.arrows)


def test_groupoid_builders():
    assert groupoid_product(pair_groupoid(2), cyclic_groupoid(2)).size == 8
    U = disjoint_union([pair_groupoid(2), discrete_groupoid(1)])
    assert U.size == 5 and len(U.units) == 3
    assert U.comp_rows[0][4] == UNDEFINED


def test_trivial_bundle_fibers_and_units():
    b = trivial_bundle(pair_groupoid(2), prime_field(2))
    assert b.total.size == 8
    assert all(len(f) == 2 for f in b.fibers)
    assert sorted(b.rhos[u] for u in b.total.units) == list(b.base.units)


def _zero_only_bundle():
    """Units over the units of pair(2), and only zero arrows elsewhere."""
    G = pair_groupoid(2)
    units = {0: 0, 3: 1}  # base unit arrow -> total unit index
    arrows = ["1@(1,1)", "1@(2,2)"] + [f"0@{G.arrows[g]}" for g in range(4)]
    zero_of = {g: 2 + g for g in range(4)}
    rho = [0, 3, 0, 1, 2, 3]
    src = [units[G.srcs[rho[k]]] for k in range(6)]
    rng = [units[G.rngs[rho[k]]] for k in range(6)]
    compose = [[UNDEFINED] * 6 for _ in range(6)]
    for a in range(6):
        for b in range(6):
            if src[a] != rng[b]:
                continue
            if a < 2:
                compose[a][b] = b
            elif b < 2:
                compose[a][b] = a
            else:
                compose[a][b] = zero_of[G.comp_rows[rho[a]][rho[b]]]
    return FiniteCategory(arrows, src, rng, compose), G, rho, [zero_of[g] for g in range(4)]


def test_bundle_without_covering_core_is_rejected():
    total, G, rho, zero = _zero_only_bundle()
    with pytest.raises(CoreNotSurjective) as info:
        FiniteBundle(total, G, rho, zero)
    assert G.srcs[info.value.witness[0]] != G.rngs[info.value.witness[0]]


def test_revalidation_is_idempotent():
    b = trivial_bundle(cyclic_groupoid(2), prime_field(3))
    assert validate_bundle(b) is b
