import pytest
from hypothesis import given
from hypothesis import strategies as st

from steindual import oracles
from steindual.errors import NotInZ, NotOrthogonal, NotRestriction
from steindual.fixtures import powerset_algebra, symmetric_inverse_monoid

from conftest import cached_fixture


def i2():
    ctx = cached_fixture("FIX-I2")
    names = {"0": "[]", "p": "[1>1]", "s": "[1>2]", "s-": "[2>1]", "q": "[2>2]",
             "1": "[1>1,2>2]", "t": "[1>2,2>1]"}
    return ctx, {k: ctx.idx(v) for k, v in names.items()}


def test_relation_tables_match_oracle(structure_fixture):
    _, ctx = structure_fixture
    rel = ctx.relations
    leq, dom, orth = oracles.relation_matrices(ctx)
    n = range(ctx.n)
    assert [[bool(rel.restriction(a, b)) for b in n] for a in n] == leq
    assert [[bool(rel.below(a, b)) for b in n] for a in n] == dom
    assert [[bool(rel.orthogonal(a, b)) for b in n] for a in n] == orth


def test_domination_witness_is_least(structure_fixture):
    _, ctx = structure_fixture
    rel = ctx.relations
    for a in ctx.S:
        for b in ctx.S:
            w = rel.dominates(a, b)
            valid = [s for s in ctx.S if oracles.dominates_with(ctx, a, s, b)]
            assert w == (valid[0] if valid else None)


def test_i2_supports_and_joins():
    ctx, e = i2()
    rel = ctx.relations
    assert rel.supports(e["s"]) == (e["p"], e["q"])
    assert rel.supports(e["0"]) == (e["0"], e["0"])
    assert rel.orthosupremum(e["p"], e["q"]) == e["1"]
    assert rel.orthosupremum(e["s"], e["s-"]) == e["t"]
    assert rel.z_inverses(e["s"]) == (e["s-"],)
    assert rel.dagger == tuple(range(ctx.n))


def test_orthosupremum_requires_orthogonality():
    ctx, e = i2()
    with pytest.raises(NotOrthogonal):
        ctx.relations.orthosupremum(e["p"], e["1"])


def test_powerset_complements_and_supports():
    ctx = powerset_algebra(2)
    rel = ctx.relations
    a, b, u = ctx.idx("{1}"), ctx.idx("{2}"), ctx.idx("{1,2}")
    assert rel.complement(a, u) == b
    assert rel.supports(u) == (u, u)
    assert rel.orthosupremum(a, b) == u
    for z in ctx.Z:
        assert rel.complement(z, z) == ctx.zero


def test_complement_preconditions():
    ctx = powerset_algebra(2)
    rel = ctx.relations
    a, b = ctx.idx("{1}"), ctx.idx("{2}")
    with pytest.raises(NotRestriction):
        rel.complement(a, b)
    i2ctx, e = i2()
    with pytest.raises(NotInZ):
        i2ctx.relations.complement(e["s"], e["1"])


def test_matrix_complement():
    ctx = cached_fixture("FIX-M2F2")
    assert ctx.relations.complement(ctx.idx("10/00"), ctx.idx("10/01")) == ctx.idx("00/01")


def test_dual_of_zero_is_everything():
    ctx, e = i2()
    assert ctx.relations.dual_set([e["0"]]) == ctx.S


def test_normalizers_and_commutant():
    ctx, e = i2()
    rel = ctx.relations
    assert e["t"] in rel.normalizers(ctx.Z)
    assert e["t"] not in rel.commutant(ctx.Z)
    assert set(ctx.Z) <= set(rel.commutant(ctx.Z))


@given(st.integers(1, 3), st.data())
def test_restriction_witness_matches_table(n, data):
    ctx = symmetric_inverse_monoid(n)
    rel = ctx.relations
    a = data.draw(st.sampled_from(ctx.S))
    b = data.draw(st.sampled_from(ctx.S))
    witness = rel.restriction_witness(a, b)
    assert (witness is not None) == bool(rel.restriction(a, b))
    if witness:
        y, z = witness
        rows = ctx.rows
        assert rows[y][b] == a == rows[y][a] == rows[a][z] == rows[b][z]
