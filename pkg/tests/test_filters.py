import pytest

from steindual import oracles
from steindual.duality import groupoid_isomorphism
from steindual.core import discrete_groupoid, pair_groupoid
from steindual.filters import (
    coset_inverse, enumerate_filters, enumerate_ultrafilters, filter_groupoid, is_filter,
    primality_witness, ultrafilter_groupoid, ultrafilter_properties,
)

from conftest import cached_fixture


@pytest.mark.parametrize("name", ["FIX-I2", "FIX-POW2", "FIX-M2F2", "FIX-M2F2-S",
                                  "PIERCE-F2xF2"])
def test_principal_filters_equal_subset_oracle(name):
    ctx = cached_fixture(name)
    assert [F.members for F in enumerate_filters(ctx)] == oracles.subset_filters(ctx)


@pytest.mark.parametrize("name,count", [("FIX-POW2", 2), ("FIX-I2", 4), ("FIX-M2F2-S", 4),
                                        ("FIX-M2F2", 4), ("PIERCE-F2xF2", 2)])
def test_ultrafilter_counts(name, count):
    ctx = cached_fixture(name)
    assert len(enumerate_ultrafilters(ctx)) == count
    assert len(oracles.subset_ultrafilters(ctx)) == count


def test_i2_filters_and_ultrafilters():
    ctx = cached_fixture("FIX-I2")
    labels = [F.label(ctx) for F in enumerate_filters(ctx)]
    assert len(labels) == 7
    ultra = [F.label(ctx) for F in enumerate_ultrafilters(ctx)]
    assert ultra == ["{[1>1],[1>1,2>2]}", "{[1>2],[1>2,2>1]}", "{[2>1],[1>2,2>1]}",
                     "{[2>2],[1>1,2>2]}"]


def test_i2_coset_operations():
    ctx = cached_fixture("FIX-I2")
    G = ultrafilter_groupoid(ctx)
    st_ = G.index_of([ctx.idx("[1>2]"), ctx.idx("[1>2,2>1]")])
    st_inv = G.index_of([ctx.idx("[2>1]"), ctx.idx("[1>2,2>1]")])
    p1 = G.index_of([ctx.idx("[1>1]"), ctx.idx("[1>1,2>2]")])
    q1 = G.index_of([ctx.idx("[2>2]"), ctx.idx("[1>1,2>2]")])
    assert G.source(st_) == p1 and G.range(st_) == q1
    assert G.inverse(st_) == st_inv
    assert G.product(st_inv, st_) == p1
    assert G.product(p1, p1) == p1
    for i, U in enumerate(G.filters):
        assert coset_inverse(ctx, U.members) == G.filters[G.inverse(i)].members


def test_ultrafilter_groupoid_shapes():
    iso = groupoid_isomorphism(ultrafilter_groupoid(cached_fixture("FIX-I2")).groupoid,
                               pair_groupoid(2))
    assert iso is not None
    iso = groupoid_isomorphism(ultrafilter_groupoid(cached_fixture("FIX-POW2")).groupoid,
                               discrete_groupoid(2))
    assert iso is not None
    assert groupoid_isomorphism(pair_groupoid(2), discrete_groupoid(4)) is None


def test_non_maximal_filter_fails_primality():
    ctx = cached_fixture("FIX-I2")
    one = (ctx.idx("[1>1,2>2]"),)
    assert is_filter(ctx, one)
    p, q = ctx.idx("[1>1]"), ctx.idx("[2>2]")
    assert primality_witness(ctx, one) == (p, q)
    assert ctx.relations.supremum(p, q) == one[0]
    props = ultrafilter_properties(ctx, one)
    assert not props.prime and props.prime_witness == (p, q)


def test_ultrafilter_properties_hold():
    ctx = cached_fixture("FIX-I2")
    G = ultrafilter_groupoid(ctx)
    for i, U in enumerate(G.filters):
        props = ultrafilter_properties(ctx, U)
        assert props.prime and props.criterion_holds
        u = props.phi_witness
        assert ctx.phi[u] in (ctx.zero, u)
        if G.is_unit(i):
            assert ctx.phi[u] == u


def test_filter_groupoid_contains_improper_filter():
    ctx = cached_fixture("FIX-POW2")
    FG = filter_groupoid(ctx)
    assert FG.index_of(ctx.S) is not None
    assert len(FG) == len(enumerate_filters(ctx))


def test_non_filters_rejected():
    ctx = cached_fixture("FIX-I2")
    assert not is_filter(ctx, [])
    assert not is_filter(ctx, [ctx.idx("[1>1]")])  # not up-closed
    assert not is_filter(ctx, [ctx.idx("[1>1]"), ctx.idx("[2>2]"), ctx.idx("[1>1,2>2]")])
