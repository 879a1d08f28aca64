import pytest

from steindual import build_bundle, equivalent, hat, ultrafilter_bundle
from steindual.bundles import class_labels, equivalent_left, equivalent_right, representative
from steindual.core import FiniteRingoidBundle
from steindual.errors import ProfileFailure
from steindual.fixtures import symmetric_inverse_monoid
from steindual.structured import StructuredData

from conftest import cached_fixture


@pytest.mark.parametrize("name,total,base,ringoid", [
    ("FIX-I2", 8, 4, False), ("FIX-M2F2-S", 8, 4, False), ("FIX-POW2", 4, 2, False),
    ("FIX-M2F2", 8, 4, True), ("PIERCE-F2xF2", 4, 2, True),
])
def test_bundle_sizes(name, total, base, ringoid):
    b = ultrafilter_bundle(cached_fixture(name)).bundle
    assert (b.total.size, b.base.size) == (total, base)
    assert isinstance(b, FiniteRingoidBundle) == ringoid


def test_class_labels_match_pairwise_equivalence(structure_fixture):
    _, ctx = structure_fixture
    UB = ultrafilter_bundle(ctx)
    for i, U in enumerate(UB.ultrafilters):
        labels = class_labels(ctx, U)
        for a in range(ctx.n):
            for b in range(ctx.n):
                assert (labels[a] == labels[b]) == equivalent(ctx, a, b, U)
                assert equivalent(ctx, a, b, U) == equivalent_left(ctx, a, b, U) \
                    == equivalent_right(ctx, a, b, U)


def test_fast_representative_agrees_with_scan(structure_fixture):
    _, ctx = structure_fixture
    UB = ultrafilter_bundle(ctx)
    for i in range(len(UB.ultrafilters)):
        for a in range(ctx.n):
            fast = UB.representative(a, i, "fast")
            slow = UB.representative(a, i, "scan")
            assert UB.labels[i][fast] == UB.labels[i][slow] == UB.labels[i][a]
            assert fast in UB.down_sets[i]


def test_hat_values_name_classes():
    ctx = cached_fixture("FIX-I2")
    UB = ultrafilter_bundle(ctx)
    t = ctx.idx("[1>2,2>1]")
    section = hat(ctx, UB, t)
    support = section.support
    # t is invertible exactly over the two non-unit ultrafilters
    assert len(support) == 2
    assert all(not UB.groupoid.is_unit(i) for i in support)


def test_bundle_needs_steinberg_input():
    ctx = symmetric_inverse_monoid(2)
    broken = StructuredData(ctx.carrier, ctx.S, ctx.Z, range(ctx.n))
    with pytest.raises(ProfileFailure):
        build_bundle(broken)


def test_bundle_is_cached():
    ctx = cached_fixture("FIX-I2")
    assert ultrafilter_bundle(ctx) is ultrafilter_bundle(ctx)


def test_ringoid_fiber_sums_are_well_defined():
    ctx = cached_fixture("FIX-M2F2")
    UB = ultrafilter_bundle(ctx)
    b = UB.bundle
    ring = ctx.carrier
    for i in range(len(UB.ultrafilters)):
        for x in range(ctx.n):
            for y in range(ctx.n):
                assert b.plus(UB.arrow(x, i), UB.arrow(y, i)) == UB.arrow(ring.plus(x, y), i)
