import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from steindual import FIXTURES, fixture
from steindual.core import (
    cyclic_groupoid, discrete_groupoid, disjoint_union, groupoid_product, pair_groupoid,
    trivial_bundle,
)
from steindual.fixtures import prime_field

settings.register_profile(
    "default", max_examples=25, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

STRUCTURE_FIXTURES = ["FIX-I2", "FIX-POW2", "FIX-M2F2", "FIX-M2F2-S", "PIERCE-F2xF2"]

_cache = {}


def cached_fixture(name):
    """One shared instance per fixture so cached relation tables are reused."""
    if name not in _cache:
        _cache[name] = fixture(name)
    return _cache[name]


@pytest.fixture(params=list(FIXTURES))
def any_fixture(request):
    return request.param, cached_fixture(request.param)


@pytest.fixture(params=STRUCTURE_FIXTURES)
def structure_fixture(request):
    return request.param, cached_fixture(request.param)


# ---------------------------------------------------------------- strategies

PARTS = {
    "point": lambda: pair_groupoid(1),
    "pair": lambda: pair_groupoid(2),
    "c2": lambda: cyclic_groupoid(2),
    "c3": lambda: cyclic_groupoid(3),
    "pair*c2": lambda: groupoid_product(pair_groupoid(2), cyclic_groupoid(2)),
}
PART_SIZES = {"point": 1, "pair": 4, "c2": 2, "c3": 3, "pair*c2": 8}


def groupoids(max_arrows):
    """Disjoint unions of points, pair groupoids and small cyclic groups."""
    names = sorted(PARTS)

    def build(chosen):
        parts = [PARTS[c]() for c in chosen]
        return parts[0] if len(parts) == 1 else disjoint_union(parts)

    return (
        st.lists(st.sampled_from(names), min_size=1, max_size=3)
        .filter(lambda chosen: sum(PART_SIZES[c] for c in chosen) <= max_arrows)
        .map(build)
    )


def ringoid_bundles():
    """Trivial F_2 ringoid bundles with at most 64 sections."""
    return groupoids(6).map(lambda G: trivial_bundle(G, prime_field(2), ringoid=True))


def plain_bundles():
    """Trivial F_2 bundles over at most 9 base arrows."""
    return groupoids(9).map(lambda G: trivial_bundle(G, prime_field(2), ringoid=False))


def discrete_bundles():
    return st.integers(1, 3).map(
        lambda n: trivial_bundle(discrete_groupoid(n), prime_field(2), ringoid=True))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
