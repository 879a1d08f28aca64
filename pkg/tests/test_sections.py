import pytest
from hypothesis import given

from steindual import check_profile, relation_characterizations, section_structure
from steindual.core import pair_groupoid, trivial_bundle
from steindual.errors import NeitherSliceSupported, NotSection
from steindual.fixtures import prime_field
from steindual.sections import (
    all_section_values, make_section, section_product_values, sections_of,
    slice_section_values,
)

from conftest import cached_fixture, plain_bundles, ringoid_bundles


def test_trivbun_section_ring():
    s = sections_of(cached_fixture("FIX-TRIVBUN"))
    assert (s.n, len(s.S), len(s.Z)) == (16, 7, 4)
    assert check_profile(s, "steinberg-ring").passed


def test_plain_sections_of_i2_bundle():
    from steindual import ultrafilter_bundle

    b = ultrafilter_bundle(cached_fixture("FIX-I2")).bundle
    s = sections_of(b)
    assert (s.n, len(s.Z)) == (7, 4)
    assert check_profile(s, "steinberg-semigroup").passed
    assert relation_characterizations(s).passed


def test_make_section_checks_fibers():
    b = cached_fixture("FIX-TRIVBUN")
    with pytest.raises(NotSection):
        make_section(b, [0, 0, 0])
    with pytest.raises(NotSection):
        make_section(b, [b.fibers[1][0]] * 4)
    assert make_section(b, b.zeros).support == ()


def test_plain_convolution_needs_a_slice():
    b = trivial_bundle(pair_groupoid(2), prime_field(2), ringoid=False)
    full = tuple(f[1] for f in b.fibers)
    with pytest.raises(NeitherSliceSupported):
        section_product_values(b, full, full)


def test_slice_sections_are_a_subset_in_order():
    b = cached_fixture("FIX-TRIVBUN")
    everything = all_section_values(b)
    slices = slice_section_values(b)
    assert [v for v in everything if v in set(slices)] == slices


@given(ringoid_bundles())
def test_random_ringoid_sections_form_steinberg_ring(bundle):
    s = section_structure(bundle)
    assert check_profile(s, "steinberg-ring").passed
    assert relation_characterizations(s).passed


@given(plain_bundles())
def test_random_plain_sections_form_steinberg_semigroup(bundle):
    s = section_structure(bundle)
    assert check_profile(s, "steinberg-semigroup").passed
    assert relation_characterizations(s).passed
