import pytest

from steindual import FIXTURES, check_expectation_laws, check_profile, require_profile
from steindual.axioms import PROFILES, reevaluate
from steindual.errors import ProfileFailure, ProfileMismatch
from steindual.fixtures import powerset_algebra, symmetric_inverse_monoid
from steindual.structured import StructuredData

from conftest import cached_fixture


@pytest.mark.parametrize("name", list(FIXTURES))
def test_fixture_passes_declared_profiles(name):
    obj = cached_fixture(name)
    for profile in FIXTURES[name].expected_profiles:
        report = check_profile(obj, profile)
        assert report.passed, report.failures()


@pytest.mark.parametrize("name", ["FIX-I2", "FIX-POW2", "FIX-M2F2", "FIX-M2F2-S",
                                  "PIERCE-F2xF2"])
def test_expectation_report_passes(name):
    report = check_expectation_laws(cached_fixture(name))
    assert report.passed, report.failures()
    assert "(Leech) on S^>" in report.laws()


def test_every_phi_mutation_of_i2_fails_with_reevaluable_witness():
    ctx = cached_fixture("FIX-I2")
    for a in range(ctx.n):
        for v in ctx.S:
            if v == ctx.phi[a]:
                continue
            phi = list(ctx.phi)
            phi[a] = v
            mutated = StructuredData(ctx.carrier, ctx.S, ctx.Z, phi, name="mutated")
            report = check_profile(mutated, "steinberg-semigroup")
            failures = report.failures()
            assert failures, (a, v)
            for check in failures:
                assert not reevaluate(mutated, "steinberg-semigroup", check.law, check.witness)


def test_identity_expectation_on_i2_breaks_centrality():
    ctx = symmetric_inverse_monoid(2)
    plain = StructuredData(ctx.carrier, ctx.S, ctx.Z, range(ctx.n), name="I2-id")
    report = check_profile(plain, "well-structured-semigroup")
    check = report.result("Z central in ran(Phi)")
    assert not check.passed
    z, r = check.witness
    assert ctx.mul(z, r) != ctx.mul(r, z)


def test_require_profile_raises_with_report():
    ctx = symmetric_inverse_monoid(2)
    broken = StructuredData(ctx.carrier, ctx.S, ctx.Z, range(ctx.n))
    with pytest.raises(ProfileFailure) as info:
        require_profile(broken, "steinberg-semigroup")
    assert not info.value.report.passed


def test_profile_family_mismatches():
    pow2 = powerset_algebra(2)
    with pytest.raises(ProfileMismatch):
        check_profile(pow2, "steinberg-ring")
    with pytest.raises(ProfileMismatch):
        check_profile(pow2, "quasi-cartan-pair")
    with pytest.raises(ProfileMismatch):
        check_profile(pow2, "ample-bundle")
    with pytest.raises(ProfileMismatch):
        check_profile(pow2, "no-such-profile")


def test_bundle_profile_on_structure_file_rejected():
    with pytest.raises(ProfileMismatch):
        check_profile(cached_fixture("FIX-TRIVBUN"), "steinberg-semigroup")


def test_profiles_listed():
    for name in ("steinberg-semigroup", "steinberg-ring", "quasi-cartan-pair",
                 "ample-bundle", "ample-ringoid-bundle"):
        assert name in PROFILES


def test_quasi_cartan_notes_mention_extension():
    report = check_profile(cached_fixture("FIX-M2F2"), "quasi-cartan-pair")
    assert any("Quasi-Cartan" in note for note in report.notes)


def test_missing_zero_fails_steinberg():
    from steindual.core import FiniteSemigroup

    carrier = FiniteSemigroup(["1", "g"], [[0, 1], [1, 0]])  # the group of order 2
    data = StructuredData(carrier, [0, 1], [0], [0, 1])
    report = check_profile(data, "steinberg-semigroup")
    assert not report.result("has a zero").passed
