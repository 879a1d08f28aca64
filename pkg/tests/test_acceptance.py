"""Acceptance criteria, one test per criterion.

Each criterion is a function returning ``(passed, detail)``.  Under pytest
the outcome is recorded and printed as a PASS/FAIL line in the terminal
summary; run this file directly to print the same lines without pytest.
"""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from steindual import (  # noqa: E402
    check_naturality, check_profile, enumerate_filters, enumerate_ultrafilters, epsilon, eta,
    fixture, functor_U, identity_morphism, identity_pierce, morphism_fixture,
    pair_groupoid, discrete_groupoid, ultrafilter_groupoid, validate_pierce_morphism,
    validate_steinberg_morphism,
)
from steindual.axioms import reevaluate  # noqa: E402
from steindual.duality import (  # noqa: E402
    SteinbergMorphism, epsilon_low_matches_agreement, groupoid_isomorphism,
)
from steindual.filters import primality_witness  # noqa: E402
from steindual.fixtures import pierce_case, prime_field, product_ring  # noqa: E402
from steindual.oracles import subset_filters, subset_ultrafilters  # noqa: E402
from steindual.propositions import run_properties  # noqa: E402
from steindual.structured import StructuredData  # noqa: E402

RESULTS = {}
STRUCTURES = ["FIX-POW2", "FIX-I2", "FIX-M2F2", "FIX-M2F2-S", "PIERCE-F2xF2"]


def fixture_profiles():
    cases = [
        ("FIX-POW2", fixture("FIX-POW2"), "steinberg-semigroup"),
        ("FIX-I2", fixture("FIX-I2"), "steinberg-semigroup"),
        ("FIX-M2F2", fixture("FIX-M2F2"), "quasi-cartan-pair"),
        ("FIX-M2F2", fixture("FIX-M2F2"), "steinberg-ring"),
        ("FIX-TRIVBUN", fixture("FIX-TRIVBUN"), "ample-ringoid-bundle"),
        ("pierce_case(F2 x F2)", pierce_case(product_ring(prime_field(2), prime_field(2))),
         "steinberg-ring"),
    ]
    failed = [f"{name}/{profile}" for name, obj, profile in cases
              if not check_profile(obj, profile).passed]
    return not failed, f"{len(cases) - len(failed)}/{len(cases)} profiles pass"


def filter_oracle():
    mismatched = []
    for name in STRUCTURES:
        ctx = fixture(name)
        if len(ctx.S) > 12:
            continue
        if [F.members for F in enumerate_filters(ctx)] != subset_filters(ctx):
            mismatched.append(name)
        fast = sorted(tuple(U.members) for U in enumerate_ultrafilters(ctx))
        if fast != subset_ultrafilters(ctx):
            mismatched.append(name + " ultrafilters")
    counts = {name: len(enumerate_ultrafilters(fixture(name)))
              for name in ("FIX-POW2", "FIX-I2", "FIX-M2F2-S")}
    expected = {"FIX-POW2": 2, "FIX-I2": 4, "FIX-M2F2-S": 4}
    ok = not mismatched and counts == expected
    return ok, f"ultrafilter counts {counts}, oracle mismatches {mismatched}"


def groupoid_shapes():
    g_i2 = ultrafilter_groupoid(fixture("FIX-I2")).groupoid
    g_pow2 = ultrafilter_groupoid(fixture("FIX-POW2")).groupoid
    iso_i2 = groupoid_isomorphism(g_i2, pair_groupoid(2))
    iso_pow2 = groupoid_isomorphism(g_pow2, discrete_groupoid(2))
    ok = (iso_i2 is not None and iso_pow2 is not None
          and (g_i2.size, len(g_i2.units)) == (4, 2)
          and (g_pow2.size, len(g_pow2.units)) == (2, 2))
    return ok, f"I2: {g_i2.size} arrows/{len(g_i2.units)} units; POW2: {g_pow2.size}/{len(g_pow2.units)}"


def _is_bijection(m):
    images = [m.values[a] for a in m.domain]
    target = m.target
    codomain = range(target.n) if target.is_ring else target.S
    return sorted(images) == sorted(codomain)


def eta_round_trip():
    m_i2 = eta(fixture("FIX-I2"))
    ring = fixture("FIX-M2F2")
    m_ring = eta(ring)
    target = m_ring.target
    preserved = all(
        m_ring.values[ring.mul(a, b)] == target.mul(m_ring.values[a], m_ring.values[b])
        and m_ring.values[ring.carrier.plus(a, b)]
        == target.carrier.plus(m_ring.values[a], m_ring.values[b])
        for a in range(ring.n) for b in range(ring.n)
    )
    ok = (_is_bijection(m_i2) and len(m_i2.domain) == len(m_i2.target.S) == 7
          and _is_bijection(m_ring) and ring.n == target.n == 16 and preserved
          and validate_steinberg_morphism(m_ring).passed)
    return ok, f"I2 {len(m_i2.domain)} <-> {len(m_i2.target.S)}, M2F2 {ring.n} <-> {target.n}"


def epsilon_round_trip():
    bundle = fixture("FIX-TRIVBUN")
    p = epsilon(bundle)
    base_bijective = sorted(p.phi.values) == list(range(p.source.base.size)) and \
        sorted(p.phi.values.values()) == list(range(bundle.base.size))
    total_bijective = sorted(p.beta.values()) == list(range(bundle.total.size))
    agreement = epsilon_low_matches_agreement(bundle)
    ok = validate_pierce_morphism(p).passed and base_bijective and total_bijective \
        and agreement is None
    return ok, (f"{len(p.phi.values)} base arrows, {len(p.beta)} total arrows, "
                f"agreement counterexample {agreement}")


def _inverse(m):
    values = [None] * m.target.n
    for a in m.domain:
        values[m.values[a]] = a
    return SteinbergMorphism(m.target, m.source, tuple(values))


def naturality():
    iso = morphism_fixture("MOR-I2-M2F2S")
    steinberg = [
        identity_morphism(fixture("FIX-I2")),
        identity_morphism(fixture("FIX-M2F2")),
        iso,
        _inverse(iso),
        morphism_fixture("MOR-POW2-I2"),
    ]
    pierce = [identity_pierce(fixture("FIX-TRIVBUN"))] + [functor_U(m) for m in steinberg]
    failures = []
    count = 0
    for m in steinberg + pierce:
        report = check_naturality(m)
        count += len(report.checks)
        failures += [(name, w) for name, ok, w in report.checks if not ok]
    return not failures, f"{count} squares checked, failures {failures}"


def proposition_suite():
    names = STRUCTURES + ["FIX-TRIVBUN"]
    applied, failures = {}, []
    for name in names:
        results = run_properties(fixture(name))
        applied[name] = sum(r.applicable for r in results)
        failures += [(name, r.name, r.witness) for r in results
                     if r.applicable and not r.passed]
    ok = not failures and min(applied.values()) >= 25
    return ok, f"applicable per fixture {applied}, failures {failures}"


def negative_controls():
    ctx = fixture("FIX-I2")
    reevaluated = 0
    mutations = 0
    for a in range(ctx.n):
        for value in range(ctx.n):
            if value == ctx.phi[a]:
                continue
            phi = list(ctx.phi)
            phi[a] = value
            mutated = StructuredData(ctx.carrier, ctx.S, ctx.Z, phi, name="mutated")
            report = check_profile(mutated, "steinberg-semigroup")
            mutations += 1
            bad = report.failures()
            if bad and not reevaluate(mutated, "steinberg-semigroup", bad[0].law, bad[0].witness):
                reevaluated += 1
    one = ctx.idx("[1>1,2>2]")
    witness = primality_witness(ctx, (one,))
    names = None if witness is None else tuple(ctx.name_of(w) for w in witness)
    ok = reevaluated == mutations and names is not None and set(names) == {"[1>1]", "[2>2]"}
    return ok, f"{reevaluated}/{mutations} mutations caught, {{1}} primality witness {names}"


CRITERIA = [
    (1, "fixture profiles", fixture_profiles),
    (2, "filter oracle and ultrafilter counts", filter_oracle),
    (3, "ultrafilter groupoid shapes", groupoid_shapes),
    (4, "eta round trip", eta_round_trip),
    (5, "epsilon round trip and agreement", epsilon_round_trip),
    (6, "naturality squares", naturality),
    (7, "proposition suite", proposition_suite),
    (8, "negative controls", negative_controls),
]


def line(number, title, ok, detail):
    return f"criterion {number} {'PASS' if ok else 'FAIL'} {title}: {detail}"


@pytest.mark.parametrize("number,title,check", CRITERIA, ids=[f"criterion-{n}" for n, *_ in CRITERIA])
def test_criterion(number, title, check):
    ok, detail = check()
    RESULTS[number] = line(number, title, ok, detail)
    print(RESULTS[number])
    assert ok, detail


if __name__ == "__main__":
    outcomes = [check() for _, _, check in CRITERIA]
    for (number, title, _), (ok, detail) in zip(CRITERIA, outcomes):
        print(line(number, title, ok, detail))
    sys.exit(0 if all(ok for ok, _ in outcomes) else 1)
