"""Command-line interface.

Exit codes: 0 when every check passes, 1 when a law, profile or round trip
fails, 2 when the input cannot be parsed or does not fit the request.
"""

import json
import sys

import click

from . import io
from .axioms import BUNDLE_PROFILES, check_profile
from .core import FiniteBundle
from .duality import (
    PierceMorphism, SteinbergMorphism, check_naturality, epsilon, eta, functor_S, functor_U,
    validate_pierce_morphism, validate_steinberg_morphism,
)
from .errors import LawViolation, ParseError, ProfileFailure, ProfileMismatch, SteindualError
from .fixtures import (
    FIXTURES, MORPHISMS, fixture, matrix_quasi_cartan, morphism_fixture, pierce_case,
    powerset_algebra, prime_field, product_ring, symmetric_inverse_monoid,
)
from .structured import StructuredData

FORMATS = click.Choice(["human", "machine"])


class Failure(Exception):
    """A check failed; exit code 1."""


def _default_profile(obj):
    if isinstance(obj, FiniteBundle):
        return "ample-ringoid-bundle" if obj.is_ringoid else "ample-bundle"
    return "steinberg-ring" if obj.is_ring else "steinberg-semigroup"


def _render_report(report, fmt, extra=()):
    if fmt == "machine":
        payload = {
            "profile": report.profile,
            "passed": report.passed and all(ok for _, ok, _ in extra),
            "checks": [
                {"law": c.law, "passed": c.passed,
                 "witness": None if c.witness is None else list(c.witness)}
                for c in report.checks
            ] + [
                {"law": name, "passed": ok, "witness": None if w is None else list(w)}
                for name, ok, w in extra
            ],
            "notes": list(report.notes),
        }
        return json.dumps(payload, sort_keys=True)
    lines = [f"profile {report.profile}"]
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        suffix = "" if c.passed else f"  witness {c.witness}"
        lines.append(f"  {status} {c.law}{suffix}")
    for name, ok, witness in extra:
        suffix = "" if ok else f"  witness {witness}"
        lines.append(f"  {'PASS' if ok else 'FAIL'} {name}{suffix}")
    lines.extend(f"  note: {n}" for n in report.notes)
    return "\n".join(lines)


def _oracle_checks(data):
    """Brute-force cross-checks of the relation tables and filter enumeration."""
    from . import oracles
    from .errors import TooLarge
    from .filters import enumerate_filters

    rel = data.relations
    leq, dom, orth = oracles.relation_matrices(data)
    n = range(data.n)
    checks = []
    for name, oracle, fast in (
        ("oracle: restriction table", leq, rel.restriction),
        ("oracle: domination table", dom, rel.below),
        ("oracle: orthogonality table", orth, rel.orthogonal),
    ):
        if oracle is None:
            continue
        witness = next(((a, b) for a in n for b in n if oracle[a][b] != bool(fast(a, b))), None)
        checks.append((name, witness is None, witness))
    try:
        expected = oracles.subset_filters(data)
    except TooLarge:
        return checks
    found = [F.members for F in enumerate_filters(data)]
    checks.append(("oracle: filters equal subset enumeration", found == expected, None))
    return checks


def _load(path):
    return io.load(path)


def _output(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        click.echo(text, nl=False)


def _run(action):
    try:
        action()
    except Failure as exc:
        click.echo(str(exc), err=True)
        sys.exit(1)
    except ProfileFailure as exc:
        click.echo(_render_report(exc.report, "human"), err=True)
        sys.exit(1)
    except (ParseError, ProfileMismatch) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except LawViolation as exc:
        click.echo(f"failed: {exc}", err=True)
        sys.exit(1)
    except SteindualError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


@click.group()
@click.version_option(package_name="artifact")
def main():
    """Check, dualize and round-trip finite Steinberg structures and bundles."""


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--profile", help="Axiom profile; defaults to the natural one for the file.")
@click.option("--format", "fmt", type=FORMATS, default="human", show_default=True)
@click.option("--oracle", is_flag=True, help="Also cross-check against brute-force oracles.")
def check(file, profile, fmt, oracle):
    """Run the axiom checks of PROFILE on FILE."""

    def action():
        obj = _load(file)
        if isinstance(obj, SteinbergMorphism):
            report = validate_steinberg_morphism(obj)
        elif isinstance(obj, PierceMorphism):
            report = validate_pierce_morphism(obj)
        elif isinstance(obj, (StructuredData, FiniteBundle)):
            name = profile or _default_profile(obj)
            if isinstance(obj, FiniteBundle) and name not in BUNDLE_PROFILES:
                raise ProfileMismatch(f"{name} does not apply to a bundle file")
            report = check_profile(obj, name)
        else:
            raise ProfileMismatch(f"{type(obj).__name__} files carry no profile; use a structured file")
        extra = _oracle_checks(obj) if oracle and isinstance(obj, StructuredData) else []
        click.echo(_render_report(report, fmt, extra))
        if not report.passed or not all(ok for _, ok, _ in extra):
            sys.exit(1)

    _run(action)


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), help="Write here instead of stdout.")
def dualize(file, out):
    """Structure -> ultrafilter bundle, or bundle -> section structure."""

    def action():
        from .bundles import build_bundle
        from .sections import section_structure

        obj = _load(file)
        if isinstance(obj, StructuredData):
            result = io.bundle_doc(build_bundle(obj).bundle, name=f"U({obj.name})")
        elif isinstance(obj, FiniteBundle):
            name = "ample-ringoid-bundle" if obj.is_ringoid else "ample-bundle"
            report = check_profile(obj, name)
            if not report.passed:
                raise ProfileFailure(report)
            result = io.structured_doc(section_structure(obj))
        else:
            raise ProfileMismatch("dualize takes a structured or bundle file")
        _output(io.emit_document(result), out)

    _run(action)


def _iso_table(values, source_names, target_names):
    return [f"  {source_names[a]} -> {target_names[v]}" for a, v in values]


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--format", "fmt", type=FORMATS, default="human", show_default=True)
def roundtrip(file, fmt):
    """Dualize twice and verify eta (structures) or epsilon (bundles)."""

    def action():
        obj = _load(file)
        if isinstance(obj, StructuredData):
            m = eta(obj)
            report = validate_steinberg_morphism(m)
            if not report.passed:
                bad = report.failures()[0]
                raise Failure(f"eta is not a Steinberg morphism: {bad.law} at {bad.witness}")
            pairs = [(a, m.values[a]) for a in m.domain]
            table = _iso_table(pairs, obj.carrier.elements, m.target.carrier.elements)
            header = f"eta is an isomorphism {len(pairs)} <-> {m.target.n}"
            rows = {obj.name_of(a): m.target.name_of(v) for a, v in pairs}
        elif isinstance(obj, FiniteBundle):
            p = epsilon(obj)
            report = validate_pierce_morphism(p)
            if not report.passed:
                bad = report.failures()[0]
                raise Failure(f"epsilon is not a Pierce morphism: {bad.law} at {bad.witness}")
            base, ubase = obj.base.arrows, p.source.base.arrows
            pairs = sorted(p.phi.values.items())
            table = _iso_table(pairs, base, ubase)
            total = obj.total.arrows
            utotal = p.source.total.arrows
            table += [f"  ({base[g]}, {utotal[c]}) -> {total[d]}"
                      for (g, c), d in sorted(p.beta.items())]
            header = (f"epsilon is an isomorphism: {len(pairs)} base arrows, "
                      f"{len(p.beta)} total arrows")
            rows = {base[g]: ubase[i] for g, i in pairs}
        else:
            raise ProfileMismatch("roundtrip takes a structured or bundle file")
        if fmt == "machine":
            click.echo(json.dumps({"passed": True, "map": rows}, sort_keys=True))
        else:
            click.echo("\n".join([header] + table))

    _run(action)


@main.command("apply-functor")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), help="Write here instead of stdout.")
def apply_functor(file, out):
    """Steinberg morphism -> Pierce morphism (U), or Pierce -> Steinberg (S)."""

    def action():
        obj = _load(file)
        if isinstance(obj, SteinbergMorphism):
            report = validate_steinberg_morphism(obj)
            translate = functor_U
        elif isinstance(obj, PierceMorphism):
            report = validate_pierce_morphism(obj)
            translate = functor_S
        else:
            raise ProfileMismatch("apply-functor takes a morphism or pierce-morphism file")
        if not report.passed:
            click.echo(_render_report(report, "human"), err=True)
            raise Failure("input morphism is invalid")
        result = translate(obj)
        naturality = check_naturality(obj)
        for name, ok, witness in naturality.checks:
            suffix = "" if ok else f"  witness {witness}"
            click.echo(f"{'PASS' if ok else 'FAIL'} naturality: {name}{suffix}", err=True)
        _output(io.emit(result), out)
        if not naturality.passed:
            sys.exit(1)

    _run(action)


GENERATORS = {
    "symmetric-inverse-monoid": (symmetric_inverse_monoid, 1),
    "powerset-algebra": (powerset_algebra, 1),
    "matrix-quasi-cartan": (matrix_quasi_cartan, 2),
    "pierce-product-field": (lambda q: pierce_case(product_ring(prime_field(q), prime_field(q))), 1),
}


@main.command()
@click.argument("name", required=False)
@click.argument("params", nargs=-1, type=int)
@click.option("--out", type=click.Path(dir_okay=False), help="Write here instead of stdout.")
@click.option("--list", "listing", is_flag=True, help="List the available names.")
def example(name, params, out, listing):
    """Emit a fixture, a morphism fixture or a generated family member."""

    def action():
        if listing or name is None:
            for key in list(FIXTURES) + list(MORPHISMS):
                click.echo(key)
            for key, (_, arity) in GENERATORS.items():
                click.echo(f"{key} <{arity} integer parameter{'s' if arity > 1 else ''}>")
            return
        if name in FIXTURES:
            obj = fixture(name)
        elif name in MORPHISMS:
            obj = morphism_fixture(name)
        elif name in GENERATORS:
            build, arity = GENERATORS[name]
            if len(params) != arity:
                raise ProfileMismatch(f"{name} takes {arity} integer parameter(s)")
            obj = build(*params)
        else:
            raise ProfileMismatch(f"unknown example {name!r}; try --list")
        _output(io.emit(obj), out)

    _run(action)


if __name__ == "__main__":
    main()
