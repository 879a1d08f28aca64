"""Sections of finite bundles and the structures they form.

For a plain bundle the carrier is the semigroup of slice-supported sections
S_c; for a ringoid bundle it is the ring of all sections under convolution,
with S_c as the marked subsemigroup.  In both cases Z_c is the set of
sections taking unit values on their support and Phi^rho keeps the values
over base units and zeroes the rest.
"""

from dataclasses import dataclass, field
from itertools import product

from .core import UNDEFINED, FiniteRing, FiniteSemigroup
from .errors import NeitherSliceSupported, NotSection
from .laws import guard_size
from .structured import StructuredData


@dataclass(frozen=True)
class Section:
    """A total section: ``values[g]`` is a total arrow over base arrow g."""

    values: tuple
    bundle: object = field(compare=False, repr=False, hash=False)

    @property
    def support(self):
        zeros = self.bundle.zeros
        return tuple(g for g, c in enumerate(self.values) if c != zeros[g])

    def __call__(self, g):
        return self.values[g]

    def label(self):
        arrows = self.bundle.total.arrows
        return "{" + ",".join(arrows[self.values[g]] for g in self.support) + "}"


def make_section(bundle, values):
    values = tuple(int(c) for c in values)
    if len(values) != bundle.base.size:
        raise NotSection((), "a section needs one value per base arrow")
    for g, c in enumerate(values):
        if bundle.rhos[c] != g:
            raise NotSection((g,), "value does not project onto its base arrow")
    return Section(values, bundle)


def zero_section(bundle):
    return Section(tuple(bundle.zeros), bundle)


def is_slice_supported(bundle, values):
    zeros = bundle.zeros
    support = [g for g, c in enumerate(values) if c != zeros[g]]
    return bundle.base.is_bisection(support)


def is_unit_valued(bundle, values):
    zeros, units = bundle.zeros, bundle.total.unit_set
    return all(c == zeros[g] or c in units for g, c in enumerate(values))


def expectation_values(bundle, values):
    """Phi^rho: keep the values over base units, zero elsewhere."""
    base_units, zeros = bundle.base.unit_set, bundle.zeros
    return tuple(c if g in base_units else zeros[g] for g, c in enumerate(values))


def _values(a):
    return a.values if isinstance(a, Section) else tuple(a)


def section_product_values(bundle, a, b, additive=None):
    """Convolution of two value tuples.

    With ``additive`` false (plain bundles) at most one factorisation may
    contribute a nonzero term, which is the case when a or b is
    slice-supported.  With ``additive`` true the terms are added in the fiber.
    """
    if additive is None:
        additive = bundle.is_ringoid
    base, comp = bundle.base, bundle.total.comp_rows
    zeros = bundle.zeros
    a, b = _values(a), _values(b)
    if not additive:
        if not (is_slice_supported(bundle, a) or is_slice_supported(bundle, b)):
            raise NeitherSliceSupported((a, b))
    out = list(zeros)
    supp_a = [g for g, c in enumerate(a) if c != zeros[g]]
    supp_b = [h for h, c in enumerate(b) if c != zeros[h]]
    for g in supp_a:
        for h in supp_b:
            f = base.comp_rows[g][h]
            if f == UNDEFINED:
                continue
            term = comp[a[g]][b[h]]
            if additive:
                out[f] = bundle.plus(out[f], term)
            elif out[f] != zeros[f]:
                raise NeitherSliceSupported((a, b), "two factorisations contribute")
            else:
                out[f] = term
    return tuple(out)


def section_product(a, b):
    """The convolution product of two sections of the same bundle."""
    bundle = a.bundle
    return Section(section_product_values(bundle, a.values, b.values), bundle)


def _fiber_options(bundle, g):
    zero = bundle.zeros[g]
    return [zero] + [c for c in bundle.fibers[g] if c != zero]


def all_section_values(bundle):
    """Every section, in lexicographic order of (zero first) fiber choices."""
    count = 1
    for g in range(bundle.base.size):
        count *= len(bundle.fibers[g])
    guard_size(count, "section set")
    options = [_fiber_options(bundle, g) for g in range(bundle.base.size)]
    return [tuple(v) for v in product(*options)]


def slice_section_values(bundle):
    """The slice-supported sections, in the same order as all_section_values."""
    base = bundle.base
    options = [_fiber_options(bundle, g) for g in range(base.size)]
    zeros = bundle.zeros
    found = []

    def extend(prefix, sources, ranges):
        g = len(prefix)
        if g == base.size:
            found.append(tuple(prefix))
            guard_size(len(found), "slice-supported section set")
            return
        for c in options[g]:
            if c == zeros[g]:
                extend(prefix + [c], sources, ranges)
                continue
            s, r = base.srcs[g], base.rngs[g]
            if s in sources or r in ranges:
                continue
            extend(prefix + [c], sources | {s}, ranges | {r})

    extend([], frozenset(), frozenset())
    return found


class SectionStructure(StructuredData):
    """StructuredData whose carrier elements are sections of ``bundle``."""

    def __init__(self, bundle, sections, carrier, S, Z, phi, name):
        super().__init__(carrier, S, Z, phi, name=name)
        self.bundle = bundle
        self.sections = tuple(sections)
        self.position = {s.values: i for i, s in enumerate(self.sections)}

    def section(self, i):
        return self.sections[i]

    def index_of(self, values):
        return self.position.get(_values(values))


def section_structure(bundle, name="sections"):
    """(S_c, Z_c, Phi^rho) for a bundle, or (C_c, S_c, Z_c, Phi^rho) for a
    ringoid bundle."""
    if bundle.is_ringoid:
        values = all_section_values(bundle)
    else:
        values = slice_section_values(bundle)
    sections = [Section(v, bundle) for v in values]
    position = {v: i for i, v in enumerate(values)}
    names = [s.label() for s in sections]
    n = len(values)

    def locate(v):
        i = position.get(v)
        if i is None:
            raise NotSection((), "product left the section set")
        return i

    mult = [[locate(section_product_values(bundle, a, b)) for b in values] for a in values]
    slices = [i for i, v in enumerate(values) if is_slice_supported(bundle, v)]
    units = [i for i in slices if is_unit_valued(bundle, values[i])]
    phi = [locate(expectation_values(bundle, v)) for v in values]
    zero = position[tuple(bundle.zeros)]
    if bundle.is_ringoid:
        add = [[position[tuple(bundle.plus(x, y) for x, y in zip(a, b))] for b in values]
               for a in values]
        neg = [position[tuple(bundle.fneg[x] for x in a)] for a in values]
        carrier = FiniteRing(names, add, neg, zero, mult, check=n <= 64)
    else:
        carrier = FiniteSemigroup(names, mult, zero, check=n <= 64)
    return SectionStructure(bundle, sections, carrier, slices, units, phi, name)


# ------------------------------------------------------- characterizations


@dataclass(frozen=True)
class CharacterizationReport:
    checks: tuple

    @property
    def passed(self):
        return all(ok for _, ok, _ in self.checks)


def relation_characterizations(structure):
    """Compare the abstract restriction, domination and orthogonality on S_c
    with their support-level descriptions."""
    bundle = structure.bundle
    base = bundle.base
    core_arrows = bundle.core
    rel = structure.relations
    S = structure.S
    supports = {i: structure.sections[i].support for i in S}
    values = {i: structure.sections[i].values for i in S}

    def agrees_on_support(a, b):
        return all(values[a][g] == values[b][g] for g in supports[a])

    def invertible_on_support(a, b):
        return all(values[b][g] in core_arrows for g in supports[a])

    def disjoint_ends(a, b):
        ra = {base.rngs[g] for g in supports[a]}
        rb = {base.rngs[g] for g in supports[b]}
        sa = {base.srcs[g] for g in supports[a]}
        sb = {base.srcs[g] for g in supports[b]}
        return not (ra & rb) and not (sa & sb)

    checks = []
    for name, abstract, concrete in (
        ("restriction matches agreement on the support", rel.restriction, agrees_on_support),
        ("domination matches core values on the support", rel.below, invertible_on_support),
        ("orthogonality matches disjoint ranges and sources", rel.orthogonal, disjoint_ends),
    ):
        witness = next(
            ((a, b) for a in S for b in S if bool(abstract(a, b)) != concrete(a, b)), None
        )
        checks.append((name, witness is None, witness))
    return CharacterizationReport(tuple(checks))


def sections_of(bundle):
    """section_structure(bundle), cached on the bundle."""
    cached = bundle.__dict__.get("_section_structure")
    if cached is None:
        cached = section_structure(bundle)
        bundle.__dict__["_section_structure"] = cached
    return cached
