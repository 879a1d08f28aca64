"""Exhaustive property checks over finite structures and bundles.

Every property is a named search for a counterexample: ``find`` returns a
witness tuple when the property fails and None when it holds.  Properties
come in three kinds, depending on what they inspect:

``structure``
    a StructuredData value (for a bundle, its section structure);
``ultrafilter-bundle``
    a Steinberg structure together with its ultrafilter bundle;
``bundle``
    a FiniteBundle (for a structure, its ultrafilter bundle).

``applies`` guards each property with the hypotheses it needs, so the whole
registry can be run on any input with :func:`run_properties`.
"""

from dataclasses import dataclass
from functools import reduce
from itertools import combinations, product
from typing import Callable, Optional

from .axioms import check_profile
from .bundles import equivalent, ultrafilter_bundle
from .core import UNDEFINED, FiniteBundle
from .errors import SteindualError, TooLarge
from .filters import (
    coset_source, criterion_witness, enumerate_filters, enumerate_ultrafilters,
    is_filter, is_proper, primality_witness, ultrafilter_groupoid,
)
from .sections import (
    all_section_values, expectation_values, is_unit_valued, sections_of,
)
from .structured import StructuredData

ORACLE_CARRIER_LIMIT = 16
SUBSET_LIMIT = 12


@dataclass(frozen=True)
class Property:
    name: str
    kind: str
    applies: Callable[[object], bool]
    find: Callable[[object], Optional[tuple]]


@dataclass(frozen=True)
class PropertyResult:
    name: str
    kind: str
    applicable: bool
    witness: Optional[tuple] = None

    @property
    def passed(self):
        return self.witness is None


PROPERTIES = []


def _register(kind, applies):
    def wrap(fn):
        name = fn.__doc__.strip().splitlines()[0].rstrip(".")
        PROPERTIES.append(Property(name, kind, applies, fn))
        return fn

    return wrap


def first(cases):
    """The first case tuple yielded, or None."""
    return next(iter(cases), None)


# ------------------------------------------------------------ applicability


def _passes(ctx, profile):
    store = ctx.__dict__.setdefault("_profile_reports", {})
    if profile not in store:
        store[profile] = check_profile(ctx, profile)
    return store[profile].passed


def always(ctx):
    return True


def has_zero(ctx):
    return ctx.zero is not None


def is_structured(ctx):
    return _passes(ctx, "structured-semigroup")


def is_well_structured(ctx):
    return _passes(ctx, "well-structured-semigroup")


def is_steinberg(ctx):
    if ctx.is_ring:
        return _passes(ctx, "steinberg-ring")
    return _passes(ctx, "steinberg-semigroup")


def is_steinberg_ring(ctx):
    return ctx.is_ring and is_steinberg(ctx)


def commutative_z(ctx):
    rows = ctx.rows
    return all(rows[y][z] == rows[z][y] for y in ctx.Z for z in ctx.Z)


def idempotent_z(ctx):
    return all(ctx.rows[z][z] == z for z in ctx.Z)


def small_carrier(ctx):
    return ctx.n <= ORACLE_CARRIER_LIMIT


def small_s(ctx):
    return len(ctx.S) <= SUBSET_LIMIT


def _and(*tests):
    return lambda ctx: all(t(ctx) for t in tests)


# ----------------------------------------------------------------- helpers


def _dagger(ctx):
    """Z-invertible elements of S, found from Z-inverses rather than from
    the domination table."""
    rel = ctx.relations
    return tuple(a for a in ctx.S if rel.z_inverses(a))


def _witnessed_dominations(ctx):
    """All (a, s, b) in S^3 with a <_s b."""
    cached = ctx.__dict__.get("_witnessed_dominations")
    if cached is None:
        rel = ctx.relations
        cached = tuple(
            (a, s, b) for a in ctx.S for b in ctx.S if rel.dom_rows[a][b]
            for s in ctx.S if rel.dominates_witnessed(a, s, b)
        )
        ctx.__dict__["_witnessed_dominations"] = cached
    return cached


def _filters(ctx):
    cached = ctx.__dict__.get("_all_filters")
    if cached is None:
        cached = enumerate_filters(ctx)
        ctx.__dict__["_all_filters"] = cached
    return cached


def _ultrafilters(ctx):
    return ultrafilter_groupoid(ctx).filters


def _is_unit_filter(ctx, F):
    return coset_source(ctx, F.members) == F.members


def _equivalence_matrix(ctx, F):
    return [[equivalent(ctx, a, b, F) for b in range(ctx.n)] for a in range(ctx.n)]


def _equivalence(ctx, F):
    cache = ctx.__dict__.setdefault("_equivalence_matrices", {})
    key = tuple(F)
    if key not in cache:
        cache[key] = _equivalence_matrix(ctx, key)
    return cache[key]


def _z_supremum(ctx, y, z):
    leq = ctx.relations.leq_rows
    bounds = [w for w in ctx.Z if leq[y][w] and leq[z][w]]
    least = [w for w in bounds if all(leq[w][v] for v in bounds)]
    return least[0] if least else None


def _subsets(items):
    items = list(items)
    for k in range(1, len(items) + 1):
        yield from combinations(items, k)


# ======================================================== relation laws


@_register("structure", always)
def restriction_partial_order(ctx):
    """restriction is transitive and antisymmetric."""
    leq, n = ctx.relations.leq_rows, range(ctx.n)
    return first(
        (a, b, c) for a in n for b in n if leq[a][b]
        for c in n if leq[b][c] and not leq[a][c]
    ) or first((a, b) for a in n for b in n if a != b and leq[a][b] and leq[b][a])


@_register("structure", always)
def restriction_reflexive_on_locally_unital(ctx):
    """restriction is reflexive exactly on elements with local units in Z on both sides."""
    rel = ctx.relations
    return first(
        (a,) for a in ctx.S
        if bool(rel.leq_rows[a][a]) != bool(rel.left_units(a) and rel.right_units(a))
    )


@_register("structure", always)
def domination_transitive(ctx):
    """a < b and b <_t c give a <_t c."""
    rel = ctx.relations
    return first(
        (a, b, t, c) for b, t, c in _witnessed_dominations(ctx)
        for a in ctx.S if rel.dom_rows[a][b] and not rel.dominates_witnessed(a, t, c)
    )


@_register("structure", always)
def domination_left_auxiliary(ctx):
    """a <= b and b <_t c give a <_t c."""
    rel = ctx.relations
    return first(
        (a, b, t, c) for b, t, c in _witnessed_dominations(ctx)
        for a in ctx.S if rel.leq_rows[a][b] and not rel.dominates_witnessed(a, t, c)
    )


@_register("structure", commutative_z)
def domination_right_auxiliary(ctx):
    """a < b and b <= c give a < c when Z commutes."""
    rel, S = ctx.relations, ctx.S
    return first(
        (a, b, c) for a in S for b in S if rel.dom_rows[a][b]
        for c in S if rel.leq_rows[b][c] and not rel.dom_rows[a][c]
    )


@_register("structure", is_structured)
def domination_multiplicative(ctx):
    """a <_b' b and c <_d' d give ac <_(d'b') bd."""
    rel, rows = ctx.relations, ctx.rows
    triples = _witnessed_dominations(ctx)
    return first(
        (a, b1, b, c, d1, d) for a, b1, b in triples for c, d1, d in triples
        if not rel.dominates_witnessed(rows[a][c], rows[d1][b1], rows[b][d])
    )


@_register("structure", has_zero)
def orthogonality_multiplicative(ctx):
    """a orthogonal to b and c orthogonal to d give ac orthogonal to bd."""
    orth, rows, S = ctx.relations.orth_rows, ctx.rows, ctx.S
    pairs = [(a, b) for a in S for b in S if orth[a][b]]
    return first(
        (a, b, c, d) for a, b in pairs for c, d in pairs
        if not orth[rows[a][c]][rows[b][d]]
    )


@_register("structure", has_zero)
def orthogonality_auxiliary(ctx):
    """orthogonality passes down along restriction and along domination."""
    rel, S = ctx.relations, ctx.S
    orth, leq, dom = rel.orth_rows, rel.leq_rows, rel.dom_rows
    for b, c in product(S, repeat=2):
        if not orth[b][c]:
            continue
        for a, d in product(S, repeat=2):
            below = (leq[a][b] and leq[d][c]) or (dom[a][b] and dom[d][c])
            if below and not orth[a][d]:
                return (a, b, c, d)
    return None


@_register("structure", always)
def dagger_descriptions_agree(ctx):
    """Z-invertibles, self-dominated elements and restrictions of Z-invertibles coincide."""
    rel = ctx.relations
    invertible = set(_dagger(ctx))
    self_dominated = {a for a in ctx.S if rel.dom_rows[a][a]}
    below = {a for a in ctx.S if any(rel.leq_rows[a][r] for r in invertible)}
    return first((a,) for a in ctx.S if len({a in invertible, a in self_dominated,
                                             a in below}) > 1)


def _normal_idempotent_inverses(ctx):
    rel = ctx.relations
    ez = [z for z in ctx.Z if ctx.rows[z][z] == z]
    normal = set(rel.normalizers(ez))
    return [a for a in ctx.S if a in normal and rel.z_inverses(a)]


def _commutative_idempotent_z(ctx):
    rows = ctx.rows
    ez = [z for z in ctx.Z if rows[z][z] == z]
    return all(rows[y][z] == rows[z][y] for y in ez for z in ez)


@_register("structure", _commutative_idempotent_z)
def z_inverses_unique_and_reverse_products(ctx):
    """Z-inverses of normalisers of E(Z) are unique and reverse products."""
    rel, rows = ctx.relations, ctx.rows
    pool = _normal_idempotent_inverses(ctx)
    witness = first((a,) for a in pool if len(rel.z_inverses(a)) != 1)
    if witness:
        return witness
    for a, b in product(pool, repeat=2):
        expected = (rows[rel.z_inverses(b)[0]][rel.z_inverses(a)[0]],)
        if rel.z_inverses(rows[a][b]) != expected:
            return (a, b)
    return None


@_register("structure", _commutative_idempotent_z)
def idempotents_of_dagger_are_e_of_z(ctx):
    """the idempotent Z-invertibles are exactly the idempotents of Z."""
    ez = {z for z in ctx.Z if ctx.rows[z][z] == z}
    dagger_idempotents = {a for a in _dagger(ctx) if ctx.rows[a][a] == a}
    diff = sorted(ez ^ dagger_idempotents)
    return (diff[0],) if diff else None


@_register("structure", always)
def supports_are_idempotents_of_z(ctx):
    """supports, when they exist, are idempotents of Z."""
    rel, rows = ctx.relations, ctx.rows
    for a in ctx.S:
        found = rel.supports(a)
        if found is None:
            continue
        if any(e not in ctx.Z_set or rows[e][e] != e for e in found):
            return (a,)
    return None


@_register("structure", commutative_z)
def supports_from_z_inverses(ctx):
    """a Z-invertible a with a <_s a has source support sa and range support as."""
    rel, rows = ctx.relations, ctx.rows
    return first(
        (a, s) for a in ctx.S for s in ctx.S
        if rel.dominates_witnessed(a, s, a) and rel.supports(a) != (rows[s][a], rows[a][s])
    )


@_register("structure", idempotent_z)
def idempotent_orders_agree(ctx):
    """on idempotent Z, y <= z, y < z and y = yz agree."""
    rel, rows = ctx.relations, ctx.rows
    return first(
        (y, z) for y in ctx.Z for z in ctx.Z
        if len({bool(rel.leq_rows[y][z]), bool(rel.dom_rows[y][z]), rows[y][z] == y}) > 1
    )


@_register("structure", small_carrier)
def relations_match_oracle(ctx):
    """relation tables match a brute-force rescan of all witnesses."""
    from . import oracles

    rel = ctx.relations
    leq, dom, orth = oracles.relation_matrices(ctx)
    n = range(ctx.n)
    tables = [(0, leq, rel.leq_rows), (1, dom, rel.dom_rows)]
    if orth is not None:
        tables.append((2, orth, rel.orth_rows))
    return first(
        (k, a, b) for k, oracle, fast in tables for a in n for b in n
        if bool(oracle[a][b]) != bool(fast[a][b])
    )


# ======================================================== expectation laws


def _bistable(ctx):
    rows, phi, Z = ctx.rows, ctx.phi, ctx.Z_set
    return all(
        rows[phi[s]][t] in Z and rows[s][phi[t]] in Z
        for s in ctx.S for t in ctx.S if rows[s][t] in Z
    )


def _down_set(ctx):
    return ctx.relations.down(ctx.S, within=ctx.S)


@_register("structure", _bistable)
def expectation_below_on_down_set(ctx):
    """Phi(t) <= t for every dominated t."""
    leq = ctx.relations.leq_rows
    return first((t,) for t in _down_set(ctx) if not leq[ctx.phi[t]][t])


@_register("structure", is_well_structured)
def expectation_is_leech(ctx):
    """Phi(t) is the largest element of ran(Phi) below a dominated t."""
    leq = ctx.relations.leq_rows
    for t in _down_set(ctx):
        below = [r for r in ctx.D if leq[r][t]]
        largest = [m for m in below if all(leq[c][m] for c in below)]
        if not largest or ctx.phi[t] != largest[0]:
            return (t,)
    return None


@_register("structure", is_steinberg)
def expectation_nondegenerate(ctx):
    """every nonzero a has some s in S with Phi(as) nonzero."""
    rows, phi, zero = ctx.rows, ctx.phi, ctx.zero
    return first(
        (a,) for a in range(ctx.n)
        if a != zero and all(phi[rows[a][s]] == zero for s in ctx.S)
    )


@_register("structure", is_well_structured)
def expectation_range_trinormal_and_diagonal(ctx):
    """ran(Phi) is trinormal and diagonal in S."""
    rows, N, S = ctx.rows, ctx.D_set, ctx.S
    for s, t in product(S, repeat=2):
        for n in ctx.D:
            m = rows[rows[s][n]][t]
            tri = (rows[rows[t][s]][n] == n and rows[rows[n][t]][s] == n
                   and rows[s][t] in N and rows[t][s] in N)
            if tri and m not in N:
                return (0, s, t, n)
            if rows[s][n] in N and rows[n][t] in N and m not in N:
                return (1, s, t, n)
    return None


# ============================================ Steinberg semigroup structure


@_register("structure", is_steinberg)
def z_is_generalised_boolean_algebra(ctx):
    """Z is a distributive lattice under restriction with relative complements."""
    rel, rows, Z = ctx.relations, ctx.rows, ctx.Z
    leq = rel.leq_rows
    for y, z in product(Z, repeat=2):
        meet = rows[y][z]
        lower = [x for x in Z if leq[x][y] and leq[x][z]]
        if meet not in lower or not all(leq[x][meet] for x in lower):
            return (y, z)
        if _z_supremum(ctx, y, z) is None:
            return (y, z)
        if leq[y][z] and rel.complement(y, z) is None:
            return (y, z)
    for x, y, z in product(Z, repeat=3):
        left = rows[x][_z_supremum(ctx, y, z)]
        right = _z_supremum(ctx, rows[x][y], rows[x][z])
        if left != right:
            return (x, y, z)
    return None


@_register("structure", is_steinberg)
def orthogonality_by_local_units(ctx):
    """a and b are orthogonal iff local units of a annihilate those of b on both sides."""
    rel, rows, zero = ctx.relations, ctx.rows, ctx.zero
    for a, b in product(ctx.S, repeat=2):
        left = [(y, z) for y in rel.left_units(a) for z in rel.left_units(b)
                if rows[y][z] == zero]
        right = [(y, z) for y in rel.right_units(a) for z in rel.right_units(b)
                 if rows[y][z] == zero]
        if bool(rel.orth_rows[a][b]) != bool(left and right):
            return (a, b)
    return None


@_register("structure", is_steinberg)
def idempotent_orthogonality_is_zero_product(ctx):
    """idempotents y, z of Z are orthogonal iff yz = 0."""
    rel, rows = ctx.relations, ctx.rows
    ez = [z for z in ctx.Z if rows[z][z] == z]
    return first(
        (y, z) for y in ez for z in ez
        if bool(rel.orth_rows[y][z]) != (rows[y][z] == ctx.zero)
    )


def _joinable_pairs(ctx):
    rel = ctx.relations
    for b, c in product(ctx.S, repeat=2):
        join = rel.supremum(b, c)
        if join is not None:
            yield b, c, join


@_register("structure", is_steinberg)
def products_distribute_over_joins(ctx):
    """a(b v c) = ab v ac whenever b v c exists."""
    rel, rows = ctx.relations, ctx.rows
    for b, c, join in _joinable_pairs(ctx):
        for a in ctx.S:
            if rows[a][join] != rel.supremum(rows[a][b], rows[a][c]):
                return (a, b, c)
    return None


@_register("structure", is_steinberg)
def joins_orthogonal_iff_parts_are(ctx):
    """a v b is orthogonal to c iff a and b both are."""
    orth = ctx.relations.orth_rows
    for a, b, join in _joinable_pairs(ctx):
        for c in ctx.S:
            if bool(orth[a][c] and orth[b][c]) != bool(orth[join][c]):
                return (a, b, c)
    return None


@_register("structure", is_steinberg)
def expectation_preserves_joins(ctx):
    """Phi(a v b) = Phi(a) v Phi(b)."""
    rel, phi = ctx.relations, ctx.phi
    return first(
        (a, b) for a, b, join in _joinable_pairs(ctx)
        if phi[join] != rel.supremum(phi[a], phi[b])
    )


@_register("structure", is_steinberg)
def z_inverse_of_orthogonal_join(ctx):
    """the Z-inverses of a v b are the joins of Z-inverses of a and of b."""
    rel = ctx.relations
    for a, b in product(ctx.S, repeat=2):
        if not rel.orth_rows[a][b]:
            continue
        join = rel.supremum(a, b)
        expected = {rel.supremum(x, y) for x in rel.z_inverses(a) for y in rel.z_inverses(b)}
        if set(rel.z_inverses(join)) != expected:
            return (a, b)
    return None


@_register("structure", is_steinberg_ring)
def ring_sums_are_joins(ctx):
    """orthogonal sums are joins and differences in Z are relative complements."""
    rel, ring = ctx.relations, ctx.carrier
    for s, t in product(ctx.S, repeat=2):
        if rel.orth_rows[s][t] and ring.plus(s, t) != rel.supremum(s, t):
            return (s, t)
    for y, z in product(ctx.Z, repeat=2):
        if rel.leq_rows[z][y] and ring.minus(y, z) != rel.complement(z, y):
            return (y, z)
    return None


# ================================================================ filters


@_register("structure", _and(is_well_structured, small_s))
def filters_match_subset_oracle(ctx):
    """principal filters of Z-invertibles are all the filters."""
    from . import oracles

    found = [F.members for F in _filters(ctx)]
    expected = oracles.subset_filters(ctx)
    extra = sorted(set(found) ^ set(expected))
    return (extra[0],) if extra else None


@_register("structure", is_steinberg)
def ultrafilters_are_prime_filters(ctx):
    """a proper filter is an ultrafilter iff it is prime for orthogonal joins."""
    ultra = {U.members for U in _ultrafilters(ctx)}
    for F in _filters(ctx):
        if not is_proper(ctx, F.members):
            continue
        if (F.members in ultra) != (primality_witness(ctx, F.members) is None):
            return F.members
    return None


def _dagger_filters(ctx):
    """Proper <-filters of the Z-invertible part, by subset enumeration."""
    rel = ctx.relations
    dagger = rel.dagger
    if len(dagger) > SUBSET_LIMIT:
        raise TooLarge("too many Z-invertibles for subset enumeration")
    dom = rel.dom_rows
    found = []
    for V in _subsets(dagger):
        members = set(V)
        if ctx.zero in members:
            continue
        if any(dom[v][a] and a not in members for v in V for a in dagger):
            continue
        if all(any(dom[f][a] and dom[f][b] for f in V) for a in V for b in V):
            found.append(frozenset(V))
    return found


@_register("structure", _and(is_steinberg, small_s))
def ultrafilters_match_dagger_ultrafilters(ctx):
    """ultrafilters correspond to maximal proper filters of the Z-invertibles."""
    rel = ctx.relations
    dagger = set(rel.dagger)
    proper = _dagger_filters(ctx)
    maximal = {V for V in proper if not any(V < W for W in proper)}
    ultra = _ultrafilters(ctx)
    restricted = {frozenset(U.member_set & dagger) for U in ultra}
    if restricted != maximal:
        return tuple(sorted(next(iter(restricted ^ maximal))))
    for U in ultra:
        if rel.up(U.member_set & dagger) != U.members:
            return U.members
    return None


@_register("structure", is_well_structured)
def unit_filters_are_expectation_closed(ctx):
    """a filter is a unit iff Phi maps it into itself."""
    phi = ctx.phi
    return first(
        F.members for F in _filters(ctx)
        if _is_unit_filter(ctx, F) != all(phi[a] in F for a in F.members)
    )


@_register("structure", _and(is_well_structured, small_s))
def filter_criterion_by_expectation(ctx):
    """F is a filter iff Phi[FF*]F lies in F and F = F^<."""
    rel, rows, phi = ctx.relations, ctx.rows, ctx.phi
    for F in _subsets(ctx.S):
        members = set(F)
        dual = rel.dual_set(F)
        shifted = {rows[phi[rows[f][g]]][h] for f in F for g in dual for h in F}
        criterion = shifted <= members and set(rel.up(F)) == members
        if criterion != is_filter(ctx, F):
            return F
    return None


@_register("structure", _and(is_well_structured, has_zero))
def filter_with_zero_is_everything(ctx):
    """a filter containing 0 is all of S, and then 0 lies in Z."""
    return first(
        F.members for F in _filters(ctx)
        if ctx.zero in F and (F.members != ctx.S or ctx.zero not in ctx.Z_set)
    )


@_register("structure", _and(is_steinberg, has_zero))
def ultrafilters_meet_kernel_or_range(ctx):
    """every ultrafilter has a member u with Phi(u) = 0 or Phi(u) = u."""
    phi = ctx.phi
    return first(
        U.members for U in _ultrafilters(ctx)
        if not any(phi[u] in (ctx.zero, u) for u in U.members)
    )


@_register("structure", is_steinberg)
def ultrafilter_membership_criterion(ctx):
    """a Z-inverse of s lies in U iff 0 is not in Phi[Us]."""
    for i, U in enumerate(_ultrafilters(ctx)):
        witness = criterion_witness(ctx, U.members)
        if witness is not None:
            return (i,) + witness
    return None


@_register("structure", is_steinberg)
def slices_are_covering_bisections(ctx):
    """the slices of Z-invertibles are bisections covering the ultrafilters."""
    G = ultrafilter_groupoid(ctx)
    covered = set()
    for r in ctx.relations.dagger:
        arrows = G.slice(r)
        covered.update(arrows)
        if not G.groupoid.is_bisection(arrows):
            return (r,)
    missing = sorted(set(range(len(G))) - covered)
    return (missing[0],) if missing else None


@_register("structure", is_steinberg)
def range_of_slice(ctx):
    """a <_b' b sends the slice of a under r onto the slice of ab'."""
    G = ultrafilter_groupoid(ctx)
    rows = ctx.rows
    for a, b1, b in _witnessed_dominations(ctx):
        ranges = {G.range(i) for i in G.slice(a)}
        if ranges != set(G.slice(rows[a][b1])):
            return (a, b1, b)
    return None


# ====================================================== equivalence laws


def _filter_pool(ctx):
    """Filters used for the equivalence laws: all of them."""
    return _filters(ctx)


@_register("structure", is_well_structured)
def equivalence_is_equivalence_relation(ctx):
    """~_F is reflexive, symmetric and transitive for each filter F."""
    n = range(ctx.n)
    for k, F in enumerate(_filter_pool(ctx)):
        eq = _equivalence(ctx, F.members)
        for a in n:
            if not eq[a][a]:
                return (k, a)
            for b in n:
                if eq[a][b] != eq[b][a]:
                    return (k, a, b)
                if eq[a][b]:
                    bad = next((c for c in n if eq[b][c] and not eq[a][c]), None)
                    if bad is not None:
                        return (k, a, b, bad)
    return None


@_register("structure", is_well_structured)
def equivalence_one_sided_forms(ctx):
    """~_F can be tested with right or with left multipliers alone."""
    from .bundles import equivalent_left, equivalent_right

    n = range(ctx.n)
    for k, F in enumerate(_filter_pool(ctx)):
        eq = _equivalence(ctx, F.members)
        for a, b in product(n, repeat=2):
            if not (eq[a][b] == equivalent_right(ctx, a, b, F) == equivalent_left(ctx, a, b, F)):
                return (k, a, b)
    return None


@_register("structure", is_well_structured)
def equivalence_unchanged_by_closure(ctx):
    """~_T = ~_(T^<) for a self-dominated singleton T."""
    rel, n = ctx.relations, range(ctx.n)
    for t in rel.dagger:
        small = _equivalence(ctx, (t,))
        large = _equivalence(ctx, rel.up([t]))
        bad = first((t, a, b) for a in n for b in n if small[a][b] != large[a][b])
        if bad:
            return bad
    return None


@_register("structure", is_well_structured)
def equivalence_absorbs_right_units(ctx):
    """a ~_F az for every z in F^Z."""
    rel, rows = ctx.relations, ctx.rows
    for k, F in enumerate(_filter_pool(ctx)):
        eq = _equivalence(ctx, F.members)
        for z in rel.right_units_of_set(F.members):
            bad = next((a for a in range(ctx.n) if not eq[a][rows[a][z]]), None)
            if bad is not None:
                return (k, z, bad)
    return None


@_register("structure", is_well_structured)
def unit_filter_equivalence_by_units(ctx):
    """over a unit filter, a ~ b iff Phi(a)z = Phi(b)z for some z in F^Z, and a ~ Phi(a)."""
    rel, rows, phi, n = ctx.relations, ctx.rows, ctx.phi, range(ctx.n)
    for k, F in enumerate(_filter_pool(ctx)):
        if not _is_unit_filter(ctx, F):
            continue
        eq = _equivalence(ctx, F.members)
        units = rel.right_units_of_set(F.members)
        for a in n:
            if not eq[a][phi[a]]:
                return (k, a)
            for b in n:
                by_units = any(rows[phi[a]][z] == rows[phi[b]][z] for z in units)
                if eq[a][b] != by_units:
                    return (k, a, b)
    return None


@_register("structure", is_well_structured)
def equivalence_below_filter_by_dual(ctx):
    """below F, a ~ b iff at' = bt' for some t' in F*."""
    rel, rows = ctx.relations, ctx.rows
    for k, F in enumerate(_filter_pool(ctx)):
        eq = _equivalence(ctx, F.members)
        dual = rel.dual_set(F.members)
        below = rel.down(F.members)
        for a, b in product(below, repeat=2):
            if eq[a][b] != any(rows[a][t] == rows[b][t] for t in dual):
                return (k, a, b)
    return None


@_register("structure", is_well_structured)
def classes_meet_dominated_elements(ctx):
    """each class over F has a member Phi(au')u strictly below any given t in F."""
    rel, rows, phi = ctx.relations, ctx.rows, ctx.phi
    for k, F in enumerate(_filter_pool(ctx)):
        eq = _equivalence(ctx, F.members)
        chain = [(u, u1) for v, u1, u in _witnessed_dominations(ctx) if v in F]
        for t in F.members:
            for a in range(ctx.n):
                if not any(
                    rel.dom_rows[s][t] and eq[a][s]
                    for u, u1 in chain if rel.dom_rows[u][t]
                    for s in (rows[phi[rows[a][u1]]][u],)
                ):
                    return (k, t, a)
    return None


@_register("structure", is_well_structured)
def filter_below_closure_of_each_class(ctx):
    """every filter F lies in the up-closure of each ~_F class."""
    rel = ctx.relations
    for k, F in enumerate(_filter_pool(ctx)):
        eq = _equivalence(ctx, F.members)
        members = set(F.members)
        for a in range(ctx.n):
            if not members <= set(rel.up([b for b in range(ctx.n) if eq[a][b]])):
                return (k, a)
    return None


@_register("structure", is_well_structured)
def left_multiplication_carries_equivalence(ctx):
    """a ~_U b gives sa ~_(TU) sb for s below the up-closure of T."""
    rel, rows, n = ctx.relations, ctx.rows, range(ctx.n)
    pool = _filter_pool(ctx)
    for (i, T), (j, U) in product(enumerate(pool), repeat=2):
        eq_u = _equivalence(ctx, U.members)
        eq_tu = _equivalence(ctx, sorted({rows[t][u] for t in T.members for u in U.members}))
        for s in rel.down(rel.up(T.members)):
            bad = first((i, j, s, a, b) for a in n for b in n
                        if eq_u[a][b] and not eq_tu[rows[s][a]][rows[s][b]])
            if bad:
                return bad
    return None


@_register("structure", _and(is_steinberg, has_zero))
def ultrafilter_generated_by_nonzero_class(ctx):
    """a not ~_U 0 makes U the up-closure of the class of a."""
    rel = ctx.relations
    for i, U in enumerate(_ultrafilters(ctx)):
        eq = _equivalence(ctx, U.members)
        for a in range(ctx.n):
            if eq[a][ctx.zero]:
                continue
            cls = [b for b in range(ctx.n) if eq[a][b]]
            if rel.up(cls) != U.members:
                return (i, a)
    return None


# ====================================================== ultrafilter bundle


@_register("ultrafilter-bundle", is_steinberg)
def invertible_classes_are_members(ctx):
    """the invertible arrows over U are the classes of members of U."""
    UB = ultrafilter_bundle(ctx)
    core_arrows = UB.bundle.core
    for i, U in enumerate(UB.ultrafilters):
        from_members = {UB.arrow(a, i) for a in U.members}
        invertible = {c for c in UB.bundle.fibers[i] if c in core_arrows}
        if from_members != invertible:
            return (i,)
    return None


@_register("ultrafilter-bundle", is_steinberg)
def unit_classes_are_unit_filter_units(ctx):
    """the unit arrows are the classes of F^Z over unit ultrafilters."""
    UB = ultrafilter_bundle(ctx)
    rel = ctx.relations
    G = UB.groupoid
    expected = {
        UB.arrow(z, i) for i, U in enumerate(UB.ultrafilters) if G.is_unit(i)
        for z in rel.right_units_of_set(U.members)
    }
    diff = sorted(expected ^ set(UB.bundle.total.units))
    return (diff[0],) if diff else None


@_register("ultrafilter-bundle", is_steinberg)
def ends_given_by_local_units(ctx):
    """s([a,U]) = [z, s(U)] for all z in U^Z, and dually for ranges."""
    UB = ultrafilter_bundle(ctx)
    rel, G, total = ctx.relations, UB.groupoid, UB.bundle.total
    for (i, c), k in sorted(UB.arrow_index.items()):
        U = UB.ultrafilters[i].members
        for z in rel.right_units_of_set(U):
            if total.srcs[k] != UB.arrow(z, G.source(i)):
                return (k, z, 0)
        for z in rel.left_units_of_set(U):
            if total.rngs[k] != UB.arrow(z, G.range(i)):
                return (k, z, 1)
    return None


@_register("ultrafilter-bundle", is_steinberg)
def hat_is_bijective(ctx):
    """a -> a-hat is injective on S and onto the sections."""
    from .duality import eta

    try:
        eta(ctx)
    except SteindualError as exc:
        return tuple(exc.witness) if getattr(exc, "witness", None) else (0,)
    return None


@_register("ultrafilter-bundle", is_steinberg)
def hat_commutes_with_expectation(ctx):
    """Phi(a)-hat = Phi^rho(a-hat)."""
    from .duality import eta

    m = eta(ctx, check=False)
    structure = m.target
    return first(
        (a,) for a in m.domain
        if m.values[ctx.phi[a]] != structure.phi[m.values[a]]
    )


def _commutative_with_identity_expectation(ctx):
    rows, n = ctx.rows, range(ctx.n)
    return (ctx.phi == tuple(n) and all(rows[a][b] == rows[b][a] for a in n for b in n)
            and is_steinberg(ctx))


@_register("ultrafilter-bundle", _commutative_with_identity_expectation)
def commutative_spectrum_is_discrete(ctx):
    """with commutative multiplication and Phi the identity, every ultrafilter is a unit."""
    G = ultrafilter_groupoid(ctx)
    return first((i,) for i in range(len(G)) if not G.is_unit(i))


# ================================================================ bundles


@_register("bundle", lambda b: True)
def projection_bijective_on_units(bundle):
    """rho is a bijection from the total units onto the base units."""
    images = [bundle.rhos[c] for c in bundle.total.units]
    if len(set(images)) != len(images):
        return (bundle.total.units[0],)
    missing = sorted(set(bundle.base.units) - set(images))
    return (missing[0],) if missing else None


@_register("bundle", lambda b: True)
def core_closed_and_involutive(bundle):
    """the core is closed under composition and inversion is an involution on it."""
    core_arrows = bundle.core
    inverse = core_arrows.inverse
    total = bundle.total
    for a in core_arrows.arrows:
        if inverse[a] not in core_arrows or inverse[inverse[a]] != a:
            return (a,)
        for b in core_arrows.arrows:
            c = total.comp_rows[a][b]
            if c != UNDEFINED and c not in core_arrows:
                return (a, b)
    return None


def _bisections(base):
    arrows = range(base.size)
    for k in range(base.size + 1):
        for chosen in combinations(arrows, k):
            if base.is_bisection(chosen):
                yield chosen


@_register("bundle", lambda b: True)
def section_counts(bundle):
    """section counts equal fiber-size products over each bisection."""
    structure = sections_of(bundle)
    sizes = [len(f) for f in bundle.fibers]
    expected_slices = sum(
        reduce(lambda x, g: x * (sizes[g] - 1), chosen, 1) for chosen in _bisections(bundle.base)
    )
    if len(structure.S) != expected_slices:
        return (0, len(structure.S), expected_slices)
    if bundle.is_ringoid:
        total = reduce(lambda x, y: x * y, sizes, 1)
        if structure.n != total or len(all_section_values(bundle)) != total:
            return (1, structure.n, total)
    return None


@_register("bundle", lambda b: True)
def section_expectation_laws(bundle):
    """Phi^rho is idempotent, homogeneous and shiftable on sections."""
    structure = sections_of(bundle)
    rows, phi = structure.rows, structure.phi
    domain = range(structure.n)
    for a in domain:
        if phi[phi[a]] != phi[a]:
            return (0, a)
        values = structure.sections[a].values
        if structure.sections[phi[a]].values != expectation_values(bundle, values):
            return (1, a)
    for a, b in product(domain, repeat=2):
        left = rows[phi[a]][phi[b]]
        if not (left == phi[rows[phi[a]][b]] == phi[rows[a][phi[b]]]):
            return (2, a, b)
    for a, s in product(domain, structure.S):
        if rows[phi[rows[s][a]]][s] != rows[s][phi[rows[a][s]]]:
            return (3, a, s)
    return None


@_register("bundle", lambda b: True)
def unit_sections_are_characteristic(bundle):
    """unit-valued slice sections are the characteristic sections of sets of base units."""
    structure = sections_of(bundle)
    base_units = bundle.base.units
    expected = set()
    for chosen in [()] + list(_subsets(base_units)):
        values = list(bundle.zeros)
        for e in chosen:
            values[e] = bundle.unit_over(e)
        expected.add(tuple(values))
    found = {structure.sections[z].values for z in structure.Z}
    if found != expected:
        return (len(found), len(expected))
    return first((z,) for z in structure.Z
                 if not is_unit_valued(bundle, structure.sections[z].values))


@_register("bundle", lambda b: True)
def slice_sections_bisupported(bundle):
    """every slice-supported section has both supports."""
    structure = sections_of(bundle)
    rel = structure.relations
    return first((a,) for a in structure.S if rel.supports(a) is None)


@_register("bundle", lambda b: True)
def section_relations_by_support(bundle):
    """restriction, domination and orthogonality of sections read off supports."""
    from .sections import relation_characterizations

    report = relation_characterizations(sections_of(bundle))
    for k, (_, ok, witness) in enumerate(report.checks):
        if not ok:
            return (k,) + tuple(witness)
    return None


@_register("bundle", lambda b: True)
def evaluation_is_bundle_isomorphism(bundle):
    """evaluating sections at base arrows recovers the bundle."""
    from .duality import epsilon, validate_pierce_morphism

    try:
        p = epsilon(bundle)
    except SteindualError as exc:
        return tuple(exc.witness) if getattr(exc, "witness", None) else (0,)
    report = validate_pierce_morphism(p)
    if not report.passed:
        return tuple(report.failures()[0].witness or (1,))
    return None


@_register("bundle", lambda b: True)
def evaluation_agreement_is_equivalence(bundle):
    """a(g) = b(g) iff a ~ b over the ultrafilter of sections invertible at g."""
    from .duality import epsilon_low_matches_agreement

    return epsilon_low_matches_agreement(bundle)


# ================================================================ runners


def _subjects(obj):
    """(structure, bundle) views of a StructuredData or FiniteBundle value."""
    if isinstance(obj, FiniteBundle):
        return sections_of(obj), obj
    if isinstance(obj, StructuredData):
        bundle = ultrafilter_bundle(obj).bundle if is_steinberg(obj) else None
        return obj, bundle
    raise TypeError(f"no properties for {type(obj).__name__}")


def run_property(prop, obj):
    structure, bundle = _subjects(obj)
    subject = bundle if prop.kind == "bundle" else structure
    if subject is None or not prop.applies(subject):
        return PropertyResult(prop.name, prop.kind, False)
    return PropertyResult(prop.name, prop.kind, True, prop.find(subject))


def run_properties(obj, names=None):
    """Run the registry (or the named subset) on a structure or bundle."""
    chosen = PROPERTIES if names is None else [p for p in PROPERTIES if p.name in names]
    return [run_property(p, obj) for p in chosen]


def property_named(name):
    for p in PROPERTIES:
        if p.name == name:
            return p
    raise KeyError(name)
