"""Filters and ultrafilters of a well-structured semigroup, and the groupoid
structure the ultrafilters carry.

A filter is a nonempty F inside S with ``a, b in F`` exactly when some
``f in F`` lies strictly below both.  On a finite carrier every such F has a
least element m with m < m, so the enumeration only visits the sets m^< for
Z-invertible m and keeps the ones passing the filter test.
"""

from dataclasses import dataclass, field

from .axioms import require_profile
from .core import UNDEFINED, FiniteGroupoid
from .errors import NotClosed


@dataclass(frozen=True)
class Filter:
    """A filter, identified by its sorted member tuple."""

    members: tuple
    generator: object = field(default=None, compare=False)

    def __contains__(self, a):
        return a in self.member_set

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def member_set(self):
        cached = self.__dict__.get("_set")
        if cached is None:
            cached = frozenset(self.members)
            object.__setattr__(self, "_set", cached)
        return cached

    def label(self, ctx):
        return "{" + ",".join(ctx.names(self.members)) + "}"


def is_filter(ctx, members):
    """Decide the filter condition for an arbitrary subset of S."""
    members = set(members)
    if not members or not members <= ctx.S_set:
        return False
    dom = ctx.relations.dom_rows
    for f in members:
        if any(dom[f][a] and a not in members for a in ctx.S):
            return False
    for a in members:
        for b in members:
            if not any(dom[f][a] and dom[f][b] for f in members):
                return False
    return True


def is_proper(ctx, members):
    if ctx.zero is not None:
        return ctx.zero not in members
    return set(members) != ctx.S_set


def enumerate_filters(ctx):
    """All nonempty filters, sorted by (size, members)."""
    require_profile(ctx, "well-structured-semigroup")
    rel = ctx.relations
    found = {}
    for m in rel.dagger:
        members = rel.up([m])
        if members not in found and is_filter(ctx, members):
            found[members] = Filter(members, generator=m)
    return sorted(found.values(), key=lambda F: (len(F), F.members))


def enumerate_ultrafilters(ctx):
    """Maximal proper filters, sorted by members."""
    proper = [F for F in enumerate_filters(ctx) if is_proper(ctx, F.members)]
    maximal = [
        F for F in proper
        if not any(F is not G and F.member_set < G.member_set for G in proper)
    ]
    return sorted(maximal, key=lambda F: F.members)


# ------------------------------------------------------- coset operations


def closure(ctx, T):
    """T^< inside S."""
    return ctx.relations.up(T)


def coset_source(ctx, F):
    """s(F) = (F*F)^<."""
    rel = ctx.relations
    return closure(ctx, rel.product_set(rel.dual_set(F), F))


def coset_range(ctx, F):
    """r(F) = (FF*)^<."""
    rel = ctx.relations
    return closure(ctx, rel.product_set(F, rel.dual_set(F)))


def coset_product(ctx, F, G):
    """F . G = (FG)^<."""
    return closure(ctx, ctx.relations.product_set(F, G))


def coset_inverse(ctx, F):
    """F^-1 = F*."""
    return ctx.relations.dual_set(F)


class CosetGroupoid:
    """A list of filters closed under the coset operations, packaged as a
    FiniteGroupoid whose arrow i is ``filters[i]``."""

    def __init__(self, ctx, filters):
        self.ctx = ctx
        self.filters = tuple(filters)
        self.position = {F.members: i for i, F in enumerate(self.filters)}
        n = len(self.filters)

        def locate(members, witness):
            i = self.position.get(tuple(members))
            if i is None:
                raise NotClosed(witness, "coset operation left the filter list")
            return i

        src = [locate(coset_source(ctx, F), (i,)) for i, F in enumerate(self.filters)]
        rng = [locate(coset_range(ctx, F), (i,)) for i, F in enumerate(self.filters)]
        inv = [locate(coset_inverse(ctx, F), (i,)) for i, F in enumerate(self.filters)]
        compose = [[UNDEFINED] * n for _ in range(n)]
        for i, F in enumerate(self.filters):
            for j, G in enumerate(self.filters):
                if src[i] == rng[j]:
                    compose[i][j] = locate(coset_product(ctx, F, G), (i, j))
        self.groupoid = FiniteGroupoid(
            [F.label(ctx) for F in self.filters], src, rng, compose, inv
        )
        phi = ctx.phi
        self.unit_flags = tuple(
            all(phi[a] in F for a in F.members) for F in self.filters
        )

    def __len__(self):
        return len(self.filters)

    def index_of(self, members):
        return self.position.get(tuple(sorted(members)))

    def source(self, i):
        return self.groupoid.srcs[i]

    def range(self, i):
        return self.groupoid.rngs[i]

    def inverse(self, i):
        return self.groupoid.invs[i]

    def product(self, i, j):
        return self.groupoid.comp(i, j)

    def is_unit(self, i):
        return self.groupoid.is_unit(i)

    def slice(self, r):
        """The arrows whose filter contains r."""
        return tuple(i for i, F in enumerate(self.filters) if r in F)


def ultrafilter_groupoid(ctx):
    """The ultrafilters with s(U) = (U*U)^<, r(U) = (UU*)^<, U.V = (UV)^< and
    U^-1 = U*.  Cached on ``ctx``."""
    cached = ctx.__dict__.get("_ultrafilter_groupoid")
    if cached is None:
        cached = CosetGroupoid(ctx, enumerate_ultrafilters(ctx))
        ctx.__dict__["_ultrafilter_groupoid"] = cached
    return cached


def filter_groupoid(ctx):
    """All nonempty filters under the same coset operations."""
    return CosetGroupoid(ctx, enumerate_filters(ctx))


# ------------------------------------------------------ ultrafilter checks


@dataclass(frozen=True)
class UltrafilterProperties:
    prime: bool
    prime_witness: object
    phi_witness: object
    criterion_holds: bool
    criterion_witness: object


def primality_witness(ctx, members):
    """An orthogonal pair a, b of Z-invertibles with a v b in the set but
    neither a nor b in it, or None when the set is prime."""
    rel = ctx.relations
    members = set(members)
    dagger = rel.dagger
    for a in dagger:
        for b in dagger:
            if not rel.orthogonal(a, b):
                continue
            join = rel.supremum(a, b)
            if join in members and a not in members and b not in members:
                return (a, b)
    return None


def criterion_witness(ctx, members):
    """A pair (a, s) with a a Z-inverse of s for which ``a in U`` disagrees
    with ``0 not in Phi[Us]``, or None."""
    rel, rows, phi = ctx.relations, ctx.rows, ctx.phi
    members = set(members)
    for s in ctx.S:
        images = {phi[rows[u][s]] for u in members}
        for a in rel.z_inverses(s):
            if (a in members) != (ctx.zero not in images):
                return (a, s)
    return None


def ultrafilter_properties(ctx, U):
    members = tuple(U.members) if isinstance(U, Filter) else tuple(sorted(U))
    prime = primality_witness(ctx, members)
    phi = ctx.phi
    phi_witness = next(
        (u for u in members if phi[u] == ctx.zero or phi[u] == u), None
    )
    criterion = criterion_witness(ctx, members)
    return UltrafilterProperties(
        prime=prime is None,
        prime_witness=prime,
        phi_witness=phi_witness,
        criterion_holds=criterion is None,
        criterion_witness=criterion,
    )
