"""The ultrafilter bundle of a Steinberg semigroup or ring.

Over each ultrafilter U the fiber is the set of ~_U classes of the carrier,
where a ~_U b when some s in the dual U* gives Phi(as) = Phi(bs) and
Phi(sa) = Phi(sb).  Classes are multiplied through a representative that is
dominated by a member of U; the representative Phi(a m') m built from the
ultrafilter's generator m and its Z-inverse m' is tried first and checked.
"""

import numpy as np

from .axioms import require_profile
from .core import UNDEFINED, FiniteBundle, FiniteCategory, FiniteRingoidBundle
from .errors import IllDefined, RepresentativeNotFound
from .filters import Filter, ultrafilter_groupoid
from .sections import Section


def _members(F):
    return tuple(F.members) if isinstance(F, Filter) else tuple(sorted(set(F)))


def equivalent(ctx, a, b, F):
    """a ~_F b, two-sided."""
    rows, phi = ctx.rows, ctx.phi
    for s in ctx.relations.dual_set(_members(F)):
        if phi[rows[a][s]] == phi[rows[b][s]] and phi[rows[s][a]] == phi[rows[s][b]]:
            return True
    return False


def equivalent_right(ctx, a, b, F):
    """Some s in F* has Phi(as) = Phi(bs)."""
    rows, phi = ctx.rows, ctx.phi
    return any(phi[rows[a][s]] == phi[rows[b][s]] for s in ctx.relations.dual_set(_members(F)))


def equivalent_left(ctx, a, b, F):
    """Some s in F* has Phi(sa) = Phi(sb)."""
    rows, phi = ctx.rows, ctx.phi
    return any(phi[rows[s][a]] == phi[rows[s][b]] for s in ctx.relations.dual_set(_members(F)))


def class_labels(ctx, F):
    """Per carrier element, the least member of its ~_F class.

    Each s in F* contributes the partition by (Phi(as), Phi(sa)); the classes
    are the connected components of the union.
    """
    n = ctx.n
    mult = ctx.carrier.mult
    phi = np.asarray(ctx.phi, dtype=np.int64)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in ctx.relations.dual_set(_members(F)):
        keys = phi[mult[:, s]] * n + phi[mult[s, :]]
        first = {}
        for a, key in enumerate(keys.tolist()):
            root = first.setdefault(key, a)
            if root != a:
                ra, rb = find(root), find(a)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    labels = [find(a) for a in range(n)]
    least = {}
    for a, root in enumerate(labels):
        least.setdefault(root, a)
    return np.array([least[r] for r in labels], dtype=np.int64)


class UltrafilterBundle:
    """The ultrafilter bundle with its bookkeeping.

    ``bundle`` is the validated FiniteBundle (FiniteRingoidBundle for rings);
    arrow ``arrow_index[(i, c)]`` is the class with canonical member c over
    ultrafilter i.
    """

    def __init__(self, ctx, groupoid, labels, classes, arrow_index, bundle, down_sets):
        self.ctx = ctx
        self.groupoid = groupoid
        self.labels = labels
        self.classes = classes
        self.arrow_index = arrow_index
        self.bundle = bundle
        self.down_sets = down_sets

    @property
    def ultrafilters(self):
        return self.groupoid.filters

    def arrow(self, a, i):
        """The total arrow [a, U_i]."""
        return self.arrow_index[(i, int(self.labels[i][a]))]

    def members_of(self, arrow):
        i, c = self.arrow_key(arrow)
        return self.classes[i][c]

    def arrow_key(self, arrow):
        cached = self.__dict__.get("_keys")
        if cached is None:
            cached = {v: k for k, v in self.arrow_index.items()}
            self.__dict__["_keys"] = cached
        return cached[arrow]

    def representative(self, a, i, method="fast"):
        return representative(self.ctx, self.groupoid.filters[i], self.labels[i],
                              self.down_sets[i], a, method)


def representative(ctx, U, labels, down, a, method="fast"):
    """An element of S, dominated by a member of U, in the class of a."""
    target = labels[a]
    if method == "fast" and U.generator is not None:
        m = U.generator
        inverses = ctx.relations.z_inverses(m)
        if inverses:
            candidate = ctx.rows[ctx.phi[ctx.rows[a][inverses[0]]]][m]
            if labels[candidate] == target and candidate in down:
                return candidate
    for s in ctx.S:
        if s in down and labels[s] == target:
            return s
    raise RepresentativeNotFound((a,), "no dominated representative in the class")


def build_bundle(ctx, check=True):
    """The ultrafilter (ringoid) bundle of a Steinberg semigroup (ring)."""
    require_profile(ctx, "steinberg-ring" if ctx.is_ring else "steinberg-semigroup")
    groupoid = ultrafilter_groupoid(ctx)
    base = groupoid.groupoid
    rel, rows = ctx.relations, ctx.rows
    ultrafilters = groupoid.filters

    labels, classes, down_sets = [], [], []
    names, rho, arrow_index = [], [], {}
    for i, U in enumerate(ultrafilters):
        lab = class_labels(ctx, U)
        labels.append(lab)
        members = {}
        for a, c in enumerate(lab.tolist()):
            members.setdefault(c, []).append(a)
        classes.append({c: tuple(v) for c, v in sorted(members.items())})
        down_sets.append(frozenset(rel.down(U.members, within=ctx.S)))
        label = U.label(ctx)
        for c in sorted(members):
            arrow_index[(i, c)] = len(names)
            names.append(f"[{ctx.name_of(c)}|{label}]")
            rho.append(i)
    n = len(names)

    def arrow(a, i):
        return arrow_index[(i, int(labels[i][a]))]

    src, rng = [0] * n, [0] * n
    for (i, c), k in arrow_index.items():
        U = ultrafilters[i].members
        right = rel.right_units_of_set(U)
        left = rel.left_units_of_set(U)
        src[k] = arrow(right[0], groupoid.source(i))
        rng[k] = arrow(left[0], groupoid.range(i))

    reps = {}
    for (i, c), k in arrow_index.items():
        reps[k] = representative(ctx, ultrafilters[i], labels[i], down_sets[i], c)

    compose = [[UNDEFINED] * n for _ in range(n)]
    for (i, c), k in arrow_index.items():
        for (j, d), l in arrow_index.items():
            if groupoid.source(i) != groupoid.range(j):
                continue
            ij = groupoid.product(i, j)
            compose[k][l] = arrow(rows[reps[k]][d], ij)
            if check:
                _check_product(ctx, labels, classes, down_sets, (i, c), (j, d), ij)

    total = FiniteCategory(names, src, rng, compose)
    zero = [arrow(ctx.zero, i) for i in range(len(ultrafilters))]
    if ctx.is_ring:
        fadd = [[UNDEFINED] * n for _ in range(n)]
        ring = ctx.carrier
        for (i, c), k in arrow_index.items():
            for (j, d), l in arrow_index.items():
                if i != j:
                    continue
                fadd[k][l] = arrow(ring.add_rows[c][d], i)
                if check:
                    _check_sum(ctx, labels[i], classes[i][c], classes[i][d], fadd[k][l],
                               arrow_index, i)
        bundle = FiniteRingoidBundle(total, base, rho, zero, fadd)
    else:
        bundle = FiniteBundle(total, base, rho, zero)
    return UltrafilterBundle(ctx, groupoid, labels, classes, arrow_index, bundle, down_sets)


def _check_product(ctx, labels, classes, down_sets, left, right, ij):
    """Every dominated representative pair gives the same product class."""
    (i, c), (j, d) = left, right
    mult = ctx.carrier.mult
    lefts = [a for a in classes[i][c] if a in down_sets[i]]
    rights = np.array(classes[j][d], dtype=np.int64)
    if not lefts:
        raise RepresentativeNotFound((c,), "class has no dominated member")
    products = labels[ij][mult[np.ix_(lefts, rights)]]
    if (products != products.flat[0]).any():
        a, b = np.argwhere(products != products.flat[0])[0]
        raise IllDefined((lefts[a], int(rights[b]), ij), "product depends on representatives")


def _check_sum(ctx, lab, left, right, expected, arrow_index, i):
    add = ctx.carrier.add
    sums = lab[add[np.ix_(list(left), list(right))]]
    first = arrow_index[(i, int(sums.flat[0]))]
    if (sums != sums.flat[0]).any() or first != expected:
        raise IllDefined((left[0], right[0], i), "sum depends on representatives")


def hat(ctx, ubundle, a):
    """The section U -> [a, U]."""
    values = tuple(ubundle.arrow(a, i) for i in range(len(ubundle.ultrafilters)))
    return Section(values, ubundle.bundle)


def ultrafilter_bundle(ctx):
    """build_bundle(ctx), cached on ``ctx`` so that morphisms built later all
    refer to the same bundle object."""
    cached = ctx.__dict__.get("_ultrafilter_bundle")
    if cached is None:
        cached = build_bundle(ctx)
        ctx.__dict__["_ultrafilter_bundle"] = cached
    return cached
