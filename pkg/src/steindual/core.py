"""Finite carriers: semigroups, rings, categories, groupoids and bundles.

Elements and arrows are identified by their index in an ordered name list and
every operation is a table of indices.  Partial composition uses ``UNDEFINED``.
Constructors validate by default; ``check=False`` skips validation for values
that are already known to be valid (for instance when re-deriving tables).
"""

from itertools import product

import numpy as np

from . import kernels
from .errors import (
    BadZero,
    CoreNotSurjective,
    NonAssociative,
    NotAbelianGroup,
    NotCategory,
    NotDistributive,
    NotFunctor,
    NotGroupoid,
    NotIsofibration,
    ZeroLawFails,
)
from .laws import Law, guard_size, raise_first, single

UNDEFINED = -1


def _table(values, n_rows=None, n_cols=None):
    arr = np.array(values, dtype=np.int32)
    if arr.size == 0:
        arr = arr.reshape(n_rows or 0, n_cols or 0)
    arr.setflags(write=False)
    return arr


def _vector(values):
    arr = np.array(list(values), dtype=np.int32)
    arr.setflags(write=False)
    return arr


def locate_zero(rows):
    """The unique absorbing element of a total table, or None."""
    n = len(rows)
    for x in range(n):
        if all(rows[x][y] == x and rows[y][x] == x for y in range(n)):
            return x
    return None


class FiniteSemigroup:
    """A nonempty finite semigroup given by its multiplication table."""

    is_ring = False

    def __init__(self, elements, mult, zero=None, check=True):
        self.elements = tuple(str(e) for e in elements)
        n = len(self.elements)
        guard_size(n)
        self.mult = _table(mult, n, n)
        self.rows = self.mult.tolist()
        self.index = {name: i for i, name in enumerate(self.elements)}
        if check:
            _check_shape(self.elements, self.mult, "mult")
            if len(self.index) != n:
                raise ValueError("element names must be distinct")
            witness = kernels.find_nonassociative(self.mult)
            if witness is not None:
                raise NonAssociative(witness)
        actual = locate_zero(self.rows) if n else None
        if zero is not None:
            zero = int(zero)
            if zero != actual:
                for x in range(n):
                    if self.rows[zero][x] != zero or self.rows[x][zero] != zero:
                        raise BadZero((x,), f"declared zero {self.elements[zero]} is not absorbing")
        self.zero = actual

    @property
    def size(self):
        return len(self.elements)

    def mul(self, a, b):
        return self.rows[a][b]

    def name(self, i):
        return self.elements[i]

    def __repr__(self):
        return f"{type(self).__name__}({self.size} elements)"


class FiniteRing(FiniteSemigroup):
    """A finite ring: abelian group (add, neg, zero) with an associative,
    distributive product."""

    is_ring = True

    def __init__(self, elements, add, neg, zero, mult, check=True):
        self.elements = tuple(str(e) for e in elements)
        n = len(self.elements)
        guard_size(n)
        self.add = _table(add, n, n)
        self.neg = _vector(neg)
        self.mult = _table(mult, n, n)
        self.rows = self.mult.tolist()
        self.add_rows = self.add.tolist()
        self.negs = self.neg.tolist()
        self.index = {name: i for i, name in enumerate(self.elements)}
        self.zero = int(zero)
        if check:
            _check_shape(self.elements, self.add, "add")
            _check_shape(self.elements, self.mult, "mult")
            if len(self.negs) != n:
                raise ValueError("neg table has the wrong length")
            _check_ring(self)

    def plus(self, a, b):
        return self.add_rows[a][b]

    def minus(self, a, b):
        return self.add_rows[a][self.negs[b]]

    def sum(self, items):
        total = self.zero
        for x in items:
            total = self.add_rows[total][x]
        return total


def _check_shape(elements, table, key):
    n = len(elements)
    if n == 0:
        raise ValueError("carriers are never empty")
    if table.shape != (n, n):
        raise ValueError(f"{key} table must be {n}x{n}")
    if table.size and (table.min() < 0 or table.max() >= n):
        raise ValueError(f"{key} table has out-of-range entries")


def _check_ring(ring):
    n = ring.size
    add, neg, zero = ring.add_rows, ring.negs, ring.zero
    for a in range(n):
        if add[a][zero] != a or add[zero][a] != a:
            raise NotAbelianGroup((a,), "zero is not an additive identity")
        if add[a][neg[a]] != zero:
            raise NotAbelianGroup((a,), "neg is not an additive inverse")
        for b in range(n):
            if add[a][b] != add[b][a]:
                raise NotAbelianGroup((a, b), "addition is not commutative")
    witness = kernels.find_nonassociative(ring.add)
    if witness is not None:
        raise NotAbelianGroup(witness, "addition is not associative")
    witness = kernels.find_nonassociative(ring.mult)
    if witness is not None:
        raise NonAssociative(witness)
    mul = ring.rows
    for a, b, c in product(range(n), repeat=3):
        if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
            raise NotDistributive((a, b, c), "left distributivity")
        if mul[add[a][b]][c] != add[mul[a][c]][mul[b][c]]:
            raise NotDistributive((a, b, c), "right distributivity")


def validate_semigroup(elements, mult, zero=None):
    """Validated FiniteSemigroup, or raise NonAssociative / BadZero."""
    return FiniteSemigroup(elements, mult, zero)


def validate_ring(elements, add, neg, zero, mult):
    return FiniteRing(elements, add, neg, zero, mult)


# ---------------------------------------------------------------- categories


class FiniteCategory:
    """A finite small category with arrows indexed 0..n-1.

    ``src`` and ``rng`` send arrows to unit arrows; ``compose[a][b]`` is the
    composite ab (first b, then a) and is defined exactly when
    src(a) == rng(b).
    """

    is_groupoid = False

    def __init__(self, arrows, src, rng, compose, check=True):
        self.arrows = tuple(str(a) for a in arrows)
        n = len(self.arrows)
        guard_size(n, "category")
        self.src = _vector(src)
        self.rng = _vector(rng)
        self.compose = _table(compose, n, n)
        self.srcs = self.src.tolist()
        self.rngs = self.rng.tolist()
        self.comp_rows = self.compose.tolist()
        self.index = {name: i for i, name in enumerate(self.arrows)}
        self.units = tuple(sorted(set(self.srcs) | set(self.rngs)))
        self.unit_set = frozenset(self.units)
        if check:
            raise_first(category_laws(), self, lambda law: NotCategory)

    @property
    def size(self):
        return len(self.arrows)

    def composable(self, a, b):
        return self.srcs[a] == self.rngs[b]

    def comp(self, a, b):
        c = self.comp_rows[a][b]
        if c == UNDEFINED:
            raise ValueError(f"composite of {self.arrows[a]} and {self.arrows[b]} is undefined")
        return c

    def is_unit(self, a):
        return a in self.unit_set

    def core(self):
        return core(self)

    def __repr__(self):
        return f"{type(self).__name__}({self.size} arrows, {len(self.units)} units)"


def category_laws():
    def arrows(c):
        return ((a,) for a in range(c.size))

    def pairs(c):
        return product(range(c.size), repeat=2)

    def triples(c):
        n = c.size
        for a in range(n):
            for b in range(n):
                if c.srcs[a] != c.rngs[b]:
                    continue
                for d in range(n):
                    if c.srcs[b] == c.rngs[d]:
                        yield (a, b, d)

    def unit_fixed(c, a):
        if a not in c.unit_set:
            return True
        return c.srcs[a] == a and c.rngs[a] == a

    def defined_exactly(c, a, b):
        defined = c.comp_rows[a][b] != UNDEFINED
        return defined == (c.srcs[a] == c.rngs[b])

    def ends(c, a, b):
        ab = c.comp_rows[a][b]
        if ab == UNDEFINED:
            return True
        return c.srcs[ab] == c.srcs[b] and c.rngs[ab] == c.rngs[a]

    def unit_laws(c, a):
        return c.comp_rows[a][c.srcs[a]] == a and c.comp_rows[c.rngs[a]][a] == a

    def assoc(c, a, b, d):
        r = c.comp_rows
        return r[r[a][b]][d] == r[a][r[b][d]]

    return [
        Law("units fixed by source and range", arrows, unit_fixed),
        Law("composition defined exactly on composable pairs", pairs, defined_exactly),
        Law("source and range of composites", pairs, ends),
        Law("unit laws", arrows, unit_laws),
        Law("associativity where defined", triples, assoc),
    ]


class FiniteGroupoid(FiniteCategory):
    is_groupoid = True

    def __init__(self, arrows, src, rng, compose, inv, check=True):
        super().__init__(arrows, src, rng, compose, check=check)
        self.inv = _vector(inv)
        self.invs = self.inv.tolist()
        if check:
            for a in range(self.size):
                b = self.invs[a]
                if not (self.composable(b, a) and self.composable(a, b)):
                    raise NotGroupoid((a,), "inverse is not composable")
                if self.comp(b, a) != self.srcs[a] or self.comp(a, b) != self.rngs[a]:
                    raise NotGroupoid((a,), "inverse law fails")

    def is_bisection(self, arrows):
        """Source and range are injective on ``arrows``."""
        arrows = list(arrows)
        return len({self.srcs[g] for g in arrows}) == len(arrows) == len(
            {self.rngs[g] for g in arrows}
        )


class Core:
    """The invertible arrows of a category with their inverses."""

    def __init__(self, arrows, inverse):
        self.arrows = tuple(arrows)
        self.inverse = dict(inverse)
        self.arrow_set = frozenset(self.arrows)

    def __contains__(self, a):
        return a in self.arrow_set

    def __len__(self):
        return len(self.arrows)


def core(category):
    """The core C^x: arrows with a two-sided inverse, and the inverse map."""
    n = category.size
    inverse = {}
    for a in range(n):
        for b in range(n):
            if not (category.composable(b, a) and category.composable(a, b)):
                continue
            if category.comp(b, a) == category.srcs[a] and category.comp(a, b) == category.rngs[a]:
                inverse[a] = b
                break
    return Core(sorted(inverse), inverse)


def groupoid_from_category(category):
    """Reinterpret a category all of whose arrows are invertible as a groupoid."""
    c = core(category)
    if len(c) != category.size:
        missing = next(a for a in range(category.size) if a not in c)
        raise NotGroupoid((missing,), "arrow is not invertible")
    return FiniteGroupoid(
        category.arrows, category.srcs, category.rngs, category.comp_rows,
        [c.inverse[a] for a in range(category.size)], check=False,
    )


def pair_groupoid(n, names=None):
    """The pair groupoid on n objects; arrow (i, j) has range i and source j."""
    objects = list(names) if names is not None else [str(i + 1) for i in range(n)]
    pairs = [(i, j) for i in range(n) for j in range(n)]
    pos = {p: k for k, p in enumerate(pairs)}
    arrows = [f"({objects[i]},{objects[j]})" for i, j in pairs]
    src = [pos[(j, j)] for i, j in pairs]
    rng = [pos[(i, i)] for i, j in pairs]
    compose = [
        [pos[(i, l)] if j == k else UNDEFINED for (k, l) in pairs] for (i, j) in pairs
    ]
    inv = [pos[(j, i)] for i, j in pairs]
    return FiniteGroupoid(arrows, src, rng, compose, inv)


def discrete_groupoid(n, names=None):
    """n units and no other arrows."""
    objects = list(names) if names is not None else [str(i + 1) for i in range(n)]
    compose = [[i if i == j else UNDEFINED for j in range(n)] for i in range(n)]
    return FiniteGroupoid(objects, range(n), range(n), compose, range(n))


def cyclic_groupoid(m):
    """The cyclic group of order m as a one-object groupoid."""
    compose = [[(i + j) % m for j in range(m)] for i in range(m)]
    return FiniteGroupoid([f"c{i}" for i in range(m)], [0] * m, [0] * m, compose,
                          [(-i) % m for i in range(m)])


def groupoid_product(left, right):
    """Componentwise product; arrow (g, h) is named "g*h"."""
    pairs = list(product(range(left.size), range(right.size)))
    pos = {p: k for k, p in enumerate(pairs)}
    compose = []
    for g, h in pairs:
        row = []
        for g2, h2 in pairs:
            a, b = left.comp_rows[g][g2], right.comp_rows[h][h2]
            row.append(UNDEFINED if UNDEFINED in (a, b) else pos[(a, b)])
        compose.append(row)
    return FiniteGroupoid(
        [f"{left.arrows[g]}*{right.arrows[h]}" for g, h in pairs],
        [pos[(left.srcs[g], right.srcs[h])] for g, h in pairs],
        [pos[(left.rngs[g], right.rngs[h])] for g, h in pairs],
        compose,
        [pos[(left.invs[g], right.invs[h])] for g, h in pairs],
    )


def disjoint_union(parts):
    """Side-by-side union; arrows of part k get the prefix "k:"."""
    offsets, total = [], 0
    for G in parts:
        offsets.append(total)
        total += G.size
    arrows, src, rng, inv = [], [], [], []
    compose = [[UNDEFINED] * total for _ in range(total)]
    for k, (G, off) in enumerate(zip(parts, offsets)):
        arrows += [f"{k}:{a}" for a in G.arrows]
        src += [s + off for s in G.srcs]
        rng += [r + off for r in G.rngs]
        inv += [i + off for i in G.invs]
        for g in range(G.size):
            for h in range(G.size):
                c = G.comp_rows[g][h]
                if c != UNDEFINED:
                    compose[g + off][h + off] = c + off
    return FiniteGroupoid(arrows, src, rng, compose, inv)


def is_functor(source, target, mapping):
    """First witness against ``mapping`` being a functor, or None."""
    for a in source.units:
        if mapping[a] not in target.unit_set:
            return (a,)
    for a in range(source.size):
        if mapping[source.srcs[a]] != target.srcs[mapping[a]]:
            return (a,)
        if mapping[source.rngs[a]] != target.rngs[mapping[a]]:
            return (a,)
    for a in range(source.size):
        for b in range(source.size):
            ab = source.comp_rows[a][b]
            if ab == UNDEFINED:
                continue
            if target.comp_rows[mapping[a]][mapping[b]] != mapping[ab]:
                return (a, b)
    return None


# ------------------------------------------------------------------- bundles


class FiniteBundle:
    """A projection functor ``rho`` from a total category onto a base groupoid,
    with a zero section ``zero`` (base arrow -> total arrow)."""

    is_ringoid = False

    def __init__(self, total, base, rho, zero, check=True):
        self.total = total
        self.base = base
        self.rho = _vector(rho)
        self.zero = _vector(zero)
        self.rhos = self.rho.tolist()
        self.zeros = self.zero.tolist()
        fibers = [[] for _ in range(base.size)]
        for c, g in enumerate(self.rhos):
            fibers[g].append(c)
        self.fibers = tuple(tuple(f) for f in fibers)
        self.zero_set = frozenset(self.zeros)
        self._core = None
        if check:
            validate_bundle(self)

    @property
    def core(self):
        if self._core is None:
            self._core = core(self.total)
        return self._core

    def fiber(self, g):
        return self.fibers[g]

    def unit_over(self, e):
        """The unique total unit 1_e over a base unit e."""
        for c in self.fibers[e]:
            if c in self.total.unit_set:
                return c
        raise ValueError(f"no unit over {self.base.arrows[e]}")

    def is_zero(self, c):
        return c in self.zero_set

    def __repr__(self):
        return (
            f"{type(self).__name__}({self.total.size} total arrows over "
            f"{self.base.size} base arrows)"
        )


class FiniteRingoidBundle(FiniteBundle):
    """A bundle whose fibers are abelian groups under ``fadd`` (a partial table,
    defined exactly on pairs in a common fiber)."""

    is_ringoid = True

    def __init__(self, total, base, rho, zero, fadd, check=True):
        n = total.size
        self.fadd = _table(fadd, n, n)
        self.fadd_rows = self.fadd.tolist()
        super().__init__(total, base, rho, zero, check=False)
        negs = []
        for c in range(n):
            z = self.zeros[self.rhos[c]]
            found = [d for d in self.fibers[self.rhos[c]] if self.fadd_rows[c][d] == z]
            negs.append(found[0] if found else UNDEFINED)
        self.fneg = tuple(negs)
        if check:
            validate_bundle(self)

    def plus(self, c, d):
        value = self.fadd_rows[c][d]
        if value == UNDEFINED:
            raise ValueError("fiberwise sum of arrows in different fibers")
        return value


def bundle_laws(ringoid=False):
    def total_arrows(b):
        return ((c,) for c in range(b.total.size))

    def base_arrows(b):
        return ((g,) for g in range(b.base.size))

    def total_pairs(b):
        return product(range(b.total.size), repeat=2)

    def functor_units(b, c):
        if c in b.total.unit_set and b.rhos[c] not in b.base.unit_set:
            return False
        return (b.rhos[b.total.srcs[c]] == b.base.srcs[b.rhos[c]]
                and b.rhos[b.total.rngs[c]] == b.base.rngs[b.rhos[c]])

    def functor_products(b, c, d):
        cd = b.total.comp_rows[c][d]
        if cd == UNDEFINED:
            return True
        return b.base.comp_rows[b.rhos[c]][b.rhos[d]] == b.rhos[cd]

    def unit_injective(b, c, d):
        t = b.total.unit_set
        if c not in t or d not in t or c == d:
            return True
        return b.rhos[c] != b.rhos[d]

    def zero_projects(b, g):
        return b.rhos[b.zeros[g]] == g

    def zero_left(b, c, g):
        # c . 0_g = 0_{rho(c) g} whenever s(rho(c)) = r(g)
        if b.base.srcs[b.rhos[c]] != b.base.rngs[g]:
            return True
        cz = b.total.comp_rows[c][b.zeros[g]]
        return cz != UNDEFINED and cz == b.zeros[b.base.comp_rows[b.rhos[c]][g]]

    def zero_right(b, g, c):
        if b.base.srcs[g] != b.base.rngs[b.rhos[c]]:
            return True
        zc = b.total.comp_rows[b.zeros[g]][c]
        return zc != UNDEFINED and zc == b.zeros[b.base.comp_rows[g][b.rhos[c]]]

    def zero_cases(b):
        return product(range(b.total.size), range(b.base.size))

    def zero_cases_right(b):
        return product(range(b.base.size), range(b.total.size))

    def core_covers(b, g):
        return any(c in b.core for c in b.fibers[g])

    laws = [
        Law("functor on units", total_arrows, functor_units),
        Law("functor on products", total_pairs, functor_products),
        Law("isofibration (injective on units)", total_pairs, unit_injective),
        Law("zero section projects", base_arrows, zero_projects),
        Law("zero section absorbs on the right", zero_cases, zero_left),
        Law("zero section absorbs on the left", zero_cases_right, zero_right),
        Law("core surjectivity", base_arrows, core_covers),
    ]
    if ringoid:
        laws.extend(_ringoid_laws())
    return laws


def _ringoid_laws():
    def same_fiber_pairs(b):
        for fiber in b.fibers:
            for c in fiber:
                for d in fiber:
                    yield (c, d)

    def defined_exactly(b, c, d):
        defined = b.fadd_rows[c][d] != UNDEFINED
        same = b.rhos[c] == b.rhos[d]
        if defined != same:
            return False
        return not defined or b.rhos[b.fadd_rows[c][d]] == b.rhos[c]

    def total_pairs(b):
        return product(range(b.total.size), repeat=2)

    def identity(b, c):
        z = b.zeros[b.rhos[c]]
        return b.fadd_rows[c][z] == c

    def inverses(b, c):
        return b.fneg[c] != UNDEFINED

    def commutative(b, c, d):
        return b.fadd_rows[c][d] == b.fadd_rows[d][c]

    def fiber_triples(b):
        for fiber in b.fibers:
            for c in fiber:
                for d in fiber:
                    for e in fiber:
                        yield (c, d, e)

    def associative(b, c, d, e):
        f = b.fadd_rows
        return f[f[c][d]][e] == f[c][f[d][e]]

    def right_distributive_cases(b):
        # (a + b) c = ac + bc with rho(a) = rho(b) and s(b) = r(c)
        comp = b.total
        for fiber in b.fibers:
            for x in fiber:
                for y in fiber:
                    for c in range(comp.size):
                        if comp.srcs[y] == comp.rngs[c]:
                            yield (x, y, c)

    def right_distributive(b, x, y, c):
        comp = b.total.comp_rows
        f = b.fadd_rows
        return comp[f[x][y]][c] == f[comp[x][c]][comp[y][c]]

    def left_distributive_cases(b):
        comp = b.total
        for c in range(comp.size):
            for fiber in b.fibers:
                for x in fiber:
                    if comp.srcs[c] != comp.rngs[x]:
                        continue
                    for y in fiber:
                        yield (c, x, y)

    def left_distributive(b, c, x, y):
        comp = b.total.comp_rows
        f = b.fadd_rows
        return comp[c][f[x][y]] == f[comp[c][x]][comp[c][y]]

    def total_arrows(b):
        return ((c,) for c in range(b.total.size))

    return [
        Law("fiber addition defined exactly on fibers", total_pairs, defined_exactly),
        Law("fiber zero is the additive identity", total_arrows, identity),
        Law("fiber additive inverses", total_arrows, inverses),
        Law("fiber addition commutative", same_fiber_pairs, commutative),
        Law("fiber addition associative", fiber_triples, associative),
        Law("right distributivity", right_distributive_cases, right_distributive),
        Law("left distributivity", left_distributive_cases, left_distributive),
    ]


_BUNDLE_ERRORS = {
    "functor on units": NotFunctor,
    "functor on products": NotFunctor,
    "isofibration (injective on units)": NotIsofibration,
    "zero section projects": ZeroLawFails,
    "zero section absorbs on the right": ZeroLawFails,
    "zero section absorbs on the left": ZeroLawFails,
    "core surjectivity": CoreNotSurjective,
}


def validate_bundle(bundle):
    """Return ``bundle`` if all bundle laws hold; otherwise raise the matching
    NotFunctor / NotIsofibration / ZeroLawFails / CoreNotSurjective (or a
    ringoid law violation) with a witness."""
    if not bundle.base.is_groupoid:
        raise NotGroupoid((), "base must be a groupoid")
    if len(bundle.rhos) != bundle.total.size or len(bundle.zeros) != bundle.base.size:
        raise ValueError("rho / zero maps have the wrong length")
    raise_first(
        bundle_laws(bundle.is_ringoid), bundle,
        lambda law: _BUNDLE_ERRORS.get(law, NotAbelianGroup if "fiber" in law else NotDistributive),
    )
    return bundle


def trivial_bundle(base, ring, ringoid=True):
    """The bundle ring x base: arrows (r, g), componentwise composition."""
    nr = ring.size
    arrows, src, rng, rho, zero = [], [], [], [], []
    pos = {}
    for g in range(base.size):
        for r in range(nr):
            pos[(r, g)] = len(arrows)
            arrows.append(f"{ring.elements[r]}@{base.arrows[g]}")
    one = _ring_one(ring)
    for g in range(base.size):
        for r in range(nr):
            src.append(pos[(one, base.srcs[g])])
            rng.append(pos[(one, base.rngs[g])])
            rho.append(g)
    zero = [pos[(ring.zero, g)] for g in range(base.size)]
    n = len(arrows)
    compose = [[UNDEFINED] * n for _ in range(n)]
    for (r, g), i in pos.items():
        for (s, h), j in pos.items():
            gh = base.comp_rows[g][h]
            if gh != UNDEFINED:
                compose[i][j] = pos[(ring.rows[r][s], gh)]
    total = FiniteCategory(arrows, src, rng, compose)
    if not ringoid:
        return FiniteBundle(total, base, rho, zero)
    fadd = [[UNDEFINED] * n for _ in range(n)]
    for (r, g), i in pos.items():
        for s in range(nr):
            fadd[i][pos[(s, g)]] = pos[(ring.add_rows[r][s], g)]
    return FiniteRingoidBundle(total, base, rho, zero, fadd)


def _ring_one(ring):
    n = ring.size
    for e in range(n):
        if all(ring.rows[e][x] == x and ring.rows[x][e] == x for x in range(n)):
            return e
    raise ValueError("ring has no multiplicative identity")
