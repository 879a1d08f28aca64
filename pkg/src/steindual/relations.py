"""Restriction, domination and orthogonality, and the derived set operations.

``Relations(ctx)`` computes the three relation matrices eagerly over the
carrier (witnesses range over Z for restriction and orthogonality and over S
for domination).  Everything returns sorted index tuples, and optional
witnesses are always the least index that works.
"""

from . import kernels
from .errors import NoZero, NotInZ, NotOrthogonal, NotRestriction


class Relations:
    """Relation cache for one StructuredData value (write-once, read-only)."""

    def __init__(self, ctx):
        self.ctx = ctx
        carrier = ctx.carrier
        self.n = carrier.size
        self.rows = carrier.rows
        self.leq = kernels.restriction_matrix(carrier.mult, ctx.Z)
        self.dom_witness = kernels.domination_witnesses(
            carrier.mult, ctx.S, ctx.Z_mask, ctx.D_mask
        )
        self.dom = self.dom_witness >= 0
        self.zero = ctx.zero
        self.orth = (
            kernels.orthogonality_matrix(carrier.mult, ctx.Z, self.zero)
            if self.zero is not None else None
        )
        self.leq_rows = self.leq.tolist()
        self.dom_rows = self.dom.tolist()
        self.witness_rows = self.dom_witness.tolist()
        self.orth_rows = self.orth.tolist() if self.orth is not None else None
        self._dual_cache = {}

    # ------------------------------------------------------------ relations
    def restriction(self, a, b):
        """a <= b."""
        return self.leq_rows[a][b]

    def restriction_witness(self, a, b):
        rows = self.rows
        Z = self.ctx.Z
        ys = [y for y in Z if rows[y][b] == a and rows[y][a] == a]
        zs = [z for z in Z if rows[a][z] == a and rows[b][z] == a]
        if ys and zs:
            return (ys[0], zs[0])
        return None

    def dominates_witnessed(self, a, s, b):
        """a <_s b, evaluated directly."""
        ctx, rows = self.ctx, self.rows
        as_, sa = rows[a][s], rows[s][a]
        bs, sb = rows[b][s], rows[s][b]
        return (
            as_ in ctx.D_set and sa in ctx.D_set
            and bs in ctx.Z_set and sb in ctx.Z_set
            and rows[bs][a] == a and rows[as_][b] == a
        )

    def dominates(self, a, b):
        """Least witness s with a <_s b, or None."""
        w = self.witness_rows[a][b]
        return None if w < 0 else w

    def below(self, a, b):
        """a < b."""
        return self.dom_rows[a][b]

    def orthogonal(self, a, b):
        if self.orth_rows is None:
            raise NoZero("orthogonality needs a zero")
        return self.orth_rows[a][b]

    # ------------------------------------------------------------ derived sets
    @property
    def dagger(self):
        """S-dagger: the elements of S with a < a (the Z-invertible ones)."""
        return tuple(a for a in self.ctx.S if self.dom_rows[a][a])

    def z_inverses(self, a):
        """{s in S : asa = a, sas = s, as in Z, sa in Z}."""
        rows, Z = self.rows, self.ctx.Z_set
        out = []
        for s in self.ctx.S:
            as_, sa = rows[a][s], rows[s][a]
            if as_ in Z and sa in Z and rows[as_][a] == a and rows[sa][s] == s:
                out.append(s)
        return tuple(out)

    def dual_set(self, T):
        """T* = {a in S : t <_a s for some t in T and s in S}."""
        out = set()
        for t in set(T):
            out |= self._dual_of(t)
        return tuple(sorted(out))

    def _dual_of(self, t):
        cached = self._dual_cache.get(t)
        if cached is not None:
            return cached
        ctx, rows = self.ctx, self.rows
        found = set()
        for a in ctx.S:
            ta, at = rows[t][a], rows[a][t]
            if ta not in ctx.D_set or at not in ctx.D_set:
                continue
            for s in ctx.S:
                sa, as_ = rows[s][a], rows[a][s]
                if sa in ctx.Z_set and as_ in ctx.Z_set and rows[sa][t] == t and rows[ta][s] == t:
                    found.add(a)
                    break
        found = frozenset(found)
        self._dual_cache[t] = found
        return found

    def up(self, T, within=None):
        """T^< = {s : t < s for some t in T}, with s ranging over ``within``
        (default S)."""
        pool = self.ctx.S if within is None else within
        T = list(set(T))
        return tuple(s for s in pool if any(self.dom_rows[t][s] for t in T))

    def down(self, T, within=None):
        """T^> = {s : s < t for some t in T}, s ranging over ``within``
        (default the whole carrier)."""
        pool = range(self.n) if within is None else within
        T = list(set(T))
        return tuple(s for s in pool if any(self.dom_rows[s][t] for t in T))

    def right_units(self, a):
        """a^Z = {z in Z : az = a}."""
        return tuple(z for z in self.ctx.Z if self.rows[a][z] == a)

    def left_units(self, a):
        """^Z a = {z in Z : za = a}."""
        return tuple(z for z in self.ctx.Z if self.rows[z][a] == a)

    def right_units_of_set(self, T):
        """T^Z = {z in Z : tz = t for some t in T}."""
        T = list(set(T))
        return tuple(z for z in self.ctx.Z if any(self.rows[t][z] == t for t in T))

    def left_units_of_set(self, T):
        T = list(set(T))
        return tuple(z for z in self.ctx.Z if any(self.rows[z][t] == t for t in T))

    def minimum(self, candidates):
        """The <=-minimum of ``candidates``, or None."""
        candidates = list(candidates)
        for m in candidates:
            if all(self.leq_rows[m][c] for c in candidates):
                return m
        return None

    def supports(self, a):
        """(source support, range support) as the <=-minima of a^Z and ^Z a."""
        source = self.minimum(self.right_units(a))
        range_ = self.minimum(self.left_units(a))
        if source is None or range_ is None:
            return None
        return (source, range_)

    def orthosupremum(self, a, b):
        """min{s in S : a, b <= s} for orthogonal a, b; None if no minimum."""
        if not self.orthogonal(a, b):
            raise NotOrthogonal((a, b))
        return self.supremum(a, b)

    def supremum(self, a, b):
        bounds = [s for s in self.ctx.S if self.leq_rows[a][s] and self.leq_rows[b][s]]
        return self.minimum(bounds)

    def complement(self, y, z):
        """The w in Z with yw = 0 and y v w = z."""
        ctx = self.ctx
        for x in (y, z):
            if x not in ctx.Z_set:
                raise NotInZ((x,))
        if not self.leq_rows[y][z]:
            raise NotRestriction((y, z))
        if self.zero is None:
            raise NoZero("complements need a zero")
        for w in ctx.Z:
            if self.rows[y][w] != self.zero:
                continue
            if self.supremum(y, w) == z:
                return w
        return None

    def normalizers(self, T):
        """T^N = {a in carrier : aT = Ta} (setwise)."""
        rows = self.rows
        T = sorted(set(T))
        out = []
        for a in range(self.n):
            if {rows[a][t] for t in T} == {rows[t][a] for t in T}:
                out.append(a)
        return tuple(out)

    def commutant(self, T):
        """T^C: elements commuting with every t in T."""
        rows = self.rows
        T = sorted(set(T))
        return tuple(a for a in range(self.n) if all(rows[a][t] == rows[t][a] for t in T))

    def product_set(self, T, U):
        rows = self.rows
        return tuple(sorted({rows[t][u] for t in T for u in U}))


def _rel(ctx):
    return ctx.relations


def restriction(ctx, a, b):
    return _rel(ctx).restriction(a, b)


def dominates_witnessed(ctx, a, s, b):
    return _rel(ctx).dominates_witnessed(a, s, b)


def dominates(ctx, a, b):
    return _rel(ctx).dominates(a, b)


def orthogonal(ctx, a, b):
    return _rel(ctx).orthogonal(a, b)


def z_inverses(ctx, a):
    return _rel(ctx).z_inverses(a)


def dual_set(ctx, T):
    return _rel(ctx).dual_set(T)


def supports(ctx, a):
    return _rel(ctx).supports(a)


def orthosupremum(ctx, a, b):
    return _rel(ctx).orthosupremum(a, b)


def complement(ctx, y, z):
    return _rel(ctx).complement(y, z)


def normalizers(ctx, T):
    return _rel(ctx).normalizers(T)


def commutant(ctx, T):
    return _rel(ctx).commutant(T)
