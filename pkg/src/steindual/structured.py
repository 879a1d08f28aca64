"""Structured data (A, S, Z, Phi): a carrier with a marked subsemigroup S,
a marked subset Z of S and a map Phi from the carrier into S."""

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .core import FiniteRing, FiniteSemigroup
from .errors import NotStructured


@dataclass(frozen=True)
class Scalars:
    """A scalar ring R acting on a ring carrier: ``action[r][a]`` is r.a."""

    ring: FiniteRing
    action: tuple

    def act(self, r, a):
        return self.action[r][a]


class StructuredData:
    """The quadruple (A, S, Z, Phi).

    Construction checks only the shape: S is closed under the product, Z lies
    in S, and Phi lands in S.  Expectation and normality laws are decided by
    :mod:`steindual.axioms`, which reports them with witnesses.
    """

    def __init__(self, carrier, S, Z, phi, name="", scalars=None, embedding=None, check=True):
        self.carrier = carrier
        self.S = tuple(sorted(set(int(s) for s in S)))
        self.Z = tuple(sorted(set(int(z) for z in Z)))
        self.phi = tuple(int(x) for x in phi)
        self.name = name
        self.scalars = scalars
        self.embedding = None if embedding is None else tuple(embedding)
        self.S_set = frozenset(self.S)
        self.Z_set = frozenset(self.Z)
        if check:
            self._check_shape()

    def _check_shape(self):
        n = self.carrier.size
        rows = self.carrier.rows
        if len(self.phi) != n:
            raise NotStructured((), "Phi must be defined on every carrier element")
        if not self.S:
            raise NotStructured((), "S must be nonempty")
        for x in self.S:
            if not 0 <= x < n:
                raise NotStructured((x,), "S index out of range")
        for a in range(n):
            if self.phi[a] not in self.S_set:
                raise NotStructured((a,), "Phi(a) must lie in S")
        for z in self.Z:
            if z not in self.S_set:
                raise NotStructured((z,), "Z must lie in S")
        for s in self.S:
            for t in self.S:
                if rows[s][t] not in self.S_set:
                    raise NotStructured((s, t), "S is not closed under the product")

    # ------------------------------------------------------------ basics
    @property
    def n(self):
        return self.carrier.size

    @property
    def is_ring(self):
        return self.carrier.is_ring

    @property
    def elements(self):
        return self.carrier.elements

    @property
    def zero(self):
        return self.carrier.zero

    @property
    def rows(self):
        return self.carrier.rows

    def mul(self, a, b):
        return self.carrier.rows[a][b]

    def mul3(self, a, b, c):
        rows = self.carrier.rows
        return rows[rows[a][b]][c]

    def name_of(self, i):
        return self.carrier.elements[i]

    def names(self, indices):
        return [self.carrier.elements[i] for i in indices]

    def idx(self, name):
        return self.carrier.index[name]

    @cached_property
    def D(self):
        """ran(Phi), sorted."""
        return tuple(sorted(set(self.phi)))

    @cached_property
    def D_set(self):
        return frozenset(self.D)

    @cached_property
    def Z_mask(self):
        mask = np.zeros(self.n, dtype=np.uint8)
        mask[list(self.Z)] = 1
        return mask

    @cached_property
    def D_mask(self):
        mask = np.zeros(self.n, dtype=np.uint8)
        mask[list(self.D)] = 1
        return mask

    @cached_property
    def idempotents(self):
        rows = self.carrier.rows
        return tuple(a for a in range(self.n) if rows[a][a] == a)

    @cached_property
    def relations(self):
        from .relations import Relations

        return Relations(self)

    def __repr__(self):
        kind = "ring" if self.is_ring else "semigroup"
        label = f" {self.name}" if self.name else ""
        return (
            f"StructuredData({kind}{label}: |A|={self.n}, |S|={len(self.S)}, "
            f"|Z|={len(self.Z)})"
        )


def semigroup_structure(elements, mult, Z, phi, name="", zero=None):
    """Convenience constructor for a well-structured semigroup candidate (A = S)."""
    carrier = FiniteSemigroup(elements, mult, zero)
    return StructuredData(carrier, range(carrier.size), Z, phi, name=name)


def restrict_to_S(ctx, name=None):
    """The semigroup (S, Z, Phi|S) as its own structured data.

    The new carrier lists S in increasing parent order; ``embedding[i]`` is the
    parent index of new element i.
    """
    order = list(ctx.S)
    pos = {a: i for i, a in enumerate(order)}
    rows = ctx.carrier.rows
    mult = [[pos[rows[a][b]] for b in order] for a in order]
    carrier = FiniteSemigroup([ctx.name_of(a) for a in order], mult)
    phi = [pos[ctx.phi[a]] for a in order]
    return StructuredData(
        carrier, range(len(order)), [pos[z] for z in ctx.Z], phi,
        name=name if name is not None else (ctx.name + "-S" if ctx.name else "S"),
        embedding=order,
    )
