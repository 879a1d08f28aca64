"""Deterministic generators for the canonical fixtures and their families."""

from dataclasses import dataclass
from itertools import combinations, permutations, product

import numpy as np

from .core import FiniteRing, FiniteSemigroup, pair_groupoid, trivial_bundle
from .errors import NotLocallyUnital, NoUnits, TooLarge
from .structured import Scalars, StructuredData, restrict_to_S


# ------------------------------------------------------------ inverse monoids


def partial_injections(n):
    """All partial injections of {0..n-1} as tuples image[i] (None = undefined),
    ordered by domain size, then by their sorted (point, image) pairs."""
    maps = []
    for k in range(n + 1):
        for domain in combinations(range(n), k):
            for image in permutations(range(n), k):
                f = [None] * n
                for x, y in zip(domain, image):
                    f[x] = y
                maps.append(tuple(f))
    maps.sort(key=lambda f: (sum(v is not None for v in f),
                             [(i, v) for i, v in enumerate(f) if v is not None]))
    return maps


def partial_injection_name(f):
    pairs = [f"{i + 1}>{v + 1}" for i, v in enumerate(f) if v is not None]
    return "[" + ",".join(pairs) + "]"


def symmetric_inverse_monoid(n):
    """Partial injections of {1..n} under composition (apply the right factor
    first), with Z the partial identities and Phi the restriction to fixed
    points."""
    if not 1 <= n <= 4:
        raise TooLarge(f"symmetric_inverse_monoid needs 1 <= n <= 4, got {n}")
    maps = partial_injections(n)
    pos = {f: i for i, f in enumerate(maps)}

    def compose(f, g):
        return tuple(None if g[x] is None else f[g[x]] for x in range(n))

    mult = [[pos[compose(f, g)] for g in maps] for f in maps]
    carrier = FiniteSemigroup([partial_injection_name(f) for f in maps], mult)
    Z = [i for i, f in enumerate(maps) if all(v is None or v == x for x, v in enumerate(f))]
    phi = [pos[tuple(v if v == x else None for x, v in enumerate(f))] for f in maps]
    return StructuredData(carrier, range(len(maps)), Z, phi, name=f"I{n}")


def powerset_algebra(n):
    """Subsets of {1..n} under intersection with Z = S and Phi the identity."""
    if not 1 <= n <= 5:
        raise TooLarge(f"powerset_algebra needs 1 <= n <= 5, got {n}")
    subsets = [frozenset(c) for k in range(n + 1) for c in combinations(range(1, n + 1), k)]
    pos = {s: i for i, s in enumerate(subsets)}
    names = ["{" + ",".join(str(x) for x in sorted(s)) + "}" for s in subsets]
    mult = [[pos[a & b] for b in subsets] for a in subsets]
    carrier = FiniteSemigroup(names, mult)
    everything = range(len(subsets))
    return StructuredData(carrier, everything, everything, everything, name=f"P{n}")


# ------------------------------------------------------------------ rings


def prime_field(q):
    if q not in (2, 3, 5, 7):
        raise ValueError(f"prime_field supports q in (2, 3, 5, 7), got {q}")
    r = range(q)
    return FiniteRing(
        [str(x) for x in r],
        [[(a + b) % q for b in r] for a in r],
        [(-a) % q for a in r],
        0,
        [[(a * b) % q for b in r] for a in r],
    )


def product_ring(left, right):
    pairs = list(product(range(left.size), range(right.size)))
    pos = {p: i for i, p in enumerate(pairs)}
    names = [f"({left.elements[a]},{right.elements[b]})" for a, b in pairs]
    add = [[pos[(left.plus(a, c), right.plus(b, d))] for c, d in pairs] for a, b in pairs]
    mult = [[pos[(left.mul(a, c), right.mul(b, d))] for c, d in pairs] for a, b in pairs]
    neg = [pos[(left.negs[a], right.negs[b])] for a, b in pairs]
    return FiniteRing(names, add, neg, pos[(left.zero, right.zero)], mult)


def ring_one(ring):
    for e in range(ring.size):
        if all(ring.mul(e, x) == x and ring.mul(x, e) == x for x in range(ring.size)):
            return e
    return None


def units_of(ring):
    one = ring_one(ring)
    if one is None:
        return ()
    return tuple(
        r for r in range(ring.size)
        if any(ring.mul(r, s) == one and ring.mul(s, r) == one for s in range(ring.size))
    )


def matrix_name(entries, n):
    return "/".join("".join(str(entries[i * n + j]) for j in range(n)) for i in range(n))


def matrix_ring(n, q):
    """All n x n matrices over the q-element prime field, ordered
    lexicographically by their row-major entries, plus the scalar action."""
    size = q ** (n * n)
    if n < 1 or q not in (2, 3) or n > 3:
        raise TooLarge(f"matrix_quasi_cartan needs n <= 3 and q in (2, 3), got ({n}, {q})")
    from .laws import guard_size

    guard_size(size, "matrix carrier")
    entries = np.array(list(product(range(q), repeat=n * n)), dtype=np.int64)
    mats = entries.reshape(size, n, n)
    weights = q ** np.arange(n * n - 1, -1, -1)

    def encode(arr):
        return (arr.reshape(arr.shape[:-2] + (n * n,)) % q) @ weights

    mult = encode(np.einsum("aij,bjk->abik", mats, mats))
    add = encode(mats[:, None] + mats[None, :])
    neg = encode(-mats)
    names = [matrix_name(e.tolist(), n) for e in entries]
    ring = FiniteRing(names, add.tolist(), neg.tolist(), 0, mult.tolist(), check=size <= 81)
    field = prime_field(q)
    action = encode(np.arange(q)[:, None, None, None] * mats[None]).tolist()
    return ring, Scalars(field, tuple(tuple(row) for row in action)), mats


def matrix_quasi_cartan(n, q):
    """The Steinberg ring (A, orthospan(Z^{N dagger}), E(Z), diagonal projection)
    of n x n matrices over F_q with Z the diagonal subalgebra."""
    ring, scalars, mats = matrix_ring(n, q)
    size = ring.size
    weights = q ** np.arange(n * n - 1, -1, -1)
    diag_mask = np.eye(n, dtype=np.int64)
    phi = ((mats * diag_mask).reshape(size, n * n) @ weights).tolist()
    diagonal = sorted(set(phi))
    rows = ring.rows
    idem_diagonal = [z for z in diagonal if rows[z][z] == z]
    Zd = frozenset(diagonal)
    normalisers = [a for a in range(size)
                   if {rows[a][z] for z in diagonal} == {rows[z][a] for z in diagonal}]
    invertible = [a for a in normalisers if _has_z_inverse(rows, a, Zd, size)]
    S = orthospan(ring, scalars, invertible, idem_diagonal)
    return StructuredData(ring, S, idem_diagonal, phi, name=f"M{n}F{q}", scalars=scalars)


def _has_z_inverse(rows, a, Zset, size):
    for s in range(size):
        as_, sa = rows[a][s], rows[s][a]
        if as_ in Zset and sa in Zset and rows[as_][a] == a and rows[sa][s] == s:
            return True
    return False


def orthogonal_in(rows, units, zero, a, b):
    """a and b are orthogonal relative to the local units ``units``."""
    left = any(rows[y][a] == a and rows[y][b] == zero for y in units)
    right = any(rows[a][z] == a and rows[b][z] == zero for z in units)
    return left and right


def orthospan(ring, scalars, generators, units):
    """Union of the R-spans of all finite pairwise-orthogonal subsets."""
    rows, zero = ring.rows, ring.zero
    gens = [g for g in sorted(set(generators)) if g != zero]
    adjacent = {
        g: {h for h in gens if h != g and orthogonal_in(rows, units, zero, g, h)
            and orthogonal_in(rows, units, zero, h, g)}
        for g in gens
    }
    scalar_multiples = {g: {scalars.act(r, g) for r in range(scalars.ring.size)} for g in gens}
    found = {zero}

    def extend(clique_sums, candidates):
        for g in sorted(candidates):
            sums = {ring.plus(x, m) for x in clique_sums for m in scalar_multiples[g]}
            found.update(sums)
            extend(sums, {h for h in candidates if h > g} & adjacent[g])

    extend({zero}, set(gens))
    return sorted(found)


def central_idempotents(ring):
    rows = ring.rows
    n = ring.size
    return tuple(
        e for e in range(n)
        if rows[e][e] == e and all(rows[e][x] == rows[x][e] for x in range(n))
    )


def pierce_case(ring):
    """(A, A, Z(E(A)), id) for a locally unital ring A."""
    Z = central_idempotents(ring)
    rows = ring.rows
    for a in range(ring.size):
        if not any(rows[a][e] == a and rows[e][a] == a for e in Z):
            raise NotLocallyUnital((a,))
    everything = range(ring.size)
    return StructuredData(ring, everything, Z, everything, name="pierce")


def steinberg_ring_of_groupoid(groupoid, ring):
    """The section ring of the trivial ringoid bundle ring x groupoid."""
    from .sections import section_structure

    if not units_of(ring):
        raise NoUnits("the fibre ring has no invertible element")
    bundle = trivial_bundle(groupoid, ring, ringoid=True)
    return section_structure(bundle)


def trivbun():
    """The trivial ringoid bundle F_2 x (pair groupoid on 2 objects)."""
    return trivial_bundle(pair_groupoid(2), prime_field(2), ringoid=True)


def monomial_map(n):
    """Index map from partial injections of {1..n} to the 0/1 monomial matrices
    of matrix_quasi_cartan(n, 2) restricted to S: image[f(j)][j] = 1."""
    inverse_monoid = symmetric_inverse_monoid(n)
    ring = restrict_to_S(matrix_quasi_cartan(n, 2))
    maps = partial_injections(n)
    image = []
    for f in maps:
        entries = [0] * (n * n)
        for j, v in enumerate(f):
            if v is not None:
                entries[v * n + j] = 1
        image.append(ring.idx(matrix_name(entries, n)))
    return inverse_monoid, ring, image


# ---------------------------------------------------------------- registry


@dataclass(frozen=True)
class FixtureSpec:
    name: str
    parameters: tuple
    expected_profiles: tuple
    build: object

    def __call__(self):
        return self.build(*self.parameters)


def _pierce_f2xf2():
    return pierce_case(product_ring(prime_field(2), prime_field(2)))


def _m2f2_s():
    return restrict_to_S(matrix_quasi_cartan(2, 2))


FIXTURES = {
    "FIX-I2": FixtureSpec("FIX-I2", (2,), ("steinberg-semigroup",), symmetric_inverse_monoid),
    "FIX-POW2": FixtureSpec("FIX-POW2", (2,), ("steinberg-semigroup",), powerset_algebra),
    "FIX-M2F2": FixtureSpec("FIX-M2F2", (2, 2), ("quasi-cartan-pair", "steinberg-ring"),
                            matrix_quasi_cartan),
    "FIX-M2F2-S": FixtureSpec("FIX-M2F2-S", (), ("steinberg-semigroup",), _m2f2_s),
    "FIX-TRIVBUN": FixtureSpec("FIX-TRIVBUN", (), ("ample-ringoid-bundle",), trivbun),
    "PIERCE-F2xF2": FixtureSpec("PIERCE-F2xF2", (), ("steinberg-ring",), _pierce_f2xf2),
}


def fixture(name):
    return FIXTURES[name]()


# -------------------------------------------------------------- morphisms


def inverse_monoid_to_matrices():
    """The 0/1 monomial isomorphism from I_2 onto the S part of M_2(F_2)."""
    from .duality import SteinbergMorphism

    source, target, image = monomial_map(2)
    return SteinbergMorphism(source, target, tuple(image))


def powerset_into_inverse_monoid():
    """{1} -> [1>1], {2} -> [2>2], {1,2} -> identity, {} -> 0."""
    from .duality import SteinbergMorphism

    source, target = powerset_algebra(2), symmetric_inverse_monoid(2)
    names = {"{}": "[]", "{1}": "[1>1]", "{2}": "[2>2]", "{1,2}": "[1>1,2>2]"}
    return SteinbergMorphism(
        source, target, tuple(target.idx(names[source.name_of(a)]) for a in range(source.n))
    )


def identity_on(name):
    from .duality import identity_morphism

    return lambda: identity_morphism(fixture(name))


def zero_endomorphism_i2():
    from .duality import SteinbergMorphism

    data = symmetric_inverse_monoid(2)
    return SteinbergMorphism(data, data, tuple([data.zero] * data.n))


MORPHISMS = {
    "MOR-I2-M2F2S": inverse_monoid_to_matrices,
    "MOR-POW2-I2": powerset_into_inverse_monoid,
    "MOR-ID-I2": identity_on("FIX-I2"),
    "MOR-ID-M2F2": identity_on("FIX-M2F2"),
    "MOR-ZERO-I2": zero_endomorphism_i2,
}


def morphism_fixture(name):
    return MORPHISMS[name]()
