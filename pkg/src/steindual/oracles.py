"""Brute-force reference implementations used to certify the fast paths.

Nothing here shares code with :mod:`steindual.relations` or
:mod:`steindual.filters`; each function re-derives its answer from the
multiplication table and the definitions alone.
"""

from itertools import product

from .errors import TooLarge

SUBSET_LIMIT = 12


def restriction(ctx, a, b):
    rows = ctx.rows
    return any(
        rows[y][b] == a and rows[y][a] == a and rows[a][z] == a and rows[b][z] == a
        for y, z in product(ctx.Z, repeat=2)
    )


def dominates_with(ctx, a, s, b):
    rows = ctx.rows
    D, Z = set(ctx.phi), set(ctx.Z)
    return (
        rows[a][s] in D and rows[s][a] in D and rows[b][s] in Z and rows[s][b] in Z
        and rows[rows[b][s]][a] == a and rows[rows[a][s]][b] == a
    )


def dominates(ctx, a, b):
    return any(dominates_with(ctx, a, s, b) for s in ctx.S)


def orthogonal(ctx, a, b):
    rows, zero = ctx.rows, ctx.zero
    left = any(rows[y][a] == a and rows[y][b] == zero for y in ctx.Z)
    right = any(rows[a][z] == a and rows[b][z] == zero for z in ctx.Z)
    return left and right


def relation_matrices(ctx):
    n = range(ctx.n)
    leq = [[restriction(ctx, a, b) for b in n] for a in n]
    dom = [[dominates(ctx, a, b) for b in n] for a in n]
    orth = None
    if ctx.zero is not None:
        orth = [[orthogonal(ctx, a, b) for b in n] for a in n]
    return leq, dom, orth


def subset_filters(ctx):
    """Every nonempty subset of S meeting the filter condition, by bitmask
    enumeration over all 2^|S| subsets."""
    S = list(ctx.S)
    k = len(S)
    if k > SUBSET_LIMIT:
        raise TooLarge(f"subset oracle limited to |S| <= {SUBSET_LIMIT}, got {k}")
    bit = {s: 1 << i for i, s in enumerate(S)}
    above = []
    for f in S:
        mask = 0
        for a in S:
            if dominates(ctx, f, a):
                mask |= bit[a]
        above.append(mask)
    found = []
    for mask in range(1, 1 << k):
        inside = [i for i in range(k) if mask >> i & 1]
        if any(above[i] & ~mask for i in inside):
            continue
        directed = all(
            any(above[f] & bit[S[a]] and above[f] & bit[S[b]] for f in inside)
            for a in inside for b in inside
        )
        if directed:
            found.append(tuple(S[i] for i in inside))
    return sorted(found, key=lambda m: (len(m), m))


def subset_ultrafilters(ctx):
    filters = subset_filters(ctx)
    if ctx.zero is not None:
        proper = [set(F) for F in filters if ctx.zero not in F]
    else:
        proper = [set(F) for F in filters if set(F) != set(ctx.S)]
    maximal = [F for F in proper if not any(F < G for G in proper)]
    return sorted(tuple(sorted(F)) for F in maximal)
