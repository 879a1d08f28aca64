"""Pure-Python reference kernels.

These mirror the compiled kernels in ``_kernels.pyx`` one for one and are used
when the extension is unavailable or disabled with ``STEINDUAL_PURE_PYTHON=1``.
All functions take integer tables (numpy arrays or nested lists) and index
lists, and return numpy arrays so both backends are interchangeable.
"""

import numpy as np


def _rows(table):
    return table.tolist() if hasattr(table, "tolist") else [list(r) for r in table]


def find_nonassociative(mult):
    """Return the first triple (a, b, c) with (ab)c != a(bc), or None."""
    rows = _rows(mult)
    n = len(rows)
    for a in range(n):
        row_a = rows[a]
        for b in range(n):
            row_ab = rows[row_a[b]]
            row_b = rows[b]
            for c in range(n):
                if row_ab[c] != row_a[row_b[c]]:
                    return (a, b, c)
    return None


def restriction_matrix(mult, zlist):
    """leq[a, b] iff some y, z in Z give yb = ya = a = az = bz.

    The left and right halves are independent, and for a fixed local unit the
    candidate a is forced (a = yb, resp. a = bz), so each half costs n * |Z|.
    """
    rows = _rows(mult)
    n = len(rows)
    left = np.zeros((n, n), dtype=bool)
    right = np.zeros((n, n), dtype=bool)
    for y in zlist:
        row_y = rows[y]
        for b in range(n):
            a = row_y[b]
            if row_y[a] == a:
                left[a, b] = True
    for z in zlist:
        for b in range(n):
            a = rows[b][z]
            if rows[a][z] == a:
                right[a, b] = True
    return left & right


def domination_witnesses(mult, slist, zmask, dmask):
    """witness[a, b] = least s in slist with a <_s b, or -1.

    a <_s b means: as, sa in D; bs, sb in Z; and bsa = a = asb.
    """
    rows = _rows(mult)
    n = len(rows)
    zmask = [bool(x) for x in zmask]
    dmask = [bool(x) for x in dmask]
    witness = [[-1] * n for _ in range(n)]
    for s in sorted(slist):
        row_s = rows[s]
        for b in range(n):
            bs = rows[b][s]
            sb = row_s[b]
            if not (zmask[bs] and zmask[sb]):
                continue
            row_bs = rows[bs]
            for a in range(n):
                if witness[a][b] >= 0:
                    continue
                as_ = rows[a][s]
                if not (dmask[as_] and dmask[row_s[a]]):
                    continue
                if row_bs[a] == a and rows[as_][b] == a:
                    witness[a][b] = s
    return np.array(witness, dtype=np.int32).reshape(n, n)


def orthogonality_matrix(mult, zlist, zero):
    """orth[a, b] iff some y, z in Z give ya = a = az and yb = 0 = bz."""
    rows = _rows(mult)
    n = len(rows)
    left = np.zeros((n, n), dtype=bool)
    right = np.zeros((n, n), dtype=bool)
    for y in zlist:
        row_y = rows[y]
        fixed = [a for a in range(n) if row_y[a] == a]
        killed = [b for b in range(n) if row_y[b] == zero]
        for a in fixed:
            for b in killed:
                left[a, b] = True
    for z in zlist:
        fixed = [a for a in range(n) if rows[a][z] == a]
        killed = [b for b in range(n) if rows[b][z] == zero]
        for a in fixed:
            for b in killed:
                right[a, b] = True
    return left & right
