"""
Integer normal forms with unimodular transforms.

Row-style convention throughout: hnf returns (H, U) with H = U·M and
snf returns (S, U, V) with S = U·M·V. Matrices are lists of lists of
Python ints.
"""

from typing import List, Sequence, Tuple

try:
    from sympy.core.intfunc import igcdex
except ImportError:  # sympy < 1.13
    from sympy import igcdex

IntMatrix = List[List[int]]


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x, y, g = igcdex(a, b)
    x, y, g = int(x), int(y), int(g)
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def identity_int(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul_int(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    if not a:
        return []
    inner = len(b)
    width = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(width)] for i in range(len(a))]


def transpose_int(m: Sequence[Sequence[int]], ncols: int = 0) -> IntMatrix:
    if not m:
        return [[] for _ in range(ncols)]
    return [list(col) for col in zip(*m)]


def _combine_rows(mats: List[IntMatrix], r: int, i: int, coeffs: Tuple[int, int, int, int]) -> None:
    # rows (r, i) <- [[p, q], [s, t]] · rows (r, i), applied to every matrix in mats
    p, q, s, t = coeffs
    for m in mats:
        row_r, row_i = m[r], m[i]
        m[r] = [p * x + q * y for x, y in zip(row_r, row_i)]
        m[i] = [s * x + t * y for x, y in zip(row_r, row_i)]


def hnf(m: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix]:
    """
    Row Hermite normal form H = U·M.

    Pivots are positive, entries above a pivot lie in [0, pivot), zero
    rows come last and U is unimodular.
    """
    if not m:
        raise ValueError("hnf needs a nonempty matrix")
    rows, cols = len(m), len(m[0])
    h = [list(map(int, row)) for row in m]
    u = identity_int(rows)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        for i in range(r + 1, rows):
            b = h[i][c]
            if b == 0:
                continue
            a = h[r][c]
            if a != 0 and b % a == 0:
                q = b // a
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                continue
            g, x, y = _xgcd(a, b)
            _combine_rows([h, u], r, i, (x, y, -b // g, a // g))
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        pivot = h[r][c]
        for i in range(r):
            q = h[i][c] // pivot
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return h, u


def _is_diagonal(m: IntMatrix) -> bool:
    return all(m[i][j] == 0 for i in range(len(m)) for j in range(len(m[0])) if i != j)


def snf(m: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """
    Smith normal form S = U·M·V with s1 | s2 | ... and all s_i >= 0.

    Alternates row and column Hermite reductions until the matrix is
    diagonal, then repairs divisibility with 2×2 gcd/lcm moves.
    """
    if not m:
        raise ValueError("snf needs a nonempty matrix")
    rows, cols = len(m), len(m[0])
    s = [list(map(int, row)) for row in m]
    u = identity_int(rows)
    v = identity_int(cols)
    while True:
        s, u_step = hnf(s)
        u = matmul_int(u_step, u)
        if _is_diagonal(s):
            break
        t, v_step = hnf(transpose_int(s))
        s = transpose_int(t)
        v = matmul_int(v, transpose_int(v_step))
        if _is_diagonal(s):
            break

    rank = min(rows, cols)
    diag = [s[i][i] for i in range(rank)]
    for i in range(rank):
        for j in range(i + 1, rank):
            a, b = diag[i], diag[j]
            if a == 0 and b == 0:
                continue
            if a != 0 and b % a == 0:
                continue
            g, x, y = _xgcd(a, b)
            # [[x, y], [-b/g, a/g]] · diag(a, b) · [[1, -y*b/g], [1, x*a/g]] = diag(g, a*b/g)
            _combine_rows([u], i, j, (x, y, -b // g, a // g))
            v_t = transpose_int(v)
            _combine_rows([v_t], i, j, (1, 1, -y * b // g, x * a // g))
            v = transpose_int(v_t)
            diag[i], diag[j] = g, (a * b) // g
    s = [[diag[i] if (i == j and i < rank) else 0 for j in range(cols)] for i in range(rows)]
    return s, u, v


def determinant_int(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix."""
    if not m:
        return 1
    return _bareiss([list(map(int, row)) for row in m])


def _bareiss(u: IntMatrix) -> int:
    n = len(u)
    a = [row[:] for row in u]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def is_unimodular(m: Sequence[Sequence[int]]) -> bool:
    return len(m) == len(m[0]) and abs(_bareiss([list(r) for r in m])) == 1 if m else True
