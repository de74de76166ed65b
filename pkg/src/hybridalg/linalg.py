"""Exact linear algebra over the rationals.

Two representations are used: sparse vectors (dict index -> Fraction) feeding
an incremental row echelon keyed by leading index, and small dense matrices
(list of lists) for module-level computations.  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction


class RowEchelon:
    """Incremental reduced row echelon of sparse rational vectors.

    Rows are stored keyed by their leading index (the smallest index with a
    nonzero coefficient) and normalized to leading coefficient 1.  Rows are
    kept mutually reduced, so ``reduce`` gives canonical normal forms modulo
    the row space.
    """

    def __init__(self):
        self.rows: dict[int, dict[int, Fraction]] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict[int, Fraction]) -> dict[int, Fraction]:
        """Canonical representative of ``vec`` modulo the row space."""
        out: dict[int, Fraction] = {}
        work = dict(vec)
        while work:
            lead = min(work)
            coeff = work.pop(lead)
            if not coeff:
                continue
            row = self.rows.get(lead)
            if row is None:
                out[lead] = coeff
                continue
            for idx, rc in row.items():
                if idx == lead:
                    continue
                c = work.get(idx, Fraction(0)) - coeff * rc
                if c:
                    work[idx] = c
                else:
                    work.pop(idx, None)
        return out

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    def insert(self, vec) -> bool:
        """Add ``vec`` to the span; returns True if the rank grew.

        Existing rows are not re-reduced: ``reduce`` eliminates pivot indices
        lazily, which keeps normal forms canonical without the quadratic
        upkeep.
        """
        red = self.reduce(vec)
        if not red:
            return False
        lead = min(red)
        inv = 1 / red[lead]
        self.rows[lead] = {idx: c * inv for idx, c in red.items()}
        return True

    def pivots(self):
        return set(self.rows)


def vec_add(a, b, scale=Fraction(1)):
    out = dict(a)
    for idx, c in b.items():
        val = out.get(idx, Fraction(0)) + scale * c
        if val:
            out[idx] = val
        else:
            out.pop(idx, None)
    return out


def vec_scale(a, scale):
    s = Fraction(scale)
    if not s:
        return {}
    return {idx: c * s for idx, c in a.items()}


# -- dense helpers ----------------------------------------------------------

def zeros(rows: int, cols: int):
    return [[Fraction(0)] * cols for _ in range(rows)]

def identity(n: int):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m

def mat_mul(a, b):
    if not a or not b:
        return [[] for _ in a]
    rows, inner, cols = len(a), len(b), len(b[0])
    out = zeros(rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            c = ai[k]
            if not c:
                continue
            bk = b[k]
            for j in range(cols):
                if bk[j]:
                    oi[j] += c * bk[j]
    return out

def mat_add(a, b, scale=Fraction(1)):
    return [[a[i][j] + scale * b[i][j] for j in range(len(a[0]))] for i in range(len(a))]

def mat_scale(a, scale):
    s = Fraction(scale)
    return [[s * x for x in row] for row in a]

def transpose(a):
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def rref(matrix):
    """Reduced row echelon form; returns (rref_rows, pivot_columns)."""
    m = [list(map(Fraction, row)) for row in matrix]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if m[i][c]:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(matrix) -> int:
    return len(rref(matrix)[0])


def nullspace(matrix, ncols=None):
    """Basis of the right nullspace {x : matrix @ x = 0} as row vectors."""
    if not matrix:
        if ncols is None:
            return []
        return [row[:] for row in identity(ncols)]
    ncols = len(matrix[0])
    rows, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in enumerate(pivots):
            v[p] = -rows[r][f]
        basis.append(v)
    return basis


def det(matrix):
    """Determinant by fraction-free-ish Gaussian elimination over Fraction."""
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    m = [list(map(Fraction, row)) for row in matrix]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if m[i][c]:
                pivot = i
                break
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            sign = -sign
        result *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result * sign


def is_invertible(matrix) -> bool:
    return len(matrix) == (len(matrix[0]) if matrix else 0) and bool(det(matrix))


def solve(matrix, rhs):
    """One solution x of matrix @ x = rhs, or None if inconsistent."""
    if not matrix:
        return [] if not any(rhs) else None
    ncols = len(matrix[0])
    aug = [list(row) + [r] for row, r in zip(matrix, rhs)]
    rows, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, p in enumerate(pivots):
        x[p] = rows[r][ncols]
    return x


def row_space_contains(rows_rref, pivots, vec):
    """Membership test against a precomputed RREF row space."""
    v = list(map(Fraction, vec))
    for r, p in enumerate(pivots):
        if v[p]:
            f = v[p]
            v = [x - f * y for x, y in zip(v, rows_rref[r])]
    return not any(v)
