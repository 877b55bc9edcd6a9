"""Exact integer matrix arithmetic.

Matrices are stored as tuples of tuples of Python ints, so entries never
overflow.  This module covers symmetrizer discovery, matrix mutation,
fraction-free (Bareiss) determinants and leading principal minors, and
Gaussian elimination over the two-element field.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from numbers import Integral
from typing import Iterable, Optional, Sequence

from .errors import NotSkewSymmetrizable, NotSymmetrizable

IntMatrix = tuple[tuple[int, ...], ...]


def as_int_matrix(rows: Iterable[Iterable[int]]) -> IntMatrix:
    """Convert nested iterables into a square ``IntMatrix``.

    Raises ``ValueError`` for ragged/non-square input or non-integer entries.
    """
    out = []
    for row in rows:
        conv = []
        for x in row:
            if isinstance(x, bool) or not isinstance(x, Integral):
                if isinstance(x, float) and x.is_integer():
                    x = int(x)
                else:
                    raise ValueError(f"matrix entry {x!r} is not an integer")
            conv.append(int(x))
        out.append(tuple(conv))
    n = len(out)
    if any(len(r) != n for r in out):
        raise ValueError("matrix must be square")
    return tuple(out)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def transpose(a: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(tuple(col) for col in zip(*a))


def sgn(x: int) -> int:
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------------------
# Symmetrizers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Symmetrizer:
    """Diagonal of a positive integer diagonal matrix D."""

    diag: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "diag", tuple(int(x) for x in self.diag))
        if any(x <= 0 for x in self.diag):
            raise ValueError(f"symmetrizer entries must be positive: {self.diag}")

    @property
    def n(self) -> int:
        return len(self.diag)

    def apply(self, m: Sequence[Sequence[int]]) -> IntMatrix:
        """Return D·m."""
        return tuple(tuple(d * x for x in row) for d, row in zip(self.diag, m))


def _support_components(m: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(m)
    seen = [False] * n
    comps = []
    for root in range(n):
        if seen[root]:
            continue
        seen[root] = True
        comp = [root]
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if not seen[j] and (m[i][j] or m[j][i]):
                    seen[j] = True
                    comp.append(j)
                    queue.append(j)
        comps.append(sorted(comp))
    return comps


def _find_diagonal(m: IntMatrix, skew: bool) -> Symmetrizer:
    err = NotSkewSymmetrizable if skew else NotSymmetrizable
    n = len(m)
    for i in range(n):
        for j in range(i + 1, n):
            x, y = m[i][j], m[j][i]
            if (x == 0) != (y == 0):
                raise err(f"entry ({i},{j}) is {x} but its transpose is {y}")
            if x and (x * y > 0) == skew:
                raise err(f"entries ({i},{j})={x} and ({j},{i})={y} have the wrong sign pattern")

    d: list[Optional[Fraction]] = [None] * n
    for comp in _support_components(m):
        root = comp[0]
        d[root] = Fraction(1)
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if m[i][j] and d[j] is None:
                    d[j] = d[i] * abs(m[i][j]) / abs(m[j][i])
                    queue.append(j)
        for i in comp:
            for j in comp:
                if m[i][j] and d[i] * abs(m[i][j]) != d[j] * abs(m[j][i]):
                    raise err(f"no symmetrizer: inconsistent ratio around ({i},{j})")
        scale = lcm(*(d[i].denominator for i in comp))
        ints = [int(d[i] * scale) for i in comp]
        g = gcd(*ints)
        for i, v in zip(comp, ints):
            d[i] = Fraction(v // g)

    sym = Symmetrizer(tuple(int(x) for x in d))
    # re-verify entrywise; the sign of the check depends on skew vs symmetric
    c = sym.apply(m)
    for i in range(n):
        for j in range(n):
            if c[i][j] != (-c[j][i] if skew else c[j][i]):
                raise err("symmetrizer verification failed")
    return sym


def find_symmetrizer(b: Sequence[Sequence[int]]) -> Symmetrizer:
    """Return the componentwise-minimal D making D·b skew-symmetric.

    Raises ``NotSkewSymmetrizable`` when no such D exists.
    """
    b = as_int_matrix(b)
    if any(b[i][i] for i in range(len(b))):
        raise NotSkewSymmetrizable("diagonal entries must be zero")
    return _find_diagonal(b, skew=True)


def find_symmetric_symmetrizer(a: Sequence[Sequence[int]]) -> Symmetrizer:
    """Return the componentwise-minimal D making D·a symmetric."""
    return _find_diagonal(as_int_matrix(a), skew=False)


@dataclass(frozen=True)
class SkewSymmetrizableMatrix:
    b: IntMatrix
    d: Symmetrizer

    def __post_init__(self) -> None:
        b = as_int_matrix(self.b)
        object.__setattr__(self, "b", b)
        n = len(b)
        if self.d.n != n:
            raise NotSkewSymmetrizable("symmetrizer size does not match matrix")
        for i in range(n):
            if b[i][i]:
                raise NotSkewSymmetrizable("diagonal entries must be zero")
            for j in range(i + 1, n):
                if sgn(b[i][j]) != -sgn(b[j][i]):
                    raise NotSkewSymmetrizable(f"sign pattern violated at ({i},{j})")
                if self.d.diag[i] * b[i][j] != -self.d.diag[j] * b[j][i]:
                    raise NotSkewSymmetrizable(f"D·B is not skew-symmetric at ({i},{j})")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "SkewSymmetrizableMatrix":
        b = as_int_matrix(rows)
        return cls(b, find_symmetrizer(b))

    @property
    def n(self) -> int:
        return len(self.b)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.b[ij[0]][ij[1]]


def mutate_entries(b: IntMatrix, k: int) -> IntMatrix:
    """Matrix mutation in direction ``k`` on raw entries (no validation)."""
    n = len(b)
    bk = b[k]
    rows = []
    for i in range(n):
        bi = b[i]
        bik = bi[k]
        if i == k:
            rows.append(tuple(-x for x in bi))
            continue
        row = list(bi)
        row[k] = -bik
        if bik:
            for j in range(n):
                if j != k:
                    p = bik * bk[j]
                    if p > 0:
                        row[j] += p if bik > 0 else -p
        rows.append(tuple(row))
    return tuple(rows)


def mutate(B: SkewSymmetrizableMatrix, k: int) -> SkewSymmetrizableMatrix:
    """Mutation in direction ``k`` (0-based); the symmetrizer is unchanged."""
    if not 0 <= k < B.n:
        raise IndexError(f"mutation index {k} out of range for size {B.n}")
    return SkewSymmetrizableMatrix(mutate_entries(B.b, k), B.d)


# ---------------------------------------------------------------------------
# Fraction-free elimination
# ---------------------------------------------------------------------------


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss elimination with row pivoting."""
    a = [list(r) for r in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        for i in range(k + 1, n):
            ai, aik = a[i], a[i][k]
            ak = a[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * piv - aik * ak[j]) // prev
        prev = piv
    return sign * a[n - 1][n - 1]


def leading_principal_minors(m: Sequence[Sequence[int]], stop_at_nonpositive: bool = False) -> list[int]:
    """Determinants of the top-left 1×1, …, n×n submatrices.

    Unpivoted Bareiss elimination yields every leading minor as a pivot as
    long as the pivots stay nonzero; after a zero pivot the remaining minors
    are computed one by one with :func:`determinant`.

    With ``stop_at_nonpositive`` the list is truncated right after the first
    minor that is ``<= 0``.
    """
    a = [list(r) for r in m]
    n = len(a)
    minors: list[int] = []
    prev = 1
    for k in range(n):
        piv = a[k][k]
        minors.append(piv)
        if stop_at_nonpositive and piv <= 0:
            return minors
        if piv == 0:
            break
        for i in range(k + 1, n):
            ai, aik = a[i], a[i][k]
            ak = a[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * piv - aik * ak[j]) // prev
        prev = piv
    for size in range(len(minors) + 1, n + 1):
        minor = determinant([row[:size] for row in m[:size]])
        minors.append(minor)
        if stop_at_nonpositive and minor <= 0:
            break
    return minors


# ---------------------------------------------------------------------------
# GF(2)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GF2Matrix:
    rows: int
    cols: int
    bits: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        bits = tuple(tuple(int(x) & 1 for x in r) for r in self.bits)
        if len(bits) != self.rows or any(len(r) != self.cols for r in bits):
            raise ValueError("GF2Matrix shape mismatch")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "GF2Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(tuple(r) for r in rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "GF2Matrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def row_masks(self) -> list[int]:
        return [sum(1 << c for c, x in enumerate(r) if x) for r in self.bits]

    def __matmul__(self, other: "GF2Matrix") -> "GF2Matrix":
        if self.cols != other.rows:
            raise ValueError("GF2 shape mismatch in product")
        cols = list(zip(*other.bits)) if other.rows else [()] * other.cols
        out = tuple(
            tuple(sum(x & y for x, y in zip(row, col)) & 1 for col in cols) for row in self.bits
        )
        return GF2Matrix(self.rows, other.cols, out)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(x & (y & 1) for x, y in zip(row, v)) & 1 for row in self.bits)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.bits)


@dataclass(frozen=True)
class GF2Solution:
    particular: tuple[int, ...]
    nullspace: tuple[tuple[int, ...], ...]


def _gf2_eliminate(masks: list[int], ncols: int) -> tuple[list[int], list[int]]:
    """Reduced row echelon form on bitmask rows; returns (rows, pivot columns)."""
    rows = list(masks)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        bit = 1 << c
        for p in range(r, len(rows)):
            if rows[p] & bit:
                break
        else:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        for q in range(len(rows)):
            if q != r and rows[q] & bit:
                rows[q] ^= pr
        pivots.append(c)
        r += 1
    return rows, pivots


def gf2_rank(m: GF2Matrix) -> int:
    return len(_gf2_eliminate(m.row_masks(), m.cols)[1])


def gf2_solve(m: GF2Matrix, rhs: Sequence[int]) -> Optional[GF2Solution]:
    """Solve ``m x = rhs`` over GF(2).

    Returns ``None`` when the system is inconsistent, otherwise a particular
    solution (free variables set to 0) and a basis of the nullspace.
    """
    if len(rhs) != m.rows:
        raise ValueError("rhs length must equal the number of rows")
    aug = 1 << m.cols
    masks = [mask | (aug if b & 1 else 0) for mask, b in zip(m.row_masks(), rhs)]
    rows, pivots = _gf2_eliminate(masks, m.cols)
    coeff = aug - 1
    for row in rows[len(pivots):]:
        if row & aug and not row & coeff:
            return None
    x = [0] * m.cols
    for r, c in enumerate(pivots):
        x[c] = 1 if rows[r] & aug else 0
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = [0] * m.cols
        v[f] = 1
        for r, c in enumerate(pivots):
            if rows[r] >> f & 1:
                v[c] = 1
        basis.append(tuple(v))
    return GF2Solution(tuple(x), tuple(basis))
