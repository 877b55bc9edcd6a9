"""Cartan-Killing types of positive quasi-Cartan matrices.

The root set is the orbit of the basis vectors under the reflections
``s_i(e_j) = e_j - A_ij e_i``; its irreducible pieces are read off from
the orthogonality graph and identified by rank, size and root lengths.
Also generates the matrices ``B(n)`` and their companions ``A(n)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import NotPositive
from .matrix import SkewSymmetrizableMatrix, Symmetrizer, determinant
from .quasi_cartan import QuasiCartanMatrix, is_positive

RootVector = tuple[int, ...]

_ORDER = "ABCDEFG"


@dataclass(frozen=True)
class CartanKillingType:
    """Multiset of irreducible components ``(family, rank)``, kept sorted."""

    components: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        comps = tuple(sorted(((f, int(r)) for f, r in self.components), key=lambda c: (_ORDER.index(c[0]), c[1])))
        for f, r in comps:
            ok = {
                "A": r >= 1,
                "B": r >= 2,
                "C": r >= 2,
                "D": r >= 4,
                "E": r in (6, 7, 8),
                "F": r == 4,
                "G": r == 2,
            }.get(f, False)
            if not ok:
                raise ValueError(f"{f}{r} is not a canonical Cartan-Killing type")
        object.__setattr__(self, "components", comps)

    @classmethod
    def parse(cls, text: str) -> "CartanKillingType":
        parts = [p.strip() for p in text.split("+") if p.strip()]
        return cls(tuple((p[0], int(p[1:])) for p in parts))

    def __str__(self) -> str:
        return " + ".join(f"{f}{r}" for f, r in self.components) or "(empty)"


def reflect(A: QuasiCartanMatrix, i: int, v: Sequence[int]) -> RootVector:
    """Image of ``v`` under ``s_i``."""
    row = A.a[i]
    c = sum(x * y for x, y in zip(row, v))
    out = list(v)
    out[i] -= c
    return tuple(out)


def default_root_cap(n: int) -> int:
    return 2 * 240 * max(n, 1)


def enumerate_roots(A: QuasiCartanMatrix, cap: Optional[int] = None) -> Optional[frozenset[RootVector]]:
    """Closure of ``{±e_i}`` under all reflections.

    Returns ``None`` if the orbit grows past ``cap`` roots.
    """
    n = A.n
    if cap is None:
        cap = default_root_cap(n)
    roots: set[RootVector] = set()
    work = []
    for i in range(n):
        for s in (1, -1):
            e = tuple(s if j == i else 0 for j in range(n))
            roots.add(e)
            work.append(e)
    if len(roots) > cap:
        return None
    rows = A.a
    while work:
        v = work.pop()
        for i in range(n):
            c = sum(x * y for x, y in zip(rows[i], v))
            if c == 0:
                continue
            w = list(v)
            w[i] -= c
            w = tuple(w)
            if w not in roots:
                roots.add(w)
                if len(roots) > cap:
                    return None
                work.append(w)
    return frozenset(roots)


def _rank(vectors: list[RootVector]) -> int:
    rows = [[Fraction(x) for x in v] for v in vectors]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank]
        for r in range(rank + 1, len(rows)):
            if rows[r][c]:
                f = rows[r][c] / p[c]
                rows[r] = [x - f * y for x, y in zip(rows[r], p)]
        rank += 1
    return rank


def identify_component(rank: int, count: int, n_long: int, n_short: int) -> tuple[str, int]:
    """Family of an irreducible root system from rank, size and the numbers of
    long and short roots (``n_short == 0`` for a single root length)."""
    r = rank
    if n_short == 0:
        if count == r * (r + 1):
            return ("A", r)
        if r >= 4 and count == 2 * r * (r - 1):
            return ("D", r)
        named = {(6, 72): "E", (7, 126): "E", (8, 240): "E"}
        if (r, count) in named:
            return (named[(r, count)], r)
    else:
        if r == 2 and count == 12:
            return ("G", 2)
        if r == 4 and count == 48 and n_long == n_short == 24:
            return ("F", 4)
        if count == 2 * r * r:
            if n_short == 2 * r:
                return ("B", r)
            if n_long == 2 * r:
                return ("C", r)
    raise ValueError(f"no irreducible root system with rank {r}, {count} roots, {n_long} long, {n_short} short")


def root_components(A: QuasiCartanMatrix, roots: frozenset[RootVector]) -> list[dict]:
    """Irreducible pieces of the root set, with rank, size and length split."""
    C = A.symmetrized
    n = A.n
    rlist = sorted(roots)
    cv = [tuple(sum(C[i][j] * v[j] for j in range(n)) for i in range(n)) for v in rlist]
    parent = list(range(len(rlist)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(len(rlist)):
        for b in range(a + 1, len(rlist)):
            if sum(x * y for x, y in zip(rlist[a], cv[b])):
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[rb] = ra
    groups: dict[int, list[int]] = {}
    for a in range(len(rlist)):
        groups.setdefault(find(a), []).append(a)
    out = []
    for members in groups.values():
        vecs = [rlist[a] for a in members]
        lengths = [sum(x * y for x, y in zip(rlist[a], cv[a])) for a in members]
        hi, lo = max(lengths), min(lengths)
        n_long = lengths.count(hi)
        n_short = 0 if hi == lo else lengths.count(lo)
        out.append(
            {
                "rank": _rank(vecs),
                "count": len(members),
                "long": n_long,
                "short": n_short,
                "lengths": sorted(set(lengths)),
            }
        )
    return out


def cartan_killing_type(A: QuasiCartanMatrix) -> CartanKillingType:
    if not is_positive(A):
        raise NotPositive("quasi-Cartan matrix is not positive")
    roots = enumerate_roots(A)
    if roots is None:
        raise RuntimeError("root orbit of a positive matrix exceeded the cap")
    comps = root_components(A, roots)
    return CartanKillingType(tuple(identify_component(c["rank"], c["count"], c["long"], c["short"]) for c in comps))


# ---------------------------------------------------------------------------
# Standard families
# ---------------------------------------------------------------------------


def cartan_matrix(family: str, rank: int) -> QuasiCartanMatrix:
    """Textbook Cartan matrix with ``A_ij = 2(a_i|a_j)/(a_i|a_i)``.

    Numbering follows Bourbaki; in B_n the last simple root is short, in C_n
    it is long, in F4 roots 3 and 4 are short, in G2 root 1 is short.
    """
    n = rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        a[i][j], a[j][i] = aij, aji

    if family in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if family == "B" and n >= 2:
            link(n - 2, n - 1, -1, -2)
        if family == "C" and n >= 2:
            link(n - 2, n - 1, -2, -1)
    elif family == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif family == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif family == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif family == "G":
        link(0, 1, -3, -1)
    else:
        raise ValueError(f"unknown family {family!r}")
    return QuasiCartanMatrix.from_rows(a)


def bn_matrix(n: int) -> SkewSymmetrizableMatrix:
    """Skew-symmetric ``B(n)``: above the diagonal -1 at distance 1, +1 at
    distance 2, 0 further out."""
    if n < 1:
        raise ValueError("n must be positive")
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = {1: -1, 2: 1}.get(j - i, 0)
            b[i][j], b[j][i] = v, -v
    return SkewSymmetrizableMatrix(tuple(map(tuple, b)), Symmetrizer((1,) * n))


def an_companion(n: int) -> QuasiCartanMatrix:
    """Companion ``A(n)`` of ``B(n)`` copying the entries above the diagonal."""
    b = bn_matrix(n).b
    a = [[2 if i == j else b[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)]
    return QuasiCartanMatrix(tuple(map(tuple, a)), Symmetrizer((1,) * n))


def dn_sequence(limit: int) -> list[int]:
    """``[d_0, ..., d_limit]`` with ``d_n = det A(n)`` and ``d_0 = 1``."""
    if limit < 1:
        raise ValueError("limit must be at least 1")
    return [1] + [determinant(an_companion(n).a) for n in range(1, limit + 1)]
