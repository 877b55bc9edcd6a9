"""Quasi-Cartan matrices and companions of skew-symmetrizable matrices."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import isqrt
from typing import Iterable, NamedTuple, Optional

from .diagram import ChordlessCycle, Diagram, chordless_cycles, connected_components, cycle_shape, cycle_weights, diagram_of_quasi_cartan
from .errors import MalformedCycle, NotACompanion, NotKCompatible, NotSymmetrizable, SignDomainMismatch, SymmetrizerMismatch
from .matrix import (
    IntMatrix,
    SkewSymmetrizableMatrix,
    Symmetrizer,
    as_int_matrix,
    determinant,
    find_symmetric_symmetrizer,
    leading_principal_minors,
    matmul,
    mutate_entries,
    sgn,
    transpose,
)
from .orient import SignAssignment


@dataclass(frozen=True)
class QuasiCartanMatrix:
    a: IntMatrix
    d: Symmetrizer

    def __post_init__(self) -> None:
        a = as_int_matrix(self.a)
        object.__setattr__(self, "a", a)
        n = len(a)
        if self.d.n != n:
            raise NotSymmetrizable("symmetrizer size does not match matrix")
        for i in range(n):
            if a[i][i] != 2:
                raise NotSymmetrizable(f"diagonal entry ({i},{i}) is {a[i][i]}, expected 2")
            for j in range(i + 1, n):
                if sgn(a[i][j]) != sgn(a[j][i]):
                    raise NotSymmetrizable(f"sign pattern violated at ({i},{j})")
                if self.d.diag[i] * a[i][j] != self.d.diag[j] * a[j][i]:
                    raise NotSymmetrizable(f"D·A is not symmetric at ({i},{j})")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "QuasiCartanMatrix":
        a = as_int_matrix(rows)
        return cls(a, find_symmetric_symmetrizer(a))

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def symmetrized(self) -> IntMatrix:
        """C = D·A."""
        return self.d.apply(self.a)


def is_companion(A: QuasiCartanMatrix, B: SkewSymmetrizableMatrix) -> bool:
    if A.n != B.n:
        return False
    return all(abs(A.a[i][j]) == abs(B.b[i][j]) for i in range(A.n) for j in range(A.n) if i != j)


@dataclass(frozen=True)
class CompanionCertificate:
    companion: QuasiCartanMatrix
    source: SkewSymmetrizableMatrix
    signs: SignAssignment

    def __post_init__(self) -> None:
        if not is_companion(self.companion, self.source):
            raise NotACompanion("|A_ij| != |B_ij| for some i != j")
        a, b = self.companion.a, self.source.b
        for (i, j), eps in self.signs.signs.items():
            if a[i][j] != -eps * abs(b[i][j]):
                raise NotACompanion(f"entry ({i},{j}) disagrees with its sign")


def companion_from_signs(B: SkewSymmetrizableMatrix, s: SignAssignment) -> CompanionCertificate:
    """Companion with ``A_ij = -eps_ij |B_ij|``; ``s`` must cover exactly the
    edges ``{i, j}`` with ``B_ij != 0``."""
    n = B.n
    edges = {(i, j) for i in range(n) for j in range(i + 1, n) if B.b[i][j]}
    if set(s.signs) != edges:
        raise SignDomainMismatch("sign assignment does not match the edges of the diagram")
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for (i, j), eps in s.signs.items():
        a[i][j] = -eps * abs(B.b[i][j])
        a[j][i] = -eps * abs(B.b[j][i])
    return CompanionCertificate(QuasiCartanMatrix(as_int_matrix(a), B.d), B, s)


def first_nonpositive_minor(A: QuasiCartanMatrix) -> Optional[tuple[int, int]]:
    """``(size, value)`` of the first leading minor of D·A that is ``<= 0``."""
    minors = leading_principal_minors(A.symmetrized, stop_at_nonpositive=True)
    if minors and minors[-1] <= 0:
        return len(minors), minors[-1]
    return None


def is_positive(A: QuasiCartanMatrix) -> bool:
    """Sylvester test on the symmetric matrix D·A."""
    return first_nonpositive_minor(A) is None


class SignCheck(NamedTuple):
    ok: bool
    cycle: Optional[ChordlessCycle]


def check_cycle_sign_condition(A: QuasiCartanMatrix) -> SignCheck:
    """Every chordless cycle must have ``prod(-A_ij) < 0`` over its edges."""
    g = diagram_of_quasi_cartan(A)
    for z in chordless_cycles(g):
        p = 1
        for i, j in z.edges:
            p *= -A.a[i][j]
        if p >= 0:
            return SignCheck(False, z)
    return SignCheck(True, None)


def is_k_compatible(A: QuasiCartanMatrix, B: SkewSymmetrizableMatrix, k: int) -> bool:
    if not is_companion(A, B):
        raise NotACompanion("A is not a quasi-Cartan companion of B")
    a, b = A.a, B.b
    for i in range(B.n):
        if b[i][k] <= 0:
            continue
        for j in range(B.n):
            if b[k][j] > 0 and sgn(a[i][k] * a[k][j] * a[j][i]) != sgn(b[j][i]):
                return False
    return True


def companion_mutate(A: QuasiCartanMatrix, B: SkewSymmetrizableMatrix, k: int) -> tuple[QuasiCartanMatrix, IntMatrix]:
    """Companion of ``mu_k(B)`` equivalent to ``A``, as ``(J - E) A (J - F)``.

    ``J`` is the identity with ``J_kk = -1``; ``E`` keeps the column-k
    entries ``A_ik`` with ``B_ik > 0``; ``F`` keeps the row-k entries
    ``A_kj`` with ``B_kj < 0``.  Returns the new companion and ``J - F``,
    which satisfies ``C' = (J - F)^T C (J - F)``.
    """
    if not is_k_compatible(A, B, k):
        raise NotKCompatible(f"A is not {k}-compatible with B")
    n = A.n
    a, b = A.a, B.b
    j_minus_e = [[int(i == j) for j in range(n)] for i in range(n)]
    j_minus_f = [[int(i == j) for j in range(n)] for i in range(n)]
    j_minus_e[k][k] = j_minus_f[k][k] = -1
    for i in range(n):
        if b[i][k] > 0:
            j_minus_e[i][k] -= a[i][k]
        if b[k][i] < 0:
            j_minus_f[k][i] -= a[k][i]
    new = matmul(matmul(j_minus_e, a), j_minus_f)
    return QuasiCartanMatrix(new, A.d), as_int_matrix(j_minus_f)


def companion_mutate_entries(A: QuasiCartanMatrix, B: SkewSymmetrizableMatrix, k: int) -> IntMatrix:
    """Closed-form entries of the mutated companion (no compatibility check)."""
    n = A.n
    a, b = A.a, B.b
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k and j == k:
                out[i][j] = 2
            elif j == k:
                out[i][j] = sgn(b[i][k]) * a[i][k]
            elif i == k:
                out[i][j] = -sgn(b[k][j]) * a[k][j]
            else:
                out[i][j] = a[i][j] - sgn(a[i][k] * a[k][j]) * max(b[i][k] * b[k][j], 0)
    return as_int_matrix(out)


def gram_equivalent(A: QuasiCartanMatrix, A2: QuasiCartanMatrix, E) -> bool:
    """Whether ``D A2 = E^T (D A) E`` with ``det E = ±1``."""
    if A.d != A2.d:
        raise SymmetrizerMismatch("matrices do not share a symmetrizer")
    E = as_int_matrix(E)
    if abs(determinant(E)) != 1:
        return False
    return A2.symmetrized == matmul(matmul(transpose(E), A.symmetrized), E)


# ---------------------------------------------------------------------------
# Weighted signed diagrams
# ---------------------------------------------------------------------------


def _squarefree(x: int) -> int:
    out, p = 1, 2
    while p * p <= x:
        while x % (p * p) == 0:
            x //= p * p
        if x % p == 0:
            out *= p
            x //= p
        p += 1
    return out * x


def quasi_cartan_from_diagram(g: Diagram) -> QuasiCartanMatrix:
    """A quasi-Cartan matrix whose diagram has the weights and signs of ``g``
    (missing signs count as +1).

    Each vertex gets a squarefree class ``s_v`` with ``s_i s_j w_ij`` a
    perfect square; then ``|A_ij| = sqrt(s_i s_j w) / s_i`` is an integer.
    """
    n = g.n
    cls: dict[int, int] = {}
    adj = g.graph.adjacency
    for comp in connected_components(g):
        cls[comp[0]] = 1
        stack = [comp[0]]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in cls:
                    cls[v] = _squarefree(cls[u] * g.weight(u, v))
                    stack.append(v)
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for e in g.edges:
        root = isqrt(cls[e.i] * cls[e.j] * e.weight)
        if root * root != cls[e.i] * cls[e.j] * e.weight:
            raise NotSymmetrizable(f"edge {e.pair} breaks the perfect-square rule")
        sign = 1 if e.sign is None else e.sign
        a[e.i][e.j] = -sign * (root // cls[e.i])
        a[e.j][e.i] = -sign * (root // cls[e.j])
    return QuasiCartanMatrix.from_rows(a)


class CycleShape(Enum):
    TYPE_A = "a"
    TYPE_B = "b"
    TYPE_C = "c"
    NOT_POSITIVE_SHAPE = "none"


class CycleClass(NamedTuple):
    shape: CycleShape
    sign_ok: bool


def classify_cycle_diagram(z: Diagram) -> CycleClass:
    """Shape of a signed weighted cycle and whether its sign product is -1."""
    if z.n < 3 or len(z.edges) != z.n:
        raise MalformedCycle("diagram is not a cycle")
    cycles = chordless_cycles(z)
    if len(cycles) != 1 or len(cycles[0]) != z.n:
        raise MalformedCycle("diagram is not a single cycle through all vertices")
    if any(e.sign is None for e in z.edges):
        raise MalformedCycle("cycle edges must carry signs")
    shape = cycle_shape(cycle_weights(z, cycles[0]))
    p = 1
    for e in z.edges:
        p *= e.sign
    return CycleClass(CycleShape(shape or "none"), p == -1)


def mutate_companion_pair(A: QuasiCartanMatrix, B: SkewSymmetrizableMatrix, k: int):
    """Convenience: ``(A', B', J - F)`` for a k-compatible pair."""
    A2, t = companion_mutate(A, B, k)
    return A2, SkewSymmetrizableMatrix(mutate_entries(B.b, k), B.d), t
