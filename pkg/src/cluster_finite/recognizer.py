"""Finite-type recognition and the mutation-class explorer.

:func:`recognize` runs the orientation check on the chordless cycles of
Γ(B), builds the sign-determined companion and tests it for positivity.
:func:`explore_class` walks the mutation class breadth-first and serves as
an independent oracle: a weight ``|B_ij B_ji| >= 4`` anywhere in the class
rules out finite type.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

from .diagram import ChordlessCycle, chordless_cycles, diagram_of_skew
from .errors import NotFinite
from .matrix import IntMatrix, SkewSymmetrizableMatrix, mutate_entries
from .orient import assign_signs
from .quasi_cartan import CompanionCertificate, QuasiCartanMatrix, check_cycle_sign_condition, companion_from_signs, first_nonpositive_minor, is_positive
from .roots import CartanKillingType, cartan_killing_type

DEFAULT_MAX_VISITED = 100_000
REPORT_SCHEMA = "cluster-finite/recognition-report/1"


class Verdict(Enum):
    FINITE = "Finite"
    NOT_FINITE = "NotFinite"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class OrientedCyclesAndPositiveCompanion:
    certificate: CompanionCertificate


@dataclass(frozen=True)
class NonOrientableCycle:
    cycle: ChordlessCycle


@dataclass(frozen=True)
class NonPositiveCompanion:
    minor_index: int  # size of the first leading minor of D·A that is <= 0
    minor_value: int
    certificate: CompanionCertificate


Witness = Union[OrientedCyclesAndPositiveCompanion, NonOrientableCycle, NonPositiveCompanion]


@dataclass(frozen=True)
class RecognitionReport:
    verdict: Verdict
    type: Optional[CartanKillingType]
    witness: Witness
    timings: dict[str, float] = field(default_factory=dict, compare=False)

    @property
    def is_finite(self) -> bool:
        return self.verdict is Verdict.FINITE

    def to_dict(self) -> dict:
        w = self.witness
        if isinstance(w, NonOrientableCycle):
            wd = {"kind": "NonOrientableCycle", "cycle": [v + 1 for v in w.cycle.vertices]}
        else:
            cert = w.certificate
            wd = {
                "kind": type(w).__name__,
                "companion": [list(r) for r in cert.companion.a],
                "symmetrizer": list(cert.companion.d.diag),
                "signs": [[i + 1, j + 1, s] for (i, j), s in sorted(cert.signs.signs.items())],
            }
            if isinstance(w, NonPositiveCompanion):
                wd["minor_index"] = w.minor_index
                wd["minor_value"] = w.minor_value
        return {
            "schema": REPORT_SCHEMA,
            "verdict": self.verdict.value,
            "type": None if self.type is None else str(self.type),
            "witness": wd,
            "timings": dict(self.timings),
        }


def recognize(B: SkewSymmetrizableMatrix) -> RecognitionReport:
    timings: dict[str, float] = {}
    clock = time.perf_counter()

    def lap(name: str) -> None:
        nonlocal clock
        now = time.perf_counter()
        timings[name] = now - clock
        clock = now

    g = diagram_of_skew(B)
    lap("diagram")
    cycles = chordless_cycles(g)
    lap("cycles")
    for z in cycles:
        if not z.is_cyclically_oriented(g):
            lap("orientation")
            return RecognitionReport(Verdict.NOT_FINITE, None, NonOrientableCycle(z), timings)
    lap("orientation")
    signs = assign_signs(g)
    lap("signs")
    cert = companion_from_signs(B, signs)
    lap("companion")
    bad = first_nonpositive_minor(cert.companion)
    lap("positivity")
    if bad is not None:
        return RecognitionReport(Verdict.NOT_FINITE, None, NonPositiveCompanion(bad[0], bad[1], cert), timings)
    ck = cartan_killing_type(cert.companion)
    lap("type")
    return RecognitionReport(Verdict.FINITE, ck, OrientedCyclesAndPositiveCompanion(cert), timings)


def verify_witness(B: SkewSymmetrizableMatrix, report: RecognitionReport) -> bool:
    """Re-check a report's witness for ``B`` with the module operations."""
    w = report.witness
    if isinstance(w, NonOrientableCycle):
        g = diagram_of_skew(B)
        return not report.is_finite and w.cycle in chordless_cycles(g) and not w.cycle.is_cyclically_oriented(g)
    if w.certificate.source != B:
        return False
    A = w.certificate.companion
    if isinstance(w, NonPositiveCompanion):
        return not report.is_finite and first_nonpositive_minor(A) == (w.minor_index, w.minor_value)
    return (
        report.is_finite
        and is_positive(A)
        and check_cycle_sign_condition(A).ok
        and report.type == cartan_killing_type(A)
    )


# ---------------------------------------------------------------------------
# Mutation-class exploration
# ---------------------------------------------------------------------------


class ExplorationStatus(Enum):
    CLASS_CLOSED = "ClassClosed"
    WEIGHT_EXCEEDED = "WeightExceeded"
    CAP_EXCEEDED = "CapExceeded"


@dataclass(frozen=True)
class ExplorationWitness:
    matrix: IntMatrix
    path: tuple[int, ...]


@dataclass(frozen=True)
class ExplorationResult:
    status: ExplorationStatus
    visited: int
    witness: Optional[ExplorationWitness] = None
    members: frozenset = field(default=frozenset(), repr=False, compare=False)


def max_weight(b: IntMatrix) -> int:
    n = len(b)
    return max((abs(b[i][j] * b[j][i]) for i in range(n) for j in range(i + 1, n)), default=0)


def _path(parent: dict, key: IntMatrix) -> tuple[int, ...]:
    out = []
    while parent[key] is not None:
        key, k = parent[key]
        out.append(k)
    return tuple(reversed(out))


def explore_class(
    B: SkewSymmetrizableMatrix,
    max_visited: int = DEFAULT_MAX_VISITED,
    max_entry: Optional[int] = None,
) -> ExplorationResult:
    """Breadth-first search of the mutation class of ``B`` (directions in
    ascending order), keyed on exact entries.

    Stops with ``WEIGHT_EXCEEDED`` at the first matrix having some
    ``|B_ij B_ji| >= 4``, ``CLASS_CLOSED`` once the frontier is empty, and
    ``CAP_EXCEEDED`` when more than ``max_visited`` matrices were seen or an
    entry exceeds ``max_entry`` in absolute value.
    """
    seed = B.b
    parent: dict[IntMatrix, Optional[tuple[IntMatrix, int]]] = {seed: None}
    if max_weight(seed) >= 4:
        return ExplorationResult(ExplorationStatus.WEIGHT_EXCEEDED, 1, ExplorationWitness(seed, ()), frozenset(parent))
    queue = deque([seed])
    n = B.n
    while queue:
        cur = queue.popleft()
        for k in range(n):
            nxt = mutate_entries(cur, k)
            if nxt in parent:
                continue
            parent[nxt] = (cur, k)
            if max_weight(nxt) >= 4:
                return ExplorationResult(
                    ExplorationStatus.WEIGHT_EXCEEDED,
                    len(parent),
                    ExplorationWitness(nxt, _path(parent, nxt)),
                    frozenset(parent),
                )
            if len(parent) > max_visited or (
                max_entry is not None and any(abs(x) > max_entry for row in nxt for x in row)
            ):
                return ExplorationResult(ExplorationStatus.CAP_EXCEEDED, len(parent))
            queue.append(nxt)
    return ExplorationResult(ExplorationStatus.CLASS_CLOSED, len(parent), None, frozenset(parent))


def replay_path(B: SkewSymmetrizableMatrix, path) -> IntMatrix:
    b = B.b
    for k in path:
        b = mutate_entries(b, k)
    return b


def oracle_finite_type(
    B: SkewSymmetrizableMatrix,
    max_visited: int = DEFAULT_MAX_VISITED,
    memo: Optional[dict] = None,
) -> Verdict:
    """Finite-type verdict from the explorer alone.

    ``memo`` (optional) caches verdicts for every matrix of an explored
    class, since all of them share the class's verdict.
    """
    if memo is not None and B.b in memo:
        return memo[B.b]
    result = explore_class(B, max_visited)
    if result.status is ExplorationStatus.CAP_EXCEEDED:
        return Verdict.UNKNOWN
    verdict = Verdict.FINITE if result.status is ExplorationStatus.CLASS_CLOSED else Verdict.NOT_FINITE
    if memo is not None:
        for key in result.members:
            memo[key] = verdict
    return verdict


def cartan_counterpart(b: IntMatrix) -> QuasiCartanMatrix:
    """Cartan matrix with off-diagonal entries ``-|B_ij|``."""
    n = len(b)
    return QuasiCartanMatrix.from_rows([[2 if i == j else -abs(b[i][j]) for j in range(n)] for i in range(n)])


def find_cartan_member(B: SkewSymmetrizableMatrix, max_visited: int = DEFAULT_MAX_VISITED) -> Optional[tuple[IntMatrix, tuple[int, ...]]]:
    """Breadth-first search for a class member whose Cartan counterpart is
    positive; returns ``(member, mutation path)`` or ``None``."""
    parent: dict[IntMatrix, Optional[tuple[IntMatrix, int]]] = {B.b: None}
    queue = deque([B.b])
    while queue:
        cur = queue.popleft()
        if max_weight(cur) <= 3 and is_positive(cartan_counterpart(cur)):
            return cur, _path(parent, cur)
        for k in range(B.n):
            nxt = mutate_entries(cur, k)
            if nxt not in parent:
                parent[nxt] = (cur, k)
                if len(parent) > max_visited:
                    return None
                queue.append(nxt)
    return None


def class_type(B: SkewSymmetrizableMatrix, cross_check: bool = False, max_visited: int = DEFAULT_MAX_VISITED) -> CartanKillingType:
    """Cartan-Killing type of the mutation class of a finite-type ``B``.

    With ``cross_check`` the class is also searched for a member whose Cartan
    counterpart is positive, and that member's type must agree.
    """
    report = recognize(B)
    if not report.is_finite:
        raise NotFinite("matrix is not of finite type")
    if cross_check:
        found = find_cartan_member(B, max_visited)
        if found is None:
            raise RuntimeError("no member with a positive Cartan counterpart within the cap")
        other = cartan_killing_type(cartan_counterpart(found[0]))
        if other != report.type:
            raise RuntimeError(f"type mismatch: companion gives {report.type}, Cartan member gives {other}")
    return report.type
