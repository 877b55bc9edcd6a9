"""Exhaustive and randomized sweeps shared by ``selftest`` and the test suite."""

from __future__ import annotations

import itertools
import random
from math import gcd
from dataclasses import dataclass, field
from typing import Iterator

from .diagram import Graph, chordless_cycles, connected_components
from .errors import NotSkewSymmetrizable
from .matrix import IntMatrix, SkewSymmetrizableMatrix, find_symmetrizer
from .orient import (
    brute_force_orientable,
    check_edge_ordering_criterion,
    check_exact_sequence,
    cycle_space_dimension,
    is_cyclically_orientable_count,
)
from .recognizer import Verdict, oracle_finite_type, recognize
from .roots import an_companion, bn_matrix, cartan_killing_type, dn_sequence, CartanKillingType

TABLE1_DETS = (2, 3, 4, 4, 4, 3, 2, 1)
TABLE1_TYPES = ("A1", "A2", "A3", "D4", "D5", "E6", "E7", "E8")


@dataclass
class CheckLine:
    name: str
    ok: bool
    detail: str = ""


def table1_checks(limit: int = 40) -> list[CheckLine]:
    out = []
    d = dn_sequence(limit + 12)
    for n in range(1, 9):
        ck = cartan_killing_type(an_companion(n))
        want = CartanKillingType.parse(TABLE1_TYPES[n - 1])
        ok = d[n] == TABLE1_DETS[n - 1] and ck == want
        out.append(CheckLine(f"A({n})", ok, f"det={d[n]} type={ck}"))
    out.append(CheckLine("d9=d10=d11=0", d[9] == d[10] == d[11] == 0, f"{d[9]},{d[10]},{d[11]}"))
    bad = [n for n in range(1, limit + 1) if d[n + 12] != d[n]]
    out.append(CheckLine(f"period 12 through n={limit}", not bad, f"mismatches at {bad}" if bad else ""))
    for n in range(1, 13):
        rep = recognize(bn_matrix(n))
        want_finite = n <= 8
        ok = rep.is_finite == want_finite
        if ok and want_finite:
            ok = rep.type == CartanKillingType.parse(TABLE1_TYPES[n - 1])
        out.append(CheckLine(f"recognize B({n})", ok, f"{rep.verdict.value} {rep.type or ''}".strip()))
    return out


# ---------------------------------------------------------------------------
# Orientability criteria
# ---------------------------------------------------------------------------


def connected_labeled_graphs(n: int) -> Iterator[Graph]:
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        edges = [p for b, p in enumerate(pairs) if mask >> b & 1]
        g = Graph.from_edges(n, edges)
        if len(connected_components(g)) == 1:
            yield g


def random_graph(rng: random.Random, n: int, max_edges: int = 20) -> Graph:
    pairs = list(itertools.combinations(range(n), 2))
    while True:
        p = rng.random()
        edges = [e for e in pairs if rng.random() < p]
        if len(edges) <= max_edges:
            return Graph.from_edges(n, edges)


@dataclass
class CriteriaOutcome:
    count: bool
    exact: bool
    ordering: bool
    brute: bool
    inequality: bool

    @property
    def agree(self) -> bool:
        return self.count == self.exact == self.ordering == self.brute and self.inequality


def criteria_outcome(g: Graph) -> CriteriaOutcome:
    ncyc = len(chordless_cycles(g))
    return CriteriaOutcome(
        count=is_cyclically_orientable_count(g),
        exact=check_exact_sequence(g),
        ordering=check_edge_ordering_criterion(g),
        brute=brute_force_orientable(g),
        inequality=ncyc >= cycle_space_dimension(g),
    )


@dataclass
class SweepSummary:
    checked: int = 0
    positive: int = 0
    unknown: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def criteria_sweep(max_vertices: int = 6, random_count: int = 500, seed: int = 0) -> SweepSummary:
    summary = SweepSummary()
    graphs: list[Graph] = [g for n in range(1, max_vertices + 1) for g in connected_labeled_graphs(n)]
    rng = random.Random(seed)
    graphs += [random_graph(rng, rng.choice((7, 8))) for _ in range(random_count)]
    for g in graphs:
        res = criteria_outcome(g)
        summary.checked += 1
        summary.positive += res.brute
        if not res.agree:
            summary.failures.append((g, res))
    return summary


# ---------------------------------------------------------------------------
# Recognizer versus explorer
# ---------------------------------------------------------------------------


def _pair_options(bound: int) -> list[tuple[int, int]]:
    opts = [(0, 0)]
    for a in range(1, bound + 1):
        for b in range(1, bound + 1):
            opts += [(a, -b), (-a, b)]
    return opts


def skew_symmetrizable_matrices(n: int, bound: int = 2) -> Iterator[SkewSymmetrizableMatrix]:
    """All skew-symmetrizable ``n x n`` matrices with entries in ``[-bound, bound]``."""
    pairs = list(itertools.combinations(range(n), 2))
    opts = _pair_options(bound)
    for choice in itertools.product(opts, repeat=len(pairs)):
        b = [[0] * n for _ in range(n)]
        for (i, j), (x, y) in zip(pairs, choice):
            b[i][j], b[j][i] = x, y
        rows: IntMatrix = tuple(map(tuple, b))
        try:
            d = find_symmetrizer(rows)
        except NotSkewSymmetrizable:
            continue
        yield SkewSymmetrizableMatrix(rows, d)


def oracle_sweep(max_n: int = 4, bound: int = 2, max_visited: int = 100_000) -> SweepSummary:
    summary = SweepSummary()
    memo: dict = {}
    for n in range(1, max_n + 1):
        for B in skew_symmetrizable_matrices(n, bound):
            summary.checked += 1
            oracle = oracle_finite_type(B, max_visited, memo)
            if oracle is Verdict.UNKNOWN:
                summary.unknown += 1
                continue
            got = recognize(B).verdict
            summary.positive += got is Verdict.FINITE
            if got is not oracle:
                summary.failures.append((B.b, got, oracle))
    return summary


def random_skew_symmetrizable(rng: random.Random, n: int, density: float = 0.6, max_d: int = 3) -> SkewSymmetrizableMatrix:
    """Random ``B`` built from a random symmetrizer: ``B_ij = t d_j / g``,
    ``B_ji = -t d_i / g`` with ``g = gcd(d_i, d_j)``."""
    d = [rng.randint(1, max_d) for _ in range(n)]
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                t = rng.choice((-2, -1, 1, 2))
                g = gcd(d[i], d[j])
                b[i][j] = t * d[j] // g
                b[j][i] = -t * d[i] // g
    return SkewSymmetrizableMatrix.from_rows(b)

