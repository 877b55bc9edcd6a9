"""Independent reference implementations used as test oracles."""

from __future__ import annotations

import itertools
import random
from math import gcd

from hypothesis import strategies as st

from cluster_finite.matrix import SkewSymmetrizableMatrix, sgn
from cluster_finite.quasi_cartan import QuasiCartanMatrix


def cofactor_det(m) -> int:
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1 :] for row in m[1:]]
            total += (-1) ** j * m[0][j] * cofactor_det(minor)
    return total


def all_principal_minors_positive(m) -> bool:
    n = len(m)
    for size in range(1, n + 1):
        for idx in itertools.combinations(range(n), size):
            if cofactor_det([[m[i][j] for j in idx] for i in idx]) <= 0:
                return False
    return True


def brute_chordless_cycles(n: int, edges) -> set[frozenset]:
    """Vertex sets of size >= 3 inducing a connected 2-regular subgraph."""
    es = {frozenset(e) for e in edges}
    out = set()
    for size in range(3, n + 1):
        for vs in itertools.combinations(range(n), size):
            inner = [e for e in es if e <= set(vs)]
            if len(inner) != size:
                continue
            deg = {v: 0 for v in vs}
            for e in inner:
                for v in e:
                    deg[v] += 1
            if any(d != 2 for d in deg.values()):
                continue
            # connected?
            adj = {v: [w for e in inner if v in e for w in e if w != v] for v in vs}
            seen, stack = {vs[0]}, [vs[0]]
            while stack:
                for w in adj[stack.pop()]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            if len(seen) == size:
                out.add(frozenset(vs))
    return out


def random_skew(rng: random.Random, n: int, bound: int = 3, density: float = 0.6, max_d: int = 3) -> SkewSymmetrizableMatrix:
    """Random skew-symmetrizable matrix with entries bounded by ``bound``."""
    while True:
        d = [rng.randint(1, max_d) for _ in range(n)]
        b = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < density:
                    g = gcd(d[i], d[j])
                    t = rng.choice((-1, 1)) * rng.randint(1, 2)
                    x, y = t * d[j] // g, -t * d[i] // g
                    if abs(x) <= bound and abs(y) <= bound:
                        b[i][j], b[j][i] = x, y
        return SkewSymmetrizableMatrix.from_rows(b)


@st.composite
def skew_matrices(draw, max_n: int = 5, bound: int = 3):
    n = draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_skew(random.Random(seed), n, bound)


@st.composite
def graphs(draw, max_n: int = 7):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return n, [p for p, keep in zip(pairs, mask) if keep]


def random_k_compatible(rng: random.Random, B: SkewSymmetrizableMatrix, k: int):
    """Random companion of ``B`` with signs repaired on 2-paths through ``k``."""
    n, b = B.n, B.b
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if b[i][j]:
                s = rng.choice((-1, 1))
                a[i][j], a[j][i] = s * abs(b[i][j]), s * abs(b[j][i])
    for i in range(n):
        for j in range(n):
            if b[i][k] > 0 and b[k][j] > 0 and b[j][i]:
                s = sgn(b[j][i]) * sgn(a[i][k] * a[k][j])
                a[j][i], a[i][j] = s * abs(b[j][i]), s * abs(b[i][j])
    return QuasiCartanMatrix(tuple(map(tuple, a)), B.d)
