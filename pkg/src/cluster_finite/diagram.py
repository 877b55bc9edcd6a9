"""Diagrams of skew-symmetrizable and quasi-Cartan matrices.

A :class:`Diagram` is a weighted graph on vertices ``0..n-1``.  Diagrams of
skew-symmetrizable matrices carry a direction on every edge, diagrams of
quasi-Cartan matrices carry a sign.  The plain :class:`Graph` type is the
underlying simple graph and is what the cycle machinery works on.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import isqrt, prod
from typing import TYPE_CHECKING, Iterable, Optional, Union

from .errors import CapExceeded, MalformedDiagram
from .matrix import SkewSymmetrizableMatrix, sgn

if TYPE_CHECKING:
    from .quasi_cartan import QuasiCartanMatrix

Pair = tuple[int, int]


def _pair(i: int, j: int) -> Pair:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; edges are stored as sorted pairs ``i < j``."""

    n: int
    edges: tuple[Pair, ...]

    def __post_init__(self) -> None:
        seen = set()
        for i, j in self.edges:
            if i == j:
                raise MalformedDiagram(f"self-loop at {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise MalformedDiagram(f"edge ({i},{j}) out of range")
            p = _pair(i, j)
            if p in seen:
                raise MalformedDiagram(f"duplicate edge {p}")
            seen.add(p)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Pair]) -> "Graph":
        return cls(n, tuple(_pair(i, j) for i, j in edges))

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def edge_index(self) -> dict[Pair, int]:
        return {e: idx for idx, e in enumerate(self.edges)}

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.adjacency[i]

    def without_edge(self, e: Pair) -> "Graph":
        return Graph(self.n, tuple(x for x in self.edges if x != _pair(*e)))


@dataclass(frozen=True)
class Edge:
    """Edge ``{i, j}`` with ``i < j``.

    ``direction`` is +1 for ``i -> j``, -1 for ``j -> i`` and ``None`` for an
    undirected edge; ``sign`` is +1, -1 or ``None``.
    """

    i: int
    j: int
    weight: int = 1
    direction: Optional[int] = None
    sign: Optional[int] = None

    @property
    def pair(self) -> Pair:
        return (self.i, self.j)

    @property
    def tail(self) -> int:
        return self.i if self.direction == 1 else self.j

    @property
    def head(self) -> int:
        return self.j if self.direction == 1 else self.i


@dataclass(frozen=True)
class Diagram:
    n: int
    edges: tuple[Edge, ...] = field(default=())

    def __post_init__(self) -> None:
        fixed = []
        for e in self.edges:
            if e.i > e.j:
                d = None if e.direction is None else -e.direction
                e = Edge(e.j, e.i, e.weight, d, e.sign)
            if e.weight < 1:
                raise MalformedDiagram(f"edge {e.pair} has weight {e.weight} < 1")
            if e.direction not in (None, 1, -1) or e.sign not in (None, 1, -1):
                raise MalformedDiagram(f"edge {e.pair} has a bad direction/sign")
            fixed.append(e)
        fixed.sort(key=lambda e: e.pair)
        object.__setattr__(self, "edges", tuple(fixed))
        # also checks self-loops, duplicates and range
        Graph(self.n, tuple(e.pair for e in fixed))
        kinds = {(e.direction is None, e.sign is None) for e in fixed}
        if (False, False) in kinds:
            raise MalformedDiagram("an edge cannot carry both a direction and a sign")
        _check_perfect_square(self)

    @cached_property
    def graph(self) -> Graph:
        return Graph(self.n, tuple(e.pair for e in self.edges))

    @cached_property
    def edge_map(self) -> dict[Pair, Edge]:
        return {e.pair: e for e in self.edges}

    def edge(self, i: int, j: int) -> Optional[Edge]:
        return self.edge_map.get(_pair(i, j))

    def weight(self, i: int, j: int) -> int:
        e = self.edge(i, j)
        return 0 if e is None else e.weight

    def points(self, i: int, j: int) -> bool:
        """True if the diagram has the directed edge ``i -> j``."""
        e = self.edge(i, j)
        return e is not None and e.direction is not None and e.tail == i

    @property
    def is_directed(self) -> bool:
        return all(e.direction is not None for e in self.edges)

    def induced(self, vertices: Iterable[int]) -> "Diagram":
        """Induced subdiagram, relabelled to ``0..len(vertices)-1`` in the given order."""
        vs = list(vertices)
        pos = {v: p for p, v in enumerate(vs)}
        out = []
        for e in self.edges:
            if e.i in pos and e.j in pos:
                out.append(Edge(pos[e.i], pos[e.j], e.weight, e.direction, e.sign))
        return Diagram(len(vs), tuple(out))


def _check_perfect_square(g: Diagram) -> None:
    # Fundamental cycles of a BFS forest span the cycle space, and being a
    # perfect square is multiplicative modulo squares, so they suffice.
    parent: dict[int, Optional[int]] = {}
    depth: dict[int, int] = {}
    adj = g.graph.adjacency
    tree: set[Pair] = set()
    for root in range(g.n):
        if root in parent:
            continue
        parent[root], depth[root] = None, 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in sorted(adj[u]):
                if v not in parent:
                    parent[v], depth[v] = u, depth[u] + 1
                    tree.add(_pair(u, v))
                    queue.append(v)
    for e in g.edges:
        if e.pair in tree:
            continue
        p = e.weight
        u, v = e.i, e.j
        while u != v:
            if depth[u] < depth[v]:
                u, v = v, u
            p *= g.weight(u, parent[u])
            u = parent[u]
        if isqrt(p) ** 2 != p:
            raise MalformedDiagram(f"weight product around the cycle through {e.pair} is not a perfect square")


@dataclass(frozen=True, order=True)
class ChordlessCycle:
    """Induced cycle, canonically starting at its minimal vertex with
    ``vertices[1] < vertices[-1]``."""

    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        vs = tuple(self.vertices)
        if len(vs) < 3 or len(set(vs)) != len(vs):
            raise MalformedDiagram(f"not a cycle: {vs}")
        m = vs.index(min(vs))
        vs = vs[m:] + vs[:m]
        if vs[1] > vs[-1]:
            vs = (vs[0],) + tuple(reversed(vs[1:]))
        object.__setattr__(self, "vertices", vs)

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def edges(self) -> tuple[Pair, ...]:
        vs = self.vertices
        return tuple(_pair(vs[p], vs[(p + 1) % len(vs)]) for p in range(len(vs)))

    def is_cyclically_oriented(self, g: Diagram) -> bool:
        vs = self.vertices
        steps = [g.points(vs[p], vs[(p + 1) % len(vs)]) for p in range(len(vs))]
        return all(steps) or not any(steps)


def is_chordless_cycle(g: Union[Graph, Diagram], vertices: Iterable[int]) -> bool:
    """Whether the induced subgraph on ``vertices`` is a cycle (any order)."""
    graph = g.graph if isinstance(g, Diagram) else g
    vs = set(vertices)
    if len(vs) < 3:
        return False
    adj = graph.adjacency
    if any(len(adj[v] & vs) != 2 for v in vs):
        return False
    start = next(iter(vs))
    seen = {start}
    stack = [start]
    while stack:
        for w in adj[stack.pop()] & vs:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == vs


# ---------------------------------------------------------------------------
# Construction from matrices
# ---------------------------------------------------------------------------


def diagram_of_skew(B: SkewSymmetrizableMatrix) -> Diagram:
    b = B.b
    edges = []
    for i in range(B.n):
        for j in range(i + 1, B.n):
            if b[i][j]:
                edges.append(Edge(i, j, abs(b[i][j] * b[j][i]), 1 if b[i][j] > 0 else -1))
    return Diagram(B.n, tuple(edges))


def diagram_of_quasi_cartan(A: "QuasiCartanMatrix") -> Diagram:
    a = A.a
    edges = []
    for i in range(A.n):
        for j in range(i + 1, A.n):
            if a[i][j]:
                edges.append(Edge(i, j, a[i][j] * a[j][i], None, -sgn(a[i][j])))
    return Diagram(A.n, tuple(edges))


# ---------------------------------------------------------------------------
# Cycles and components
# ---------------------------------------------------------------------------


def chordless_cycles(g: Union[Graph, Diagram]) -> list[ChordlessCycle]:
    """All chordless cycles, each once, in canonical form and sorted.

    Grows chordless paths from each start vertex ``s`` through vertices
    larger than ``s``; a path closes when its endpoint touches ``s``.
    """
    graph = g.graph if isinstance(g, Diagram) else g
    adj = graph.adjacency
    found: list[ChordlessCycle] = []
    for s in range(graph.n):
        nbrs_s = adj[s]

        def extend(path: list[int], blocked: set[int]) -> None:
            last = path[-1]
            for w in sorted(adj[last]):
                if w <= s or w in blocked:
                    continue
                if w in nbrs_s:
                    if len(path) >= 2 and path[1] < w:
                        found.append(ChordlessCycle(tuple(path) + (w,)))
                    continue
                # w is blocked for the future if it touches an interior vertex
                new_blocked = blocked | adj[last] | {last}
                extend(path + [w], new_blocked)

        for v1 in sorted(nbrs_s):
            if v1 > s:
                extend([s, v1], {s})
    # defensive re-check of the induced-cycle property
    return sorted(c for c in found if is_chordless_cycle(graph, c.vertices))


def connected_components(g: Union[Graph, Diagram]) -> list[list[int]]:
    graph = g.graph if isinstance(g, Diagram) else g
    adj = graph.adjacency
    seen: set[int] = set()
    comps = []
    for root in range(graph.n):
        if root in seen:
            continue
        seen.add(root)
        comp = [root]
        queue = deque([root])
        while queue:
            for w in adj[queue.popleft()]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


# ---------------------------------------------------------------------------
# Mutation
# ---------------------------------------------------------------------------


def diagram_mutate(g: Diagram, k: int) -> Diagram:
    """Mutate a directed diagram at vertex ``k``.

    For every oriented path ``i -> k -> j`` with weights ``a, b`` and third
    edge weight ``c`` the new weight is ``(σ√c + √(ab))²`` where σ is +1
    for ``i -> j``, -1 for ``j -> i``; the sign of ``σ√c + √(ab)`` gives
    the new direction and zero removes the edge.
    """
    if not g.is_directed:
        raise MalformedDiagram("diagram mutation needs a directed diagram")
    if not 0 <= k < g.n:
        raise IndexError(f"vertex {k} out of range")
    new: dict[Pair, Edge] = {}
    for e in g.edges:
        if k in e.pair:
            new[e.pair] = Edge(e.i, e.j, e.weight, -e.direction)
        else:
            new[e.pair] = e
    adj = g.graph.adjacency[k]
    ins = sorted(i for i in adj if g.points(i, k))
    outs = sorted(j for j in adj if g.points(k, j))
    for i in ins:
        for j in outs:
            a, b, c = g.weight(i, k), g.weight(k, j), g.weight(i, j)
            ab = a * b
            sigma = 1 if g.points(i, j) else (-1 if c else 0)
            if c:
                r = isqrt(ab * c)
                if r * r != ab * c:
                    raise MalformedDiagram(f"weights around ({i},{k},{j}) violate the perfect-square rule")
            else:
                r = 0
            c_new = ab + c + 2 * sigma * r
            p = _pair(i, j)
            if c_new == 0:
                new.pop(p, None)
                continue
            if sigma >= 0:
                forward = True
            else:
                forward = ab > c
            direction = 1 if (forward == (i < j)) else -1
            new[p] = Edge(p[0], p[1], c_new, direction)
    return Diagram(g.n, tuple(new.values()))


# ---------------------------------------------------------------------------
# Dynkin trees and forbidden subdiagrams
# ---------------------------------------------------------------------------


def _is_tree(g: Diagram) -> bool:
    return len(g.edges) == g.n - 1 and len(connected_components(g)) == 1


def dynkin_tree_type(g: Diagram) -> Optional[str]:
    """Name of the Dynkin diagram that the weighted tree ``g`` is, or ``None``.

    Weighted graphs do not tell B_n from C_n; both are reported as ``B<n>``
    (with ``B2`` for the rank-2 case).
    """
    n = g.n
    if n == 0 or not _is_tree(g):
        return None
    if n == 1:
        return "A1"
    weights = [e.weight for e in g.edges]
    if any(w > 3 for w in weights):
        return None
    if 3 in weights:
        return "G2" if n == 2 else None
    deg = [len(a) for a in g.graph.adjacency]
    heavy = [e for e in g.edges if e.weight == 2]
    if len(heavy) > 1:
        return None
    if heavy:
        if max(deg) > 2:
            return None
        e = heavy[0]
        if deg[e.i] == 1 or deg[e.j] == 1:
            return f"B{n}"
        return "F4" if n == 4 else None
    if max(deg) <= 2:
        return f"A{n}"
    branch = [v for v in range(n) if deg[v] >= 3]
    if len(branch) != 1 or deg[branch[0]] != 3:
        return None
    c = branch[0]
    adj = g.graph.adjacency
    legs = []
    for start in sorted(adj[c]):
        length, prev, cur = 1, c, start
        while len(adj[cur]) == 2:
            prev, cur = cur, next(w for w in adj[cur] if w != prev)
            length += 1
        legs.append(length)
    legs.sort()
    if legs[:2] == [1, 1]:
        return f"D{n}"
    return {(1, 2, 2): "E6", (1, 2, 3): "E7", (1, 2, 4): "E8"}.get(tuple(legs))


@dataclass(frozen=True)
class ForbiddenWitness:
    pattern: str
    vertices: tuple[int, ...]


def _induced_paths(g: Diagram, weight_ok) -> Iterable[tuple[int, ...]]:
    """Induced paths (as vertex tuples) accepted by ``weight_ok(weights, closed)``.

    ``weight_ok`` is called on the weight prefix; it returns ``None`` to
    prune, ``False`` to keep growing and ``True`` for a complete match.
    """
    adj = g.graph.adjacency
    out = []

    def grow(path: list[int], weights: list[int]) -> None:
        last = path[-1]
        interior = set().union(*(adj[v] for v in path[:-1])) if len(path) > 1 else set()
        for w in sorted(adj[last]):
            if w in path or w in interior:
                continue
            ws = weights + [g.weight(last, w)]
            verdict = weight_ok(ws)
            if verdict is None:
                continue
            if verdict:
                out.append(tuple(path + [w]))
            grow(path + [w], ws)

    for v in range(g.n):
        grow([v], [])
    return out


def _c_tilde(ws: list[int]):
    if ws[0] != 2:
        return None
    if len(ws) == 1:
        return False
    if any(w != 1 for w in ws[1:-1]):
        return None
    if ws[-1] == 2:
        return True
    return False if ws[-1] == 1 else None


def _g_tilde(ws: list[int]):
    if ws[0] != 3:
        return None
    if len(ws) == 1:
        return False
    return True if len(ws) == 2 else None


def contains_forbidden_subdiagram(g: Diagram) -> Optional[ForbiddenWitness]:
    """First induced copy of an affine pattern C̃n, B̃3, D̃4 or G̃2, else ``None``."""
    for path in _induced_paths(g, _c_tilde):
        if path[0] < path[-1]:
            name = "C~2" if len(path) == 3 else f"C~{len(path) - 1}"
            return ForbiddenWitness(name, path)
    adj = g.graph.adjacency
    for c in range(g.n):
        nbrs = sorted(adj[c])
        for trio in combinations(nbrs, 3):
            if any(g.weight(x, y) for x, y in combinations(trio, 2)):
                continue
            ws = sorted(g.weight(c, x) for x in trio)
            if ws == [1, 1, 2]:
                leaf = next(x for x in trio if g.weight(c, x) == 2)
                others = tuple(x for x in trio if x != leaf)
                return ForbiddenWitness("B~3", (leaf, c) + others)
    for c in range(g.n):
        nbrs = [x for x in sorted(adj[c]) if g.weight(c, x) == 1]
        for quad in combinations(nbrs, 4):
            if not any(g.weight(x, y) for x, y in combinations(quad, 2)):
                return ForbiddenWitness("D~4", (c,) + quad)
    for path in _induced_paths(g, _g_tilde):
        return ForbiddenWitness("G~2", path)
    return None


# ---------------------------------------------------------------------------
# Quasi-finiteness
# ---------------------------------------------------------------------------


def cycle_weights(g: Diagram, cycle: ChordlessCycle) -> list[int]:
    vs = cycle.vertices
    return [g.weight(vs[p], vs[(p + 1) % len(vs)]) for p in range(len(vs))]


def cycle_shape(weights: list[int]) -> Optional[str]:
    """Shape ``"a"``, ``"b"`` or ``"c"`` of a weighted cycle, given weights in
    cyclic order; ``None`` if it is none of the three positive shapes."""
    if all(w == 1 for w in weights):
        return "a"
    if len(weights) == 3 and sorted(weights) == [1, 2, 2]:
        return "b"
    if len(weights) == 4 and weights in ([2, 1, 2, 1], [1, 2, 1, 2]):
        return "c"
    return None


@dataclass(frozen=True)
class QuasiFiniteWitness:
    reason: str  # "tree", "cycle" or "wheel"
    vertices: tuple[int, ...]


def _is_wheel_configuration(g: Diagram, vs: list[int]) -> bool:
    for k in vs:
        rest = [v for v in vs if v != k]
        if len(rest) < 3 or not is_chordless_cycle(g, rest):
            continue
        if any(g.weight(x, y) != 1 for x, y in combinations(rest, 2) if g.weight(x, y)):
            continue
        nbrs = [v for v in rest if g.weight(k, v)]
        if not nbrs or len(nbrs) % 2:
            continue
        ws = [g.weight(k, v) for v in nbrs]
        if max(ws) > 2:
            continue
        if len(nbrs) == 2 and ws == [1, 1] and g.weight(*nbrs):
            continue
        return True
    return False


def is_quasi_finite(g: Diagram, cap: int = 12) -> tuple[bool, Optional[QuasiFiniteWitness]]:
    """Check the three quasi-finiteness conditions by exhaustive enumeration
    of induced subgraphs (so only for ``g.n <= cap``)."""
    if g.n > cap:
        raise CapExceeded(f"{g.n} vertices exceeds the quasi-finiteness cap {cap}")
    for size in range(1, g.n + 1):
        for vs in combinations(range(g.n), size):
            sub = g.induced(vs)
            if _is_tree(sub):
                if dynkin_tree_type(sub) is None:
                    return False, QuasiFiniteWitness("tree", vs)
                continue
            if size >= 3 and is_chordless_cycle(sub, range(size)):
                cyc = chordless_cycles(sub)[0]
                if cycle_shape(cycle_weights(sub, cyc)) is None:
                    return False, QuasiFiniteWitness("cycle", vs)
                continue
            if size >= 4 and _is_wheel_configuration(g, list(vs)):
                return False, QuasiFiniteWitness("wheel", vs)
    return True, None


def weight_product(g: Diagram, cycle: ChordlessCycle) -> int:
    return prod(cycle_weights(g, cycle))
