"""Cyclically orientable graphs.

A graph is cyclically orientable when some orientation makes every
chordless cycle a directed cycle.  Three equivalent tests are provided
(edge ordering, cycle count, exact sequence over GF(2)), together with a
constructive orientation, an exhaustive search oracle, and the edge sign
assignment with product -1 around every chordless cycle.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .diagram import ChordlessCycle, Diagram, Graph, Pair, _pair, chordless_cycles, connected_components
from .errors import CapExceeded, NotOrientable
from .matrix import GF2Matrix, gf2_rank, gf2_solve

GraphLike = Union[Graph, Diagram]
Orientation = dict[Pair, tuple[int, int]]


def _graph(g: GraphLike) -> Graph:
    return g.graph if isinstance(g, Diagram) else g


@dataclass(frozen=True)
class EdgeOrdering:
    edges: tuple[Pair, ...]
    split_point: int

    @property
    def forest(self) -> tuple[Pair, ...]:
        return self.edges[: self.split_point]

    @property
    def suffix(self) -> tuple[Pair, ...]:
        return self.edges[self.split_point :]

    def position(self) -> dict[Pair, int]:
        return {e: p for p, e in enumerate(self.edges)}


@dataclass(frozen=True)
class SignAssignment:
    signs: dict[Pair, int]

    def __getitem__(self, e: Pair) -> int:
        return self.signs[_pair(*e)]

    def bits(self, g: GraphLike) -> tuple[int, ...]:
        """Encode as GF(2) vector over ``g``'s edges (1 for sign -1)."""
        return tuple(int(self.signs[e] == -1) for e in _graph(g).edges)

    @classmethod
    def from_bits(cls, g: GraphLike, bits: Iterable[int]) -> "SignAssignment":
        return cls({e: (-1 if b else 1) for e, b in zip(_graph(g).edges, bits)})


def _bfs_distances(adj: list[set[int]], src: int) -> dict[int, int]:
    dist = {src: 0}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def order_edges(g: GraphLike) -> EdgeOrdering:
    """Spanning forest first (BFS from each component's minimal vertex), then
    the remaining edges, each time taking the one whose endpoints are closest
    in the graph of edges already placed (ties: lexicographic)."""
    graph = _graph(g)
    adj = graph.adjacency
    seen: set[int] = set()
    forest: list[Pair] = []
    for root in range(graph.n):
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sorted(adj[u]):
                if w not in seen:
                    seen.add(w)
                    forest.append(_pair(u, w))
                    queue.append(w)
    placed: list[set[int]] = [set() for _ in range(graph.n)]
    for i, j in forest:
        placed[i].add(j)
        placed[j].add(i)
    in_forest = set(forest)
    remaining = [e for e in graph.edges if e not in in_forest]
    order = list(forest)
    while remaining:
        dist_cache: dict[int, dict[int, int]] = {}
        best = None
        for e in remaining:
            i, j = e
            if i not in dist_cache:
                dist_cache[i] = _bfs_distances(placed, i)
            key = (dist_cache[i][j], e)
            if best is None or key < best:
                best = key
        e = best[1]
        remaining.remove(e)
        order.append(e)
        placed[e[0]].add(e[1])
        placed[e[1]].add(e[0])
    return EdgeOrdering(tuple(order), len(forest))


def cycle_space_dimension(g: GraphLike) -> int:
    """``|Edg| - |Ver| + |Con|``."""
    graph = _graph(g)
    return len(graph.edges) - graph.n + len(connected_components(graph))


def is_cyclically_orientable_count(g: GraphLike) -> bool:
    return len(chordless_cycles(g)) == cycle_space_dimension(g)


def incidence_maps(g: GraphLike, cycles: Optional[list[ChordlessCycle]] = None) -> tuple[GF2Matrix, GF2Matrix, GF2Matrix]:
    """Matrices of ``F2^Con -> F2^Ver -> F2^Edg -> F2^Cyc``.

    Each map sends ``f`` to ``y |-> sum of f(x) over incident x``; the matrix
    has one row per target element and one column per source element.
    """
    graph = _graph(g)
    comps = connected_components(graph)
    if cycles is None:
        cycles = chordless_cycles(graph)
    con_ver = [[int(v in c) for c in comps] for v in range(graph.n)]
    ver_edg = [[int(v in e) for v in range(graph.n)] for e in graph.edges]
    edg_cyc = []
    for z in cycles:
        zs = set(z.edges)
        edg_cyc.append([int(e in zs) for e in graph.edges])
    return (
        GF2Matrix.from_rows(con_ver, len(comps)),
        GF2Matrix.from_rows(ver_edg, graph.n),
        GF2Matrix.from_rows(edg_cyc, len(graph.edges)),
    )


def check_exact_sequence(g: GraphLike) -> bool:
    """Exactness of ``0 -> F2^Con -> F2^Ver -> F2^Edg -> F2^Cyc -> 0``."""
    graph = _graph(g)
    cycles = chordless_cycles(graph)
    r1_m, r2_m, r3_m = incidence_maps(graph, cycles)
    if not (r2_m @ r1_m).is_zero() or not (r3_m @ r2_m).is_zero():
        return False
    n_con, n_ver, n_edg, n_cyc = r1_m.cols, graph.n, len(graph.edges), len(cycles)
    r1, r2, r3 = gf2_rank(r1_m), gf2_rank(r2_m), gf2_rank(r3_m)
    return (
        r1 == n_con  # injective at Con
        and n_ver - r2 == r1  # ker = im at Ver
        and n_edg - r3 == r2  # ker = im at Edg
        and r3 == n_cyc  # surjective onto Cyc
    )


def _max_edge_map(ordering: EdgeOrdering, cycles: list[ChordlessCycle]) -> dict[ChordlessCycle, Pair]:
    pos = ordering.position()
    return {z: max(z.edges, key=pos.__getitem__) for z in cycles}


def check_edge_ordering_criterion(g: GraphLike) -> bool:
    """Whether distinct chordless cycles have distinct maximal edges under
    :func:`order_edges`."""
    cycles = chordless_cycles(g)
    maxima = _max_edge_map(order_edges(g), cycles)
    return len(set(maxima.values())) == len(cycles)


# ---------------------------------------------------------------------------
# Orientations
# ---------------------------------------------------------------------------


def is_cyclic_orientation(cycles: Iterable[ChordlessCycle], orientation: Orientation) -> bool:
    for z in cycles:
        vs = z.vertices
        forward = [orientation[_pair(u, v)] == (u, v) for u, v in zip(vs, vs[1:] + vs[:1])]
        if not (all(forward) or not any(forward)):
            return False
    return True


def _chains(adj: list[set[int]], i: int, j: int, limit: int) -> list[list[int]]:
    """Induced paths ``i = i1, ..., it = j`` with ``t >= 3``, at most ``limit``."""
    found: list[list[int]] = []

    def grow(path: list[int], blocked: set[int]) -> None:
        if len(found) >= limit:
            return
        last = path[-1]
        for w in sorted(adj[last]):
            if w in blocked:
                continue
            if w == j:
                if len(path) >= 2:
                    found.append(path + [w])
                    if len(found) >= limit:
                        return
                continue
            grow(path + [w], blocked | adj[last] | {last})

    if j not in adj[i]:
        grow([i], {i})
    return found


def _line_up_chain(adj: list[set[int]], orientation: Orientation, chain: list[int]) -> None:
    """Reorient so that ``chain`` is directed ``chain[0] -> ... -> chain[-1]``,
    keeping every chordless cycle of the current graph cyclically oriented."""
    on_chain = set(chain)
    rest = [v for v in range(len(adj)) if v not in on_chain]
    comp_of: dict[int, int] = {}
    comps: list[set[int]] = []
    for v in rest:
        if v in comp_of:
            continue
        comp = {v}
        comp_of[v] = len(comps)
        stack = [v]
        while stack:
            for w in adj[stack.pop()]:
                if w not in on_chain and w not in comp_of:
                    comp_of[w] = len(comps)
                    comp.add(w)
                    stack.append(w)
        comps.append(comp)
    for p in range(len(chain) - 1):
        a, b = chain[p], chain[p + 1]
        if orientation[_pair(a, b)] == (a, b):
            continue
        block: set[int] = set()
        for comp in comps:
            if adj[a] & comp and adj[b] & comp:
                block |= comp
        touched = block | {a, b}
        for e, (t, h) in list(orientation.items()):
            inside = e[0] in touched and e[1] in touched
            if e == _pair(a, b) or (inside and (e[0] in block or e[1] in block)):
                orientation[e] = (h, t)


def construct_orientation(g: GraphLike) -> Orientation:
    """An orientation making every chordless cycle cyclically oriented.

    Edges are added in :func:`order_edges` order.  When the new edge closes a
    unique chain, the chain is first lined up (reversing the blocks that
    hang off reversed chain edges) and the edge then closes the cycle.
    Raises ``NotOrientable`` if the graph is not cyclically orientable.
    """
    graph = _graph(g)
    if not is_cyclically_orientable_count(graph):
        raise NotOrientable("chordless cycle count differs from |Edg| - |Ver| + |Con|")
    orientation: Orientation = {}
    adj: list[set[int]] = [set() for _ in range(graph.n)]
    for e in order_edges(graph).edges:
        i, j = e
        chains = _chains(adj, i, j, limit=2)
        if len(chains) > 1:
            raise NotOrientable(f"edge {e} closes more than one chordless cycle as its maximal edge")
        if chains:
            _line_up_chain(adj, orientation, chains[0])
            orientation[e] = (j, i)
        else:
            orientation[e] = (i, j)
        adj[i].add(j)
        adj[j].add(i)
    if not is_cyclic_orientation(chordless_cycles(graph), orientation):
        raise RuntimeError("constructed orientation failed verification")
    return orientation


def brute_force_orientable(g: GraphLike, max_edges: int = 20) -> bool:
    """Exhaustive search over edge orientations (first edge fixed, since
    reversing everything preserves the property), pruning a branch as soon as
    a chordless cycle with assigned edges is inconsistent."""
    graph = _graph(g)
    m = len(graph.edges)
    if m > max_edges:
        raise CapExceeded(f"{m} edges exceeds the brute-force cap {max_edges}")
    if m == 0:
        return True
    idx = graph.edge_index
    # per edge: list of (cycle id, traversal parity, first edge index of cycle)
    checks: list[list[tuple[int, int, int]]] = [[] for _ in range(m)]
    cycles = chordless_cycles(graph)
    first_parity: list[tuple[int, int]] = []
    for cid, z in enumerate(cycles):
        vs = z.vertices
        steps = sorted((idx[_pair(u, v)], int(u < v)) for u, v in zip(vs, vs[1:] + vs[:1]))
        first_parity.append(steps[0])
        for e, parity in steps[1:]:
            checks[e].append((cid, parity, steps[0][0]))
    bits = [0] * m

    def ok(e: int) -> bool:
        for cid, parity, first in checks[e]:
            f_edge, f_par = first_parity[cid]
            if (bits[e] ^ parity) != (bits[f_edge] ^ f_par):
                return False
        return True

    def search(e: int) -> bool:
        if e == m:
            return True
        for b in ((1,) if e == 0 else (0, 1)):
            bits[e] = b
            if ok(e) and search(e + 1):
                return True
        return False

    return search(0)


# ---------------------------------------------------------------------------
# Signs
# ---------------------------------------------------------------------------


def assign_signs(g: GraphLike) -> SignAssignment:
    """Edge signs with product -1 around every chordless cycle.

    Walks the edges in :func:`order_edges` order: an edge that is maximal in
    no chordless cycle gets +1, otherwise its sign is forced by its cycle.
    The result is re-checked against the GF(2) cycle system.
    """
    graph = _graph(g)
    cycles = chordless_cycles(graph)
    if len(cycles) != cycle_space_dimension(graph):
        raise NotOrientable("chordless cycle count differs from |Edg| - |Ver| + |Con|")
    ordering = order_edges(graph)
    owner: dict[Pair, ChordlessCycle] = {}
    for z, e in _max_edge_map(ordering, cycles).items():
        if e in owner:
            raise NotOrientable(f"edge {e} is maximal in two chordless cycles")
        owner[e] = z
    signs: dict[Pair, int] = {}
    for e in ordering.edges:
        z = owner.get(e)
        if z is None:
            signs[e] = 1
            continue
        p = 1
        for f in z.edges:
            if f != e:
                p *= signs[f]
        signs[e] = -p
    result = SignAssignment(signs)

    system = incidence_maps(graph, cycles)[2]
    ones = (1,) * len(cycles)
    if system.apply(result.bits(graph)) != ones or gf2_solve(system, ones) is None:
        raise RuntimeError("sign assignment failed the GF(2) cross-check")
    return result


def signs_satisfy_cycles(g: GraphLike, signs: SignAssignment) -> bool:
    for z in chordless_cycles(g):
        p = 1
        for e in z.edges:
            p *= signs[e]
        if p != -1:
            return False
    return True


def differ_by_vertex_flips(g: GraphLike, s1: SignAssignment, s2: SignAssignment) -> bool:
    """Whether ``s2`` is obtained from ``s1`` by flipping all edges at some
    set of vertices, i.e. the ratio lies in the image of ``F2^Ver -> F2^Edg``."""
    graph = _graph(g)
    ratio = tuple(a ^ b for a, b in zip(s1.bits(graph), s2.bits(graph)))
    ver_edg = incidence_maps(graph)[1]
    return gf2_solve(ver_edg, ratio) is not None
