"""Edge-coloured multigraphs of kei and their component statistics."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .algebra import KeiTable, subkei_closure
from .errors import OutOfRangeError

Edge = tuple[int, int, int]


class ColouredMultigraph:
    """Loopless multigraph with an edge of colour ``c`` between ``x`` and
    ``x ▷ c`` for every colour ``c`` in the chosen colour set.

    Edges are ``(u, v, c)`` triples with ``u < v``; parallel edges are
    distinct triples.  ``is_subkei`` records whether the colour set was
    closed, which the shortest-path constructions require.
    """

    def __init__(self, kei: KeiTable, colours: Iterable[int]):
        colours = sorted({int(c) for c in colours})
        for c in colours:
            if not 0 <= c < kei.n:
                raise OutOfRangeError(f"colour {c} outside [0, {kei.n})")
        self.kei = kei
        self.colours = tuple(colours)
        self.is_subkei = list(subkei_closure(kei, colours).elements) == colours
        n = kei.n
        idx = np.arange(n)
        t = kei.table
        edges: list[Edge] = []
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for c in colours:
            col = t[:, c]
            us = np.flatnonzero(col > idx)
            for u, v in zip(us.tolist(), col[us].tolist()):
                edges.append((u, v, c))
                adj[u].append((c, v))
                adj[v].append((c, u))
        edges.sort()
        self.edges: tuple[Edge, ...] = tuple(edges)
        # colours are visited in ascending order, so each list is already sorted
        self._adj = tuple(tuple(a) for a in adj)
        self._nbrs = tuple(tuple(sorted({v for _, v in a})) for a in adj)

    @property
    def vertex_count(self) -> int:
        return self.kei.n

    def incident(self, v: int) -> tuple[tuple[int, int], ...]:
        """``(colour, neighbour)`` pairs at ``v``, sorted."""
        return self._adj[v]

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self._nbrs[v]

    def edge_colours(self, u: int, v: int) -> list[int]:
        return [c for c, w in self._adj[u] if w == v]

    def __repr__(self):
        return (
            f"ColouredMultigraph(n={self.vertex_count}, colours={len(self.colours)}, "
            f"edges={len(self.edges)}, is_subkei={self.is_subkei})"
        )


class SimpleGraph:
    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int]]):
        self.vertex_count = vertex_count
        self.edges = tuple(sorted({(min(u, v), max(u, v)) for u, v in edges}))
        adj: list[list[int]] = [[] for _ in range(vertex_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self._nbrs = tuple(tuple(sorted(a)) for a in adj)

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self._nbrs[v]

    def __repr__(self):
        return f"SimpleGraph(n={self.vertex_count}, edges={len(self.edges)})"


def build_graph(k: KeiTable, colours: Iterable[int] | None = None) -> ColouredMultigraph:
    """``G_S`` for the colour set ``colours`` (default: every element)."""
    if colours is None:
        colours = range(k.n)
    return ColouredMultigraph(k, colours)


def reduced_graph(g: ColouredMultigraph) -> SimpleGraph:
    return SimpleGraph(g.vertex_count, ((u, v) for u, v, _ in g.edges))


def _check_vertex(g, v: int) -> int:
    if not 0 <= v < g.vertex_count:
        raise OutOfRangeError(f"vertex {v} outside [0, {g.vertex_count})")
    return v


def bfs_distances(g, source: int) -> dict[int, int]:
    _check_vertex(g, source)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in g.neighbours(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def components(g) -> list[tuple[int, ...]]:
    """Vertex partition into connected components, each sorted, ordered by
    smallest vertex."""
    seen = [False] * g.vertex_count
    out = []
    for v in range(g.vertex_count):
        if not seen[v]:
            comp = sorted(bfs_distances(g, v))
            for x in comp:
                seen[x] = True
            out.append(tuple(comp))
    return out


def distance(g, u: int, v: int) -> int | None:
    """Graph distance, or None when ``v`` is unreachable from ``u``."""
    _check_vertex(g, v)
    return bfs_distances(g, u).get(v)


def eccentricity(g, v: int) -> int:
    return max(bfs_distances(g, v).values())


def component_diameter(g, component: Sequence[int]) -> int:
    """Largest distance between two vertices of a connected component.

    Runs a BFS from every vertex of the component at once, carrying the set
    of sources as an integer bitmask per vertex; the diameter is the last
    level at which any source reaches a new vertex.
    """
    verts = [_check_vertex(g, int(v)) for v in component]
    if not verts:
        raise ValueError("empty component")
    seen = {v: 1 << i for i, v in enumerate(verts)}
    frontier = dict(seen)
    level = 0
    while True:
        reached: dict[int, int] = {}
        for v, bits in frontier.items():
            for w in g.neighbours(v):
                reached[w] = reached.get(w, 0) | bits
        frontier = {}
        for w, bits in reached.items():
            if w not in seen:
                raise ValueError(f"vertex {w} is adjacent to the component but not in it")
            fresh = bits & ~seen[w]
            if fresh:
                frontier[w] = fresh
                seen[w] |= fresh
        if not frontier:
            break
        level += 1
    full = (1 << len(verts)) - 1
    if any(bits != full for bits in seen.values()):
        raise ValueError("vertex set is not connected")
    return level


def colour_edge_counts(g: ColouredMultigraph, component: Iterable[int]) -> dict[int, int]:
    """Edges of each colour with both ends in ``component``."""
    inside = set(component)
    counts = {c: 0 for c in g.colours}
    for u, v, c in g.edges:
        if u in inside and v in inside:
            counts[c] += 1
    return counts


@dataclass(frozen=True)
class ComponentInfo:
    vertices: tuple[int, ...]
    diameter: int
    colour_counts: dict[int, int]

    @property
    def size(self) -> int:
        return len(self.vertices)

    def to_record(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "diameter": self.diameter,
            "size": self.size,
            "colour_counts": {str(c): n for c, n in sorted(self.colour_counts.items())},
        }


@dataclass(frozen=True)
class ComponentAnalysis:
    components: tuple[ComponentInfo, ...]

    def to_jsonl(self) -> str:
        return "".join(json.dumps(c.to_record()) + "\n" for c in self.components)


def analyze(g: ColouredMultigraph) -> ComponentAnalysis:
    infos = []
    for comp in components(g):
        infos.append(
            ComponentInfo(comp, component_diameter(g, comp), colour_edge_counts(g, comp))
        )
    return ComponentAnalysis(tuple(infos))


def component_from_record(record: dict) -> ComponentInfo:
    info = ComponentInfo(
        tuple(int(v) for v in record["vertices"]),
        int(record["diameter"]),
        {int(c): int(n) for c, n in record["colour_counts"].items()},
    )
    if info.size != record["size"]:
        raise ValueError("size field disagrees with vertex list")
    return info


PALETTE = (
    "red", "blue", "green3", "darkviolet", "orange", "brown",
    "darkgray", "deeppink", "cyan4", "gold3", "navy", "olivedrab",
)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(g: ColouredMultigraph, legend: dict[int, str] | None = None) -> str:
    """Undirected DOT text, one line per vertex and per coloured edge.

    Output depends only on the graph and legend; parallel edges are kept and
    the ``color`` attribute is ``PALETTE[colour % len(PALETTE)]``.
    """
    legend = legend or {}
    lines = ["graph kei {", "  node [shape=circle];"]
    for v in range(g.vertex_count):
        lines.append(f"  {v} [label={_quote(legend.get(v, str(v)))}];")
    for u, v, c in g.edges:
        colour = PALETTE[c % len(PALETTE)]
        name = legend.get(c, str(c))
        lines.append(f"  {u} -- {v} [color={colour}, label={_quote(name)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
