"""Shortest paths in kei graphs and the path rewrites built on them.

Every construction re-checks its own output (adjacency, distinct vertices,
prescribed colours) and raises InvariantViolation if a check fails, so the
functions double as an oracle for whether the input really was a kei.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .errors import InvariantViolation, NotSubkeiError, PathError
from .graph import ColouredMultigraph, _check_vertex


@dataclass(frozen=True)
class ColouredPath:
    """Vertices ``v_0..v_d``; ``colours[i-1]`` is the colour of edge
    ``v_{i-1} v_i``, i.e. ``v_i ▷ colours[i-1] == v_{i-1}``."""

    vertices: tuple[int, ...]
    colours: tuple[int, ...]
    shortest: bool = False

    def __post_init__(self):
        if len(self.vertices) != len(self.colours) + 1:
            raise PathError("a path with d edges needs d + 1 vertices")

    @property
    def length(self) -> int:
        return len(self.colours)

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    def to_record(self) -> dict:
        return {"vertices": list(self.vertices), "colours": list(self.colours)}

    @classmethod
    def from_record(cls, record: dict, shortest: bool = False) -> ColouredPath:
        return cls(tuple(record["vertices"]), tuple(record["colours"]), shortest)


def path_problems(g: ColouredMultigraph, p: ColouredPath) -> list[str]:
    t = g.kei.table
    allowed = set(g.colours)
    problems = []
    if len(set(p.vertices)) != len(p.vertices):
        problems.append(f"repeated vertex in {p.vertices}")
    for i, c in enumerate(p.colours, start=1):
        if c not in allowed:
            problems.append(f"edge {i} uses colour {c} outside the colour set")
        elif t[p.vertices[i], c] != p.vertices[i - 1] or p.vertices[i] == p.vertices[i - 1]:
            problems.append(f"no edge of colour {c} between {p.vertices[i - 1]} and {p.vertices[i]}")
    return problems


def is_valid_path(g: ColouredMultigraph, p: ColouredPath) -> bool:
    return not path_problems(g, p)


def _verify(g, p, what):
    problems = path_problems(g, p)
    if problems:
        raise InvariantViolation(f"{what} produced an invalid path: {problems[0]}")


def shortest_path(g: ColouredMultigraph, u: int, v: int) -> ColouredPath:
    """BFS shortest path; neighbours are explored by ascending colour, then
    ascending vertex, and the first discovery wins."""
    _check_vertex(g, u)
    _check_vertex(g, v)
    parent: dict[int, tuple[int, int] | None] = {u: None}
    queue = deque([u])
    while queue and v not in parent:
        x = queue.popleft()
        for c, y in g.incident(x):
            if y not in parent:
                parent[y] = (x, c)
                queue.append(y)
    if v not in parent:
        raise PathError(f"{v} is not reachable from {u}")
    vertices, colours = [v], []
    while parent[vertices[-1]] is not None:
        x, c = parent[vertices[-1]]
        vertices.append(x)
        colours.append(c)
    return ColouredPath(tuple(reversed(vertices)), tuple(reversed(colours)), shortest=True)


def _require_lemma_setting(g, p):
    if not g.is_subkei:
        raise NotSubkeiError("colour set is not a subkei")
    if not p.shortest:
        raise PathError("path is not marked as a shortest path")


def hang_rewrite(g: ColouredMultigraph, p: ColouredPath, i: int) -> ColouredPath:
    """Reflect the first ``i-1`` vertices of ``p`` through ``f_{c_i}``.

    With ``w_k = v_k ▷ c_i`` for ``k = 0..i-2`` the result is
    ``v_0 w_0 ... w_{i-2} v_i ... v_d``.  Its first edge has colour ``c_i``
    and edge ``w_j w_{j+1}`` (``w_{i-1}`` read as ``v_i``) has colour
    ``c_{j+1} ▷ c_i``.
    """
    _require_lemma_setting(g, p)
    d = p.length
    if d < 2:
        raise PathError(f"path length {d} is below 2")
    if not 2 <= i <= d:
        raise PathError(f"index {i} outside [2, {d}]")
    t = g.kei.table
    vs, cs = p.vertices, p.colours
    ci = cs[i - 1]
    ws = [int(t[vs[k], ci]) for k in range(i - 1)]
    clash = set(ws) & set(vs)
    if clash or len(set(ws)) != len(ws):
        raise InvariantViolation(
            f"reflected vertices {ws} are not distinct from each other and from {vs} (i={i})"
        )
    derived = [int(t[cs[j], ci]) for j in range(i - 1)]
    outside = [c for c in derived if c not in g.colours]
    if outside:
        raise InvariantViolation(f"derived colour {outside[0]} is not in the subkei")
    out = ColouredPath((vs[0], *ws, *vs[i:]), (ci, *derived, *cs[i:]), shortest=True)
    _verify(g, out, "hang_rewrite")
    return out


def assert_distinct_colours(p: ColouredPath) -> bool:
    return len(set(p.colours)) == len(p.colours)


def canonicalize(p: ColouredPath) -> tuple[ColouredPath, dict[int, int]]:
    """Map path position ``i`` (1-based) to the colour of edge ``i``.

    The path is returned unchanged; downstream sequence operations speak in
    positions and translate through the map.
    """
    if not assert_distinct_colours(p):
        raise PathError(f"colours {p.colours} repeat; path cannot be shortest")
    return p, {i: c for i, c in enumerate(p.colours, start=1)}


def check_sequence(s: Sequence[int], d: int) -> tuple[int, ...]:
    s = tuple(int(a) for a in s)
    if any(b <= a for a, b in zip(s, s[1:])):
        raise PathError(f"sequence {s} is not strictly increasing")
    if s and not (1 <= s[0] and s[-1] <= d):
        raise PathError(f"sequence {s} has entries outside [1, {d}]")
    return s


def sequence_vertex(g: ColouredMultigraph, p: ColouredPath, s: Sequence[int]) -> int:
    """``u ▷ c_{a_1} ▷ ... ▷ c_{a_r}`` (left to right), ``u`` the path start."""
    _, colour_at = canonicalize(p)
    t = g.kei.table
    x = p.start
    for a in check_sequence(s, p.length):
        x = int(t[x, colour_at[a]])
    return x


def sequence_path(
    g: ColouredMultigraph,
    p: ColouredPath,
    s: Sequence[int],
    memo: dict | None = None,
) -> ColouredPath:
    """A shortest path from ``u`` to ``v`` whose first ``r`` edges carry the
    colours of positions ``a_1 < ... < a_r`` of ``p``.

    Built recursively: take the path for ``(a_1..a_{r-1})``, reflect it
    through the colour at position ``a_r``, and splice its first ``r-1``
    edges in front of the reflected remainder.  ``memo`` caches paths by
    sequence and may be shared between calls on the same ``p``.
    """
    _require_lemma_setting(g, p)
    _, colour_at = canonicalize(p)
    d = p.length
    if d < 2:
        raise PathError(f"path length {d} is below 2")
    s = check_sequence(s, d)
    if not s:
        raise PathError("sequence must be non-empty")
    if memo is None:
        memo = {}
    return _sequence_path(g, p, s, colour_at, memo)


def _sequence_path(g, p, s, colour_at, memo):
    if s in memo:
        return memo[s]
    r = len(s)
    ar = s[-1]
    if s == tuple(range(1, r + 1)):
        out = p
    elif r == 1:
        out = hang_rewrite(g, p, ar)
    else:
        prev = _sequence_path(g, p, s[:-1], colour_at, memo)
        if prev.colours[ar - 1] != colour_at[ar] or prev.vertices[ar:] != p.vertices[ar:]:
            raise InvariantViolation(f"path for {s[:-1]} does not end along the original path")
        hung = hang_rewrite(g, prev, ar)
        out = ColouredPath(
            prev.vertices[:r] + hung.vertices[r:],
            prev.colours[: r - 1] + (colour_at[ar],) + hung.colours[r:],
            shortest=True,
        )
        _verify(g, out, f"sequence_path{s}")
    want = tuple(colour_at[a] for a in s)
    if out.colours[:r] != want:
        raise InvariantViolation(f"path for {s} starts with colours {out.colours[:r]}, not {want}")
    if out.end != p.end or out.length != p.length:
        raise InvariantViolation(f"path for {s} does not join the original endpoints")
    memo[s] = out
    return out


@dataclass(frozen=True)
class LevelSets:
    """``levels[r]`` holds ``u_s`` for every increasing ``s`` of length ``r``,
    in lexicographic order of ``s``."""

    levels: tuple[tuple[int, ...], ...]
    vertex_of: dict[tuple[int, ...], int] = field(repr=False)
    paths: dict[tuple[int, ...], ColouredPath] | None = field(default=None, repr=False)

    @property
    def total(self) -> int:
        return sum(len(level) for level in self.levels)


def increasing_sequences(d: int):
    for r in range(d + 1):
        yield from itertools.combinations(range(1, d + 1), r)


def level_sets(g: ColouredMultigraph, p: ColouredPath, with_paths: bool = False) -> LevelSets:
    """Evaluate ``u_s`` for all ``2^d`` increasing sequences and check that
    they are pairwise distinct.

    With ``with_paths`` the path for every non-empty sequence is built too
    and checked to pass through ``U_k`` at step ``k`` for ``k < a_r`` and to
    reach ``u_s`` at step ``r``.
    """
    _require_lemma_setting(g, p)
    _, colour_at = canonicalize(p)
    t = g.kei.table
    d = p.length
    vertex_of: dict[tuple[int, ...], int] = {(): p.start}
    owner = {p.start: ()}
    levels: list[list[int]] = [[p.start]]
    for s in increasing_sequences(d):
        if not s:
            continue
        x = int(t[vertex_of[s[:-1]], colour_at[s[-1]]])
        if x in owner:
            raise InvariantViolation(
                f"sequences {owner[x]} and {s} reach the same vertex {x}"
            )
        owner[x] = s
        vertex_of[s] = x
        while len(levels) <= len(s):
            levels.append([])
        levels[len(s)].append(x)
    if d and levels[d] != [p.end]:
        raise InvariantViolation(f"full sequence reaches {levels[d]}, not the endpoint {p.end}")

    paths = None
    if with_paths and d >= 2:
        paths = {}
        memo: dict = {}
        level_of = {x: len(s) for s, x in vertex_of.items()}
        for s in increasing_sequences(d):
            if not s:
                continue
            path = _sequence_path(g, p, s, colour_at, memo)
            if path.vertices[len(s)] != vertex_of[s]:
                raise InvariantViolation(f"path for {s} misses u_s at step {len(s)}")
            for k in range(1, s[-1]):
                if level_of.get(path.vertices[k]) != k:
                    raise InvariantViolation(f"path for {s} leaves level set {k} at step {k}")
            paths[s] = path
    return LevelSets(tuple(tuple(level) for level in levels), vertex_of, paths)
