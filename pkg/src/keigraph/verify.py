"""Exhaustive enumeration of small kei and checking of the diameter bound.

For a component of diameter ``d`` the bound requires at least ``2**d``
vertices and some colour with at least ``2**(d-1)`` edges inside the
component (vacuous for ``d = 0``).
"""

from __future__ import annotations

import hashlib
import json
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .algebra import (
    KeiTable,
    SubkeiSet,
    _involutions,
    _profiles,
    are_isomorphic,
    cube_kei,
    is_subkei,
    subkei_closure,
)
from .errors import (
    CapExceededError,
    FormatError,
    InvariantViolation,
    KeiError,
    NotSubkeiError,
    TheoremViolation,
)
from .graph import ColouredMultigraph, analyze, bfs_distances, build_graph, components
from .paths import (
    ColouredPath,
    assert_distinct_colours,
    hang_rewrite,
    level_sets,
    shortest_path,
)

DEFAULT_MAX_N = 6


class EnumerationCursor:
    """Backtracking search over map families ``f_0, f_1, ...``.

    Each ``f_y`` is an involution fixing ``y``.  Once ``f_y`` and ``f_z`` are
    both chosen, ``f_{y ▷ z}`` must equal ``f_z f_y f_z``: if that map is
    already chosen it is compared, otherwise it becomes a forced choice for
    later.  Tables are collected and emitted in lexicographic (row-major)
    order.
    """

    def __init__(self, n: int, max_n: int = DEFAULT_MAX_N):
        if not 1 <= n <= max_n:
            raise CapExceededError(f"enumeration needs 1 <= n <= {max_n}, got {n}")
        self.n = n
        self.assignment: list[tuple[int, ...] | None] = [None] * n
        self.visited = 0
        self.pruned = 0
        self.emitted = 0

    def stats(self) -> dict:
        return {"n": self.n, "visited": self.visited, "pruned": self.pruned, "emitted": self.emitted}

    def _families(self) -> Iterator[list[tuple[int, ...]]]:
        n = self.n
        invs = _involutions(n)
        choices = [[p for p in invs if p[y] == y] for y in range(n)]
        maps = self.assignment

        def conj(fz, fy):
            return tuple(fz[fy[fz[x]]] for x in range(n))

        def assign(k, forced):
            if k == n:
                yield list(maps)
                return
            options = [forced[k]] if k in forced else choices[k]
            for f in options:
                self.visited += 1
                maps[k] = f
                new_forced = dict(forced)
                ok = True
                for y in range(k + 1):
                    for a, b in ((y, k), (k, y)):
                        w = maps[b][a]
                        target = conj(maps[b], maps[a])
                        known = maps[w] if w <= k else new_forced.get(w)
                        if known is None:
                            new_forced[w] = target
                        elif known != target:
                            ok = False
                            break
                    if not ok:
                        break
                if ok:
                    yield from assign(k + 1, new_forced)
                else:
                    self.pruned += 1
            maps[k] = None

        yield from assign(0, {})

    def run(self) -> Iterator[KeiTable]:
        n = self.n
        tables = []
        for maps in self._families():
            tables.append(tuple(tuple(maps[y][x] for y in range(n)) for x in range(n)))
        tables.sort()
        for rows in tables:
            self.emitted += 1
            yield KeiTable(rows, check=False)


def enumerate_kei(n: int, max_n: int = DEFAULT_MAX_N) -> Iterator[KeiTable]:
    """Every labelled kei on ``0..n-1``, once each, in lexicographic order."""
    return EnumerationCursor(n, max_n).run()


def enumerate_subkei(k: KeiTable) -> Iterator[SubkeiSet]:
    """Every non-empty subkei, ordered by size then elements.

    Starts from the closures of singletons and repeatedly closes a known
    subkei plus one outside element; every subkei is reached this way.
    """
    found: set[tuple[int, ...]] = set()
    queue = deque()
    for x in range(k.n):
        s = subkei_closure(k, [x]).elements
        if s not in found:
            found.add(s)
            queue.append(s)
    while queue:
        s = queue.popleft()
        inside = set(s)
        for x in range(k.n):
            if x not in inside:
                t = subkei_closure(k, (*s, x)).elements
                if t not in found:
                    found.add(t)
                    queue.append(t)
    for s in sorted(found, key=lambda e: (len(e), e)):
        yield SubkeiSet(s, k.n)


def canonical_hash(k: KeiTable) -> str:
    """SHA-256 of the labelled table (row-major, space/semicolon separated)."""
    text = ";".join(" ".join(str(v) for v in row) for row in k.rows())
    return hashlib.sha256(f"{k.n}:{text}".encode()).hexdigest()


@dataclass(frozen=True)
class ComponentBound:
    vertices: tuple[int, ...]
    diameter: int
    colour_counts: dict[int, int] = field(repr=False)

    @property
    def size(self) -> int:
        return len(self.vertices)

    @property
    def max_colour_count(self) -> int:
        return max(self.colour_counts.values(), default=0)

    @property
    def witness_colour(self) -> int | None:
        """Smallest colour attaining the maximum edge count (None if no edges)."""
        best = self.max_colour_count
        if best == 0:
            return None
        return min(c for c, m in self.colour_counts.items() if m == best)

    @property
    def size_ok(self) -> bool:
        return self.size >= 2 ** self.diameter

    @property
    def colour_ok(self) -> bool:
        if self.diameter == 0:
            return True
        return self.max_colour_count >= 2 ** (self.diameter - 1)

    @property
    def ok(self) -> bool:
        return self.size_ok and self.colour_ok

    def to_record(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "size": self.size,
            "diameter": self.diameter,
            "colour_counts": {str(c): m for c, m in sorted(self.colour_counts.items())},
            "max_colour_count": self.max_colour_count,
            "witness_colour": self.witness_colour,
            "size_ok": self.size_ok,
            "colour_ok": self.colour_ok,
        }


@dataclass(frozen=True)
class BoundReport:
    kei_id: str
    subkei: SubkeiSet
    components: tuple[ComponentBound, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.components)

    @property
    def violations(self) -> list[ComponentBound]:
        return [c for c in self.components if not c.ok]


def _bounds_of_graph(k: KeiTable, g: ColouredMultigraph, s: SubkeiSet) -> BoundReport:
    comps = tuple(
        ComponentBound(c.vertices, c.diameter, c.colour_counts) for c in analyze(g).components
    )
    return BoundReport(canonical_hash(k), s, comps)


def check_component_bounds(k: KeiTable, s: Iterable[int] | SubkeiSet | None = None) -> BoundReport:
    """Build ``G_S`` and evaluate both bounds on each of its components."""
    elements = range(k.n) if s is None else s
    elements = sorted({int(x) for x in elements})
    if not is_subkei(k, elements):
        raise NotSubkeiError(f"{elements} is not closed; closure is {subkei_closure(k, elements).elements}")
    subkei = SubkeiSet(tuple(elements), k.n)
    return _bounds_of_graph(k, build_graph(k, elements), subkei)


def _shortest_paths_exhaustive(g: ColouredMultigraph, u: int, v: int) -> Iterator[ColouredPath]:
    """Every shortest coloured u-v path; parallel edges give separate paths."""
    to_v = bfs_distances(g, v)
    if u not in to_v:
        return
    verts, cols = [u], []

    def walk(x):
        if x == v:
            yield ColouredPath(tuple(verts), tuple(cols), shortest=True)
            return
        for c, y in g.incident(x):
            if to_v.get(y) == to_v[x] - 1:
                verts.append(y)
                cols.append(c)
                yield from walk(y)
                verts.pop()
                cols.pop()

    yield from walk(u)


def check_path_lemmas(g: ColouredMultigraph, exhaustive: bool = True, pairs=None) -> dict:
    """Exercise the shortest-path constructions on ``g``.

    For each ordered pair at distance >= 2 (all pairs unless ``pairs`` is
    given), every shortest path (``exhaustive``) or the BFS representative
    is checked for distinct colours, rewritten at every index ``i >= 2``,
    and expanded into its full family of ``2^d`` sequence vertices and
    sequence paths.  Any failure raises InvariantViolation.
    """
    if not g.is_subkei:
        raise NotSubkeiError("colour set is not a subkei")
    stats = {"pairs": 0, "paths": 0, "rewrites": 0, "sequence_vertices": 0}
    if pairs is None:
        pairs = ((u, v) for comp in components(g) for u in comp for v in comp if u != v)
    dist_cache: dict[int, dict[int, int]] = {}
    for u, v in pairs:
        if u not in dist_cache:
            dist_cache[u] = bfs_distances(g, u)
        d = dist_cache[u].get(v)
        if d is None or d < 2:
            continue
        stats["pairs"] += 1
        paths = _shortest_paths_exhaustive(g, u, v) if exhaustive else [shortest_path(g, u, v)]
        for p in paths:
            stats["paths"] += 1
            if not assert_distinct_colours(p):
                raise InvariantViolation(f"shortest path {p} repeats a colour")
            for i in range(2, d + 1):
                hang_rewrite(g, p, i)
                stats["rewrites"] += 1
            stats["sequence_vertices"] += level_sets(g, p, with_paths=True).total
    return stats


def verify_theorem_over_all(n: int, paths: bool = False, max_n: int = DEFAULT_MAX_N) -> dict:
    """Check the bound on every component of ``G_S`` for every kei on ``n``
    elements and every subkei ``S``.  Raises TheoremViolation on the first
    failure; with ``paths`` the shortest-path constructions are exercised
    exhaustively as well."""
    summary = {
        "n": n,
        "kei_count": 0,
        "subkei_instances": 0,
        "components": 0,
        "violations": 0,
        "max_diameter": 0,
    }
    if paths:
        summary.update(pairs=0, paths=0, rewrites=0, sequence_vertices=0)
    for k in enumerate_kei(n, max_n):
        summary["kei_count"] += 1
        for s in enumerate_subkei(k):
            summary["subkei_instances"] += 1
            g = build_graph(k, s.elements)
            report = _bounds_of_graph(k, g, s)
            summary["components"] += len(report.components)
            for c in report.components:
                summary["max_diameter"] = max(summary["max_diameter"], c.diameter)
            if not report.ok:
                bad = report.violations[0]
                raise TheoremViolation(
                    f"bound fails for table {k.tolist()} with subkei {list(s.elements)}: "
                    f"{bad.to_record()}"
                )
            if paths:
                for key, value in check_path_lemmas(g).items():
                    summary[key] += value
    return summary


def tightness_report(d_max: int) -> list[dict]:
    """For each cube kei ``X_d`` (``d = 1..d_max``) confirm that the cube
    component meets both bounds with equality."""
    records = []
    for d in range(1, d_max + 1):
        k, _ = cube_kei(d, max_d=max(d_max, d))
        g = build_graph(k)
        cube = [c for c in analyze(g).components if c.size > 1]
        if len(cube) != 1:
            raise InvariantViolation(f"cube kei of dimension {d} has {len(cube)} non-trivial components")
        c = cube[0]
        generator_counts = [c.colour_counts[i] for i in range(d)]
        others = [m for col, m in c.colour_counts.items() if col >= d]
        record = {
            "d": d,
            "size": c.size,
            "diameter": c.diameter,
            "min_edges_per_generator": min(generator_counts),
            "max_edges_per_generator": max(generator_counts),
            "size_tight": c.size == 2 ** d,
            "diameter_exact": c.diameter == d,
            "colour_tight": all(m == 2 ** (d - 1) for m in generator_counts) and not any(others),
        }
        record["tight"] = record["size_tight"] and record["diameter_exact"] and record["colour_tight"]
        if not record["tight"]:
            raise InvariantViolation(f"cube kei of dimension {d} is not extremal: {record}")
        records.append(record)
    return records


@dataclass(frozen=True)
class CatalogEntry:
    n: int
    table: KeiTable
    canonical_hash: str
    iso_class_rep: bool

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "table": self.table.tolist(),
                "canonical_hash": self.canonical_hash,
                "iso_class_rep": self.iso_class_rep,
            }
        )


def build_catalog(n: int, max_n: int = DEFAULT_MAX_N) -> list[CatalogEntry]:
    """All labelled kei on ``n`` elements in enumeration order; the first
    member of each isomorphism class is marked as its representative."""
    reps: dict[tuple, list[KeiTable]] = {}
    entries = []
    for k in enumerate_kei(n, max_n):
        key = tuple(sorted(_profiles(k.table)))
        bucket = reps.setdefault(key, [])
        is_rep = all(are_isomorphic(r, k) is None for r in bucket)
        if is_rep:
            bucket.append(k)
        entries.append(CatalogEntry(n, k, canonical_hash(k), is_rep))
    return entries


def catalog_write(path: str | Path, entries: Iterable[CatalogEntry]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for e in entries:
            fh.write(e.to_json() + "\n")


def catalog_read(path: str | Path) -> list[CatalogEntry]:
    """Load a catalog, re-validating every table and its hash."""
    entries = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                k = KeiTable(rec["table"])
                n, digest, rep = rec["n"], rec["canonical_hash"], rec["iso_class_rep"]
            except (json.JSONDecodeError, KeyError, TypeError, KeiError) as exc:
                raise FormatError(f"bad catalog entry: {exc}", lineno) from None
            if n != k.n or not isinstance(rep, bool):
                raise FormatError("inconsistent n or iso_class_rep field", lineno)
            if digest != canonical_hash(k):
                raise FormatError("canonical_hash does not match table", lineno)
            entries.append(CatalogEntry(n, k, digest, rep))
    return entries
