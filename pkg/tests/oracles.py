"""Independent brute-force references used by the tests.

Nothing here imports keigraph; everything works on plain nested lists.
"""

import itertools
from collections import deque


def kei_axioms_hold(t):
    n = len(t)
    r = range(n)
    if any(t[x][x] != x for x in r):
        return False
    if any(t[t[x][y]][y] != x for x in r for y in r):
        return False
    if any(not any(t[x][y] == z for x in r) for y in r for z in r):
        return False
    if any(t[x][y] == t[z][y] and x != z for x in r for y in r for z in r):
        return False
    if any(t[t[x][y]][z] != t[t[x][z]][t[y][z]] for x in r for y in r for z in r):
        return False
    return True


def naive_kei_tables(n):
    """Every binary operation on n points that satisfies the five axioms."""
    for flat in itertools.product(range(n), repeat=n * n):
        t = [list(flat[i * n:(i + 1) * n]) for i in range(n)]
        if kei_axioms_hold(t):
            yield tuple(tuple(row) for row in t)


def multigraph_edges(t, colours):
    return sorted(
        (u, t[u][c], c) for c in colours for u in range(len(t)) if t[u][c] > u
    )


def all_pairs_distances(n, edges):
    """Floyd-Warshall on the simple graph underlying ``edges``."""
    inf = float("inf")
    d = [[0 if i == j else inf for j in range(n)] for i in range(n)]
    for u, v, *_ in edges:
        d[u][v] = d[v][u] = 1
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return d


def bfs_ecc(n, edges, source):
    adj = [[] for _ in range(n)]
    for u, v, *_ in edges:
        adj[u].append(v)
        adj[v].append(u)
    dist = {source: 0}
    q = deque([source])
    while q:
        x = q.popleft()
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                q.append(y)
    return dist


def all_coloured_geodesics(t, colours, u, v, length):
    """All vertex/colour sequences of the given length from u to v whose
    consecutive vertices are joined by an edge of the stated colour.  Pure
    enumeration over colour words, no distance information used."""
    out = []
    for word in itertools.product(colours, repeat=length):
        verts = [u]
        for c in word:
            nxt = t[verts[-1]][c]
            if nxt == verts[-1]:
                break
            verts.append(nxt)
        else:
            if verts[-1] == v and len(set(verts)) == len(verts):
                out.append((tuple(verts), tuple(word)))
    return out


def closure_by_fixpoint(t, seed):
    s = set(seed)
    changed = True
    while changed:
        changed = False
        for y in list(s):
            for z in list(s):
                w = t[z][y]
                if w not in s:
                    s.add(w)
                    changed = True
    return sorted(s)
