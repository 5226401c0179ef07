"""Finite kei: tables, map families, validation, subkei and standard families.

Elements are the integers ``0..n-1``.  A kei is stored as its operation
table ``table[x, y] = x ▷ y``; column ``y`` of the table is the image array
of the translation map ``f_y``.  Maps act on the right, so ``(x) f g`` means
"apply ``f``, then ``g``" and is computed as ``g[f[x]]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    CapExceededError,
    KeiValidationError,
    MalformedTableError,
    OutOfRangeError,
)

DTYPE = np.int32

RIGHT_SURJECTIVE = "right-surjective"
RIGHT_INJECTIVE = "right-injective"
SELF_DISTRIBUTIVE = "self-distributive"
IDEMPOTENT = "idempotent"
INVOLUTIVE = "involutive"

# scan order of validate_table, which is also the order of the definition
AXIOMS = (RIGHT_SURJECTIVE, RIGHT_INJECTIVE, SELF_DISTRIBUTIVE, IDEMPOTENT, INVOLUTIVE)

DEFAULT_VIOLATION_LIMIT = 32
DEFAULT_MAX_CUBE_D = 14
DEFAULT_MAX_CONJ_ELEMENTS = 800


def _as_square(candidate) -> np.ndarray:
    try:
        a = np.asarray(candidate)
    except ValueError as exc:  # ragged nested lists
        raise MalformedTableError(f"not a rectangular array: {exc}") from None
    if a.dtype == object or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise MalformedTableError(f"table must be square, got shape {a.shape}")
    if a.shape[0] == 0:
        raise MalformedTableError("table must have at least one element")
    if a.dtype == bool or not np.issubdtype(a.dtype, np.integer):
        raise MalformedTableError(f"table entries must be integers, got {a.dtype}")
    n = a.shape[0]
    bad = np.argwhere((a < 0) | (a >= n))
    if len(bad):
        x, y = (int(i) for i in bad[0])
        raise MalformedTableError(f"entry table[{x}][{y}] = {a[x, y]} is outside [0, {n})")
    return a.astype(DTYPE, copy=True)


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    violations: tuple[tuple[str, tuple[int, ...]], ...]

    @property
    def violated_axioms(self) -> list[str]:
        seen = []
        for axiom, _ in self.violations:
            if axiom not in seen:
                seen.append(axiom)
        return seen

    def first_witness(self, axiom: str) -> tuple[int, ...] | None:
        for name, witness in self.violations:
            if name == axiom:
                return witness
        return None

    def to_dict(self) -> dict:
        return {
            "valid": self.valid,
            "violations": [{"axiom": a, "witness": list(w)} for a, w in self.violations],
        }


def _scan_violations(a: np.ndarray, limit: int) -> list[tuple[str, tuple[int, ...]]]:
    n = a.shape[0]
    idx = np.arange(n)
    out: list[tuple[str, tuple[int, ...]]] = []

    def take(axiom, witnesses):
        count = 0
        for w in witnesses:
            out.append((axiom, tuple(int(i) for i in w)))
            count += 1
            if count >= limit:
                return

    def surjective():
        for y in range(n):
            present = np.zeros(n, dtype=bool)
            present[a[:, y]] = True
            for z in np.flatnonzero(~present):
                yield y, z

    def injective():
        for x in range(n - 1):
            clash = a[x + 1:, :] == a[x][None, :]
            for y, dz in np.argwhere(clash.T):
                yield x, y, x + 1 + dz

    def distributive():
        for x in range(n):
            lhs = a[a[x]]
            rhs = a[a[x][None, :], a]
            for y, z in np.argwhere(lhs != rhs):
                yield x, y, z

    def idempotent():
        for x in np.flatnonzero(a[idx, idx] != idx):
            yield (x,)

    def involutive():
        back = a[a, idx[None, :]]
        for x, y in np.argwhere(back != idx[:, None]):
            yield x, y

    take(RIGHT_SURJECTIVE, surjective())
    take(RIGHT_INJECTIVE, injective())
    take(SELF_DISTRIBUTIVE, distributive())
    take(IDEMPOTENT, idempotent())
    take(INVOLUTIVE, involutive())
    return out


def validate_table(candidate, limit: int = DEFAULT_VIOLATION_LIMIT) -> ValidationReport:
    """Check a square integer table against the five kei axioms.

    Every violated axiom is reported; per axiom at most ``limit`` witnesses
    are kept, in lexicographic order of the witness tuple, so the first
    witness for an axiom is its lexicographically smallest one.

    Witness shapes: ``right-surjective`` (y, z) with z missing from column y;
    ``right-injective`` (x, y, z), x < z, x▷y = z▷y; ``self-distributive``
    (x, y, z); ``idempotent`` (x,); ``involutive`` (x, y).

    Raises MalformedTableError for non-square or out-of-range input.
    """
    a = _as_square(candidate)
    if limit < 1:
        raise ValueError("limit must be positive")
    violations = _scan_violations(a, limit)
    return ValidationReport(valid=not violations, violations=tuple(violations))


class KeiTable:
    """Immutable operation table of a finite kei.

    ``KeiTable(rows)`` validates the axioms and raises KeiValidationError on
    failure.  ``check=False`` skips the O(n^3) scan; it is meant for
    constructions that are correct by design (enumeration, large cubes).
    """

    __slots__ = ("_table", "_hash")

    def __init__(self, table, *, check: bool = True):
        a = _as_square(table)
        if check:
            report = validate_table(a)
            if not report.valid:
                axiom, witness = report.violations[0]
                raise KeiValidationError(
                    f"not a kei: {axiom} fails at {witness}", report.violations
                )
        a.setflags(write=False)
        self._table = a
        self._hash = None

    @property
    def n(self) -> int:
        return self._table.shape[0]

    @property
    def table(self) -> np.ndarray:
        """Read-only ``n x n`` array with ``table[x, y] = x ▷ y``."""
        return self._table

    def op(self, x: int, y: int) -> int:
        return int(self._table[x, y])

    def column(self, y: int) -> np.ndarray:
        """Image array of the map ``f_y``."""
        return self._table[:, y]

    def rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in row) for row in self._table)

    def tolist(self) -> list[list[int]]:
        return self._table.tolist()

    def __eq__(self, other):
        if not isinstance(other, KeiTable):
            return NotImplemented
        return np.array_equal(self._table, other._table)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self._table.tobytes()))
        return self._hash

    def __repr__(self):
        if self.n <= 8:
            return f"KeiTable({self.tolist()})"
        return f"KeiTable(n={self.n})"


class InvolutionFamily:
    """The maps ``(f_y)``; ``maps[y]`` is the image array of ``f_y``.

    Construction only checks the shape; ``maps_to_table`` checks the kei
    conditions on the family.
    """

    __slots__ = ("_maps",)

    def __init__(self, maps):
        a = _as_square(maps)
        a.setflags(write=False)
        self._maps = a

    @property
    def n(self) -> int:
        return self._maps.shape[0]

    @property
    def maps(self) -> np.ndarray:
        return self._maps

    def __getitem__(self, y: int) -> np.ndarray:
        return self._maps[y]

    def __eq__(self, other):
        if not isinstance(other, InvolutionFamily):
            return NotImplemented
        return np.array_equal(self._maps, other._maps)

    def __hash__(self):
        return hash((self.n, self._maps.tobytes()))

    def __repr__(self):
        return f"InvolutionFamily({self._maps.tolist()})"


def compose(*maps: np.ndarray) -> np.ndarray:
    """Right-action composition: ``compose(f, g)[x] == g[f[x]]``."""
    out = np.asarray(maps[0])
    for m in maps[1:]:
        out = np.asarray(m)[out]
    return out


def table_to_maps(k: KeiTable) -> InvolutionFamily:
    return InvolutionFamily(k.table.T)


def family_violations(f: InvolutionFamily) -> list[tuple[str, tuple[int, ...]]]:
    """Failures of the map-family conditions, first witness per condition."""
    m = f.maps
    n = f.n
    idx = np.arange(n)
    found = []
    back = m[idx[:, None], m]  # back[y, x] = f_y(f_y(x))
    bad = np.argwhere(back != idx[None, :])
    if len(bad):
        found.append(("involution", tuple(int(i) for i in bad[0])))
    bad = np.flatnonzero(m[idx, idx] != idx)
    if len(bad):
        found.append(("fixes-own-index", (int(bad[0]),)))
    for y, z in itertools.product(range(n), repeat=2):
        if not np.array_equal(m[m[z, y]], compose(m[z], m[y], m[z])):
            found.append(("conjugation-closure", (y, z)))
            break
    return found


def maps_to_table(f: InvolutionFamily) -> KeiTable:
    bad = family_violations(f)
    if bad:
        name, witness = bad[0]
        raise KeiValidationError(f"not a kei family: {name} fails at {witness}", bad)
    return KeiTable(f.maps.T, check=False)


@dataclass(frozen=True)
class SubkeiSet:
    elements: tuple[int, ...]
    parent_n: int

    def __contains__(self, x):
        return x in self.elements

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


def _check_elements(k: KeiTable, elements: Iterable[int]) -> list[int]:
    out = []
    for x in elements:
        x = int(x)
        if not 0 <= x < k.n:
            raise OutOfRangeError(f"element {x} outside [0, {k.n})")
        out.append(x)
    return out


def subkei_closure(k: KeiTable, seed: Iterable[int]) -> SubkeiSet:
    """Smallest subset containing ``seed`` and closed under ▷."""
    members = np.zeros(k.n, dtype=bool)
    members[_check_elements(k, seed)] = True
    t = k.table
    while True:
        cur = np.flatnonzero(members)
        grown = members.copy()
        grown[t[np.ix_(cur, cur)].ravel()] = True
        if np.array_equal(grown, members):
            break
        members = grown
    return SubkeiSet(tuple(int(x) for x in np.flatnonzero(members)), k.n)


def is_subkei(k: KeiTable, s: Iterable[int]) -> bool:
    elements = sorted(set(_check_elements(k, s)))
    return list(subkei_closure(k, elements).elements) == elements


def trivial_kei(n: int) -> KeiTable:
    if n < 1:
        raise ValueError("n must be at least 1")
    col = np.arange(n, dtype=DTYPE)
    return KeiTable(np.repeat(col[:, None], n, axis=1), check=False)


def dihedral_kei(n: int) -> KeiTable:
    """``i ▷ j = 2j - i (mod n)``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    i = np.arange(n, dtype=np.int64)
    return KeiTable((2 * i[None, :] - i[:, None]) % n, check=False)


def _involutions(m: int) -> list[tuple[int, ...]]:
    """All involutions (identity included) of the symmetric group on m letters."""
    result = []

    def extend(perm, free):
        if not free:
            result.append(tuple(perm))
            return
        a, rest = free[0], free[1:]
        extend(perm, rest)
        for j, b in enumerate(rest):
            perm[a], perm[b] = b, a
            extend(perm, rest[:j] + rest[j + 1:])
            perm[a], perm[b] = a, b

    extend(list(range(m)), list(range(m)))
    return result


def _cycle_label(p: Sequence[int]) -> str:
    pairs = [(i, j) for i, j in enumerate(p) if i < j]
    if not pairs:
        return "ι"
    return "".join(f"({i + 1} {j + 1})" for i, j in pairs)


def conjugation_kei_sym(m: int, max_elements: int = DEFAULT_MAX_CONJ_ELEMENTS):
    """Involutions of the symmetric group on ``m`` letters under conjugation.

    The identity is included.  Elements are ordered by number of
    transpositions, then by their transposition list.  Returns
    ``(table, legend)`` where ``legend[i]`` is the cycle notation of element
    ``i`` (1-based letters, ``ι`` for the identity).
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    perms = _involutions(m)
    if len(perms) > max_elements:
        raise CapExceededError(
            f"symmetric group on {m} letters has {len(perms)} involutions, cap is {max_elements}"
        )

    def order_key(p):
        pairs = [(i, j) for i, j in enumerate(p) if i < j]
        return len(pairs), pairs

    perms.sort(key=order_key)
    index = {p: i for i, p in enumerate(perms)}
    arr = np.array(perms, dtype=np.int64)
    n = len(perms)
    t = np.empty((n, n), dtype=DTYPE)
    for y in range(n):
        # y^-1 x y with y an involution: apply y, then x, then y
        for x in range(n):
            t[x, y] = index[tuple(int(v) for v in arr[y][arr[x][arr[y]]])]
    legend = {i: _cycle_label(p) for i, p in enumerate(perms)}
    return KeiTable(t, check=n <= 120), legend


def cube_label(d: int, index: int) -> str:
    if index < d:
        return f"u{index + 1}"
    bits = index - d
    return "".join("1" if bits >> i & 1 else "0" for i in range(d))


def cube_index(d: int, label: str) -> int:
    """Inverse of ``cube_label``: ``"u2"`` -> 1, ``"010"`` -> ``d + 2``."""
    if label.startswith("u"):
        i = int(label[1:])
        if not 1 <= i <= d:
            raise OutOfRangeError(f"no generator {label} in the cube kei of dimension {d}")
        return i - 1
    if len(label) != d or set(label) - {"0", "1"}:
        raise OutOfRangeError(f"{label!r} is not a bit-vector of length {d}")
    return d + sum(1 << i for i, ch in enumerate(label) if ch == "1")


def cube_kei(d: int, max_d: int = DEFAULT_MAX_CUBE_D):
    """Extremal kei on ``{u_1..u_d} ∪ {0,1}^d``.

    Indices ``0..d-1`` are the generators ``u_1..u_d``; index ``d + b`` is the
    bit-vector whose i-th coordinate (1-based) is bit ``i-1`` of ``b``.
    ``f_{u_i}`` flips coordinate i of every bit-vector and fixes every
    generator; ``f_v`` is the identity for every bit-vector ``v``.

    Returns ``(table, legend)`` with labels ``u1..ud`` and strings like
    ``"010"`` (coordinate 1 first).
    """
    if not 1 <= d <= max_d:
        raise CapExceededError(f"cube dimension must lie in [1, {max_d}], got {d}")
    n = (1 << d) + d
    t = np.empty((n, n), dtype=DTYPE)
    t[:] = np.arange(n, dtype=DTYPE)[:, None]
    vectors = np.arange(1 << d, dtype=DTYPE)
    for i in range(d):
        t[d:, i] = d + (vectors ^ (1 << i))
    legend = {x: cube_label(d, x) for x in range(n)}
    return KeiTable(t, check=False), legend


def _profiles(t: np.ndarray) -> list[tuple]:
    n = t.shape[0]
    idx = np.arange(n)
    moved = (t != idx[:, None]).sum(axis=0)  # points moved by f_y
    stabilisers = (t == idx[:, None]).sum(axis=1)  # y with x ▷ y = x
    return [(int(moved[x]), int(stabilisers[x])) for x in range(n)]


def are_isomorphic(a: KeiTable, b: KeiTable) -> tuple[int, ...] | None:
    """Find a relabelling ``pi`` with ``pi[x ▷ y] == pi[x] ▷' pi[y]``.

    Plain backtracking with forced-assignment propagation; elements are only
    ever mapped to targets with the same (moved points, stabiliser size)
    profile.  Returns ``pi`` as a tuple, or None.
    """
    if a.n != b.n:
        return None
    n = a.n
    ta, tb = a.rows(), b.rows()
    pa, pb = _profiles(a.table), _profiles(b.table)
    if sorted(pa) != sorted(pb):
        return None
    candidates = [[y for y in range(n) if pb[y] == pa[x]] for x in range(n)]

    def propagate(pi, inv, x, y):
        stack = [(x, y)]
        while stack:
            x, y = stack.pop()
            if pi[x] is not None:
                if pi[x] != y:
                    return False
                continue
            if inv[y] is not None or pa[x] != pb[y]:
                return False
            pi[x], inv[y] = y, x
            for z in range(n):
                w = pi[z]
                if w is None:
                    continue
                stack.append((ta[x][z], tb[y][w]))
                stack.append((ta[z][x], tb[w][y]))
        return True

    def search(pi, inv):
        try:
            x = pi.index(None)
        except ValueError:
            return pi
        for y in candidates[x]:
            if inv[y] is not None:
                continue
            pi2, inv2 = pi[:], inv[:]
            if propagate(pi2, inv2, x, y):
                found = search(pi2, inv2)
                if found is not None:
                    return found
        return None

    pi = search([None] * n, [None] * n)
    if pi is None:
        return None
    for x in range(n):
        for y in range(n):
            if pi[ta[x][y]] != tb[pi[x]][pi[y]]:
                raise AssertionError("isomorphism search returned a non-homomorphism")
    return tuple(pi)


def relabel(k: KeiTable, pi: Sequence[int]) -> KeiTable:
    """The kei transported along the bijection ``pi`` (``pi[x]`` is the new name of x)."""
    pi = np.asarray(pi, dtype=np.int64)
    if sorted(pi.tolist()) != list(range(k.n)):
        raise ValueError("pi must be a permutation of the ground set")
    out = np.empty_like(k.table)
    out[np.ix_(pi, pi)] = pi[k.table]
    return KeiTable(out, check=False)
