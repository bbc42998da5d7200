"""Partitions, (skew) tableaux, jeu de taquin, promotion and row insertion.

Cells are addressed 1-based as ``(row, col)`` in English orientation: row 1 is
the top row.  A :class:`Tableau` stores its inner shape explicitly; the cells
of the inner shape hold ``None`` in :attr:`Tableau.rows`.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

Cell = tuple[int, int]


class ShapeError(ValueError):
    """A box or cell is not valid for the shape it is applied to."""


class DomainError(ValueError):
    """An entry or index lies outside the allowed alphabet."""


def is_partition(parts: Sequence[int]) -> bool:
    return all(p >= 1 for p in parts) and all(
        parts[i] >= parts[i + 1] for i in range(len(parts) - 1)
    )


def _strip(parts: Iterable[int]) -> tuple[int, ...]:
    parts = list(parts)
    while parts and parts[-1] == 0:
        parts.pop()
    return tuple(parts)


@dataclass(frozen=True)
class Tableau:
    """A (possibly skew) tableau of shape ``outer / inner``.

    Entries are nonnegative integers; 0 only shows up in the intermediate
    results of partial slides.
    """

    outer: tuple[int, ...]
    inner: tuple[int, ...]
    rows: tuple[tuple[int | None, ...], ...]

    def __post_init__(self):
        if not is_partition(self.outer) or not is_partition(self.inner):
            raise ShapeError(f"bad shape {self.outer}/{self.inner}")
        if len(self.inner) > len(self.outer) or any(
            self.inner[i] > self.outer[i] for i in range(len(self.inner))
        ):
            raise ShapeError(f"inner {self.inner} not contained in {self.outer}")
        if len(self.rows) != len(self.outer):
            raise ShapeError("row count does not match outer shape")
        for i, row in enumerate(self.rows):
            if len(row) != self.outer[i]:
                raise ShapeError(f"row {i + 1} has wrong length")
            skip = self.inner[i] if i < len(self.inner) else 0
            if any(v is not None for v in row[:skip]):
                raise ShapeError(f"inner cell of row {i + 1} is filled")
            if any(v is None or v < 0 for v in row[skip:]):
                raise ShapeError(f"row {i + 1} has an empty or negative cell")

    @classmethod
    def straight(cls, rows: Sequence[Sequence[int]]) -> "Tableau":
        rows = tuple(tuple(r) for r in rows if len(r))
        return cls(tuple(len(r) for r in rows), (), rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int | None]]) -> "Tableau":
        """Build from rows where leading ``None`` entries mark the inner shape."""
        rows = tuple(tuple(r) for r in rows)
        inner = []
        for r in rows:
            k = 0
            while k < len(r) and r[k] is None:
                k += 1
            inner.append(k)
        return cls(tuple(len(r) for r in rows), _strip(inner), rows)

    @classmethod
    def from_cells(
        cls, outer: Sequence[int], inner: Sequence[int], cells: dict[Cell, int]
    ) -> "Tableau":
        outer, inner = _strip(outer), _strip(inner)
        rows = []
        for i, length in enumerate(outer, start=1):
            rows.append(tuple(cells.get((i, j)) for j in range(1, length + 1)))
        return cls(outer, inner, tuple(rows))

    # -- shape helpers -----------------------------------------------------
    def inner_len(self, i: int) -> int:
        """Length of inner row ``i`` (1-based)."""
        return self.inner[i - 1] if i - 1 < len(self.inner) else 0

    def outer_len(self, i: int) -> int:
        return self.outer[i - 1] if 1 <= i <= len(self.outer) else 0

    def cells(self) -> dict[Cell, int]:
        out = {}
        for i, row in enumerate(self.rows, start=1):
            for j in range(self.inner_len(i) + 1, len(row) + 1):
                out[(i, j)] = row[j - 1]
        return out

    def __getitem__(self, cell: Cell) -> int | None:
        i, j = cell
        return self.rows[i - 1][j - 1]

    def size(self) -> int:
        return sum(self.outer) - sum(self.inner)

    def is_straight(self) -> bool:
        return not self.inner

    def is_rectangle(self) -> bool:
        return self.is_straight() and len(set(self.outer)) <= 1

    def is_semistandard(self) -> bool:
        cells = self.cells()
        for (i, j), v in cells.items():
            right = cells.get((i, j + 1))
            if right is not None and right < v:
                return False
            below = cells.get((i + 1, j))
            if below is not None and below <= v:
                return False
        return True

    def entries(self) -> list[int]:
        return list(self.cells().values())

    def to_lists(self) -> list[list[int | None]]:
        return [list(r) for r in self.rows]

    def to_json(self) -> dict:
        return {"outer": list(self.outer), "inner": list(self.inner), "rows": self.to_lists()}

    @classmethod
    def from_json(cls, obj: dict) -> "Tableau":
        rows = tuple(tuple(r) for r in obj["rows"])
        return cls(_strip(obj["outer"]), _strip(obj.get("inner", ())), rows)

    def __str__(self) -> str:
        width = max((len(str(v)) for v in self.entries()), default=1)
        lines = []
        for row in self.rows:
            lines.append(" ".join("." * width if v is None else str(v).rjust(width) for v in row))
        return "\n".join(lines)


# -- reading words ---------------------------------------------------------

def row_reading_word(T: Tableau) -> tuple[int, ...]:
    """Rows from bottom to top, each read left to right."""
    return tuple(v for row in reversed(T.rows) for v in row if v is not None)


def column_reading_word(T: Tableau) -> tuple[int, ...]:
    """Columns from left to right, each read bottom to top."""
    cells = T.cells()
    width = max(T.outer, default=0)
    word = []
    for j in range(1, width + 1):
        for i in range(len(T.outer), 0, -1):
            if (i, j) in cells:
                word.append(cells[(i, j)])
    return tuple(word)


# -- jeu de taquin ---------------------------------------------------------

def _slide_in(grid: dict[Cell, int], hole: Cell) -> Cell:
    """Forward slide of ``hole`` (an inner box) through ``grid``; returns the
    cell the hole ends in.  ``grid`` is mutated and no longer contains the hole."""
    i, j = hole
    while True:
        below = grid.get((i + 1, j))
        right = grid.get((i, j + 1))
        if below is None and right is None:
            return (i, j)
        # equal entries: the lower one moves up
        if right is None or (below is not None and below <= right):
            grid[(i, j)] = grid.pop((i + 1, j))
            i += 1
        else:
            grid[(i, j)] = grid.pop((i, j + 1))
            j += 1


def _slide_out(grid: dict[Cell, int], hole: Cell) -> Cell:
    """Reverse slide of ``hole`` (an outer box); mirror image of :func:`_slide_in`."""
    i, j = hole
    while True:
        above = grid.get((i - 1, j))
        left = grid.get((i, j - 1))
        if above is None and left is None:
            return (i, j)
        # equal entries: the higher one moves down
        if left is None or (above is not None and above >= left):
            grid[(i, j)] = grid.pop((i - 1, j))
            i -= 1
        else:
            grid[(i, j)] = grid.pop((i, j - 1))
            j -= 1


def _outer_after_removal(outer: Sequence[int], cell: Cell) -> tuple[int, ...]:
    parts = list(outer)
    parts[cell[0] - 1] -= 1
    return _strip(parts)


def _add_to(parts: Sequence[int], cell: Cell) -> tuple[int, ...]:
    parts = list(parts)
    while len(parts) < cell[0]:
        parts.append(0)
    parts[cell[0] - 1] += 1
    return _strip(parts)


def jdt_slide(T: Tableau, box: Cell, kind: str) -> Tableau:
    """One jeu de taquin slide of ``T`` into ``box``.

    ``kind="inner"``: ``box`` is an inner corner (a cell of the inner shape
    whose removal leaves a partition).  ``kind="outer"``: ``box`` is a cell
    just outside the outer shape whose addition gives a partition.
    """
    i, j = box
    grid = T.cells()
    if kind == "inner":
        if not (1 <= i <= len(T.inner) and T.inner_len(i) == j and T.inner_len(i + 1) < j):
            raise ShapeError(f"{box} is not an inner corner of {T.outer}/{T.inner}")
        end = _slide_in(grid, box)
        return Tableau.from_cells(
            _outer_after_removal(T.outer, end), _outer_after_removal(T.inner, box), grid
        )
    if kind == "outer":
        if not (j == T.outer_len(i) + 1 and (i == 1 or T.outer_len(i - 1) >= j)):
            raise ShapeError(f"{box} is not an outer corner of {T.outer}/{T.inner}")
        end = _slide_out(grid, box)
        return Tableau.from_cells(_add_to(T.outer, box), _add_to(T.inner, end), grid)
    raise ValueError(f"kind must be 'inner' or 'outer', not {kind!r}")


def partial_jdt(T: Tableau, cell: Cell) -> Tableau:
    """Partial slide at an arbitrary cell of a rectangular tableau.

    Everything outside the rectangle spanned by the corner and ``cell`` is held
    fixed; the entry at ``cell`` is removed and the hole slides out to the top
    left corner, which then receives 0.
    """
    if not T.is_rectangle():
        raise ShapeError("partial slides are defined on rectangles")
    i, j = cell
    if not (1 <= i <= len(T.outer) and 1 <= j <= T.outer[0]):
        raise ShapeError(f"{cell} is outside the tableau")
    full = T.cells()
    block = {c: v for c, v in full.items() if c[0] <= i and c[1] <= j}
    del block[cell]
    end = _slide_out(block, cell)
    block[end] = 0
    full.update(block)
    return Tableau.from_cells(T.outer, (), full)


# -- promotion -------------------------------------------------------------

def _check_alphabet(T: Tableau, n: int) -> None:
    for v in T.entries():
        if not 1 <= v <= n:
            raise DomainError(f"entry {v} not in [1, {n}]")


def promote(T: Tableau, n: int) -> Tableau:
    """Promotion with respect to the alphabet ``[n]`` on a straight tableau."""
    _check_alphabet(T, n)
    return Tableau.straight(promote_rows(T.rows, n))


def promote_inverse(T: Tableau, n: int) -> Tableau:
    _check_alphabet(T, n)
    return Tableau.straight(promote_inverse_rows(T.rows, n))


def promote_rows(rows: Sequence[Sequence[int]], n: int) -> tuple[tuple[int, ...], ...]:
    """Promotion on a straight tableau given as rows (no validation)."""
    grid = {(i, j): v for i, row in enumerate(rows, 1) for j, v in enumerate(row, 1)}
    holes = sorted((c for c, v in grid.items() if v == n), key=lambda c: (-c[0], c[1]))
    for c in holes:
        del grid[c]
    vacated = []
    for c in holes:
        vacated.append(_slide_out(grid, c))
    for c in vacated:
        grid[c] = 0
    return tuple(
        tuple(grid[(i, j)] + 1 for j in range(1, len(row) + 1))
        for i, row in enumerate(rows, 1)
    )


def promote_inverse_rows(rows: Sequence[Sequence[int]], n: int) -> tuple[tuple[int, ...], ...]:
    grid = {(i, j): v for i, row in enumerate(rows, 1) for j, v in enumerate(row, 1)}
    holes = sorted((c for c, v in grid.items() if v == 1), key=lambda c: (c[0], -c[1]))
    for c in holes:
        del grid[c]
    vacated = []
    for c in holes:
        vacated.append(_slide_in(grid, c))
    for c in vacated:
        grid[c] = n + 1
    return tuple(
        tuple(grid[(i, j)] - 1 for j in range(1, len(row) + 1))
        for i, row in enumerate(rows, 1)
    )


# -- row insertion ---------------------------------------------------------

def insert_rows(rows: list[list[int]], k: int) -> tuple[int, int]:
    """Row-insert ``k`` in place; returns the (0-based) new cell."""
    r = 0
    while True:
        if r == len(rows):
            rows.append([k])
            return r, 0
        row = rows[r]
        pos = bisect.bisect_right(row, k)
        if pos == len(row):
            row.append(k)
            return r, pos
        row[pos], k = k, row[pos]
        r += 1


def row_insert(P: Tableau, k: int) -> Tableau:
    if not P.is_straight():
        raise ShapeError("row insertion needs a straight tableau")
    rows = [list(r) for r in P.rows]
    insert_rows(rows, k)
    return Tableau.straight(rows)


def insertion_rows(word: Iterable[int]) -> list[list[int]]:
    rows: list[list[int]] = []
    for k in word:
        insert_rows(rows, k)
    return rows


def insertion_tableau(word: Iterable[int]) -> Tableau:
    return Tableau.straight(insertion_rows(word))


def insertion_shape(word: Iterable[int]) -> tuple[int, ...]:
    return tuple(len(r) for r in insertion_rows(word))


def greene_invariant(word: Sequence[int], k: int) -> int:
    """Largest total length of ``k`` disjoint weakly increasing subsequences.

    Exhaustive: every letter is assigned to one of ``k`` chains or dropped.
    Only meant as a cross-check on short words.
    """
    best = 0
    m = len(word)

    def rec(pos: int, tails: list[int | None], used: int) -> None:
        nonlocal best
        if used + (m - pos) <= best:
            return
        if pos == m:
            best = max(best, used)
            return
        x = word[pos]
        seen_empty = False
        for c in range(k):
            t = tails[c]
            if t is None:
                if seen_empty:
                    continue
                seen_empty = True
            elif t > x:
                continue
            tails[c] = x
            rec(pos + 1, tails, used + 1)
            tails[c] = t
        rec(pos + 1, tails, used)

    rec(0, [None] * k, 0)
    return best


# -- standard tableaux -----------------------------------------------------

@lru_cache(maxsize=None)
def standard_tableaux(shape: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All standard fillings of a straight shape, as row tuples, lexicographic by row word."""
    n = sum(shape)
    found = []
    rows: list[list[int]] = [[] for _ in shape]

    def rec(v: int) -> None:
        if v > n:
            found.append(tuple(tuple(r) for r in rows))
            return
        for i, length in enumerate(shape):
            if len(rows[i]) < length and (i == 0 or len(rows[i - 1]) > len(rows[i])):
                rows[i].append(v)
                rec(v + 1)
                rows[i].pop()

    rec(1)
    found.sort(key=lambda t: tuple(v for row in reversed(t) for v in row))
    return tuple(found)


def hook_length_count(shape: Sequence[int]) -> int:
    """Number of standard tableaux of ``shape`` by the hook length formula."""
    shape = list(shape)
    n = sum(shape)
    conj = [sum(1 for p in shape if p > j) for j in range(shape[0])] if shape else []
    prod = 1
    for i, length in enumerate(shape):
        for j in range(length):
            prod *= (length - j - 1) + (conj[j] - i - 1) + 1
    num = 1
    for k in range(2, n + 1):
        num *= k
    return num // prod


def descent_set_syt(rows: Sequence[Sequence[int]]) -> frozenset[int]:
    """Descents of a standard tableau: ``i`` such that ``i+1`` sits in a lower row."""
    row_of = {v: i for i, row in enumerate(rows) for v in row}
    n = len(row_of)
    return frozenset(i for i in range(1, n) if row_of[i + 1] > row_of[i])


def semistandard_tableaux(shape: Sequence[int], n: int) -> list[tuple[tuple[int, ...], ...]]:
    """All semistandard fillings of a straight shape with entries in ``[n]``."""
    shape = tuple(shape)
    cells = [(i, j) for i, length in enumerate(shape) for j in range(length)]
    out = []
    grid: dict[Cell, int] = {}

    def rec(idx: int) -> None:
        if idx == len(cells):
            out.append(tuple(tuple(grid[(i, j)] for j in range(length)) for i, length in enumerate(shape)))
            return
        i, j = cells[idx]
        lo = 1
        if j > 0:
            lo = max(lo, grid[(i, j - 1)])
        if i > 0:
            lo = max(lo, grid[(i - 1, j)] + 1)
        # leave room for the cells below in this column
        hi = n - (sum(1 for p in shape[i + 1:] if p > j))
        for v in range(lo, hi + 1):
            grid[(i, j)] = v
            rec(idx + 1)
        grid.pop((i, j), None)

    rec(0)
    return out


@lru_cache(maxsize=None)
def partitions(n: int, max_part: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Partitions of ``n`` in reverse lexicographic order (largest first)."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)
