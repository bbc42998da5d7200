"""Combinatorial R-matrices, charge and semicharge on tensor elements."""

from __future__ import annotations

import bisect
from functools import lru_cache
from typing import Sequence

from .crystal import TensorElement, factors_to_word, word_to_factors
from .tableaux import DomainError, insertion_rows

Rows = tuple[tuple[int, ...], ...]


class InvariantError(RuntimeError):
    """An internal consistency certificate failed."""


def _row_word(rows: Sequence[Sequence[int]]) -> list[int]:
    return [v for row in reversed(rows) for v in row]


@lru_cache(maxsize=None)
def _lr_recording(outer: tuple[int, ...], rect_in: tuple[int, int], rect_out: tuple[int, int]) -> tuple[tuple[tuple[int, int], int], ...] | None:
    """Standardised LR filling of ``outer / rect_in`` with content ``rect_out``.

    Returns ``((cell, label), ...)`` with labels ``1..|rect_out|`` (cells are
    0-based), or ``None`` if no LR filling exists.  For two rectangles the
    filling is unique when it exists.
    """
    r_in, s_in = rect_in
    r_out, s_out = rect_out
    order = []
    for i, length in enumerate(outer):
        start = s_in if i < r_in else 0
        for j in range(length - 1, start - 1, -1):
            order.append((i, j))
    if len(order) != r_out * s_out:
        return None
    grid: dict[tuple[int, int], int] = {}
    counts = [0] * (r_out + 1)

    def rec(idx: int) -> bool:
        if idx == len(order):
            return True
        i, j = order[idx]
        hi = r_out
        right = grid.get((i, j + 1))
        if right is not None:
            hi = min(hi, right)
        lo = 1
        above = grid.get((i - 1, j))
        if above is not None:
            lo = above + 1
        for v in range(lo, hi + 1):
            if counts[v] == s_out or (v > 1 and counts[v] + 1 > counts[v - 1]):
                continue
            grid[(i, j)] = v
            counts[v] += 1
            if rec(idx + 1):
                return True
            counts[v] -= 1
            del grid[(i, j)]
        return False

    if not rec(0):
        return None
    labels = []
    for v in range(1, r_out + 1):
        cells = sorted((c for c, x in grid.items() if x == v), key=lambda c: c[1])
        base = (v - 1) * s_out
        labels.extend((c, base + k + 1) for k, c in enumerate(cells))
    return tuple(labels)


def _reverse_bump(rows: list[list[int]], r: int) -> int:
    """Remove the last cell of row ``r`` and bump it out of the top row."""
    x = rows[r].pop()
    if not rows[r]:
        rows.pop()
    for i in range(r - 1, -1, -1):
        row = rows[i]
        pos = bisect.bisect_left(row, x) - 1
        row[pos], x = x, row[pos]
    return x


@lru_cache(maxsize=200_000)
def r_matrix(T1: Rows, T2: Rows) -> tuple[Rows, Rows]:
    """The combinatorial R-matrix ``T1 ⊗ T2 -> A ⊗ B``.

    ``A`` has the shape of ``T2`` and ``B`` the shape of ``T1``, and
    ``rw(A) rw(B)`` inserts to the same tableau as ``rw(T1) rw(T2)``.
    """
    shape1 = (len(T1), len(T1[0]))
    shape2 = (len(T2), len(T2[0]))
    if shape1 == shape2:
        return T1, T2
    return _r_matrix_by_insertion(T1, T2)


def _r_matrix_by_insertion(T1: Rows, T2: Rows) -> tuple[Rows, Rows]:
    shape1 = (len(T1), len(T1[0]))
    shape2 = (len(T2), len(T2[0]))
    P = insertion_rows(_row_word(T1) + _row_word(T2))
    outer = tuple(len(r) for r in P)
    labels = _lr_recording(outer, shape2, shape1)
    if labels is None:
        raise InvariantError(f"no LR filling of {outer}/{shape2} with content {shape1}")
    by_label = sorted(labels, key=lambda x: -x[1])
    rows = [list(r) for r in P]
    popped = []
    for (i, j), _ in by_label:
        if len(rows[i]) != j + 1:
            raise InvariantError("recording cell is not a corner")
        popped.append(_reverse_bump(rows, i))
    word = tuple(reversed(popped))
    A = tuple(tuple(r) for r in rows)
    (B,) = word_to_factors([shape1], word)
    if tuple((len(A), len(A[0]) if A else 0)) != shape2:
        raise InvariantError("left factor lost its rectangular shape")
    for x, y in zip(B, B[1:]):
        if any(a >= b for a, b in zip(x, y)):
            raise InvariantError("right factor is not column strict")
    if any(list(row) != sorted(row) for row in B):
        raise InvariantError("right factor is not row weak")
    return A, B


def local_charge(T1: Rows, T2: Rows) -> int:
    """Cells below row ``max(r1, r2)`` in the insertion tableau of ``rw(T1) rw(T2)``."""
    rows = insertion_rows(_row_word(T1) + _row_word(T2))
    cut = max(len(T1), len(T2))
    return sum(len(r) for r in rows[cut:])


def apply_sigma(T: TensorElement, i: int) -> TensorElement:
    """Swap tensor factors ``i`` and ``i+1`` (1-based) with the R-matrix."""
    if not 1 <= i < len(T.shapes):
        raise DomainError(f"sigma index {i} out of range for {len(T.shapes)} factors")
    factors = list(T.factors)
    A, B = r_matrix(factors[i - 1], factors[i])
    factors[i - 1], factors[i] = A, B
    shapes = list(T.shapes)
    shapes[i - 1], shapes[i] = shapes[i], shapes[i - 1]
    return TensorElement(tuple(shapes), factors_to_word(factors), T.n)


def charge_of_factors(factors: Sequence[Rows]) -> int:
    k = len(factors)
    total = 0
    for i in range(k - 1):
        moving = factors[i]
        for j in range(i + 1, k):
            total += local_charge(moving, factors[j])
            if j < k - 1:
                moving = r_matrix(moving, factors[j])[1]
    return total


def charge(T: TensorElement) -> int:
    """Sum of local charges of each factor carried rightwards by R-matrices."""
    return charge_of_factors(T.factors)


def semicharge_of_factors(factors: Sequence[Rows]) -> int:
    total = 0
    for i in range(len(factors) - 1):
        a, b = factors[i], factors[i + 1]
        if len(a) == len(b) and len(a[0]) == len(b[0]):
            total += (i + 1) * local_charge(a, b)
    return total


def semicharge(T: TensorElement) -> int:
    """Weighted adjacent local charges; only equal-shape neighbours contribute."""
    return semicharge_of_factors(T.factors)
