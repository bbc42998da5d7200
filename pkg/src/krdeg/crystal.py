"""Type A crystal operators, KR affine operators and tensor elements.

A tensor element ``T_1 ⊗ ... ⊗ T_k`` of rectangular tableaux is stored by its
row word ``rw(T_1) rw(T_2) ... rw(T_k)``; the factors are recovered by cutting
the word at the rectangle sizes.  Crystal operators for ``i < n`` act on this
word directly, and the affine operators ``f_n, e_n`` are conjugates of
``f_1, e_1`` by factorwise promotion.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterator, Sequence

from .tableaux import (
    DomainError,
    Tableau,
    hook_length_count,
    promote_inverse_rows,
    promote_rows,
    semistandard_tableaux,
    standard_tableaux,
)

Rect = tuple[int, int]  # (rows, cols)
Word = tuple[int, ...]


# -- rectangle sequences ---------------------------------------------------

@dataclass(frozen=True)
class RectSeq:
    """An ordered sequence of rectangles, each given as ``(rows, cols)``."""

    rects: tuple[Rect, ...]

    def __post_init__(self):
        if not self.rects:
            raise ValueError("need at least one rectangle")
        for r, s in self.rects:
            if r < 1 or s < 1:
                raise ValueError(f"bad rectangle {r}x{s}")

    @classmethod
    def of(cls, *rects: Sequence[int]) -> "RectSeq":
        return cls(tuple((int(r), int(s)) for r, s in rects))

    @classmethod
    def parse(cls, text: str) -> "RectSeq":
        """Parse ``"SxR,SxR,..."`` where ``S`` is the column count and ``R`` the
        row count, mirroring the exponent notation ``(s^r)``.

        ``"1x1+1x1"`` stacks rectangles of equal width, so it means ``1x2``.
        """
        rects = []
        for token in text.replace(" ", "").split(","):
            rows, cols = 0, None
            for piece in token.split("+"):
                m = re.fullmatch(r"(\d+)[xX](\d+)", piece)
                if not m:
                    raise ValueError(f"cannot parse shape token {token!r}")
                s, r = int(m.group(1)), int(m.group(2))
                if cols is not None and s != cols:
                    raise ValueError(f"stacked pieces of {token!r} differ in width")
                cols = s
                rows += r
            rects.append((rows, cols))
        return cls(tuple(rects))

    def token(self) -> str:
        return ",".join(f"{s}x{r}" for r, s in self.rects)

    @property
    def k(self) -> int:
        return len(self.rects)

    @cached_property
    def sizes(self) -> tuple[int, ...]:
        return tuple(r * s for r, s in self.rects)

    @cached_property
    def n(self) -> int:
        return sum(self.sizes)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        return tuple(itertools.accumulate((0,) + self.sizes))

    @cached_property
    def multiplicities(self) -> dict[Rect, int]:
        out: dict[Rect, int] = {}
        for rect in self.rects:
            out[rect] = out.get(rect, 0) + 1
        return out

    @cached_property
    def d(self) -> int:
        """gcd of the multiplicities of the distinct rectangles."""
        return reduce(math.gcd, self.multiplicities.values())

    def is_grouped(self) -> bool:
        seen = []
        for rect in self.rects:
            if not seen or seen[-1] != rect:
                if rect in seen:
                    return False
                seen.append(rect)
        return True

    def predicted_size(self) -> int:
        """Size of the 0-weight space: multinomial times standard-tableau counts."""
        count = math.factorial(self.n)
        for (r, s), size in zip(self.rects, self.sizes):
            count //= math.factorial(size)
        for r, s in self.rects:
            count *= hook_length_count((s,) * r)
        return count

    def __str__(self) -> str:
        return "(" + ", ".join(f"({s}^{r})" for r, s in self.rects) + ")"


# -- word level ------------------------------------------------------------

def _signature(word: Sequence[int], i: int) -> tuple[list[int], list[int]]:
    """Unmatched positions of ``i`` and of ``i+1`` (``i+1`` opens, ``i`` closes)."""
    opened: list[int] = []
    lonely: list[int] = []
    j = i + 1
    for p, x in enumerate(word):
        if x == j:
            opened.append(p)
        elif x == i:
            if opened:
                opened.pop()
            else:
                lonely.append(p)
    return lonely, opened


def _check_index(i: int, n: int | None, top: int) -> None:
    if i < 1 or (n is not None and i > top):
        raise DomainError(f"crystal index {i} out of range")


def crystal_f(word: Sequence[int], i: int, n: int | None = None) -> Word | None:
    """Lower the rightmost unmatched ``i``; ``None`` when there is none."""
    _check_index(i, n, (n or 0) - 1)
    lonely, _ = _signature(word, i)
    if not lonely:
        return None
    p = lonely[-1]
    return tuple(word[:p]) + (i + 1,) + tuple(word[p + 1:])


def crystal_e(word: Sequence[int], i: int, n: int | None = None) -> Word | None:
    """Raise the leftmost unmatched ``i+1``; ``None`` when there is none."""
    _check_index(i, n, (n or 0) - 1)
    _, opened = _signature(word, i)
    if not opened:
        return None
    p = opened[0]
    return tuple(word[:p]) + (i,) + tuple(word[p + 1:])


def word_to_factors(shapes: Sequence[Rect], word: Sequence[int]) -> tuple[tuple[tuple[int, ...], ...], ...]:
    out = []
    pos = 0
    for r, s in shapes:
        seg = word[pos:pos + r * s]
        pos += r * s
        out.append(tuple(tuple(seg[(r - 1 - a) * s:(r - a) * s]) for a in range(r)))
    return tuple(out)


def factors_to_word(factors: Sequence[Sequence[Sequence[int]]]) -> Word:
    return tuple(v for rows in factors for row in reversed(rows) for v in row)


def promote_word(shapes: Sequence[Rect], word: Sequence[int], n: int) -> Word:
    return factors_to_word(promote_rows(f, n) for f in word_to_factors(shapes, word))


def promote_inverse_word(shapes: Sequence[Rect], word: Sequence[int], n: int) -> Word:
    return factors_to_word(promote_inverse_rows(f, n) for f in word_to_factors(shapes, word))


def f_word(shapes: Sequence[Rect], word: Word, i: int, n: int) -> Word | None:
    if i < n:
        return crystal_f(word, i)
    if i != n:
        raise DomainError(f"crystal index {i} out of range")
    w = crystal_f(promote_word(shapes, word, n), 1)
    return None if w is None else promote_inverse_word(shapes, w, n)


def e_word(shapes: Sequence[Rect], word: Word, i: int, n: int) -> Word | None:
    if i < n:
        return crystal_e(word, i)
    if i != n:
        raise DomainError(f"crystal index {i} out of range")
    w = crystal_e(promote_word(shapes, word, n), 1)
    return None if w is None else promote_inverse_word(shapes, w, n)


# -- tensor elements -------------------------------------------------------

@dataclass(frozen=True)
class TensorElement:
    shapes: tuple[Rect, ...]
    word: Word
    n: int

    def __post_init__(self):
        if len(self.word) != sum(r * s for r, s in self.shapes):
            raise ValueError("word length does not match the shapes")

    @classmethod
    def from_factors(cls, factors: Sequence[Sequence[Sequence[int]]], n: int | None = None) -> "TensorElement":
        """Build from factor row lists; ``n`` defaults to the total cell count."""
        shapes = []
        for rows in factors:
            widths = {len(row) for row in rows}
            if len(widths) != 1:
                raise ValueError(f"factor {rows} is not a rectangle")
            shapes.append((len(rows), widths.pop()))
        if n is None:
            n = sum(r * s for r, s in shapes)
        el = cls(tuple(shapes), factors_to_word(factors), n)
        el.validate()
        return el

    @cached_property
    def factors(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        return word_to_factors(self.shapes, self.word)

    @property
    def rectseq(self) -> RectSeq:
        return RectSeq(self.shapes)

    def tableaux(self) -> list[Tableau]:
        return [Tableau.straight(f) for f in self.factors]

    def validate(self) -> None:
        for idx, rows in enumerate(self.factors, 1):
            if not Tableau.straight(rows).is_semistandard():
                raise ValueError(f"factor {idx} is not semistandard: {rows}")
        bad = [v for v in self.word if not 1 <= v <= self.n]
        if bad:
            raise ValueError(f"entries {bad} are outside [1, {self.n}]")

    def is_valid(self) -> bool:
        try:
            self.validate()
        except ValueError:
            return False
        return True

    def with_word(self, word: Word) -> "TensorElement":
        return TensorElement(self.shapes, word, self.n)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "shapes": [list(rect) for rect in self.shapes],
            "factors": [[list(row) for row in f] for f in self.factors],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TensorElement":
        el = cls.from_factors(obj["factors"], obj.get("n"))
        if "shapes" in obj and [tuple(s) for s in obj["shapes"]] != list(el.shapes):
            raise ValueError("declared shapes do not match the factors")
        return el

    def __str__(self) -> str:
        return " ⊗ ".join(
            "[" + ",".join("[" + ",".join(map(str, row)) + "]" for row in f) + "]"
            for f in self.factors
        )


def tensor_f(T: TensorElement, i: int) -> TensorElement | None:
    if not 1 <= i <= T.n:
        raise DomainError(f"crystal index {i} out of range")
    w = f_word(T.shapes, T.word, i, T.n)
    return None if w is None else T.with_word(w)


def tensor_e(T: TensorElement, i: int) -> TensorElement | None:
    if not 1 <= i <= T.n:
        raise DomainError(f"crystal index {i} out of range")
    w = e_word(T.shapes, T.word, i, T.n)
    return None if w is None else T.with_word(w)


def promote_tensor(T: TensorElement) -> TensorElement:
    return T.with_word(promote_word(T.shapes, T.word, T.n))


def promote_tensor_inverse(T: TensorElement) -> TensorElement:
    return T.with_word(promote_inverse_word(T.shapes, T.word, T.n))


def weight(T: TensorElement) -> tuple[int, ...]:
    counts = [0] * T.n
    for v in T.word:
        counts[v - 1] += 1
    return tuple(counts)


# -- 0-weight space --------------------------------------------------------

def _relabelled_fillings(r: int, s: int, values: Sequence[int]) -> list[Word]:
    """Row words of the standard fillings of ``(s^r)`` with the given values."""
    out = []
    for rows in standard_tableaux((s,) * r):
        out.append(tuple(values[v - 1] for row in reversed(rows) for v in row))
    return out


def iter_zero_weight_words(R: RectSeq) -> Iterator[Word]:
    """Row words of all 0-weight elements, unsorted."""
    n = R.n

    def rec(idx: int, remaining: tuple[int, ...]) -> Iterator[list[Word]]:
        if idx == R.k:
            yield []
            return
        r, s = R.rects[idx]
        for chosen in itertools.combinations(remaining, r * s):
            rest = tuple(v for v in remaining if v not in chosen)
            fillings = _relabelled_fillings(r, s, chosen)
            for tail in rec(idx + 1, rest):
                for w in fillings:
                    yield [w] + tail

    for parts in rec(0, tuple(range(1, n + 1))):
        yield tuple(v for part in parts for v in part)


def enumerate_zero_weight(R: RectSeq) -> list[TensorElement]:
    """All tensor elements of content ``(1, ..., 1)``, sorted by row word."""
    words = sorted(iter_zero_weight_words(R))
    return [TensorElement(R.rects, w, R.n) for w in words]


def build_kr_crystal(rect: Rect, n: int) -> tuple[list[TensorElement], list[tuple[int, int, int]]]:
    """Vertices and arrows ``(u, i, v)`` with ``f_i(vertices[u]) = vertices[v]``."""
    r, s = rect
    verts = [
        TensorElement.from_factors([rows], n)
        for rows in semistandard_tableaux((s,) * r, n)
    ]
    index = {v.word: k for k, v in enumerate(verts)}
    arrows = []
    for k, v in enumerate(verts):
        for i in range(1, n + 1):
            w = tensor_f(v, i)
            if w is not None:
                arrows.append((k, i, index[w.word]))
    return verts, arrows
