"""KR dual equivalence graphs on 0-weight spaces of tensor products.

Edges are generated canonically by crystal commutators
``C_i = e_i e_{i+1} f_i f_{i+1}`` (indices mod ``n``); the explicit moves
``t_i``, ``t_n``, ``tbar_1`` and ``tbar_{n-1}`` are available for labelling
and cross-checking.
"""

from __future__ import annotations

import gzip
import json
import logging
import math
from dataclasses import dataclass, field
from functools import reduce
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .charge import InvariantError, charge_of_factors, semicharge_of_factors
from .crystal import (
    RectSeq,
    TensorElement,
    Word,
    e_word,
    f_word,
    factors_to_word,
    iter_zero_weight_words,
    promote_inverse_word,
    promote_word,
    word_to_factors,
)
from .tableaux import DomainError, _slide_in, _slide_out

log = logging.getLogger(__name__)


class VerificationError(RuntimeError):
    """A statement that must hold on every vertex failed; carries a report."""

    def __init__(self, message: str, report: dict | None = None):
        super().__init__(message)
        self.report = report or {}


class GuardError(RuntimeError):
    """Refusal to build a graph larger than the configured vertex limit."""

    def __init__(self, predicted: int, limit: int):
        super().__init__(f"graph would have {predicted} vertices (limit {limit}); use force to build anyway")
        self.predicted = predicted
        self.limit = limit


@dataclass(frozen=True, order=True)
class EdgeLabel:
    """``kind`` is ``"t"`` (``t_i``, including the affine ``t_n``), ``"tbar"`` or ``"C"``."""

    kind: str
    index: int

    def __str__(self) -> str:
        return f"{self.kind}{self.index}"

    @classmethod
    def parse(cls, text: str) -> "EdgeLabel":
        for kind in ("tbar", "t", "C"):
            if text.startswith(kind) and text[len(kind):].isdigit():
                return cls(kind, int(text[len(kind):]))
        raise ValueError(f"bad edge label {text!r}")


def Swap(i: int) -> EdgeLabel:
    return EdgeLabel("t", i)


def Commutator(i: int) -> EdgeLabel:
    return EdgeLabel("C", i)


# -- descents --------------------------------------------------------------

def _positions(word: Sequence[int], n: int) -> list[int]:
    pos = [-1] * (n + 1)
    for p, v in enumerate(word):
        if not 1 <= v <= n or pos[v] != -1:
            raise DomainError("descent sets need content (1, ..., 1)")
        pos[v] = p
    return pos


def descents_of_word(shapes: Sequence[tuple[int, int]], word: Word, n: int) -> frozenset[int]:
    pos = _positions(word, n)
    out = {i for i in range(1, n) if pos[i + 1] < pos[i]}
    if n > 1:
        pw = promote_word(shapes, word, n)
        if pw.index(2) < pw.index(1):
            out.add(n)
    return frozenset(out)


def descent_set(T: TensorElement) -> frozenset[int]:
    """Classical descents of ``rw(T)`` plus ``n`` when promotion has descent 1."""
    return descents_of_word(T.shapes, T.word, T.n)


def _incomparable(a: frozenset[int], b: frozenset[int]) -> bool:
    return not (a <= b or b <= a)


# -- commutator edges ------------------------------------------------------

def commutator_word(shapes, word: Word, i: int, n: int) -> Word | None:
    j = i % n + 1
    w = f_word(shapes, word, j, n)
    for step, idx in ((f_word, i), (e_word, j), (e_word, i)):
        if w is None:
            return None
        w = step(shapes, w, idx, n)
    if w is None or w == word:
        return None
    return w


def commutator_edge(T: TensorElement, i: int) -> TensorElement | None:
    """``e_i e_{i+1} f_i f_{i+1} (T)`` with ``n+1`` read as 1; ``None`` when a
    step is undefined or the composite fixes ``T``."""
    if not 1 <= i <= T.n:
        raise DomainError(f"commutator index {i} out of range")
    w = commutator_word(T.shapes, T.word, i, T.n)
    if w is None:
        return None
    out = T.with_word(w)
    if not out.is_valid():
        raise InvariantError(f"commutator C_{i} produced an invalid element {out}")
    return out


# -- definitional edges ----------------------------------------------------

def _grid(rows) -> dict[tuple[int, int], int]:
    return {(i, j): v for i, row in enumerate(rows, 1) for j, v in enumerate(row, 1)}


def _rows(grid: dict[tuple[int, int], int], r: int, s: int) -> tuple[tuple[int, ...], ...] | None:
    try:
        rows = tuple(tuple(grid[(i, j)] for j in range(1, s + 1)) for i in range(1, r + 1))
    except KeyError:
        return None
    for i in range(r):
        for j in range(s):
            if j + 1 < s and rows[i][j] > rows[i][j + 1]:
                return None
            if i + 1 < r and rows[i][j] >= rows[i + 1][j]:
                return None
    return rows


def _find(grid, value):
    for c, v in grid.items():
        if v == value:
            return c
    raise KeyError(value)


def _factor_of(shapes, word: Word, value: int) -> int:
    p = word.index(value)
    acc = 0
    for idx, (r, s) in enumerate(shapes):
        acc += r * s
        if p < acc:
            return idx
    raise KeyError(value)


def _swap_move(T: TensorElement, i: int, D: frozenset[int]) -> TensorElement | None:
    w = list(T.word)
    p, q = w.index(i), w.index(i + 1)
    w[p], w[q] = i + 1, i
    out = T.with_word(tuple(w))
    if not out.is_valid():
        return None
    return out if _incomparable(D, descent_set(out)) else None


def _affine_swap(T: TensorElement, D: frozenset[int]) -> TensorElement | None:
    n = T.n
    a = _factor_of(T.shapes, T.word, n)
    b = _factor_of(T.shapes, T.word, 1)
    if a == b:
        return None
    factors = list(T.factors)
    (ra, sa), (rb, sb) = T.shapes[a], T.shapes[b]
    g = _grid(factors[a])
    hole = _find(g, n)
    del g[hole]
    g[_slide_out(g, hole)] = 1
    h = _grid(factors[b])
    hole = _find(h, 1)
    del h[hole]
    h[_slide_in(h, hole)] = n
    fa, fb = _rows(g, ra, sa), _rows(h, rb, sb)
    if fa is None or fb is None:
        return None
    factors[a], factors[b] = fa, fb
    out = T.with_word(factors_to_word(factors))
    return out if _incomparable(D, descent_set(out)) else None


def _bar_one(T: TensorElement, D: frozenset[int]) -> TensorElement | None:
    n = T.n
    if n < 3 or n not in D:
        return None
    a = _factor_of(T.shapes, T.word, n)
    if _factor_of(T.shapes, T.word, 1) != a or _factor_of(T.shapes, T.word, 2) != a:
        return None
    r, s = T.shapes[a]
    rows = T.factors[a]
    rw = [v for row in reversed(rows) for v in row]
    p1 = rw.index(1)
    if not (rw.index(n) < p1 and p1 + 1 < len(rw) and rw[p1 + 1] == 2):
        return None
    g = _grid(rows)
    hole = _find(g, n)
    del g[hole]
    star = _slide_out(g, hole)
    c1, c2 = _find(g, 1), _find(g, 2)
    g[c1], g[c2] = 2, 1
    g[_slide_in(g, star)] = n
    new = _rows(g, r, s)
    if new is None:
        return None
    factors = list(T.factors)
    factors[a] = new
    return T.with_word(factors_to_word(factors))


def _bar_n_minus_one(T: TensorElement, D: frozenset[int], literal: bool = False) -> TensorElement | None:
    n = T.n
    if n < 3 or n in D:
        return None
    a = _factor_of(T.shapes, T.word, n)
    if _factor_of(T.shapes, T.word, 1) != a or _factor_of(T.shapes, T.word, n - 1) != a:
        return None
    r, s = T.shapes[a]
    rows = T.factors[a]
    rw = [v for row in reversed(rows) for v in row]
    if literal:
        if not rw.index(n) < rw.index(n - 1) < rw.index(1):
            return None
    elif not rw.index(n) < min(rw.index(n - 1), rw.index(1)):
        return None
    g = _grid(rows)
    # (i) slide n out, fill the vacated corner with 1
    hole = _find(g, n)
    del g[hole]
    g[_slide_out(g, hole)] = 1
    # (ii) slide n-1 out, leaving an empty corner
    hole = _find(g, n - 1)
    del g[hole]
    star = _slide_out(g, hole)
    # (iii) slide into the 1 of the first row, then into the empty corner
    top_ones = [c for c, v in g.items() if v == 1 and c[0] == 1]
    if len(top_ones) != 1:
        return None
    one = top_ones[0]
    del g[one]
    g[_slide_in(g, one)] = n - 1
    g[_slide_in(g, star)] = n
    new = _rows(g, r, s)
    if new is None:
        return None
    factors = list(T.factors)
    factors[a] = new
    return T.with_word(factors_to_word(factors))


def definitional_edge(T: TensorElement, label: EdgeLabel, literal: bool = False) -> TensorElement | None:
    """Apply one of the explicit moves ``t_i`` (``1 <= i <= n``), ``tbar_1`` or
    ``tbar_{n-1}``; ``None`` when its precondition fails.

    ``tbar_{n-1}`` fires when ``n`` precedes both ``n-1`` and ``1`` in the row
    word of their common factor.  ``literal=True`` restricts it to the order
    ``n ... n-1 ... 1``, which misses edges such as
    ``[[1,5],[3,6]] -- [[1,3],[5,6]]`` that the commutator ``C_{n-1}`` finds.
    """
    n = T.n
    D = descent_set(T)
    if label.kind == "t":
        if 1 <= label.index < n:
            return _swap_move(T, label.index, D)
        if label.index == n:
            return _affine_swap(T, D)
    elif label.kind == "tbar":
        if label.index == 1:
            return _bar_one(T, D)
        if label.index == n - 1:
            return _bar_n_minus_one(T, D, literal)
    raise DomainError(f"no definitional move {label} for n={n}")


def definitional_labels(n: int) -> list[EdgeLabel]:
    labels = [EdgeLabel("t", i) for i in range(1, n + 1)]
    if n >= 3:
        labels += [EdgeLabel("tbar", 1), EdgeLabel("tbar", n - 1)]
    return labels


# -- the graph -------------------------------------------------------------

class UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))
        self.rank = [0] * size

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True

    def groups(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x in range(len(self.parent)):
            out.setdefault(self.find(x), []).append(x)
        return sorted(out.values(), key=lambda g: g[0])


@dataclass
class KRDegGraph:
    shapes: RectSeq
    words: list[Word]
    descents: list[frozenset[int]]
    charges: list[int]
    semicharges: list[int]
    edges: dict[tuple[int, int], set[str]]
    components: list[list[int]] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.shapes.n

    def __len__(self) -> int:
        return len(self.words)

    def vertex(self, idx: int) -> TensorElement:
        return TensorElement(self.shapes.rects, self.words[idx], self.n)

    def index_of(self, T: TensorElement | Word) -> int:
        word = T.word if isinstance(T, TensorElement) else tuple(T)
        if not hasattr(self, "_index"):
            self._index = {w: k for k, w in enumerate(self.words)}
        return self._index[word]

    def component_of(self, idx: int) -> int:
        if not hasattr(self, "_comp"):
            self._comp = {v: c for c, comp in enumerate(self.components) for v in comp}
        return self._comp[idx]

    def edge_pairs(self, kinds: Iterable[str] | None = None) -> set[tuple[int, int]]:
        if kinds is None:
            return set(self.edges)
        kinds = set(kinds)
        return {
            e for e, labels in self.edges.items()
            if any(EdgeLabel.parse(lab).kind in kinds for lab in labels)
        }

    # -- serialisation ------------------------------------------------------
    def to_json(self) -> dict:
        verts = []
        for k in range(len(self)):
            T = self.vertex(k)
            verts.append({
                "id": k,
                "factors": [[list(row) for row in f] for f in T.factors],
                "descents": sorted(self.descents[k]),
                "charge": self.charges[k],
                "semicharge": self.semicharges[k],
            })
        edges = [
            {"u": u, "v": v, "labels": sorted(labels, key=EdgeLabel.parse)}
            for (u, v), labels in sorted(self.edges.items())
        ]
        return {
            "shapes": [list(rect) for rect in self.shapes.rects],
            "vertices": verts,
            "edges": edges,
            "components": [list(c) for c in self.components],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "KRDegGraph":
        shapes = RectSeq.of(*obj["shapes"])
        words, descents, charges, semis = [], [], [], []
        for v in obj["vertices"]:
            words.append(factors_to_word(v["factors"]))
            descents.append(frozenset(v["descents"]))
            charges.append(v["charge"])
            semis.append(v.get("semicharge", 0))
        edges = {(e["u"], e["v"]): set(e["labels"]) for e in obj["edges"]}
        comps = [list(c) for c in obj["components"]]
        return cls(shapes, words, descents, charges, semis, edges, comps)

    def save(self, path: str | Path) -> None:
        path = Path(path)
        data = json.dumps(self.to_json(), separators=(",", ":"), sort_keys=True).encode()
        if path.suffix == ".gz":
            # fixed mtime keeps the file byte-identical across runs
            with open(path, "wb") as fh, gzip.GzipFile(fileobj=fh, mode="wb", mtime=0) as gz:
                gz.write(data)
        else:
            path.write_bytes(data)

    @classmethod
    def load(cls, path: str | Path) -> "KRDegGraph":
        path = Path(path)
        raw = path.read_bytes()
        if path.suffix == ".gz":
            raw = gzip.decompress(raw)
        return cls.from_json(json.loads(raw))

    def to_dot(self) -> str:
        lines = ["graph krdeg {", "  node [shape=box];"]
        for c, comp in enumerate(self.components):
            lines.append(f"  subgraph cluster_{c} {{")
            lines.append(f'    label="component {c}";')
            for v in comp:
                label = "".join(map(str, self.words[v])) if self.n < 10 else " ".join(map(str, self.words[v]))
                lines.append(f'    v{v} [label="{label}"];')
            lines.append("  }")
        for (u, v), labels in sorted(self.edges.items()):
            text = ",".join(sorted(labels, key=EdgeLabel.parse))
            lines.append(f'  v{u} -- v{v} [label="{text}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _vertex_data(shapes, word: Word, n: int):
    factors = word_to_factors(shapes, word)
    return (
        descents_of_word(shapes, word, n),
        charge_of_factors(factors),
        semicharge_of_factors(factors),
    )


def _probe(args):
    shapes, word, n = args
    out = []
    for i in range(1, n + 1):
        w = commutator_word(shapes, word, i, n)
        if w is not None:
            out.append((i, w))
    return _vertex_data(shapes, word, n), out


def build_graph(
    R: RectSeq,
    *,
    definitional: bool = False,
    limit: int | None = None,
    force: bool = False,
    jobs: int = 1,
) -> KRDegGraph:
    """Build ``T(R)``: commutator edges, cached descents/charges, components.

    With ``definitional=True`` the explicit moves are also applied and their
    labels merged onto the edges (any edge they add is kept, so a mismatch
    with the commutator edges shows up as extra pairs).
    """
    predicted = R.predicted_size()
    if limit is not None and predicted > limit and not force:
        raise GuardError(predicted, limit)
    n = R.n
    shapes = R.rects
    words = sorted(iter_zero_weight_words(R))
    index = {w: k for k, w in enumerate(words)}
    tasks = [(shapes, w, n) for w in words]
    if jobs > 1:
        from multiprocessing import Pool

        with Pool(jobs) as pool:
            results = pool.map(_probe, tasks, chunksize=max(1, len(tasks) // (jobs * 16)))
    else:
        results = map(_probe, tasks)

    descents, charges, semis = [], [], []
    edges: dict[tuple[int, int], set[str]] = {}
    uf = UnionFind(len(words))
    for u, ((D, ch, sc), found) in enumerate(results):
        descents.append(D)
        charges.append(ch)
        semis.append(sc)
        for i, w in found:
            v = index.get(w)
            if v is None:
                raise InvariantError(f"C_{i} left the 0-weight space at {words[u]}")
            key = (min(u, v), max(u, v))
            edges.setdefault(key, set()).add(f"C{i}")
            uf.union(u, v)
    G = KRDegGraph(R, words, descents, charges, semis, edges)
    if definitional:
        for w, label, x in _definitional_moves(R, words, dict(zip(words, descents))):
            u, v = index[w], index[x]
            key = (min(u, v), max(u, v))
            edges.setdefault(key, set()).add(str(label))
            uf.union(u, v)
    G.components = uf.groups()
    log.info("built %s: %d vertices, %d edges, %d components", R, len(words), len(edges), len(G.components))
    return G


def _definitional_moves(R: RectSeq, words: Sequence[Word], descents: Mapping[Word, frozenset[int]], literal: bool = False):
    """Yield ``(word, label, image)`` for every move that fires.

    Same result as calling :func:`definitional_edge` per label, but a swap
    ``t_i`` is valid exactly when the swapped word is another vertex, so the
    descent table replaces re-validation and re-promotion.
    """
    n = R.n
    for w in words:
        D = descents[w]
        pos = {x: k for k, x in enumerate(w)}
        for i in range(1, n):
            x = list(w)
            x[pos[i]], x[pos[i + 1]] = i + 1, i
            x = tuple(x)
            Dx = descents.get(x)
            if Dx is not None and _incomparable(D, Dx):
                yield w, Swap(i), x
        T = TensorElement(R.rects, w, n)
        moves = [(Swap(n), _affine_swap(T, D))] if n > 1 else []
        if n >= 3:
            moves += [(EdgeLabel("tbar", 1), _bar_one(T, D)), (EdgeLabel("tbar", n - 1), _bar_n_minus_one(T, D, literal))]
        for label, X in moves:
            if X is not None and X.word != w:
                yield w, label, X.word


def _descent_table(R: RectSeq, words: Sequence[Word]) -> dict[Word, frozenset[int]]:
    return {w: descents_of_word(R.rects, w, R.n) for w in words}


def definitional_edge_set(R: RectSeq, words: Sequence[Word] | None = None, literal: bool = False) -> set[tuple[Word, Word]]:
    """Undirected edges from the explicit moves, as sorted word pairs."""
    if words is None:
        words = sorted(iter_zero_weight_words(R))
    out = set()
    for w, _, x in _definitional_moves(R, words, _descent_table(R, words), literal):
        out.add((min(w, x), max(w, x)))
    return out


def commutator_edge_set(R: RectSeq, words: Sequence[Word] | None = None) -> set[tuple[Word, Word]]:
    if words is None:
        words = sorted(iter_zero_weight_words(R))
    out = set()
    for w in words:
        for i in range(1, R.n + 1):
            x = commutator_word(R.rects, w, i, R.n)
            if x is not None:
                out.add((min(w, x), max(w, x)))
    return out


def components_by_charge(G: KRDegGraph) -> dict[int, list[int]]:
    """Check that there are ``d_R`` components, each a full charge class mod ``d_R``."""
    d = G.shapes.d
    by_residue: dict[int, list[int]] = {}
    problems = []
    for comp in G.components:
        residues = {G.charges[v] % d for v in comp}
        if len(residues) != 1:
            problems.append({"component": comp[:10], "residues": sorted(residues)})
            continue
        (res,) = residues
        if res in by_residue:
            problems.append({"residue": res, "shared_by_components": True})
        by_residue[res] = comp
    if len(G.components) != d:
        problems.append({"components": len(G.components), "expected": d})
    if problems:
        raise VerificationError(f"component structure of {G.shapes} disagrees with charge mod {d}", {"problems": problems})
    return dict(sorted(by_residue.items()))


# -- superstandard fillings ------------------------------------------------

@dataclass(frozen=True)
class Superstandard:
    element: TensorElement
    column_max: tuple[int, ...]  # c_{m,i}, i = 1..max cols
    row_max: tuple[int, ...]  # a_{m,i}, i = 1..max rows


def superstandard_filling(R: RectSeq, m: int) -> Superstandard:
    r_max = max(r for r, _ in R.rects)
    s_max = max(s for _, s in R.rects)
    if not 0 <= m <= r_max:
        raise DomainError(f"m={m} not in [0, {r_max}]")
    grids = [dict() for _ in R.rects]
    v = 0
    for i in range(1, m + 1):
        for g, (r, s) in zip(grids, R.rects):
            if i <= r:
                for j in range(1, s + 1):
                    v += 1
                    g[(i, j)] = v
    for j in range(1, s_max + 1):
        for g, (r, s) in reversed(list(zip(grids, R.rects))):
            if j <= s:
                for i in range(m + 1, r + 1):
                    v += 1
                    g[(i, j)] = v
    factors = [
        tuple(tuple(g[(i, j)] for j in range(1, s + 1)) for i in range(1, r + 1))
        for g, (r, s) in zip(grids, R.rects)
    ]
    col_max = tuple(
        max(g[(i, j)] for g, (r, s) in zip(grids, R.rects) if j <= s for i in range(1, r + 1))
        for j in range(1, s_max + 1)
    )
    row_max = tuple(
        max(g[(i, j)] for g, (r, s) in zip(grids, R.rects) if i <= r for j in range(1, s + 1))
        for i in range(1, r_max + 1)
    )
    return Superstandard(TensorElement(R.rects, factors_to_word(factors), R.n), col_max, row_max)


def superstandard(R: RectSeq, m: int) -> TensorElement:
    """The filling ``row_m(R)``; ``m = 0`` is ``col(R)``, ``m = r'`` is ``row(R)``."""
    return superstandard_filling(R, m).element


def row_filling(R: RectSeq) -> TensorElement:
    return superstandard(R, max(r for r, _ in R.rects))


def width_sorted(R: RectSeq) -> RectSeq:
    return RectSeq(tuple(sorted(R.rects, key=lambda rs: rs[1])))


def promotion_periods(R: RectSeq, m: int) -> list[int]:
    """The admissible ``d`` for ``row_m(R)``.

    For ``m < r'`` these are the column maxima and, when ``m >= 1``, ``a_{m,m}``.
    For ``m = r'`` the filling is row-wise and only ``a_{m,m} = n`` survives.
    Needs the rectangles ordered by nondecreasing width.
    """
    if [s for _, s in R.rects] != sorted(s for _, s in R.rects):
        raise DomainError(f"{R.token()}: order rectangles by nondecreasing width first")
    ss = superstandard_filling(R, m)
    r_max = max(r for r, _ in R.rects)
    out = list(ss.column_max) if m < r_max else []
    if m >= 1:
        out.append(ss.row_max[m - 1])
    return out


def periods_gcd(R: RectSeq) -> int:
    R = width_sorted(R)
    r_max = max(r for r, _ in R.rects)
    values = [d for m in range(r_max + 1) for d in promotion_periods(R, m)]
    return reduce(math.gcd, values)


def try_swap(T: TensorElement, i: int) -> TensorElement | None:
    if not 1 <= i < T.n:
        return None
    return _swap_move(T, i, descent_set(T))


def _s_sequence(R: RectSeq, m: int, d: int):
    T = superstandard(R, m)
    n = R.n
    if d != n and d not in promotion_periods(R, m):
        raise DomainError(f"d={d} is not an admissible period for m={m}")
    path = [T]
    milestones = [T]
    for j in range(d, n):
        for t in range(j, j - d, -1):
            X = try_swap(T, t)
            if X is not None:
                T = X
                path.append(T)
        milestones.append(T)
    expected = superstandard(R, m)
    for _ in range(n - d):
        expected = expected.with_word(promote_word(R.rects, expected.word, n))
    if T != expected:
        raise VerificationError(
            f"S-sequence for m={m}, d={d} ended at {T}, expected pr^{n - d} = {expected}",
            {"end": str(T), "expected": str(expected)},
        )
    return path, milestones


def s_sequence_path(R: RectSeq, m: int, d: int) -> list[TensorElement]:
    """Vertices visited by ``S_{n-1} ... S_d`` from ``row_m(R)`` (inapplicable swaps skipped).

    The last vertex is checked to be ``pr^{n-d}(row_m(R))``.
    """
    return _s_sequence(R, m, d)[0]


def s_sequence_milestones(R: RectSeq, m: int, d: int) -> list[TensorElement]:
    """``T^{(0)}, ..., T^{(n-d)}`` where ``T^{(j)} = S_{d+j-1} ... S_d (T)``."""
    return _s_sequence(R, m, d)[1]


# -- row combing -----------------------------------------------------------

def pcomb(T: TensorElement, i: int, j: int) -> TensorElement:
    """Move the single descent in ``[i, j]`` from ``j`` down to ``i`` by swaps."""
    D = descent_set(T)
    if not 1 <= i <= j < T.n or {x for x in D if i <= x <= j} != {j}:
        raise DomainError(f"pcomb_{{{i},{j}}} needs D(T) ∩ [{i},{j}] = {{{j}}}")
    for k in range(j, i, -1):
        # the descent sits at k; one of t_k, t_{k-1} moves it to k - 1
        for t in (k, k - 1):
            X = _swap_move(T, t, D)
            if X is not None:
                DX = descent_set(X)
                if {x for x in DX if i <= x <= j} == {k - 1}:
                    T, D = X, DX
                    break
        else:
            raise VerificationError(f"pcomb_{{{i},{j}}} could not move the descent from {k} to {k - 1}")
    return T


def row_prefix_counts(R: RectSeq) -> list[int]:
    """``a_0 = 0, a_1, ..., a_{r'}``: cells in rows ``<= i`` across ``R``."""
    r_max = max(r for r, _ in R.rects)
    return [sum(s * min(r, i) for r, s in R.rects) for i in range(r_max + 1)]


class AlreadyCombed(Exception):
    """``rcomb`` was asked to act on ``row(R)`` itself."""


def rcomb(T: TensorElement, R: RectSeq | None = None) -> TensorElement:
    """One iteration of row combing, ending with one inverse promotion."""
    R = R or T.rectseq
    if T == row_filling(R):
        raise AlreadyCombed(str(T))
    a = row_prefix_counts(R)
    D = descent_set(T)
    rest = sorted(D - set(a))
    if not rest:
        raise VerificationError(f"{T} has no descent off the row boundaries but is not row(R)")
    j = rest[0]
    i = max(k for k in range(len(a)) if a[k] < j)
    T = pcomb(T, a[i] + 1, j)
    for ell in range(i - 1, -1, -1):
        T = pcomb(T, a[ell] + 1, a[ell + 1])
    return T.with_word(promote_inverse_word(R.rects, T.word, R.n))


def comb_to_row(T: TensorElement, R: RectSeq | None = None, cap: int | None = None) -> tuple[int, list[TensorElement]]:
    """Iterate :func:`rcomb` until ``row(R)``.

    Returns ``(j, log)`` where ``T`` is connected to ``pr^j(row(R))`` and
    ``log`` lists the elements after each iteration.
    """
    R = R or T.rectseq
    target = row_filling(R)
    if cap is None:
        cap = R.n * R.predicted_size()
    steps = []
    while T != target:
        if len(steps) >= cap:
            raise VerificationError(f"row combing did not terminate in {cap} iterations")
        T = rcomb(T, R)
        steps.append(T)
    return len(steps) % R.n, steps
