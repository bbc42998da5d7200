"""Exact symmetric and quasisymmetric function arithmetic.

Power sums with rational coefficients are the working basis: products and
plethysm are plain substitutions there.  Schur functions enter and leave via
Murnaghan-Nakayama characters, monomials via Kostka numbers.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .tableaux import descent_set_syt, partitions, standard_tableaux

Partition = tuple[int, ...]

MAX_DEGREE = 14

BASES = {"p": "p", "powersum": "p", "s": "s", "schur": "s", "m": "m", "monomial": "m"}


class DegreeLimitError(RuntimeError):
    """Basis conversion requested above the configured degree limit."""


class NotSymmetricError(ValueError):
    """A fundamental expansion did not peel into a Schur-positive sum."""


def _check_degree(n: int) -> None:
    if n > MAX_DEGREE:
        raise DegreeLimitError(f"degree {n} exceeds the conversion limit {MAX_DEGREE}")


# -- characters and Kostka numbers -----------------------------------------

@lru_cache(maxsize=None)
def character(lam: Partition, mu: Partition) -> int:
    """``chi^lam(mu)`` by removing border strips of length ``mu[0]``."""
    if sum(lam) != sum(mu):
        raise ValueError("character of partitions of different sizes")
    if not mu:
        return 1
    k, rest = mu[0], mu[1:]
    L = len(lam)
    beta = [lam[i] + L - 1 - i for i in range(L)]
    members = set(beta)
    total = 0
    for b in beta:
        c = b - k
        if c < 0 or c in members:
            continue
        sign = (-1) ** sum(1 for x in beta if c < x < b)
        new_beta = sorted((c if x == b else x for x in beta), reverse=True)
        nu = tuple(x - (L - 1 - i) for i, x in enumerate(new_beta))
        nu = tuple(x for x in nu if x > 0)
        total += sign * character(nu, rest)
    return total


def z_factor(mu: Partition) -> int:
    out = 1
    for part, mult in Counter(mu).items():
        out *= part ** mult * math.factorial(mult)
    return out


@lru_cache(maxsize=None)
def kostka(lam: Partition, mu: Partition) -> int:
    """Number of semistandard tableaux of shape ``lam`` and content ``mu``."""
    if sum(lam) != sum(mu):
        return 0
    if not mu:
        return 1
    k, rest = mu[-1], mu[:-1]
    # strip off a horizontal strip of size k holding the largest letter
    total = 0
    for nu in _horizontal_strip_removals(lam, k):
        total += kostka(nu, rest)
    return total


def _horizontal_strip_removals(lam: Partition, k: int) -> list[Partition]:
    out = []
    L = len(lam)

    def rec(i: int, left: int, acc: list[int]) -> None:
        if i == L:
            if left == 0:
                out.append(tuple(x for x in acc if x > 0))
            return
        floor = lam[i + 1] if i + 1 < L else 0
        for take in range(0, min(left, lam[i] - floor) + 1):
            acc.append(lam[i] - take)
            rec(i + 1, left - take, acc)
            acc.pop()

    rec(0, k, [])
    return out


# -- symmetric functions ---------------------------------------------------

def _partition(key: Iterable[int]) -> Partition:
    return tuple(sorted((int(x) for x in key if x), reverse=True))


@dataclass(frozen=True)
class SymFunc:
    """Homogeneous symmetric function in one of the bases ``p``, ``s``, ``m``."""

    basis: str
    degree: int
    terms: Mapping[Partition, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        basis = BASES.get(self.basis)
        if basis is None:
            raise ValueError(f"unknown basis {self.basis!r}")
        clean = {}
        for lam, c in self.terms.items():
            lam = _partition(lam)
            if sum(lam) != self.degree:
                raise ValueError(f"term {lam} has size {sum(lam)}, expected degree {self.degree}")
            c = Fraction(c)
            if c:
                clean[lam] = clean.get(lam, Fraction(0)) + c
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "terms", {k: v for k, v in sorted(clean.items(), reverse=True) if v})

    @classmethod
    def zero(cls, degree: int, basis: str = "s") -> "SymFunc":
        return cls(basis, degree, {})

    @classmethod
    def one(cls, basis: str = "s") -> "SymFunc":
        return cls(basis, 0, {(): 1})

    @classmethod
    def basis_element(cls, basis: str, *parts: int) -> "SymFunc":
        lam = _partition(parts)
        return cls(basis, sum(lam), {lam: 1})

    def is_zero(self) -> bool:
        return not self.terms

    def to(self, basis: str) -> "SymFunc":
        return convert(self, basis)

    def coefficient(self, *parts: int) -> Fraction:
        return self.terms.get(_partition(parts), Fraction(0))

    def _combine(self, other: "SymFunc", sign: int) -> "SymFunc":
        if self.degree != other.degree:
            if self.is_zero():
                return other if sign > 0 else other.scale(-1)
            if other.is_zero():
                return self
            raise ValueError("adding symmetric functions of different degrees")
        other = convert(other, self.basis)
        terms = dict(self.terms)
        for lam, c in other.terms.items():
            terms[lam] = terms.get(lam, Fraction(0)) + sign * c
        return SymFunc(self.basis, self.degree, terms)

    def __add__(self, other: "SymFunc") -> "SymFunc":
        return self._combine(other, 1)

    def __sub__(self, other: "SymFunc") -> "SymFunc":
        return self._combine(other, -1)

    def __neg__(self) -> "SymFunc":
        return self.scale(-1)

    def scale(self, c) -> "SymFunc":
        c = Fraction(c)
        return SymFunc(self.basis, self.degree, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymFunc):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        if self.degree != other.degree:
            return False
        if self.basis == other.basis:
            return self.terms == other.terms
        return convert(self, "p").terms == convert(other, "p").terms

    def __hash__(self):
        return hash((self.degree, tuple(convert(self, "p").terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for lam, c in self.terms.items():
            name = f"{self.basis}[{','.join(map(str, lam))}]"
            mag = abs(c)
            body = name if mag == 1 else f"{mag}*{name}"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(("+ " if c > 0 else "- ") + body)
        return " ".join(pieces)

    __repr__ = __str__

    def to_json(self) -> dict:
        def num(c: Fraction):
            return c.numerator if c.denominator == 1 else f"{c.numerator}/{c.denominator}"

        return {
            "basis": self.basis,
            "degree": self.degree,
            "terms": {json.dumps(list(lam), separators=(",", ":")): num(c) for lam, c in self.terms.items()},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SymFunc":
        terms = {tuple(json.loads(k)): Fraction(v) for k, v in obj["terms"].items()}
        return cls(obj["basis"], obj["degree"], terms)

    @classmethod
    def parse(cls, text: str) -> "SymFunc":
        """Inverse of ``str``: ``"s[6,2] + 2*s[5,2,1] - 1/2*p[2]"`` (single basis)."""
        text = text.strip()
        pattern = re.compile(r"([+-])?\s*(?:(\d+(?:/\d+)?)\*)?([psm])\[([\d,]*)\]")
        pos, terms, basis, degree = 0, {}, None, None
        while pos < len(text):
            m = pattern.match(text, pos)
            if not m:
                raise ValueError(f"cannot parse {text[pos:]!r}")
            sign, coeff, b, parts = m.groups()
            lam = _partition(int(x) for x in parts.split(",") if x)
            if basis is not None and b != basis:
                raise ValueError("mixed bases in one expression")
            basis, degree = b, sum(lam)
            c = Fraction(coeff or 1) * (-1 if sign == "-" else 1)
            terms[lam] = terms.get(lam, Fraction(0)) + c
            pos = m.end()
            while pos < len(text) and text[pos] == " ":
                pos += 1
        if basis is None:
            raise ValueError("empty expression")
        return cls(basis, degree, terms)


def s(*parts: int) -> SymFunc:
    return SymFunc.basis_element("s", *parts)


def p(*parts: int) -> SymFunc:
    return SymFunc.basis_element("p", *parts)


def m(*parts: int) -> SymFunc:
    return SymFunc.basis_element("m", *parts)


# -- conversions -----------------------------------------------------------

def _s_to_p(f: SymFunc) -> dict[Partition, Fraction]:
    out: dict[Partition, Fraction] = {}
    for lam, c in f.terms.items():
        for mu in partitions(f.degree):
            chi = character(lam, mu)
            if chi:
                out[mu] = out.get(mu, Fraction(0)) + c * Fraction(chi, z_factor(mu))
    return out


def _p_to_s(f: SymFunc) -> dict[Partition, Fraction]:
    out: dict[Partition, Fraction] = {}
    for mu, c in f.terms.items():
        for lam in partitions(f.degree):
            chi = character(lam, mu)
            if chi:
                out[lam] = out.get(lam, Fraction(0)) + c * chi
    return out


def _s_to_m(f: SymFunc) -> dict[Partition, Fraction]:
    out: dict[Partition, Fraction] = {}
    for lam, c in f.terms.items():
        for mu in partitions(f.degree):
            K = kostka(lam, mu)
            if K:
                out[mu] = out.get(mu, Fraction(0)) + c * K
    return out


def _m_to_s(f: SymFunc) -> dict[Partition, Fraction]:
    # K is unitriangular for dominance, hence for reverse lex order
    remaining = dict(f.terms)
    out: dict[Partition, Fraction] = {}
    for lam in partitions(f.degree):
        c = remaining.get(lam, Fraction(0))
        if not c:
            continue
        out[lam] = c
        for mu in partitions(f.degree):
            K = kostka(lam, mu)
            if K:
                remaining[mu] = remaining.get(mu, Fraction(0)) - c * K
    return out


def convert(f: SymFunc, basis: str) -> SymFunc:
    """Exact change of basis between ``p``, ``s`` and ``m``."""
    target = BASES.get(basis)
    if target is None:
        raise ValueError(f"unknown basis {basis!r}")
    if f.basis == target:
        return f
    _check_degree(f.degree)
    if f.basis == "p":
        via = SymFunc("s", f.degree, _p_to_s(f))
        return via if target == "s" else SymFunc("m", f.degree, _s_to_m(via))
    if f.basis == "m":
        via = SymFunc("s", f.degree, _m_to_s(f))
        return via if target == "s" else SymFunc("p", f.degree, _s_to_p(via))
    if target == "p":
        return SymFunc("p", f.degree, _s_to_p(f))
    return SymFunc("m", f.degree, _s_to_m(f))


# -- products and plethysm -------------------------------------------------

def _p_product(a: Mapping[Partition, Fraction], b: Mapping[Partition, Fraction]) -> dict[Partition, Fraction]:
    out: dict[Partition, Fraction] = {}
    for la, ca in a.items():
        for lb, cb in b.items():
            key = _partition(la + lb)
            out[key] = out.get(key, Fraction(0)) + ca * cb
    return out


def multiply(f: SymFunc, g: SymFunc, basis: str | None = None) -> SymFunc:
    """Product, computed in power sums and returned in ``basis`` (default ``f``'s)."""
    fp, gp = convert(f, "p"), convert(g, "p")
    out = SymFunc("p", f.degree + g.degree, _p_product(fp.terms, gp.terms))
    return convert(out, basis or f.basis)


def product(factors: Sequence[SymFunc], basis: str = "s") -> SymFunc:
    out = SymFunc.one("p")
    for f in factors:
        out = multiply(out, f, "p")
    return convert(out, basis)


def _adams(fp: SymFunc, d: int) -> dict[Partition, Fraction]:
    """``p_d[f]`` for ``f`` in power sums: every ``p_m`` becomes ``p_{dm}``."""
    return {tuple(d * x for x in lam): c for lam, c in fp.terms.items()}


def plethysm(g: SymFunc, f: SymFunc, basis: str = "s") -> SymFunc:
    """``g[f]``: expand ``g`` in power sums and substitute ``p_d -> p_d[f]``."""
    gp, fp = convert(g, "p"), convert(f, "p")
    cache: dict[int, dict[Partition, Fraction]] = {}
    total: dict[Partition, Fraction] = {}
    for mu, c in gp.terms.items():
        acc: dict[Partition, Fraction] = {(): Fraction(1)}
        for d in mu:
            if d not in cache:
                cache[d] = _adams(fp, d)
            acc = _p_product(acc, cache[d])
        for lam, x in acc.items():
            total[lam] = total.get(lam, Fraction(0)) + c * x
    out = SymFunc("p", g.degree * f.degree, total)
    return convert(out, basis)


# -- cyclic characters -----------------------------------------------------

def _mobius(n: int) -> int:
    out, k = 1, 2
    while k * k <= n:
        if n % k == 0:
            n //= k
            if n % k == 0:
                return 0
            out = -out
        k += 1
    return -out if n > 1 else out


def _phi(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def ramanujan_sum(d: int, i: int) -> int:
    """Sum of ``zeta^i`` over primitive ``d``-th roots of unity."""
    g = math.gcd(i, d)
    return _mobius(d // g) * _phi(d) // _phi(d // g)


def cyclic_character(k: int, i: int, basis: str = "s") -> SymFunc:
    """``l_k^{(i)} = (1/k) sum_{d | k} c_d(i) p_d^{k/d}``; ``i`` is read mod ``k``."""
    if k < 1:
        raise ValueError("k must be positive")
    i %= k
    terms = {}
    for d in range(1, k + 1):
        if k % d == 0:
            terms[(d,) * (k // d)] = Fraction(ramanujan_sum(d, i), k)
    return convert(SymFunc("p", k, terms), basis)


def plethysm_prediction(shapes: Sequence[tuple[int, int]], d: int, i: int) -> SymFunc:
    """``l_d^{(i)}[prod_R s_R^{m_R/d}]`` for a rectangle sequence with gcd ``d``."""
    mult = Counter(shapes)
    inner = [s(*((cols,) * rows)) for (rows, cols), k in sorted(mult.items()) for _ in range(k // d)]
    return plethysm(cyclic_character(d, i), product(inner))


# -- quasisymmetric functions ----------------------------------------------

@dataclass(frozen=True)
class QSymFunc:
    """Integer combination of fundamental quasisymmetric functions ``F_A``, ``A`` a subset of ``[n-1]``."""

    n: int
    terms: Mapping[frozenset[int], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for A, c in self.terms.items():
            A = frozenset(A)
            if any(not 1 <= a < self.n for a in A):
                raise ValueError(f"subset {sorted(A)} not inside [1, {self.n - 1}]")
            if c:
                clean[A] = clean.get(A, 0) + c
        object.__setattr__(self, "terms", {A: c for A, c in clean.items() if c})

    def __add__(self, other: "QSymFunc") -> "QSymFunc":
        terms = dict(self.terms)
        for A, c in other.terms.items():
            terms[A] = terms.get(A, 0) + c
        return QSymFunc(max(self.n, other.n), terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda x: (-x[1], sorted(x[0])))
        return " + ".join(
            (f"{c}*" if c != 1 else "") + "F{" + ",".join(map(str, sorted(A))) + "}" for A, c in items
        )


def fundamental_sum(descents: Iterable[Iterable[int]], n: int) -> QSymFunc:
    """Sum of ``F_A`` over the given subsets; the letter ``n`` is dropped."""
    counts = Counter(frozenset(a for a in A if a != n) for A in descents)
    return QSymFunc(n, dict(counts))


def partial_sums(lam: Partition) -> frozenset[int]:
    out, acc = set(), 0
    for part in lam[:-1]:
        acc += part
        out.add(acc)
    return frozenset(out)


@lru_cache(maxsize=None)
def schur_fundamental(lam: Partition) -> tuple[tuple[frozenset[int], int], ...]:
    """``s_lam`` as a sum of ``F_{Des(T)}`` over standard tableaux of shape ``lam``."""
    return tuple(Counter(descent_set_syt(T) for T in standard_tableaux(lam)).items())


def f_to_schur(q: QSymFunc) -> SymFunc:
    """Peel Schur functions off a fundamental expansion, largest partition first."""
    n = q.n
    remaining = dict(q.terms)
    out = {}
    for lam in partitions(n):
        c = remaining.get(partial_sums(lam), 0)
        if c == 0:
            continue
        if c < 0:
            raise NotSymmetricError(f"negative coefficient {c} for s{list(lam)}")
        out[lam] = c
        for A, mult in schur_fundamental(lam):
            remaining[A] = remaining.get(A, 0) - c * mult
    leftover = {A: c for A, c in remaining.items() if c}
    if leftover:
        sample = sorted((sorted(A), c) for A, c in leftover.items())[:5]
        raise NotSymmetricError(f"nonzero remainder after peeling: {sample}")
    return SymFunc("s", n, out)


def f_to_monomial(q: QSymFunc) -> SymFunc:
    """``[x^lam] F_A = 1`` exactly when ``A`` is contained in the partial sums of ``lam``."""
    out = {}
    for lam in partitions(q.n):
        S = partial_sums(lam)
        c = sum(coef for A, coef in q.terms.items() if A <= S)
        if c:
            out[lam] = c
    return SymFunc("m", q.n, out)


def component_character(G, component: int) -> SymFunc:
    """Schur expansion of the fundamental sum over one component of a KR DEG."""
    verts = G.components[component]
    return f_to_schur(fundamental_sum((G.descents[v] for v in verts), G.n))


def graph_character(G) -> SymFunc:
    return f_to_schur(fundamental_sum(G.descents, G.n))
