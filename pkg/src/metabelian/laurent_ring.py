"""Sparse Laurent polynomials over the integers in commuting variables s1..sn.

A polynomial is a map from exponent vectors (tuples of ints, negative entries
allowed) to nonzero Python ints.  Values are immutable; every operation
returns a fresh polynomial in canonical form, so ``==`` is term-map equality.
"""

from __future__ import annotations

import math
import re
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping, Union

Monomial = tuple[int, ...]
INFINITY = math.inf


class RankMismatchError(ValueError):
    """Operands live in Laurent rings of different rank."""


def _check_index(n: int, i: int) -> None:
    if not 1 <= i <= n:
        raise IndexError(f"generator index {i} out of range 1..{n}")


class LaurentPoly:
    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Monomial, int] | None = None):
        if n < 0:
            raise ValueError("rank must be nonnegative")
        self.n = n
        clean: dict[Monomial, int] = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != n:
                    raise RankMismatchError(
                        f"exponent vector {exps} does not have length {n}")
                if c:
                    clean[exps] = int(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: dict[Monomial, int]) -> "LaurentPoly":
        # trusted constructor: caller guarantees canonical terms
        p = object.__new__(cls)
        p.n = n
        p._terms = terms
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "LaurentPoly":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, c: int) -> "LaurentPoly":
        return cls._raw(n, {(0,) * n: int(c)} if c else {})

    @classmethod
    def one(cls, n: int) -> "LaurentPoly":
        return cls.constant(n, 1)

    @classmethod
    def monomial(cls, exps: Iterable[int], coeff: int = 1) -> "LaurentPoly":
        exps = tuple(exps)
        return cls._raw(len(exps), {exps: int(coeff)} if coeff else {})

    @classmethod
    def gen(cls, n: int, i: int) -> "LaurentPoly":
        """The variable s_i (1-based)."""
        _check_index(n, i)
        e = [0] * n
        e[i - 1] = 1
        return cls._raw(n, {tuple(e): 1})

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self) -> list[tuple[Monomial, int]]:
        """Terms in the fixed serialization order (lex on exponent vectors)."""
        return sorted(self._terms.items())

    def __iter__(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def constant_term(self) -> int:
        return self._terms.get((0,) * self.n, 0)

    def min_exponents(self) -> Monomial:
        """Componentwise minimum exponent vector (zero vector for p = 0)."""
        if not self._terms:
            return (0,) * self.n
        return tuple(min(col) for col in zip(*self._terms))

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            if other.n != self.n:
                raise RankMismatchError(
                    f"rank mismatch: {self.n} vs {other.n}")
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(self.n, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Monomial, int] = {}
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return LaurentPoly._raw(self.n, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials are invertible")
            ((e, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials are invertible")
            return LaurentPoly._raw(
                self.n, {tuple(-x * -k for x in e): c ** (-k)})
        result = LaurentPoly.one(self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, exps: Monomial) -> "LaurentPoly":
        """Multiply by the unit monomial s^exps."""
        if len(exps) != self.n:
            raise RankMismatchError(f"shift vector has length {len(exps)}")
        return LaurentPoly._raw(self.n, {
            tuple(x + y for x, y in zip(e, exps)): c
            for e, c in self._terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, int):
            return self._terms == LaurentPoly.constant(self.n, other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def evaluate(self, point: Iterable[int], modulus: int | None = None) -> int:
        """Evaluate at an integer point; with a modulus, exponents may be negative."""
        point = tuple(point)
        total = 0
        for e, c in self._terms.items():
            term = c
            for x, k in zip(point, e):
                if k:
                    term *= pow(x, k, modulus) if modulus else x ** k
            total += term
        if modulus:
            return total % modulus
        return total

    # -- text form --------------------------------------------------------

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.n}, {to_text(self)!r})"


def _monomial_text(e: Monomial) -> str:
    parts = []
    for i, k in enumerate(e, start=1):
        if k == 1:
            parts.append(f"s{i}")
        elif k:
            parts.append(f"s{i}^{k}")
    return "*".join(parts)


def to_text(p: LaurentPoly) -> str:
    """Canonical text: ``1 - s1*s2^-1``.  Terms in lex order of exponents."""
    if not p._terms:
        return "0"
    out = []
    for idx, (e, c) in enumerate(p.items()):
        mono = _monomial_text(e)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if idx == 0:
            out.append(body if c > 0 else "-" + body)
        else:
            out.append((" + " if c > 0 else " - ") + body)
    return "".join(out)


_TERM_RE = re.compile(r"\s*([+-])?\s*(\d+)?\s*(\*)?\s*((?:s\d+(?:\^-?\d+)?\s*\*?\s*)*)")
_FACTOR_RE = re.compile(r"s(\d+)(?:\^(-?\d+))?")


def parse_poly(text: str, n: int) -> LaurentPoly:
    """Inverse of :func:`to_text` (accepts any term order and spacing)."""
    s = text.strip()
    if s == "0":
        return LaurentPoly.zero(n)
    terms: dict[Monomial, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at position {pos}: {text!r}")
        sign, digits, _, factors = m.groups()
        if sign is None and not first:
            raise ValueError(f"missing operator at position {pos}: {text!r}")
        if not digits and not factors.strip():
            raise ValueError(f"empty term at position {pos}: {text!r}")
        coeff = int(digits) if digits else 1
        if sign == "-":
            coeff = -coeff
        e = [0] * n
        for fm in _FACTOR_RE.finditer(factors):
            i = int(fm.group(1))
            _check_index(n, i)
            e[i - 1] += int(fm.group(2) or 1)
        key = tuple(e)
        terms[key] = terms.get(key, 0) + coeff
        pos = m.end()
        first = False
    return LaurentPoly(n, terms)


class LaurentRing:
    """Z[s1^±1, ..., sn^±1] with its rank fixed at construction."""

    def __init__(self, n: int):
        self.n = n
        self.gens = tuple(LaurentPoly.gen(n, i) for i in range(1, n + 1))

    def s(self, i: int) -> LaurentPoly:
        _check_index(self.n, i)
        return self.gens[i - 1]

    def zero(self) -> LaurentPoly:
        return LaurentPoly.zero(self.n)

    def one(self) -> LaurentPoly:
        return LaurentPoly.one(self.n)

    def monomial(self, exps: Iterable[int], coeff: int = 1) -> LaurentPoly:
        exps = tuple(exps)
        if len(exps) != self.n:
            raise RankMismatchError(f"expected {self.n} exponents, got {len(exps)}")
        return LaurentPoly.monomial(exps, coeff)

    def __call__(self, value: Union[int, str, LaurentPoly]) -> LaurentPoly:
        if isinstance(value, LaurentPoly):
            if value.n != self.n:
                raise RankMismatchError(f"rank mismatch: {self.n} vs {value.n}")
            return value
        if isinstance(value, str):
            return parse_poly(value, self.n)
        return LaurentPoly.constant(self.n, value)

    def __repr__(self) -> str:
        return f"LaurentRing({self.n})"


# -- queries used by the fixed-point certificate -------------------------------

def substitute_one(p: LaurentPoly, i: int) -> LaurentPoly:
    """p with s_i := 1."""
    _check_index(p.n, i)
    k = i - 1
    out: dict[Monomial, int] = {}
    for e, c in p._terms.items():
        e2 = e[:k] + (0,) + e[k + 1:]
        out[e2] = out.get(e2, 0) + c
    return LaurentPoly._raw(p.n, {e: c for e, c in out.items() if c})


def _clear_denominators(p: LaurentPoly) -> tuple[LaurentPoly, Monomial]:
    """Return (m*p, m) with m the smallest monomial making all exponents >= 0."""
    shift = tuple(-min(x, 0) for x in p.min_exponents())
    if any(shift):
        return p.shift(shift), shift
    return p, shift


def divides_one_minus(p: LaurentPoly, i: int) -> LaurentPoly | None:
    """Exact quotient q with p = (1 - s_i) q, or None if 1 - s_i does not divide p."""
    _check_index(p.n, i)
    if substitute_one(p, i):
        return None
    k = i - 1
    cleared, shift = _clear_denominators(p)
    # group by the exponents of the other variables: univariate in s_i
    columns: dict[Monomial, dict[int, int]] = {}
    for e, c in cleared._terms.items():
        rest = e[:k] + e[k + 1:]
        columns.setdefault(rest, {})[e[k]] = c
    quotient: dict[Monomial, int] = {}
    for rest, coeffs in columns.items():
        top = max(coeffs)
        # synthetic division by (s_i - 1), highest degree first
        carry = 0
        for d in range(top, 0, -1):
            carry += coeffs.get(d, 0)
            if carry:
                quotient[rest[:k] + (d - 1,) + rest[k:]] = -carry  # divisor is -(s_i - 1)
        if carry + coeffs.get(0, 0):
            raise AssertionError("nonzero remainder after vanishing check")
    q = LaurentPoly._raw(p.n, quotient)
    return q.shift(tuple(-x for x in shift)) if any(shift) else q


def vanishing_order_at_ones(p: LaurentPoly) -> float | int:
    """Order of vanishing of p at (1, ..., 1); infinity iff p = 0.

    Reads the Taylor coefficients of p(1 + u) degree by degree: the coefficient
    of u^beta is sum c * prod binom(e_k, beta_k) over the (cleared) terms.
    """
    if not p._terms:
        return INFINITY
    cleared, _ = _clear_denominators(p)
    terms = list(cleared._terms.items())
    top = max(sum(e) for e, _ in terms)
    n = p.n
    for order in range(top + 1):
        for combo in combinations_with_replacement(range(n), order):
            beta = [0] * n
            for k in combo:
                beta[k] += 1
            coeff = 0
            for e, c in terms:
                term = c
                for ek, bk in zip(e, beta):
                    if bk:
                        term *= math.comb(ek, bk)
                        if not term:
                            break
                coeff += term
            if coeff:
                return order
    raise AssertionError("nonzero polynomial with no nonzero Taylor coefficient")


def unit_monomial_order(j: Iterable[int]) -> float | int:
    """Vanishing order of 1 - s^j at (1, ..., 1): infinity for j = 0, else 1."""
    return INFINITY if not any(j) else 1


def one_minus(n: int, i: int) -> LaurentPoly:
    """The element 1 - s_i."""
    return 1 - LaurentPoly.gen(n, i)
