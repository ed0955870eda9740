"""The free metabelian Lie algebra ML_n over the integers.

Basis: the generators x_i, and left-normed brackets [x_a, x_b, x_c, ..., x_z]
with a > b <= c <= ... <= z.  Elements of degree >= 2 commute with each other
(the bracket of two of them is zero), and the generators after position 2 of
a left-normed bracket may be permuted freely.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Mapping, Sequence

LieMonomial = tuple[int, ...]


class LieElement:
    """Integer combination of normal-form monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[LieMonomial, int] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def generator(cls, i: int) -> "LieElement":
        return cls({(i,): 1})

    @classmethod
    def from_monomial(cls, indices: Sequence[int], coeff: int = 1) -> "LieElement":
        """The left-normed bracket of the given generators, reduced to normal form."""
        return cls(normalize(tuple(indices))).scale(coeff)

    def __add__(self, other: "LieElement") -> "LieElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return LieElement(out)

    def __neg__(self) -> "LieElement":
        return LieElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def scale(self, k: int) -> "LieElement":
        return LieElement({m: k * c for m, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, LieElement):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degrees(self) -> set[int]:
        return {len(m) for m in self.terms}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{list(m)}" for m, c in sorted(self.terms.items()))


def is_normal(m: LieMonomial) -> bool:
    if len(m) == 1:
        return True
    a, b, tail = m[0], m[1], m[2:]
    return a > b and all(b <= x for x in tail) and list(tail) == sorted(tail)


def normalize(seq: LieMonomial) -> dict[LieMonomial, int]:
    """Normal form of the left-normed bracket [x_seq[0], x_seq[1], ...]."""
    if len(seq) == 1:
        return {seq: 1}
    a, b = seq[0], seq[1]
    if a == b:
        return {}
    sign = 1
    if a < b:
        a, b, sign = b, a, -1
    tail = sorted(seq[2:])
    if not tail or b <= tail[0]:
        return {(a, b, *tail): sign}
    # Jacobi: [a,b,c,T] = [a,c,b,T] - [b,c,a,T]; with c = min(tail) both are normal
    c, rest = tail[0], tail[1:]
    out = {(a, c, *sorted([b, *rest])): sign}
    m2 = (b, c, *sorted([a, *rest]))
    out[m2] = out.get(m2, 0) - sign
    return {m: v for m, v in out.items() if v}


def _bracket_monomials(u: LieMonomial, v: LieMonomial) -> dict[LieMonomial, int]:
    if len(u) >= 2 and len(v) >= 2:
        return {}
    if len(v) == 1:
        return normalize(u + v)
    # u is a generator, v has degree >= 2
    return {m: -c for m, c in normalize(v + u).items()}


def bracket(a: LieElement, b: LieElement) -> LieElement:
    out: dict[LieMonomial, int] = {}
    for u, cu in a.terms.items():
        for v, cv in b.terms.items():
            for m, c in _bracket_monomials(u, v).items():
                out[m] = out.get(m, 0) + cu * cv * c
    return LieElement(out)


def _require_rank(n: int) -> None:
    if n < 3:
        raise ValueError(f"D_n is defined for n >= 3, got n = {n}")


def derivation_on_generator(n: int, i: int) -> LieElement:
    """D(x_i) = [x_i, x_n] for i < n, D(x_n) = [x_1, x_2]."""
    if i < n:
        return LieElement(normalize((i, n)))
    return LieElement(normalize((1, 2)))


def derivation_Dn(n: int, a: LieElement) -> LieElement:
    _require_rank(n)
    gen_images = {i: derivation_on_generator(n, i) for i in range(1, n + 1)}
    cache: dict[LieMonomial, LieElement] = {}

    def on_monomial(m: LieMonomial) -> LieElement:
        if m in cache:
            return cache[m]
        if len(m) == 1:
            res = gen_images[m[0]]
        else:
            # D[w, x_j] = [Dw, x_j] + [w, Dx_j]; prefixes of normal monomials are normal
            prefix, j = m[:-1], m[-1]
            res = (bracket(on_monomial(prefix), LieElement.generator(j))
                   + bracket(LieElement({prefix: 1}), gen_images[j]))
        cache[m] = res
        return res

    out = LieElement()
    for m, c in a.terms.items():
        if max(m) > n:
            raise IndexError(f"generator index {max(m)} out of range 1..{n}")
        out = out + on_monomial(m).scale(c)
    return out


def graded_basis(n: int, d: int) -> list[LieMonomial]:
    if d < 1:
        raise ValueError("degree must be >= 1")
    if d == 1:
        return [(i,) for i in range(1, n + 1)]
    basis = []
    for a in range(1, n + 1):
        for b in range(1, a):
            for tail in combinations_with_replacement(range(b, n + 1), d - 2):
                basis.append((a, b, *tail))
    return sorted(basis)


def derivation_matrix(n: int, d: int) -> list[list[int]]:
    """Rows index graded_basis(n, d+1), columns index graded_basis(n, d)."""
    source = graded_basis(n, d)
    target = {m: r for r, m in enumerate(graded_basis(n, d + 1))}
    mat = [[0] * len(source) for _ in target]
    for col, m in enumerate(source):
        for mono, c in derivation_Dn(n, LieElement({m: 1})).terms.items():
            mat[target[mono]][col] = c
    return mat


def rational_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q by Gaussian elimination on Fractions."""
    mat = [[Fraction(x) for x in row] for row in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(mat)) if mat[r][col]), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        p = mat[rank][col]
        for r in range(rank + 1, len(mat)):
            if mat[r][col]:
                f = mat[r][col] / p
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[rank])]
        rank += 1
        if rank == len(mat):
            break
    return rank


def kernel_trivial_up_to(n: int, max_degree: int) -> tuple[bool, list[dict]]:
    """Check injectivity of D_n on each graded piece of degree 1..max_degree."""
    _require_rank(n)
    if max_degree < 1:
        raise ValueError("max_degree must be >= 1")
    table = []
    for d in range(1, max_degree + 1):
        mat = derivation_matrix(n, d)
        dim_src = len(graded_basis(n, d))
        rank = rational_rank(mat)
        table.append({"degree": d, "dim_source": dim_src, "dim_target": len(mat),
                      "rank": rank, "injective": rank == dim_src})
    return all(row["injective"] for row in table), table


def dimension(n: int, d: int) -> int:
    return len(graded_basis(n, d))

