"""Words in the free group F_n and the Magnus representation of M_n = F_n/F_n''.

phi sends g_i to the matrix (s_i, t_i; 0, 1).  Every image has the shape
(S, sum gamma_i t_i; 0, 1) with S a unit monomial, so an element is stored
as the exponent vector of S together with the gamma coefficients.  By
faithfulness of phi this pair is a canonical form for elements of M_n.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .laurent_ring import LaurentPoly, Monomial, RankMismatchError, parse_poly, to_text


class WordSyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for x in letters:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


class GroupWord:
    """A freely reduced word; letters are +i for g_i and -i for g_i^-1."""

    __slots__ = ("n", "letters")

    def __init__(self, n: int, letters: Iterable[int] = ()):
        letters = tuple(letters)
        for x in letters:
            if x == 0 or abs(x) > n:
                raise IndexError(f"generator index {abs(x)} out of range 1..{n}")
        self.n = n
        self.letters = free_reduce(letters)

    @classmethod
    def generator(cls, n: int, i: int) -> "GroupWord":
        return cls(n, (i,))

    def __len__(self) -> int:
        return len(self.letters)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        if other.n != self.n:
            raise RankMismatchError(f"rank mismatch: {self.n} vs {other.n}")
        return GroupWord(self.n, self.letters + other.letters)

    def inverse(self) -> "GroupWord":
        return GroupWord(self.n, tuple(-x for x in reversed(self.letters)))

    def __invert__(self) -> "GroupWord":
        return self.inverse()

    def __eq__(self, other) -> bool:
        return (isinstance(other, GroupWord) and self.n == other.n
                and self.letters == other.letters)

    def __hash__(self) -> int:
        return hash((self.n, self.letters))

    def sort_key(self) -> tuple:
        """Length-lexicographic key with letter order g1 < g1^-1 < g2 < ..."""
        return (len(self.letters), tuple(letter_rank(x) for x in self.letters))

    def __str__(self) -> str:
        return " ".join(f"g{x}" if x > 0 else f"g{-x}^-1" for x in self.letters)

    def __repr__(self) -> str:
        return f"GroupWord({self.n}, {str(self)!r})"


def letter_rank(x: int) -> int:
    return 2 * (abs(x) - 1) + (x < 0)


def commutator(u: GroupWord, v: GroupWord) -> GroupWord:
    """[u, v] = u v u^-1 v^-1."""
    return u * v * u.inverse() * v.inverse()


class _Parser:
    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.pos = 0

    def error(self, message: str, pos: int | None = None):
        raise WordSyntaxError(message, self.pos if pos is None else pos, self.text)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def word(self) -> list[int]:
        letters: list[int] = []
        while True:
            c = self.peek()
            if c == "g":
                letters.append(self.letter())
            elif c == "[":
                letters.extend(self.bracket())
            else:
                return letters

    def letter(self) -> int:
        start = self.pos
        self.pos += 1
        digits_start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits_start:
            self.error("expected generator index after 'g'")
        k = int(self.text[digits_start:self.pos])
        if not 1 <= k <= self.n:
            self.error(f"generator index {k} out of range 1..{self.n}", start)
        if self.text.startswith("^-1", self.pos):
            self.pos += 3
            return -k
        if self.pos < len(self.text) and self.text[self.pos] == "^":
            self.error("only the exponent ^-1 is allowed")
        return k

    def bracket(self) -> list[int]:
        self.pos += 1  # '['
        u = self.word()
        if self.peek() != ",":
            self.error("expected ','")
        self.pos += 1
        v = self.word()
        if self.peek() != "]":
            self.error("expected ']'")
        self.pos += 1
        inv_u = [-x for x in reversed(u)]
        inv_v = [-x for x in reversed(v)]
        return u + v + inv_u + inv_v


def parse_word(text: str, n: int) -> GroupWord:
    """Parse ``g1 g2^-1 [g1,g2]`` style text into a reduced word of rank n."""
    p = _Parser(text, n)
    letters = p.word()
    if p.peek():
        p.error(f"unexpected character {p.peek()!r}")
    return GroupWord(n, letters)


@dataclass(frozen=True)
class MagnusElement:
    """The matrix (s^S, sum gamma_i t_i; 0, 1)."""

    S: Monomial
    gammas: tuple[LaurentPoly, ...]

    @property
    def n(self) -> int:
        return len(self.S)

    @classmethod
    def identity(cls, n: int) -> "MagnusElement":
        return cls((0,) * n, (LaurentPoly.zero(n),) * n)

    @classmethod
    def generator(cls, n: int, i: int) -> "MagnusElement":
        S = tuple(1 if k == i - 1 else 0 for k in range(n))
        gammas = tuple(LaurentPoly.one(n) if k == i - 1 else LaurentPoly.zero(n)
                       for k in range(n))
        return cls(S, gammas)

    def is_identity(self) -> bool:
        return not any(self.S) and not any(self.gammas)

    def __mul__(self, other: "MagnusElement") -> "MagnusElement":
        return mag_mul(self, other)

    def inverse(self) -> "MagnusElement":
        return mag_inv(self)

    def append_letter(self, x: int) -> "MagnusElement":
        """self * phi(g_x) (or phi(g_|x|)^-1 for x < 0) without a full product."""
        k = abs(x) - 1
        S = list(self.S)
        if x > 0:
            delta = LaurentPoly.monomial(self.S)
            S[k] += 1
        else:
            S[k] -= 1
            delta = LaurentPoly.monomial(S, -1)
        gammas = list(self.gammas)
        gammas[k] = gammas[k] + delta
        return MagnusElement(tuple(S), tuple(gammas))

    def key(self) -> str:
        """Canonical serialization, used as a deduplication key."""
        return json.dumps(self.to_json(), separators=(",", ":"))

    def to_json(self) -> dict:
        return {"S": list(self.S), "gamma": [to_text(g) for g in self.gammas]}

    @classmethod
    def from_json(cls, data: dict) -> "MagnusElement":
        S = tuple(int(x) for x in data["S"])
        gammas = tuple(parse_poly(g, len(S)) for g in data["gamma"])
        if len(gammas) != len(S):
            raise ValueError("S and gamma have different lengths")
        return cls(S, gammas)

    def __str__(self) -> str:
        return json.dumps(self.to_json())


def _check_same_rank(a: MagnusElement, b: MagnusElement) -> None:
    if a.n != b.n:
        raise RankMismatchError(f"rank mismatch: {a.n} vs {b.n}")


def mag_mul(a: MagnusElement, b: MagnusElement) -> MagnusElement:
    # (Sa, ga)(Sb, gb) = (Sa Sb, Sa gb + ga)
    _check_same_rank(a, b)
    S = tuple(x + y for x, y in zip(a.S, b.S))
    gammas = tuple(gb.shift(a.S) + ga for ga, gb in zip(a.gammas, b.gammas))
    return MagnusElement(S, gammas)


def mag_inv(a: MagnusElement) -> MagnusElement:
    S = tuple(-x for x in a.S)
    return MagnusElement(S, tuple(-g.shift(S) for g in a.gammas))


def phi(w: GroupWord) -> MagnusElement:
    m = MagnusElement.identity(w.n)
    for x in w.letters:
        m = m.append_letter(x)
    return m


def in_image(S: Sequence[int], gammas: Sequence[LaurentPoly]) -> bool:
    """True iff sum gamma_i (1 - s_i) == 1 - s^S."""
    n = len(S)
    if len(gammas) != n:
        raise RankMismatchError(f"{len(gammas)} gammas for rank {n}")
    lhs = LaurentPoly.zero(n)
    for i, g in enumerate(gammas, start=1):
        lhs = lhs + g - g * LaurentPoly.gen(n, i)
    return lhs == 1 - LaurentPoly.monomial(tuple(S))


def abelianization(w: GroupWord) -> tuple[int, ...]:
    v = [0] * w.n
    for x in w.letters:
        v[abs(x) - 1] += 1 if x > 0 else -1
    return tuple(v)


def words_equal_in_M(u: GroupWord, v: GroupWord) -> bool:
    if u.n != v.n:
        raise RankMismatchError(f"rank mismatch: {u.n} vs {v.n}")
    return u.letters == v.letters or phi(u) == phi(v)
