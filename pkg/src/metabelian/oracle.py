"""Brute-force search for fixed points of an IA-endomorphism among short words.

Words are enumerated length-lexicographically (letter order g1 < g1^-1 < g2 < ...)
and deduplicated by the canonical Magnus form, so each element of M_n is tested
once, through its first representative.  The work splits into one subtree per
first letter; subtree results merge by set union and minimum, which keeps the
report independent of the number of workers.
"""

from __future__ import annotations

import json
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator

from .ia_endo import IAEndomorphism, apply, apply_bar
from .magnus import GroupWord, MagnusElement, letter_rank, phi

# evaluation prime for the cheap non-fixedness filter
_PRIME = (1 << 61) - 1
_LAW_SAMPLE_EVERY = 100
WORKERS_ENV = "METABELIAN_WORKERS"


def letters_in_order(n: int) -> list[int]:
    return sorted((x for i in range(1, n + 1) for x in (i, -i)), key=letter_rank)


def enumerate_reduced_words(n: int, max_len: int) -> Iterator[GroupWord]:
    """All freely reduced words of length <= max_len, length-lexicographically."""
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    alphabet = letters_in_order(n)
    level: list[tuple[int, ...]] = [()]
    yield GroupWord(n)
    for _ in range(max_len):
        level = [w + (x,) for w in level for x in alphabet if not w or w[-1] != -x]
        for w in level:
            yield GroupWord(n, w)


def count_reduced_words(n: int, max_len: int) -> int:
    return 1 + sum(2 * n * (2 * n - 1) ** (k - 1) for k in range(1, max_len + 1))


@dataclass
class SearchReport:
    n: int
    max_len: int
    words_enumerated: int = 0
    distinct_elements: int = 0
    fixed_points_found: list[GroupWord] = field(default_factory=list)
    law_checks: int = 0
    law_violations: list[GroupWord] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "max_len": self.max_len,
            "words_enumerated": self.words_enumerated,
            "distinct_elements": self.distinct_elements,
            "fixed_points_found": [str(w) for w in self.fixed_points_found],
            "law_checks": self.law_checks,
            "law_violations": [str(w) for w in self.law_violations],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def element_key(m: MagnusElement) -> tuple:
    """Hashable canonical form of a Magnus element."""
    return (m.S,) + tuple(tuple(sorted(g._terms.items())) for g in m.gammas)


@dataclass
class _Partial:
    words: int
    keys: set
    fixed: dict  # key -> letters of the first representative
    law_checks: int
    law_violations: list


def _eval_point(n: int) -> tuple[list[int], list[int]]:
    rng = random.Random(0x5EED + n)
    point = [rng.randrange(2, _PRIME - 1) for _ in range(n)]
    return point, [pow(x, -1, _PRIME) for x in point]


def _search_subtree(e: IAEndomorphism, first: int, max_len: int) -> _Partial:
    n = e.n
    P = _PRIME
    point, inv_point = _eval_point(n)
    # values of (bar_matrix - I) at the point; fixed => gamma(pt) . N(pt) = 0
    N = [[(e.bar_matrix[i][j].evaluate(point, P) - (i == j)) % P for j in range(n)]
         for i in range(n)]
    alphabet = letters_in_order(n)
    identity = MagnusElement.identity(n)

    keys: set = set()
    fixed: dict = {}
    law_checks = 0
    law_violations: list = []
    words = 0

    def visit(letters, m, vals):
        nonlocal words, law_checks
        words += 1
        if words % _LAW_SAMPLE_EVERY == 1:
            law_checks += 1
            w = GroupWord(n, letters)
            if phi(apply(e, w)) != apply_bar(e, m):
                law_violations.append(letters)
        key = element_key(m)
        if key in keys:
            return
        keys.add(key)
        if m.is_identity():
            return
        for j in range(n):
            if sum(vals[i] * N[i][j] for i in range(n)) % P:
                return
        if apply_bar(e, m) == m:
            fixed.setdefault(key, letters)

    def step(letters, m, vals, sval, x):
        k = abs(x) - 1
        vals = list(vals)
        if x > 0:
            vals[k] = (vals[k] + sval) % P
            sval = sval * point[k] % P
        else:
            sval = sval * inv_point[k] % P
            vals[k] = (vals[k] - sval) % P
        return letters + (x,), m.append_letter(x), vals, sval

    frontier = [step((), identity, [0] * n, 1, first)]
    for depth in range(1, max_len + 1):
        for letters, m, vals, _ in frontier:
            visit(letters, m, vals)
        if depth == max_len:
            break
        frontier = [step(letters, m, vals, sval, x)
                    for letters, m, vals, sval in frontier
                    for x in alphabet if x != -letters[-1]]
    return _Partial(words, keys, fixed, law_checks, law_violations)


def default_workers() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def search_fixed_points(e: IAEndomorphism, max_len: int,
                        workers: int | None = None) -> SearchReport:
    """Test every element represented by a word of length <= max_len for e(g) = g."""
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    n = e.n
    identity = MagnusElement.identity(n)
    report = SearchReport(n=n, max_len=max_len, words_enumerated=1)
    keys = {element_key(identity)}
    fixed: dict = {}
    if max_len > 0:
        firsts = letters_in_order(n)
        workers = default_workers() if workers is None else workers
        if workers > 1 and max_len >= 5:
            with ProcessPoolExecutor(max_workers=min(workers, len(firsts))) as pool:
                parts = list(pool.map(_search_subtree, [e] * len(firsts), firsts,
                                      [max_len] * len(firsts)))
        else:
            parts = [_search_subtree(e, x, max_len) for x in firsts]
        for part in parts:
            report.words_enumerated += part.words
            keys |= part.keys
            report.law_checks += part.law_checks
            report.law_violations.extend(GroupWord(n, w) for w in part.law_violations)
            for key, letters in part.fixed.items():
                w = GroupWord(n, letters)
                if key not in fixed or w.sort_key() < fixed[key].sort_key():
                    fixed[key] = w
    report.distinct_elements = len(keys)
    report.fixed_points_found = sorted(fixed.values(), key=GroupWord.sort_key)
    report.law_violations.sort(key=GroupWord.sort_key)
    return report
