"""Acceptance criteria, one test each.  All checks are exact; a PASS/FAIL line per
criterion is printed in the terminal summary (and by running this file directly)."""

import random
import time

import pytest

from metabelian import (
    GroupWord,
    LaurentRing,
    alpha_n,
    alpha_n_inverse,
    apply,
    apply_bar,
    beta1,
    beta2,
    certify_no_fixed_points,
    commutator,
    compose,
    in_image,
    inner,
    parse_word,
    phi,
    words_equal_in_M,
)
from metabelian.ia_endo import alpha_bar_closed_form
from metabelian.metabelian_lie import (
    LieElement,
    bracket,
    derivation_Dn,
    graded_basis,
    kernel_trivial_up_to,
)
from metabelian.oracle import search_fixed_points

from conftest import ACCEPTANCE_RESULTS, random_word

SEED = 1729


def record(k: int, ok: bool, line: str) -> None:
    ACCEPTANCE_RESULTS[k] = (ok, line)
    print(f"[{'PASS' if ok else 'FAIL'}] {k:2d}. {line}")
    assert ok, line


def test_01_commutator_formula():
    ok = True
    t0 = time.perf_counter()
    for n in range(3, 7):
        R = LaurentRing(n)
        m = phi(parse_word("[g1,g2]", n))
        want = [1 - R.s(2), -(1 - R.s(1))] + [R.zero()] * (n - 2)
        ok &= m.S == (0,) * n and list(m.gammas) == want
    dt = time.perf_counter() - t0
    record(1, ok and dt < 1.0,
           f"phi([g1,g2]) = (1, (1-s2)t1 - (1-s1)t2) for n=3..6 ({dt * 1e3:.1f} ms)")


def test_02_alpha_bar_closed_form():
    t0 = time.perf_counter()
    ok = all(alpha_n(n).bar_matrix == alpha_bar_closed_form(n) for n in range(3, 7))
    dt = time.perf_counter() - t0
    record(2, ok and dt < 1.0,
           f"bar matrix of alpha_n from phi equals the closed form, n=3..6 ({dt * 1e3:.1f} ms)")


def test_03_certificate():
    details = []
    ok = True
    for n in range(3, 9):
        t0 = time.perf_counter()
        cert = certify_no_fixed_points(n)
        dt = time.perf_counter() - t0
        ok &= cert.conclusion and len(cert.steps) == 5 and all(s.verified for s in cert.steps)
        ok &= dt < 1.0
        details.append(f"{n}:{dt:.3f}s")
    record(3, ok, "certificate conclusion true, 5/5 steps, n=3..8 (" + ", ".join(details) + ")")


@pytest.mark.slow
def test_04_brute_force_oracle():
    t0 = time.perf_counter()
    r3 = search_fixed_points(alpha_n(3), 8)
    r4 = search_fixed_points(alpha_n(4), 6)
    dt = time.perf_counter() - t0
    ok = (r3.fixed_points_found == [] and r4.fixed_points_found == []
          and r3.law_violations == [] and r4.law_violations == []
          and dt < 600)
    record(4, ok,
           f"no fixed points: n=3 L=8 ({r3.distinct_elements} elements), "
           f"n=4 L=6 ({r4.distinct_elements} elements), {dt:.1f} s")


def _random_endo(rng, n):
    kind = rng.randrange(5)
    if kind == 0:
        return alpha_n(n)
    if kind == 1:
        return beta1(n)
    if kind == 2:
        return beta2(n)
    if kind == 3:
        return inner(random_word(rng, n, 5))
    parts = [rng.choice([alpha_n(n), alpha_n_inverse(n), beta1(n), beta2(n)]),
             inner(random_word(rng, n, 3))]
    rng.shuffle(parts)
    return compose(*parts)


def test_05_representation_law():
    rng = random.Random(SEED)
    endos = {n: [_random_endo(rng, n) for _ in range(25)] for n in (3, 4, 5)}
    count = 0
    ok = True
    for _ in range(600):
        n = rng.choice((3, 4, 5))
        e = rng.choice(endos[n])
        w = random_word(rng, n, 10)
        ok &= phi(apply(e, w)) == apply_bar(e, phi(w))
        count += 1
    record(5, ok, f"phi(e(w)) = bar_e(phi(w)) on {count} random (e, w) pairs")


def test_06_image_condition():
    rng = random.Random(SEED + 6)
    ok = True
    for _ in range(600):
        n = rng.choice((3, 4, 5, 6))
        m = phi(random_word(rng, n, 12))
        ok &= in_image(m.S, m.gammas)
    record(6, ok, "sum gamma_i (1 - s_i) = 1 - S for 600 random words of length <= 12")


def test_07_metabelian_relators():
    rng = random.Random(SEED + 7)
    ok = True
    for _ in range(150):
        n = rng.choice((2, 3, 4))
        a, b, c, d = (random_word(rng, n, 5) for _ in range(4))
        ok &= phi(commutator(commutator(a, b), commutator(c, d))).is_identity()
    record(7, ok, "phi([[a,b],[c,d]]) = 1 for 150 random quadruples")


def test_08_automorphism():
    ok = True
    for n in range(3, 7):
        both = compose(alpha_n_inverse(n), alpha_n(n))
        ok &= all(words_equal_in_M(both.images[i - 1], GroupWord.generator(n, i))
                  for i in range(1, n + 1))
    record(8, ok, "alpha_n^-1 o alpha_n fixes every generator in M_n, n=3..6")


def test_09_inner_fixed_points():
    rng = random.Random(SEED + 9)
    ok = True
    for _ in range(150):
        n = rng.choice((3, 4))
        w = random_word(rng, n, 10)
        ok &= words_equal_in_M(apply(inner(w), w), w)
    record(9, ok, "inner(w) fixes w in M_n for 150 random w")


def test_10_lie_kernel():
    t0 = time.perf_counter()
    ok3, table3 = kernel_trivial_up_to(3, 6)
    ok4, table4 = kernel_trivial_up_to(4, 4)
    dt = time.perf_counter() - t0
    full = all(r["rank"] == r["dim_source"] for r in table3 + table4)
    ranks3 = [r["rank"] for r in table3]
    ranks4 = [r["rank"] for r in table4]
    record(10, ok3 and ok4 and full and dt < 60,
           f"D_n injective: n=3 deg 1..6 ranks {ranks3}, n=4 deg 1..4 ranks {ranks4} ({dt:.2f} s)")


def _rand_lie(rng, n):
    out = LieElement()
    for _ in range(rng.randint(1, 4)):
        m = rng.choice(graded_basis(n, rng.randint(1, 3)))
        out = out + LieElement({m: rng.randint(-4, 4)})
    return out


def test_11_lie_axioms():
    rng = random.Random(SEED + 11)
    ok = True
    trials = 0
    for _ in range(200):
        n = rng.choice((3, 4, 5))
        a, b, c = (_rand_lie(rng, n) for _ in range(3))
        ok &= bracket(a, b) == -bracket(b, a)
        ok &= (bracket(bracket(a, b), c) + bracket(bracket(b, c), a)
               + bracket(bracket(c, a), b)) == 0
        hi = LieElement({rng.choice(graded_basis(n, rng.randint(2, 4))): 1})
        lo = LieElement({rng.choice(graded_basis(n, rng.randint(2, 4))): 1})
        ok &= bracket(hi, lo) == 0
        ok &= derivation_Dn(n, bracket(a, b)) == (bracket(derivation_Dn(n, a), b)
                                                  + bracket(a, derivation_Dn(n, b)))
        trials += 1
    record(11, ok, f"antisymmetry, Jacobi, metabelian law, Leibniz on {trials} random triples")


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
