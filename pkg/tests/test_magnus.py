import pytest
import sympy as sp
from hypothesis import given

from metabelian import (
    GroupWord,
    LaurentRing,
    MagnusElement,
    WordSyntaxError,
    abelianization,
    commutator,
    in_image,
    mag_inv,
    mag_mul,
    parse_word,
    phi,
    words_equal_in_M,
)
from metabelian.laurent_ring import RankMismatchError

from conftest import random_word, words

R3 = LaurentRing(3)
s1, s2, s3 = R3.gens


def sympy_phi(w: GroupWord):
    """Independent oracle: multiply explicit 2x2 sympy matrices."""
    n = w.n
    s = sp.symbols(f"s1:{n + 1}")
    t = sp.symbols(f"t1:{n + 1}")
    m = sp.eye(2)
    for x in w.letters:
        g = sp.Matrix([[s[abs(x) - 1], t[abs(x) - 1]], [0, 1]])
        m = m * (g if x > 0 else g.inv())
    return m.applyfunc(sp.simplify), s, t


def as_sympy(m: MagnusElement):
    n = m.n
    s = sp.symbols(f"s1:{n + 1}")
    t = sp.symbols(f"t1:{n + 1}")

    def poly(p):
        return sum(c * sp.Mul(*[s[k] ** e[k] for k in range(n)]) for e, c in p.items())

    S = sp.Mul(*[s[k] ** m.S[k] for k in range(n)])
    top_right = sum(poly(g) * t[k] for k, g in enumerate(m.gammas))
    return sp.Matrix([[S, top_right], [0, 1]])


# -- parsing -------------------------------------------------------------------------

def test_parse_literal_tokens():
    assert parse_word("g1 g2^-1", 3).letters == (1, -2)


def test_parse_free_reduction():
    assert parse_word("g1 g1^-1", 3).letters == ()


def test_parse_commutator():
    assert parse_word("[g1,g2] g3", 3).letters == (1, 2, -1, -2, 3)


def test_parse_nested_without_spaces():
    w = parse_word("[[g1,g2]g3,g1]g1", 3)
    x = parse_word("g1 g2 g1^-1 g2^-1 g3", 3)
    assert w == commutator(x, GroupWord.generator(3, 1)) * GroupWord.generator(3, 1)


@pytest.mark.parametrize("text, pos", [
    ("g1 g4", 3),
    ("g1 ]", 3),
    ("[g1 g2]", 6),
    ("g", 1),
    ("g1^2", 2),
    ("x1", 0),
])
def test_parse_errors_report_position(text, pos):
    with pytest.raises(WordSyntaxError) as exc:
        parse_word(text, 3)
    assert exc.value.position == pos


def test_word_rejects_bad_index():
    with pytest.raises(IndexError):
        GroupWord(2, (3,))


# -- phi -----------------------------------------------------------------------------

def test_phi_generator():
    m = phi(parse_word("g1", 3))
    assert m.S == (1, 0, 0)
    assert m.gammas == (R3.one(), R3.zero(), R3.zero())


def test_phi_commutator_formula():
    m = phi(parse_word("[g1,g2]", 3))
    assert m.S == (0, 0, 0)
    assert m.gammas == (1 - s2, -(1 - s1), R3.zero())


def test_phi_empty_is_identity():
    assert phi(parse_word("", 3)) == MagnusElement.identity(3)


def test_phi_product_by_hand():
    m = phi(parse_word("g1 g2", 3))
    assert m.S == (1, 1, 0)
    assert m.gammas == (R3.one(), s1, R3.zero())


def test_phi_matches_sympy_matrices(rng):
    for _ in range(40):
        w = random_word(rng, 3, 7)
        expected, _, _ = sympy_phi(w)
        assert sp.simplify(as_sympy(phi(w)) - expected) == sp.zeros(2, 2), str(w)


# -- group operations -------------------------------------------------------------------

def test_mag_mul_identity():
    x = phi(parse_word("[g1,g2] g3", 3))
    assert mag_mul(MagnusElement.identity(3), x) == x
    assert mag_mul(x, MagnusElement.identity(3)) == x


def test_mag_mul_generators():
    assert mag_mul(phi(parse_word("g1", 3)), phi(parse_word("g2", 3))) == phi(parse_word("g1 g2", 3))


def test_mag_inverse():
    x = phi(parse_word("[g1,g2] g3", 3))
    assert mag_mul(x, mag_inv(x)).is_identity()
    assert mag_mul(mag_inv(x), x).is_identity()


def test_mag_inv_generator():
    m = mag_inv(phi(parse_word("g1", 3)))
    assert m.S == (-1, 0, 0)
    assert m.gammas == (-(s1 ** -1), R3.zero(), R3.zero())
    assert mag_inv(MagnusElement.identity(3)).is_identity()


def test_mag_mul_rank_mismatch():
    with pytest.raises(RankMismatchError):
        mag_mul(MagnusElement.identity(3), MagnusElement.identity(4))


@given(words(3))
def test_inverse_is_involution(w):
    m = phi(w)
    assert mag_inv(mag_inv(m)) == m


@given(words(3), words(3))
def test_phi_homomorphism(u, v):
    assert phi(u * v) == mag_mul(phi(u), phi(v))


def test_phi_homomorphism_many(rng):
    for _ in range(500):
        u, v = random_word(rng, 4, 8), random_word(rng, 4, 8)
        assert phi(u * v) == mag_mul(phi(u), phi(v))


@given(words(3))
def test_phi_of_inverse(w):
    assert phi(w.inverse()) == mag_inv(phi(w))


@given(words(3, 6), words(3, 6))
def test_free_reduction_soundness(u, v):
    # inserting a cancelling pair between u and v changes nothing
    raw = u.letters + (2, -2) + v.letters
    assert phi(GroupWord(3, raw)) == phi(u * v)
    padded = MagnusElement.identity(3)
    for x in raw:
        padded = padded.append_letter(x)
    assert padded == phi(u * v)


# -- image condition -----------------------------------------------------------------------

def test_in_image_examples():
    zero = R3.zero()
    assert in_image((0, 0, 0), (zero, zero, zero))
    assert in_image((1, 0, 0), (R3.one(), zero, zero))
    assert not in_image((1, 0, 0), (zero, zero, zero))


@given(words(4, 12))
def test_in_image_holds_for_phi(w):
    m = phi(w)
    assert in_image(m.S, m.gammas)


# -- abelianization and equality in M_n ----------------------------------------------------

def test_abelianization_examples():
    assert abelianization(parse_word("[g1,g2] g3", 3)) == (0, 0, 1)
    assert abelianization(parse_word("g1 g1", 3)) == (2, 0, 0)


@given(words(4))
def test_abelianization_is_S(w):
    assert abelianization(w) == phi(w).S


def test_second_commutator_is_trivial():
    u = parse_word("[[g1,g2],[g1,g3]]", 3)
    assert len(u) > 0
    assert words_equal_in_M(u, GroupWord(3))


def test_noncommuting_generators():
    assert not words_equal_in_M(parse_word("g1 g2", 3), parse_word("g2 g1", 3))
    assert phi(parse_word("g2 g1", 3)).gammas == (s2, R3.one(), R3.zero())


@given(words(3))
def test_equality_reflexive(w):
    assert words_equal_in_M(w, w)


@given(words(3, 4), words(3, 4), words(3, 4), words(3, 4))
def test_metabelian_law(a, b, c, d):
    w = commutator(commutator(a, b), commutator(c, d))
    assert phi(w).is_identity()


def test_first_commutator_is_not_trivial():
    # [g1,g2] is nontrivial in M_n; the representation must see it
    assert not phi(parse_word("[g1,g2]", 3)).is_identity()


def test_json_round_trip(rng):
    for _ in range(20):
        m = phi(random_word(rng, 3, 8))
        assert MagnusElement.from_json(m.to_json()) == m


def test_json_form():
    assert phi(parse_word("[g1,g2]", 3)).to_json() == {
        "S": [0, 0, 0], "gamma": ["1 - s2", "-1 + s1", "0"]}
