"""Exact computation in free metabelian groups through the Magnus representation."""

from .laurent_ring import (
    INFINITY,
    LaurentPoly,
    LaurentRing,
    RankMismatchError,
    divides_one_minus,
    parse_poly,
    substitute_one,
    to_text,
    unit_monomial_order,
    vanishing_order_at_ones,
)
from .magnus import (
    GroupWord,
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
from .ia_endo import (
    Certificate,
    IAEndomorphism,
    LinearForm,
    NotIAError,
    alpha_n,
    alpha_n_inverse,
    apply,
    apply_bar,
    beta1,
    beta2,
    certify_no_fixed_points,
    compose,
    from_images,
    identity_endo,
    inner,
)

__version__ = "0.1.0"
