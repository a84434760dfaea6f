"""Named Boolean functions used as fixtures by the tests and the CLI."""

from __future__ import annotations

from .core import Anf, BoolFun, anf_to_truth_table, parse_anf

# S. Dubuc's degree-6 example of a non-normal function of 8 variables
# (an affine-equivalent 25-monomial form of the 140-monomial original);
# it is weakly normal.
DUBUC_ANF_TEXT = (
    "x2*x3*x4*x5*x7*x8 + x2*x3*x4*x5*x8 + x2*x3*x4*x7*x8 + x2*x3*x4*x6"
    " + x2*x3*x5*x6 + x2*x3*x4*x8 + x2*x4*x6*x8 + x2*x5*x7*x8 + x1*x2*x3"
    " + x3*x4*x5 + x2*x5*x6 + x2*x4*x7 + x3*x4*x7 + x4*x5*x8 + x3*x6*x8"
    " + x3*x7*x8 + x2*x3 + x2*x5 + x3*x5 + x4*x6 + x2*x7 + x3*x8 + x7*x8"
    " + x1 + x2"
)

# 7-variable sextic of valuation 5 whose 6-relative degree is 5.
SEXTIC_M7_ANF_TEXT = (
    "x1*x2*x3*x4*x5*x6 + x2*x3*x4*x5*x7 + x1*x3*x4*x6*x7 + x1*x2*x5*x6*x7"
)


def dubuc_function() -> BoolFun:
    """Dubuc's weakly normal degree-6 function of 8 variables."""
    return anf_to_truth_table(parse_anf(DUBUC_ANF_TEXT, 8))


def dubuc_anf() -> Anf:
    return parse_anf(DUBUC_ANF_TEXT, 8)


def sextic_m7() -> BoolFun:
    """The valuation-5 sextic of 7 variables with 6-relative degree 5."""
    return anf_to_truth_table(parse_anf(SEXTIC_M7_ANF_TEXT, 7))


def quadric_chain(t: int) -> BoolFun:
    """x1 x_{t+1} + x2 x_{t+2} + ... + x_t x_{2t} + x_{2t+1} on m = 2t+1 variables.

    The standard example of a function that is not normal but weakly
    normal: its restriction to any ceil(m/2)-flat is never constant, yet
    it is affine on some such flat.
    """
    if t < 1:
        raise ValueError("t must be positive")
    m = 2 * t + 1
    coeffs = 1 << (1 << (m - 1))  # the lone linear monomial x_{2t+1}
    for i in range(t):
        mask = (1 << i) | (1 << (t + i))
        coeffs ^= 1 << mask
    return anf_to_truth_table(Anf(m, coeffs))
