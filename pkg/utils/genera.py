#!/usr/bin/env python3
"""
Scalar generating series of genera of symmetric products.

These are the degree-zero shadows of the class-level series: the chi_y
series exp(sum_r g(y^r) t^r / r), Macdonald's Euler characteristic series,
the arithmetic genus series and Zagier's signature series. Exponentials are
expanded with sympy's ring_series over Q[t, y]; closed forms use generalized
binomial coefficients so that half-integer exponents stay exact.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from sympy import Rational, binomial
from sympy.polys.domains import QQ
from sympy.polys.ring_series import rs_exp
from sympy.polys.rings import ring

from utils.coeffs import (
    YPolynomial,
    YRationalFunction,
    from_qq,
    polynomial_terms,
    rf_evaluate,
    to_qq,
)
from utils.errors import InvariantViolation, ParityMismatch
from utils.pontrjagin import PontSeries


logger = logging.getLogger(__name__)

T_RING, _T, _TY = ring("t, y", QQ)


@dataclass(frozen=True)
class ScalarSeries:
    """Truncated series c_0 + c_1 t + ... + c_N t^N with Q(y) coefficients."""

    coefficients: Tuple[YRationalFunction, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "coefficients", tuple(YRationalFunction.coerce(c) for c in self.coefficients)
        )

    @classmethod
    def from_values(cls, values: Sequence) -> "ScalarSeries":
        return cls(tuple(YRationalFunction.coerce(v) for v in values))

    @property
    def N(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, n: int) -> YRationalFunction:
        return self.coefficients[n]

    def __len__(self):
        return len(self.coefficients)

    def __mul__(self, other: "ScalarSeries") -> "ScalarSeries":
        """Cauchy product truncated at the shorter length."""
        N = min(self.N, other.N)
        return ScalarSeries(
            tuple(sum((self[i] * other[n - i] for i in range(n + 1)), YRationalFunction.constant(0)) for n in range(N + 1))
        )

    def specialize(self, y0) -> "ScalarSeries":
        return ScalarSeries(tuple(YRationalFunction.constant(rf_evaluate(c, y0)) for c in self.coefficients))

    def to_document(self) -> Dict:
        """Serialize as {"N": n, "coeffs": [rational function, ...]}."""
        return {"N": self.N, "coeffs": [c.to_document() for c in self.coefficients]}


def _from_t_series(p, N: int) -> ScalarSeries:
    by_power: List[Dict[int, Fraction]] = [{} for _ in range(N + 1)]
    for (k, e), c in p.items():
        if k <= N:
            by_power[k][e] = from_qq(c)
    return ScalarSeries(tuple(YRationalFunction.polynomial(terms) for terms in by_power))


def _check_truncation(N: int) -> None:
    if N < 0:
        raise ValueError(f"N must be non-negative, got {N}")


def chi_series(g: YPolynomial, N: int) -> ScalarSeries:
    """
    exp(sum_{r=1}^N g(y^r) t^r / r) for g = chi_{-y}(X, M).

    Args:
        g: The polynomial, a YPolynomial, a y-free rational or a polynomial
            YRationalFunction
        N: Truncation

    Returns:
        The Hodge polynomial series of the symmetric powers
    """
    _check_truncation(N)
    g = YRationalFunction.coerce(g)
    if not g.is_polynomial():
        raise ValueError(f"chi_y series needs a polynomial, got {g}")
    terms = polynomial_terms(g.numerator)
    exponent = T_RING.zero
    for r in range(1, N + 1):
        for e, c in terms:
            exponent += _T ** r * _TY ** (e * r) * to_qq(c / r)
    if not exponent:
        return ScalarSeries.from_values([1] + [0] * N)
    return _from_t_series(rs_exp(exponent, _T, N + 1), N)


def _power_sum_series(values: Dict[int, Fraction], N: int) -> ScalarSeries:
    """exp(sum_r values[r] t^r / r) with rational values."""
    exponent = T_RING.zero
    for r in range(1, N + 1):
        exponent += _T ** r * to_qq(Fraction(values[r], r))
    if not exponent:
        return ScalarSeries.from_values([1] + [0] * N)
    return _from_t_series(rs_exp(exponent, _T, N + 1), N)


def binomial_coefficients(exponent: Fraction, count: int) -> List[Fraction]:
    """Generalized binomial coefficients C(exponent, k) for k < count."""
    exponent = Fraction(exponent)
    top = Rational(exponent.numerator, exponent.denominator)
    values = []
    for k in range(count):
        c = binomial(top, k)
        values.append(Fraction(int(c.p), int(c.q)))
    return values


def binomial_series(exponent: Fraction, N: int, sign: int = 1, step: int = 1) -> ScalarSeries:
    """
    (1 + sign * t^step)^exponent truncated at t^N, for any rational exponent.
    """
    _check_truncation(N)
    values = [Fraction(0)] * (N + 1)
    for k, c in enumerate(binomial_coefficients(exponent, N // step + 1)):
        values[k * step] = c * sign ** k
    return ScalarSeries.from_values(values)


def macdonald_series(chi: int, N: int) -> ScalarSeries:
    """Euler characteristics of the symmetric powers: (1 - t)^(-chi)."""
    return binomial_series(Fraction(-chi), N, sign=-1)


def arithmetic_genus_series(chi_a: int, N: int) -> ScalarSeries:
    """Arithmetic genera of the symmetric powers: (1 - t)^(-chi_a)."""
    return binomial_series(Fraction(-chi_a), N, sign=-1)


def intersection_euler_series(ichi: int, N: int) -> ScalarSeries:
    """Intersection Euler characteristics of the symmetric powers: (1 - t)^(-I chi)."""
    return binomial_series(Fraction(-ichi), N, sign=-1)


def even_factor_series(ichi: int, N: int) -> ScalarSeries:
    """(1 - t^2)^(-ichi/2), the even-only factor of the L-class series."""
    return binomial_series(Fraction(-ichi, 2), N, sign=-1, step=2)


def zagier_exp_form(sigma: int, chi: int, N: int) -> ScalarSeries:
    """exp(sum_r c_r t^r / r) with c_r = sigma for odd r and chi for even r."""
    _check_truncation(N)
    return _power_sum_series({r: Fraction(sigma if r % 2 else chi) for r in range(1, N + 1)}, N)


def zagier_signature_series(sigma: int, chi: int, N: int) -> ScalarSeries:
    """
    Signatures of the symmetric powers: (1+t)^((sigma-chi)/2) / (1-t)^((sigma+chi)/2).

    The closed form is compared against its exponential form before being
    returned.

    Raises:
        ParityMismatch: If sigma and chi have different parity
    """
    _check_truncation(N)
    if (sigma - chi) % 2:
        raise ParityMismatch(f"signature {sigma} and Euler characteristic {chi} differ in parity")
    closed = binomial_series(Fraction(sigma - chi, 2), N) * binomial_series(
        Fraction(-(sigma + chi), 2), N, sign=-1
    )
    exp_form = zagier_exp_form(sigma, chi, N)
    if closed != exp_form:
        first = next(n for n in range(N + 1) if closed[n] != exp_form[n])
        raise InvariantViolation(
            "zagier-closed-form", (first,), f"closed form {closed[first]} != exp form {exp_form[first]}"
        )
    logger.debug(f"Zagier series for sigma={sigma}, chi={chi} checked up to t^{N}")
    return closed


def degree_series(s: PontSeries) -> ScalarSeries:
    """Half-degree-0 part of each t^n coefficient, summed over the basis."""
    return ScalarSeries(tuple(term.degree_zero_part() for term in s.terms))
