#!/usr/bin/env python3
"""
Exact coefficient arithmetic: rationals and univariate rational functions in y.

Rationals are ``fractions.Fraction`` values at every public boundary. The
rational function field Q(y) is built on sympy's sparse polynomial ring over
QQ; every ``YRationalFunction`` is stored gcd-reduced with a monic
denominator, so structural comparison is equality.
"""

from fractions import Fraction
from typing import Dict, List, Tuple, Union

from sympy.polys.domains import QQ
from sympy.polys.rings import ring

from utils.errors import ParseError, PoleError


Rational = Fraction

# Univariate polynomial ring Q[y]; its elements are the YPolynomial values.
YRING, _Y = ring("y", QQ)
YPolynomial = type(_Y)

Scalar = Union[int, Fraction]


def to_qq(value: Scalar):
    """Convert an int or Fraction into a sympy QQ element."""
    value = Fraction(value)
    return QQ(int(value.numerator), int(value.denominator))


def from_qq(value) -> Fraction:
    """Convert a sympy QQ element back into a Fraction."""
    return Fraction(int(value.numerator), int(value.denominator))


def parse_rational(text: Union[str, int]) -> Fraction:
    """
    Parse an exact rational written as "p/q" or "p".

    Raises:
        ParseError: If the text is not an exact rational
    """
    if isinstance(text, bool) or not isinstance(text, (str, int)):
        raise ParseError(f"expected exact rational string, got {text!r}")
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"invalid rational {text!r}: {e}") from e


def format_rational(value: Fraction) -> str:
    """Canonical "p/q" (or "p") text of a rational."""
    return str(Fraction(value))


def y_polynomial(coefficients: Dict[int, Scalar]) -> YPolynomial:
    """Build a YPolynomial from an exponent -> coefficient map."""
    terms = {}
    for exponent, coeff in coefficients.items():
        if exponent < 0:
            raise ValueError(f"negative exponent {exponent} in polynomial")
        if coeff:
            terms[(int(exponent),)] = to_qq(coeff)
    return YRING.from_dict(terms)


def polynomial_terms(poly: YPolynomial) -> List[Tuple[int, Fraction]]:
    """Terms of a YPolynomial as (exponent, Fraction), ascending."""
    return sorted((monom[0], from_qq(coeff)) for monom, coeff in poly.iterterms())


def _format_polynomial(poly: YPolynomial) -> str:
    if not poly:
        return "0"
    pieces = []
    for exponent, coeff in polynomial_terms(poly):
        if exponent == 0:
            body = format_rational(abs(coeff))
        else:
            power = "y" if exponent == 1 else f"y^{exponent}"
            body = power if abs(coeff) == 1 else f"{format_rational(abs(coeff))}*{power}"
        sign = "-" if coeff < 0 else "+"
        if not pieces:
            pieces.append(body if sign == "+" else f"-{body}")
        else:
            pieces.append(f"{sign}{body}")
    return "".join(pieces)


class YRationalFunction:
    """
    An element of Q(y) in canonical form.

    The numerator and denominator are coprime, the denominator is monic and
    zero is stored as 0/1. Instances are immutable.
    """

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, numerator: YPolynomial, denominator: YPolynomial = None, _reduced: bool = False):
        if denominator is None:
            denominator = YRING.one
        if not denominator:
            raise ZeroDivisionError("rational function with zero denominator")
        if not numerator:
            numerator, denominator = YRING.zero, YRING.one
        elif not _reduced:
            numerator, denominator = numerator.cancel(denominator)
            lead = denominator.LC
            if lead != QQ.one:
                numerator = numerator.quo_ground(lead)
                denominator = denominator.quo_ground(lead)
        object.__setattr__(self, "_num", numerator)
        object.__setattr__(self, "_den", denominator)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("YRationalFunction is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, value: Scalar) -> "YRationalFunction":
        return cls(YRING.ground_new(to_qq(value)), YRING.one, _reduced=True)

    @classmethod
    def polynomial(cls, coefficients: Dict[int, Scalar]) -> "YRationalFunction":
        return cls(y_polynomial(coefficients), YRING.one, _reduced=True)

    @classmethod
    def coerce(cls, value) -> "YRationalFunction":
        if isinstance(value, YRationalFunction):
            return value
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return cls.constant(value)
        if isinstance(value, YPolynomial):
            return cls(value, YRING.one, _reduced=True)
        raise TypeError(f"cannot use {type(value).__name__} as a rational function")

    # -- accessors ----------------------------------------------------------

    @property
    def numerator(self) -> YPolynomial:
        return self._num

    @property
    def denominator(self) -> YPolynomial:
        return self._den

    def is_zero(self) -> bool:
        return not self._num

    def is_polynomial(self) -> bool:
        return self._den == YRING.one

    def is_constant(self) -> bool:
        """True when the function does not depend on y."""
        return self.is_polynomial() and self._num.degree() <= 0

    def constant_value(self) -> Fraction:
        """The Fraction value of a y-free function."""
        if not self.is_constant():
            raise ValueError(f"{self} depends on y")
        return from_qq(self._num.get(YRING.zero_monom, QQ.zero))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        try:
            other = YRationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        if self._den == other._den:
            if self._den == YRING.one:
                return YRationalFunction(self._num + other._num, YRING.one, _reduced=True)
            return YRationalFunction(self._num + other._num, self._den)
        return YRationalFunction(self._num * other._den + other._num * self._den, self._den * other._den)

    __radd__ = __add__

    def __neg__(self):
        return YRationalFunction(-self._num, self._den, _reduced=True)

    def __sub__(self, other):
        try:
            other = YRationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        try:
            other = YRationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        try:
            other = YRationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        if not self._num or not other._num:
            return ZERO
        if self._den == YRING.one and other._den == YRING.one:
            return YRationalFunction(self._num * other._num, YRING.one, _reduced=True)
        return YRationalFunction(self._num * other._num, self._den * other._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = YRationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._num:
            raise ZeroDivisionError("division by the zero rational function")
        if other.is_constant():
            scale = other._num.LC
            return YRationalFunction(self._num.quo_ground(scale), self._den, _reduced=True)
        return YRationalFunction(self._num * other._den, self._den * other._num)

    def __rtruediv__(self, other):
        try:
            other = YRationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return other / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return ONE / (self ** -exponent)
        return YRationalFunction(self._num ** exponent, self._den ** exponent, _reduced=True)

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        try:
            other = YRationalFunction.coerce(other)
        except TypeError:
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self):
        if self._hash is None:
            key = (tuple(polynomial_terms(self._num)), tuple(polynomial_terms(self._den)))
            object.__setattr__(self, "_hash", hash(key))
        return self._hash

    def __bool__(self):
        return bool(self._num)

    # -- text ---------------------------------------------------------------

    def __str__(self):
        numerator = _format_polynomial(self._num)
        if self._den == YRING.one:
            return numerator
        if len(self._num) > 1:
            numerator = f"({numerator})"
        return f"{numerator}/({_format_polynomial(self._den)})"

    def __repr__(self):
        return f"YRationalFunction({self})"

    def to_document(self) -> Dict[str, List[List]]:
        """Serialize as {"num": [[exp, "p/q"], ...], "den": [...]}."""
        return {
            "num": [[exp, format_rational(c)] for exp, c in polynomial_terms(self._num)],
            "den": [[exp, format_rational(c)] for exp, c in polynomial_terms(self._den)],
        }

    @classmethod
    def from_document(cls, document) -> "YRationalFunction":
        """
        Parse the serialized form produced by ``to_document``.

        A bare rational string (or integer) is accepted as a constant.
        """
        if isinstance(document, (str, int)) and not isinstance(document, bool):
            return cls.constant(parse_rational(document))
        if not isinstance(document, dict):
            raise ParseError(f"expected rational function mapping, got {document!r}")
        unknown = set(document) - {"num", "den"}
        if unknown:
            raise ParseError(f"unknown keys in rational function: {sorted(unknown)}")

        def read(terms) -> YPolynomial:
            if not isinstance(terms, list):
                raise ParseError(f"expected list of [exponent, coefficient], got {terms!r}")
            coefficients: Dict[int, Fraction] = {}
            for term in terms:
                if not isinstance(term, list) or len(term) != 2 or not isinstance(term[0], int) or term[0] < 0:
                    raise ParseError(f"malformed polynomial term {term!r}")
                coefficients[term[0]] = coefficients.get(term[0], Fraction(0)) + parse_rational(term[1])
            return y_polynomial(coefficients)

        numerator = read(document.get("num", []))
        denominator = read(document.get("den", [[0, "1"]]))
        if not denominator:
            raise ParseError("rational function with zero denominator")
        return cls(numerator, denominator)


ZERO = YRationalFunction.constant(0)
ONE = YRationalFunction.constant(1)
Y = YRationalFunction.polynomial({1: 1})


def rf_arith(a: YRationalFunction, b: YRationalFunction, op: str) -> YRationalFunction:
    """
    Apply a field operation to two rational functions.

    Args:
        a: Left operand
        b: Right operand
        op: One of 'add', 'sub', 'mul', 'div'

    Returns:
        The canonical result

    Raises:
        ZeroDivisionError: For op 'div' with b = 0
    """
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def rf_evaluate(f: YRationalFunction, y0: Scalar) -> Fraction:
    """
    Exact value of f at y = y0.

    Raises:
        PoleError: If the reduced denominator vanishes at y0
    """
    f = YRationalFunction.coerce(f)
    point = to_qq(y0)
    denominator = f.denominator.evaluate(_Y, point)
    if not denominator:
        raise PoleError(Fraction(y0))
    return from_qq(f.numerator.evaluate(_Y, point) / denominator)


def rf_limit(f: YRationalFunction, y0: Scalar) -> Fraction:
    """
    Limit of f as y -> y0.

    Common factors (y - y0) are divided out of numerator and denominator
    before evaluating, which is the exact counterpart of l'Hopital's rule.

    Raises:
        PoleError: If the denominator still vanishes at y0 after cancellation
    """
    f = YRationalFunction.coerce(f)
    point = to_qq(y0)
    linear = _Y - point
    numerator, denominator = f.numerator, f.denominator
    while numerator and not numerator.evaluate(_Y, point) and not denominator.evaluate(_Y, point):
        numerator = numerator.exquo(linear)
        denominator = denominator.exquo(linear)
    value = denominator.evaluate(_Y, point)
    if not value:
        raise PoleError(Fraction(y0))
    return from_qq(numerator.evaluate(_Y, point) / value)


def _substitute_power(poly: YPolynomial, r: int) -> YPolynomial:
    return YRING.from_dict({(monom[0] * r,): coeff for monom, coeff in poly.iterterms()})


def y_power_substitute(f: YRationalFunction, r: int) -> YRationalFunction:
    """Return f(y^r) in canonical form."""
    if r < 1:
        raise ValueError(f"substitution exponent must be positive, got {r}")
    f = YRationalFunction.coerce(f)
    if r == 1 or f.is_constant():
        return f
    return YRationalFunction(_substitute_power(f.numerator, r), _substitute_power(f.denominator, r))


def _negate_variable(poly: YPolynomial) -> YPolynomial:
    return YRING.from_dict({monom: (-coeff if monom[0] % 2 else coeff) for monom, coeff in poly.iterterms()})


def y_negate(f: YRationalFunction) -> YRationalFunction:
    """Return f(-y); converts between the T_y and T_(-y) conventions."""
    f = YRationalFunction.coerce(f)
    if f.is_constant():
        return f
    return YRationalFunction(_negate_variable(f.numerator), _negate_variable(f.denominator))
