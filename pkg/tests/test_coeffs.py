"""Unit tests for exact coefficient arithmetic in Q and Q(y)."""
import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Add the parent directory to sys.path to import utils
sys.path.insert(0, str(Path(__file__).parent.parent))

from utils.coeffs import (
    ONE,
    Y,
    ZERO,
    YRationalFunction,
    format_rational,
    parse_rational,
    rf_arith,
    rf_evaluate,
    rf_limit,
    y_negate,
    y_power_substitute,
)
from utils.errors import ParseError, PoleError
from utils.poly_parser import parse_polynomial as P
from utils.random_models import random_coefficient
from utils.spaces import q_series

SEEDS = range(100)
REGULAR_POINTS = [0, 2, Fraction(1, 2)]


class TestRationals:
    """Test parsing and formatting of exact rationals."""

    def test_parse_reduces(self):
        """Test that p/q text is reduced to lowest terms."""
        assert parse_rational("3/6") == Fraction(1, 2)
        assert parse_rational(" -4 ") == Fraction(-4)
        assert parse_rational(7) == Fraction(7)

    @pytest.mark.parametrize("text", ["abc", "1/0", "0.5.1", ""])
    def test_parse_rejects(self, text):
        """Test that anything but an exact rational is a parse error."""
        with pytest.raises(ParseError):
            parse_rational(text)

    def test_parse_rejects_floats_and_bools(self):
        """Test that non-string, non-int values are rejected."""
        with pytest.raises(ParseError):
            parse_rational(0.5)
        with pytest.raises(ParseError):
            parse_rational(True)

    def test_format(self):
        """Test canonical p/q text."""
        assert format_rational(Fraction(-2, 4)) == "-1/2"
        assert format_rational(Fraction(3)) == "3"


class TestArithmetic:
    """Test field operations on rational functions."""

    def test_polynomial_product(self):
        """Test (1-y)(1+y) = 1-y^2."""
        assert P("1-y") * P("1+y") == P("1-y^2")

    def test_exact_cancellation(self):
        """Test (1-y^2)/(1-y) = 1+y."""
        quotient = P("1-y^2") / P("1-y")
        assert quotient == P("1+y")
        assert quotient.is_polynomial()

    def test_common_denominator(self):
        """Test 1/(1+y) + y/(1+y) = 1."""
        denominator = P("1+y")
        assert ONE / denominator + Y / denominator == ONE

    def test_denominator_is_monic(self):
        """Test that 2/(2+2y) is stored as 1/(1+y)."""
        f = P("2") / P("2+2*y")
        assert str(f) == "1/(1+y)"
        assert f == ONE / P("1+y")

    def test_equal_values_hash_equal(self):
        """Test that equal functions built differently share a hash."""
        a = P("1-y^2") / P("1-y")
        b = P("1+y")
        assert a == b
        assert hash(a) == hash(b)
        assert len({a, b}) == 1

    def test_division_by_zero(self):
        """Test that division by the zero function raises ZeroDivisionError."""
        with pytest.raises(ZeroDivisionError):
            P("1+y") / ZERO
        with pytest.raises(ZeroDivisionError):
            rf_arith(ONE, ZERO, "div")

    def test_rf_arith_operations(self):
        """Test every rf_arith operation and the unknown-operation error."""
        a, b = P("1+y"), P("1-y")
        assert rf_arith(a, b, "add") == P("2")
        assert rf_arith(a, b, "sub") == P("2*y")
        assert rf_arith(a, b, "mul") == P("1-y^2")
        assert rf_arith(a, a, "div") == ONE
        with pytest.raises(ValueError):
            rf_arith(a, b, "pow")

    def test_mixed_with_rationals(self):
        """Test arithmetic with int and Fraction operands."""
        assert P("1+y") * Fraction(1, 2) + Fraction(1, 2) == P("2+y") / 2
        assert 1 - Y == P("1-y")

    def test_negative_power(self):
        """Test that negative integer powers invert."""
        assert P("1+y") ** -2 * P("1+y") ** 2 == ONE

    def test_constant_value(self):
        """Test reading back a y-free value and refusing a y-dependent one."""
        assert YRationalFunction.constant(Fraction(3, 4)).constant_value() == Fraction(3, 4)
        with pytest.raises(ValueError):
            Y.constant_value()

    def test_str(self):
        """Test the canonical text of polynomials and quotients."""
        assert str(P("1-y")) == "1-y"
        assert str(P("3*y^2-2")) == "-2+3*y^2"
        assert str(ZERO) == "0"
        assert str(P("1-y") / P("1+y")) == "(1-y)/(1+y)"


class TestEvaluation:
    """Test exact evaluation and limits."""

    def test_evaluate(self):
        """Test plain evaluation at a regular point."""
        assert rf_evaluate(P("1-y"), 0) == 1
        assert rf_evaluate(P("(1+y)^2"), -1) == 0
        assert rf_evaluate(P("1+y") / P("3"), Fraction(1, 2)) == Fraction(1, 2)

    def test_evaluate_pole(self):
        """Test that a vanishing denominator raises PoleError with the point."""
        with pytest.raises(PoleError) as excinfo:
            rf_evaluate(ONE / P("1+y"), -1)
        assert excinfo.value.point == -1

    def test_evaluate_cancelled_singularity(self):
        """Test that canonical form already removed a common factor."""
        assert rf_evaluate(P("1-y^2") / P("1-y"), 1) == 2

    def test_limit_genuine_pole(self):
        """Test that (1-y)/(1-y)^2 has a genuine pole at 1."""
        with pytest.raises(PoleError):
            rf_limit(P("1-y") / P("(1-y)^2"), 1)

    def test_limit_regular_point(self):
        """Test that a limit at a regular point is the value."""
        assert rf_limit(P("2+y"), 3) == 5

    def test_limit_of_degree_one_coefficient(self):
        """Test the linear coefficient of the (1-y)-rescaled Q_(-y) tends to 1 as y -> 1."""
        linear = y_negate(q_series(1)[1])
        assert linear == P("1+y") / 2
        assert rf_limit(linear, 1) == 1


class TestSubstitution:
    """Test y -> y^r and y -> -y."""

    def test_power_substitute(self):
        """Test f(y^r) on polynomials and quotients."""
        assert y_power_substitute(P("1-y"), 3) == P("1-y^3")
        assert y_power_substitute(ONE / P("1+y"), 2) == ONE / P("1+y^2")

    def test_power_substitute_identity(self):
        """Test r = 1 leaves f unchanged."""
        f = P("1+2*y") / P("3-y")
        assert y_power_substitute(f, 1) == f

    def test_power_substitute_rejects_zero(self):
        """Test that r must be positive."""
        with pytest.raises(ValueError):
            y_power_substitute(Y, 0)

    def test_negate(self):
        """Test f(-y)."""
        assert y_negate(P("1+y")) == P("1-y")
        assert y_negate(P("y^2") / P("1-y")) == P("y^2") / P("1+y")


class TestDocuments:
    """Test serialization of rational functions."""

    def test_document_form(self):
        """Test the num/den document layout."""
        f = P("1-y") / P("2+2*y")
        assert f.to_document() == {
            "num": [[0, "1/2"], [1, "-1/2"]],
            "den": [[0, "1"], [1, "1"]],
        }
        assert YRationalFunction.from_document(f.to_document()) == f

    def test_bare_rational(self):
        """Test that a bare rational string is read as a constant."""
        assert YRationalFunction.from_document("-3/4") == YRationalFunction.constant(Fraction(-3, 4))

    @pytest.mark.parametrize(
        "document",
        [
            {"num": [[0, "1"]], "den": []},
            {"num": [[-1, "1"]]},
            {"numerator": [[0, "1"]]},
            [0, "1"],
        ],
    )
    def test_malformed(self, document):
        """Test that malformed documents are parse errors."""
        with pytest.raises(ParseError):
            YRationalFunction.from_document(document)


class TestRandomCoefficients:
    """Field and substitution laws on seeded random coefficients."""

    @pytest.mark.parametrize("seed", SEEDS)
    def test_field_laws(self, seed):
        """Test distributivity and that division undoes multiplication."""
        rng = random.Random(seed)
        a, b, c = (random_coefficient(rng, allow_poles=True) for _ in range(3))
        assert a * (b + c) == a * b + a * c
        assert a + b - b == a
        if not b.is_zero():
            assert a / b * b == a

    @pytest.mark.parametrize("seed", SEEDS)
    def test_limit_matches_evaluation(self, seed):
        """Test the limit equals the value at points away from y = -1."""
        f = random_coefficient(random.Random(seed), y_degree=3, allow_poles=True)
        for y0 in REGULAR_POINTS:
            assert rf_limit(f, y0) == rf_evaluate(f, y0)

    @pytest.mark.parametrize("seed", SEEDS)
    def test_power_substitute_composes(self, seed):
        """Test (y -> y^r) after (y -> y^s) is y -> y^rs and commutes with evaluation."""
        rng = random.Random(seed)
        f = random_coefficient(rng, allow_poles=True)
        r, s = rng.randint(1, 4), rng.randint(1, 4)
        assert y_power_substitute(y_power_substitute(f, s), r) == y_power_substitute(f, r * s)
        for y0 in REGULAR_POINTS:
            assert rf_evaluate(y_power_substitute(f, r), y0) == rf_evaluate(f, Fraction(y0) ** r)

    @pytest.mark.parametrize("seed", SEEDS)
    def test_power_substitute_is_multiplicative(self, seed):
        """Test substitution respects products."""
        rng = random.Random(seed)
        f, g = random_coefficient(rng, allow_poles=True), random_coefficient(rng)
        r = rng.randint(2, 4)
        assert y_power_substitute(f * g, r) == y_power_substitute(f, r) * y_power_substitute(g, r)
