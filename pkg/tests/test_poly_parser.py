"""Unit tests for the polynomial flag parser."""
import sys
from pathlib import Path

import pytest

# Add the parent directory to sys.path to import utils
sys.path.insert(0, str(Path(__file__).parent.parent))

from utils.coeffs import YRationalFunction
from utils.errors import ParseError
from utils.poly_parser import parse_polynomial, tokenize


def poly(coefficients):
    return YRationalFunction.polynomial(coefficients)


class TestTokenize:
    """Test splitting flag text into tokens."""

    def test_tokens(self):
        """Test integers, y and operators with whitespace."""
        assert tokenize(" 12 * y^2 ") == [("int", "12"), ("op", "*"), ("y", "y"), ("op", "^"), ("int", "2")]

    def test_unexpected_character(self):
        """Test that letters other than y are rejected."""
        with pytest.raises(ParseError):
            tokenize("1+x")


class TestParsePolynomial:
    """Test the recursive-descent parser."""

    @pytest.mark.parametrize(
        "text, expected",
        [
            ("1+y", {0: 1, 1: 1}),
            ("2 - 3*y^2", {0: 2, 2: -3}),
            ("(1+y)^3", {0: 1, 1: 3, 2: 3, 3: 1}),
            ("-y", {1: -1}),
            ("-(1-y)*(1+y)", {0: -1, 2: 1}),
            ("y^0", {0: 1}),
            ("0", {}),
            ("+4", {0: 4}),
        ],
    )
    def test_valid(self, text, expected):
        """Test well-formed polynomials."""
        assert parse_polynomial(text) == poly(expected)

    def test_precedence(self):
        """Test that ^ binds tighter than unary minus and *."""
        assert parse_polynomial("2*y^2") == poly({2: 2})
        assert parse_polynomial("-y^2") == poly({2: -1})

    @pytest.mark.parametrize("text", ["", "1+", "(1+y", "y^y", "2y", "1/2", "y^-1", "1++"])
    def test_invalid(self, text):
        """Test that malformed text raises ParseError."""
        with pytest.raises(ParseError):
            parse_polynomial(text)
