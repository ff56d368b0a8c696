"""Unit tests for the Todd, Chern and L pipelines and verify_specialization."""
import sys
from math import comb
from pathlib import Path

import pytest

# Add the parent directory to sys.path to import utils
sys.path.insert(0, str(Path(__file__).parent.parent))

from utils.errors import InvariantViolation, NotYFree, PoleError
from utils.genera import degree_series, even_factor_series
from utils.graded import GradedClass, GradedModuleSpec
from utils.pipelines import (
    VerificationResult,
    chern_limit_series,
    chern_series_direct,
    compare_series,
    l_series,
    l_series_factors,
    point_class,
    todd_series_direct,
    verify_specialization,
)
from utils.pontrjagin import PontSeries, SpaceModel, pont_exp, pont_mul, symmetric_class_series, unit_series
from utils.poly_parser import parse_polynomial as P
from utils.spaces import genus_class_pn, hirzebruch_base_p1, p1_model, point_model


def scalar_values(series):
    return [term.coefficient(0) for term in series.terms]


def point_base(model, value):
    return GradedClass.build(model.modules[1], {0: value})


def reference(genus, N):
    return [genus_class_pn(n, genus) for n in range(N + 1)]


class TestToddSeries:
    """Test the direct Todd class series."""

    def test_point(self):
        """Test td = 1 on the point gives (1-t)^-1."""
        model = point_model(5)
        assert scalar_values(todd_series_direct(model, point_base(model, 1))) == [1] * 6

    def test_p1(self):
        """Test the P^1 Todd series gives td_*(P^n)."""
        model = p1_model(4)
        series = todd_series_direct(model, genus_class_pn(1, "todd"))
        assert list(series.terms) == reference("todd", 4)

    def test_zero(self):
        """Test td = 0 gives the unit series."""
        model = p1_model(3)
        assert todd_series_direct(model, GradedClass.zero(model.modules[1])) == unit_series(model)

    def test_needs_y_free(self):
        """Test that a y-dependent class is refused."""
        with pytest.raises(NotYFree):
            todd_series_direct(p1_model(3), hirzebruch_base_p1())


class TestChernSeries:
    """Test the direct and the limit Chern class series."""

    @pytest.mark.parametrize("chi", [1, 2, 3])
    def test_point(self, chi):
        """Test c = chi on the point gives Macdonald's coefficients."""
        model = point_model(6)
        assert scalar_values(chern_series_direct(model, point_base(model, chi))) == [
            comb(n + chi - 1, n) for n in range(7)
        ]

    def test_p1(self):
        """Test c = b1 + 2 b0 gives c_*(P^n)."""
        model = p1_model(5)
        assert list(chern_series_direct(model, genus_class_pn(1, "chern")).terms) == reference("chern", 5)

    def test_zero(self):
        """Test c = 0 gives the unit series."""
        model = p1_model(3)
        assert chern_series_direct(model, GradedClass.zero(model.modules[1])) == unit_series(model)

    def test_limit_p1(self):
        """Test the y -> 1 limit of the normalized P^1 series is c_*(P^n)."""
        model = p1_model(5)
        limit = chern_limit_series(model, hirzebruch_base_p1())
        assert list(limit.terms) == reference("chern", 5)
        assert limit == chern_series_direct(model, genus_class_pn(1, "chern"))

    def test_limit_point(self):
        """Test base 1+y on the point gives Macdonald's series for chi = 2."""
        model = point_model(6)
        assert scalar_values(chern_limit_series(model, point_base(model, P("1+y")))) == [n + 1 for n in range(7)]

    def test_limit_zero(self):
        """Test base 0 gives the unit series."""
        model = p1_model(3)
        assert chern_limit_series(model, GradedClass.zero(model.modules[1])) == unit_series(model)

    def test_limit_genuine_pole(self):
        """Test that a base with a genuine pole at y = 1 raises PoleError."""
        model = point_model(2)
        with pytest.raises(PoleError):
            chern_limit_series(model, point_base(model, 1 / P("1-y")))


class TestLSeries:
    """Test the L-class series with its even factor."""

    def test_point(self):
        """Test L = 1, Ichi = 1 on the point gives all ones."""
        model = point_model(6)
        assert scalar_values(l_series(model, point_base(model, 1), 1)) == [1] * 7

    def test_p1(self):
        """Test L = b1, Ichi = 2 gives L_*(P^n)."""
        model = p1_model(6)
        assert list(l_series(model, genus_class_pn(1, "l"), 2).terms) == reference("l", 6)

    def test_zero(self):
        """Test L = 0, Ichi = 0 gives the unit series."""
        model = p1_model(3)
        assert l_series(model, GradedClass.zero(model.modules[1]), 0) == unit_series(model)

    def test_signatures(self):
        """Test the degree row of the P^1 L series is 1, 0, 1, 0, ..."""
        series = l_series(p1_model(5), genus_class_pn(1, "l"), 2)
        assert [term.degree_zero_part() for term in series.terms] == [1, 0, 1, 0, 1, 0]

    def test_needs_y_free(self):
        """Test that a y-dependent L-class is refused."""
        with pytest.raises(NotYFree):
            l_series(p1_model(2), hirzebruch_base_p1(), 2)

    def test_factors(self):
        """Test the exponent has only odd powers of t and the even factor has degrees (1-t^2)^-1."""
        model = p1_model(6)
        L = genus_class_pn(1, "l")
        odd_exponent, even_factor = l_series_factors(model, L, 2)
        assert all(odd_exponent.terms[r].is_zero() for r in range(0, 7, 2))
        assert not odd_exponent.terms[1].is_zero()
        assert degree_series(even_factor) == even_factor_series(2, 6)
        assert pont_mul(even_factor, pont_exp(odd_exponent)) == l_series(model, L, 2)

    def test_factors_need_y_free(self):
        """Test the factors refuse a y-dependent L-class."""
        with pytest.raises(NotYFree):
            l_series_factors(p1_model(2), hirzebruch_base_p1(), 2)


class TestPointClass:
    """Test the class of a point on X."""

    def test_p1(self):
        """Test the point class of P^1 is b0."""
        model = p1_model(2)
        assert point_class(model) == GradedClass.from_labels(model.modules[1], {"b0": 1})

    def test_ambiguous(self):
        """Test that two half-degree-0 basis elements leave the point class undefined."""
        modules = [GradedModuleSpec((("one", 0),)), GradedModuleSpec((("a", 0), ("b", 0)))]
        model = SpaceModel(1, modules, {}, {}, validate=False)
        with pytest.raises(InvariantViolation):
            point_class(model)


class TestVerifySpecialization:
    """Test the specialization checks."""

    @pytest.mark.parametrize("target", ["todd", "chern", "l"])
    def test_p1(self, target):
        """Test every target passes on P^1, against reference classes too."""
        result = verify_specialization(p1_model(5), hirzebruch_base_p1(), target, reference=reference(target, 5))
        assert result.passed
        assert str(result).startswith("PASS")

    @pytest.mark.parametrize("target", ["todd", "chern", "l"])
    def test_point(self, target):
        """Test every target passes on the point with base 1+y."""
        model = point_model(5)
        assert verify_specialization(model, point_base(model, P("1+y")), target).passed

    @pytest.mark.parametrize("target", ["todd", "chern"])
    def test_perturbed_model_fails(self, target):
        """Test that b1 * b1 = 3 b2 is caught at t^2 on b2."""
        model = p1_model(4).with_tensor_entry(1, 1, 1, 1, 2, 3)
        result = verify_specialization(model, hirzebruch_base_p1(), target, reference=reference(target, 4))
        assert not result.passed
        assert result.discrepancy.n == 2
        assert result.discrepancy.label == "b2"
        assert str(result).startswith("FAIL")

    def test_unknown_target(self):
        """Test that only todd, chern and l are targets."""
        with pytest.raises(ValueError):
            verify_specialization(p1_model(2), hirzebruch_base_p1(), "elliptic")


class TestCompareSeries:
    """Test exact comparison of series."""

    def test_first_discrepancy(self):
        """Test the first differing coefficient is reported."""
        model = p1_model(3)
        left = symmetric_class_series(model, hirzebruch_base_p1())
        right = PontSeries(model, left.terms[:3] + (GradedClass.zero(model.modules[3]),))
        result = compare_series("demo", left, right)
        assert isinstance(result, VerificationResult)
        assert not result.passed
        assert result.discrepancy.n == 3
        assert result.discrepancy.label == "b0"

    def test_equal(self):
        """Test equal series pass with no discrepancy."""
        model = p1_model(2)
        series = unit_series(model)
        result = compare_series("unit", series, series)
        assert result.passed
        assert result.discrepancy is None
