"""Unit tests for graded modules, classes and the degree-wise operators."""
import logging
import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Add the parent directory to sys.path to import utils
sys.path.insert(0, str(Path(__file__).parent.parent))

from utils.errors import InvariantViolation, ModuleMismatch, PoleError
from utils.graded import (
    DegreeMap,
    GradedClass,
    GradedModuleSpec,
    adams,
    denormalize,
    flip_y_sign,
    normalize,
    push_forward,
    scale_by_degree,
    specialize_y,
)
from utils.poly_parser import parse_polynomial as P
from utils.random_models import random_class, random_model
from utils.spaces import p1_model, pn_module


@pytest.fixture
def p1_module():
    return pn_module(1)


@pytest.fixture
def t_p1(p1_module):
    """T_y*(P^1) = (1+y) b1 + (1-y) b0."""
    return GradedClass.from_labels(p1_module, {"b1": P("1+y"), "b0": P("1-y")})


class TestModules:
    """Test module construction and lookup."""

    def test_lookup(self, p1_module):
        """Test labels, ranks and half degrees."""
        assert p1_module.rank == 2
        assert p1_module.labels == ["b0", "b1"]
        assert p1_module.index("b1") == 1
        assert p1_module.indices_of_half_degree(0) == [0]

    def test_duplicate_label(self):
        """Test that labels must be unique."""
        with pytest.raises(InvariantViolation) as excinfo:
            GradedModuleSpec((("a", 0), ("a", 1)))
        assert excinfo.value.invariant == "unique-labels"

    def test_negative_half_degree(self):
        """Test that half degrees are non-negative."""
        with pytest.raises(InvariantViolation):
            GradedModuleSpec((("a", -1),))


class TestClasses:
    """Test class construction and linear structure."""

    def test_zero_coefficients_dropped(self, p1_module):
        """Test that build drops zero coefficients so equality is structural."""
        c = GradedClass.build(p1_module, {0: 0, 1: P("y")})
        assert c == GradedClass.build(p1_module, {1: P("y")})
        assert c.coefficient(0) == 0

    def test_out_of_range_index(self, p1_module):
        """Test that indices outside the basis are rejected."""
        with pytest.raises(InvariantViolation):
            GradedClass.build(p1_module, {2: 1})

    def test_linear_operations(self, t_p1):
        """Test addition, negation and scaling."""
        assert t_p1 - t_p1 == GradedClass.zero(t_p1.module)
        assert (t_p1 + t_p1) == t_p1.scale(2)

    def test_mixing_modules(self, t_p1):
        """Test that classes in different modules cannot be added."""
        with pytest.raises(ModuleMismatch):
            t_p1 + GradedClass.zero(pn_module(2))

    def test_degree_zero_part(self, t_p1):
        """Test that the degree-zero part is the chi_y genus."""
        assert t_p1.degree_zero_part() == P("1-y")

    def test_y_free(self, t_p1):
        """Test y-freeness."""
        assert not t_p1.is_y_free()
        assert specialize_y(t_p1, 0).is_y_free()


class TestAdams:
    """Test the homological Adams operations."""

    def test_identity(self, t_p1):
        """Test Psi_1 = id."""
        assert adams(1, t_p1) == t_p1

    def test_scales_and_substitutes(self, p1_module):
        """Test Psi_2(y b1) = (y^2/2) b1 and Psi_3((1-y) b0) = (1-y^3) b0."""
        assert adams(2, GradedClass.from_labels(p1_module, {"b1": P("y")})) == GradedClass.from_labels(
            p1_module, {"b1": P("y^2") / 2}
        )
        assert adams(3, GradedClass.from_labels(p1_module, {"b0": P("1-y")})) == GradedClass.from_labels(
            p1_module, {"b0": P("1-y^3")}
        )

    def test_composition(self, t_p1):
        """Test Psi_2 Psi_3 = Psi_6."""
        assert adams(2, adams(3, t_p1)) == adams(6, t_p1)

    def test_rejects_nonpositive(self, t_p1):
        """Test that r must be positive."""
        with pytest.raises(ValueError):
            adams(0, t_p1)

    @pytest.mark.parametrize("seed", range(100))
    def test_specialization_splits_adams(self, seed):
        """Test evaluating Psi_r c at y0 is evaluating c at y0^r, then scaling by degree."""
        rng = random.Random(seed)
        module = random_model(seed, 3).modules[3]
        c = random_class(module, rng, allow_poles=True)
        r = rng.randint(1, 4)
        for y0 in (0, 2, Fraction(1, 2)):
            assert specialize_y(adams(r, c), y0) == scale_by_degree(r, specialize_y(c, Fraction(y0) ** r))


class TestNormalization:
    """Test the normalization functor."""

    def test_normalized_p1(self, t_p1, p1_module):
        """Test normalize(T_y*(P^1)) = b1 + (1-y) b0."""
        assert normalize(t_p1, "plus") == GradedClass.from_labels(p1_module, {"b1": 1, "b0": P("1-y")})

    def test_degree_zero_unchanged(self, p1_module):
        """Test that half degree 0 is left alone."""
        c = GradedClass.from_labels(p1_module, {"b0": P("3+y")})
        assert normalize(c, "plus") == c
        assert normalize(c, "minus") == c

    @pytest.mark.parametrize("sign", ["plus", "minus"])
    def test_inverse(self, t_p1, sign):
        """Test that denormalize undoes normalize."""
        assert denormalize(normalize(t_p1, sign), sign) == t_p1

    def test_unknown_sign(self, t_p1):
        """Test that only plus and minus are accepted."""
        with pytest.raises(ValueError):
            normalize(t_p1, "both")


class TestPushForward:
    """Test linear maps between modules."""

    def test_zero_and_identity(self, t_p1, p1_module):
        """Test the zero map and the identity."""
        assert push_forward(DegreeMap.zero(p1_module, p1_module), t_p1).is_zero()
        assert push_forward(DegreeMap.identity(p1_module), t_p1) == t_p1

    def test_p1_diagonal(self, t_p1):
        """Test d^2 of the P^1 model on T_y*(P^1)."""
        d2 = p1_model(2).diagonal(2)
        assert push_forward(d2, t_p1) == GradedClass.from_labels(
            pn_module(2), {"b1": P("2+2*y"), "b0": P("1-y")}
        )

    def test_wrong_source(self, t_p1):
        """Test that the class must live in the source module."""
        with pytest.raises(ModuleMismatch):
            push_forward(DegreeMap.identity(pn_module(2)), t_p1)

    def test_degree_preservation(self, p1_module):
        """Test that maps joining different half degrees are rejected."""
        with pytest.raises(InvariantViolation) as excinfo:
            DegreeMap.build(p1_module, p1_module, [(1, 0, 1)])
        assert excinfo.value.invariant == "degree-preservation"

    def test_with_entry(self, p1_module):
        """Test replacing one entry of a map."""
        d = DegreeMap.identity(p1_module).with_entry(1, 1, 5)
        assert d.row(1) == ((1, Fraction(5)),)
        assert d.row(0) == ((0, Fraction(1)),)


class TestSpecialization:
    """Test y-specialization and the degree-only operators."""

    def test_todd_of_p1(self, t_p1, p1_module):
        """Test T_0*(P^1) = b1 + b0."""
        assert specialize_y(t_p1, 0) == GradedClass.from_labels(p1_module, {"b1": 1, "b0": 1})

    def test_chern_of_p1(self, t_p1, p1_module):
        """Test that the normalized class at y = -1 is c_*(P^1) = b1 + 2 b0."""
        assert specialize_y(normalize(t_p1, "plus"), -1) == GradedClass.from_labels(p1_module, {"b1": 1, "b0": 2})

    def test_pole_names_label(self, p1_module):
        """Test that PoleError names the offending basis label."""
        c = GradedClass.from_labels(p1_module, {"b1": 1 / P("1+y")})
        with pytest.raises(PoleError) as excinfo:
            specialize_y(c, -1, mode="limit")
        assert excinfo.value.label == "b1"

    def test_limit_mode(self, p1_module):
        """Test that limit mode cancels a removable singularity."""
        c = GradedClass.build(p1_module, {1: P("1-y^2")}).map_coefficients(lambda k, v: v / P("1-y"))
        assert specialize_y(c, 1, mode="limit") == GradedClass.from_labels(p1_module, {"b1": 2})

    def test_logs_specialization(self, t_p1, caplog):
        """Test specialize_y logs the point and mode at debug level."""
        with caplog.at_level(logging.DEBUG, logger="utils.graded"):
            specialize_y(t_p1, 0)
        assert "at y = 0 (evaluate)" in caplog.text

    def test_unknown_mode(self, t_p1):
        """Test that only evaluate and limit are modes."""
        with pytest.raises(ValueError):
            specialize_y(t_p1, 0, mode="guess")

    def test_scale_by_degree(self, p1_module):
        """Test that scale_by_degree leaves y alone."""
        c = GradedClass.from_labels(p1_module, {"b1": P("y"), "b0": P("y")})
        assert scale_by_degree(2, c) == GradedClass.from_labels(p1_module, {"b1": P("y") / 2, "b0": P("y")})

    def test_flip_y_sign(self, t_p1, p1_module):
        """Test converting T_y to the T_(-y) convention."""
        assert flip_y_sign(t_p1) == GradedClass.from_labels(p1_module, {"b1": P("1-y"), "b0": P("1+y")})


class TestDocuments:
    """Test class serialization."""

    def test_to_document(self, t_p1):
        """Test the {module, coeffs} layout with labels."""
        document = t_p1.to_document(1)
        assert document["module"] == 1
        assert [label for label, _ in document["coeffs"]] == ["b0", "b1"]
