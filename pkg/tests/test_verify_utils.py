"""Tests for the verification suites."""
import sys
from pathlib import Path

import pytest

# Add the parent directory to sys.path to import utils
sys.path.insert(0, str(Path(__file__).parent.parent))

from utils.errors import ConfigurationError, PoleError
from utils.genera import ScalarSeries
from utils.pipelines import VerificationResult
from utils.verify_utils import (
    check,
    compare_scalar,
    run_suite,
    suite_genera,
    suite_laws,
    suite_oracle,
    suite_p1,
    suite_sensitivity,
    suite_specializations,
)


def failures(results):
    return [str(result) for result in results if not result.passed]


class TestHelpers:
    """Test the comparison helpers."""

    def test_compare_scalar(self):
        """Test the first differing coefficient is reported."""
        result = compare_scalar("demo", ScalarSeries.from_values([1, 2, 3]), ScalarSeries.from_values([1, 2, 4]))
        assert not result.passed
        assert "t^2" in result.detail
        assert compare_scalar("same", ScalarSeries.from_values([1]), ScalarSeries.from_values([1])).passed

    def test_check_engine_error(self):
        """Test an engine error inside a check is a failure, not a crash."""

        def raises():
            raise PoleError(1)

        result = check("pole", raises)
        assert isinstance(result, VerificationResult)
        assert not result.passed
        assert "PoleError" in result.detail


class TestSuites:
    """Test every suite passes on the reference models."""

    def test_p1(self):
        """Test the P^1 suite up to t^6."""
        results = suite_p1(6)
        assert results
        assert failures(results) == []

    def test_oracle(self):
        """Test the cycle-type oracle on point, P^1 and ten random models."""
        results = suite_oracle(5, seed=7)
        assert len(results) == 12
        assert failures(results) == []

    def test_genera(self):
        """Test the scalar closed forms up to t^12."""
        assert failures(suite_genera(12)) == []

    def test_specializations(self):
        """Test Todd, Chern and L specializations on P^1 and the point."""
        results = suite_specializations(5)
        assert len(results) == 6
        assert failures(results) == []

    def test_laws(self):
        """Test the ring and operator laws on random inputs."""
        results = suite_laws(seed=3, cases=100)
        assert results
        assert all(result.identity.endswith("(100 cases)") for result in results)
        assert failures(results) == []

    def test_sensitivity(self):
        """Test every perturbation of the P^1 model is detected."""
        results = suite_sensitivity(4)
        assert len(results) == 1
        assert failures(results) == []

    def test_sensitivity_n6(self):
        """Test perturbations of products between degrees two and up are caught at N = 6."""
        results = suite_sensitivity(6)
        assert failures(results) == []
        assert results[0].identity.startswith("92 single perturbations")


class TestRunSuite:
    """Test suite dispatch."""

    def test_unknown(self):
        """Test an unknown suite name raises ValueError."""
        with pytest.raises(ValueError):
            run_suite("everything", 3)

    def test_needs_positive_n(self):
        """Test N < 1 is a configuration error."""
        with pytest.raises(ConfigurationError):
            run_suite("p1", 0)

    def test_all(self):
        """Test 'all' concatenates every suite."""
        results = run_suite("all", 2)
        assert failures(results) == []
        assert len(results) > len(run_suite("p1", 2))
