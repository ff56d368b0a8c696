#!/usr/bin/env python3
"""
Class-level specialization pipelines.

Direct generating series for the Todd, Chern and L-classes of symmetric
products, the y -> 1 Chern limit of the normalized Hirzebruch series, and
``verify_specialization`` which checks each specialization of the
Hirzebruch series against the matching direct pipeline.

All Hirzebruch inputs are in the T_(-y) convention: in it y = 0 gives the
Todd class, the (1-y)-normalized limit y -> 1 gives the Chern class, and
y = -1 gives T_1, which becomes the L-class after Psi_2.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from utils.errors import InvariantViolation, NotYFree
from utils.graded import GradedClass, normalize, push_forward, scale_by_degree, specialize_y
from utils.pontrjagin import PontSeries, SpaceModel, pont_exp, pont_mul, symmetric_class_series


logger = logging.getLogger(__name__)

TARGETS = ("todd", "chern", "l")


def _require_y_free(c: GradedClass, what: str) -> None:
    if not c.is_y_free():
        raise NotYFree(f"{what} must have rational coefficients, got {c}")


def _require_base_module(model: SpaceModel, c: GradedClass) -> None:
    if model.N >= 1 and c.module != model.modules[1]:
        raise InvariantViolation("base-module", (1,), "class must live in modules[1]")


def _exponent(model: SpaceModel, terms) -> PontSeries:
    """sum_r terms[r] t^r / r; terms maps r to a class in modules[r]."""
    exponent = [GradedClass.zero(module) for module in model.modules]
    for r, term in terms.items():
        exponent[r] = term.scale(Fraction(1, r))
    return PontSeries(model, tuple(exponent))


def _exponential(model: SpaceModel, terms) -> PontSeries:
    return pont_exp(_exponent(model, terms))


def todd_series_direct(model: SpaceModel, td: GradedClass) -> PontSeries:
    """
    exp(sum_r Psi_r(d^r_* td) t^r / r) for a y-free Todd class, Psi_r being
    degree scaling only.

    Raises:
        NotYFree: If td depends on y
    """
    _require_y_free(td, "Todd class")
    _require_base_module(model, td)
    terms = {r: scale_by_degree(r, push_forward(model.diagonal(r), td)) for r in range(1, model.N + 1)}
    return _exponential(model, terms)


def chern_series_direct(model: SpaceModel, c: GradedClass) -> PontSeries:
    """
    exp(sum_r d^r_* c t^r / r); the Chern class series carries no Adams operation.

    Raises:
        NotYFree: If c depends on y
    """
    _require_y_free(c, "Chern class")
    _require_base_module(model, c)
    terms = {r: push_forward(model.diagonal(r), c) for r in range(1, model.N + 1)}
    return _exponential(model, terms)


def chern_of_base(base: GradedClass) -> GradedClass:
    """c_* of a T_(-y) class: the (1-y)-normalized class in the limit y -> 1."""
    return specialize_y(normalize(base, "minus"), 1, mode="limit")


def chern_limit_series(model: SpaceModel, base: GradedClass) -> PontSeries:
    """
    Chern classes of the symmetric powers as the limit of the Hirzebruch series.

    Every t^n coefficient of symmetric_class_series(model, base) is normalized
    with (1-y)^-k in half degree k and then taken to the limit y -> 1.

    Raises:
        PoleError: If a coefficient has a genuine pole at y = 1
    """
    series = symmetric_class_series(model, base)
    return series.map_terms(lambda n, a: chern_of_base(a))


def point_class(model: SpaceModel) -> GradedClass:
    """
    The class of a point on X: the only half-degree-0 basis element of modules[1].

    Raises:
        InvariantViolation: If modules[1] has no or several half-degree-0 elements
    """
    indices = model.modules[1].indices_of_half_degree(0)
    if len(indices) != 1:
        raise InvariantViolation(
            "point-class", tuple(indices), "modules[1] needs exactly one half-degree-0 basis element"
        )
    return GradedClass.build(model.modules[1], {indices[0]: 1})


def l_series_factors(
    model: SpaceModel,
    L: GradedClass,
    ichi: Union[int, Fraction],
    point: Optional[GradedClass] = None,
) -> Tuple[PontSeries, PontSeries]:
    """
    The two factors of ``l_series``.

    Returns:
        (odd_exponent, even_factor): odd_exponent = sum_{r odd} Psi_r(d^r_* L) t^r / r
        has no even powers of t, and even_factor = exp(sum_{r even} d^r_*(ichi [pt]) t^r / r).

    Raises:
        NotYFree: If L depends on y
    """
    _require_y_free(L, "L-class")
    _require_base_module(model, L)
    if model.N == 0:
        return _exponent(model, {}), _exponential(model, {})
    odd = {
        r: scale_by_degree(r, push_forward(model.diagonal(r), L))
        for r in range(1, model.N + 1, 2)
    }
    zero_cycle = (point if point is not None else point_class(model)).scale(Fraction(ichi))
    even = {r: push_forward(model.diagonal(r), zero_cycle) for r in range(2, model.N + 1, 2)}
    return _exponent(model, odd), _exponential(model, even)


def l_series(
    model: SpaceModel,
    L: GradedClass,
    ichi: Union[int, Fraction],
    point: Optional[GradedClass] = None,
) -> PontSeries:
    """
    L-classes of the symmetric powers from the L-class of X.

    The odd part exp(sum_{r odd} Psi_r(d^r_* L) t^r / r) is multiplied by the
    even factor exp(sum_{r even} d^r_*(ichi [pt]) t^r / r), whose degrees
    form the scalar series (1 - t^2)^(-ichi/2).

    For a singular X or a twisted L the geometric meaning of the result is
    conjectural; the formula is evaluated for any model.

    Args:
        model: Space model
        L: y-free L-class on X
        ichi: Intersection Euler characteristic of X
        point: Degree-one zero-cycle on X; defaults to ``point_class(model)``

    Raises:
        NotYFree: If L depends on y
    """
    odd_exponent, even_factor = l_series_factors(model, L, ichi, point)
    return pont_mul(even_factor, pont_exp(odd_exponent))


@dataclass(frozen=True)
class Discrepancy:
    """First coefficient where two series differ."""

    n: int
    label: str
    left: str
    right: str

    def __str__(self):
        return f"t^{self.n}, {self.label}: {self.left} != {self.right}"


@dataclass(frozen=True)
class VerificationResult:
    """Outcome of checking one identity."""

    identity: str
    passed: bool
    discrepancy: Optional[Discrepancy] = None
    detail: str = ""

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.identity}"
        if self.discrepancy is not None:
            text += f" [{self.discrepancy}]"
        elif self.detail:
            text += f" [{self.detail}]"
        return text


def first_discrepancy(left: PontSeries, right: PontSeries) -> Optional[Discrepancy]:
    """Locate the first (n, basis label) where two series differ, scanning n ascending."""
    for n, (a, b) in enumerate(zip(left.terms, right.terms)):
        if a == b:
            continue
        module = a.module
        for index in range(module.rank):
            va, vb = a.coefficient(index), b.coefficient(index)
            if va != vb:
                return Discrepancy(n, module.basis[index][0], str(va), str(vb))
        return Discrepancy(n, "<module>", str(a), str(b))
    return None


def compare_series(identity: str, left: PontSeries, right: PontSeries) -> VerificationResult:
    """Exact coefficientwise comparison of two series over the same model."""
    if left.N != right.N:
        return VerificationResult(identity, False, detail=f"truncations differ: {left.N} vs {right.N}")
    discrepancy = first_discrepancy(left, right)
    result = VerificationResult(identity, discrepancy is None, discrepancy)
    logger.debug(str(result))
    return result


def verify_specialization(
    model: SpaceModel,
    base: GradedClass,
    target: str,
    reference: Optional[Sequence[GradedClass]] = None,
) -> VerificationResult:
    """
    Compare a specialization of the Hirzebruch series against a direct pipeline.

    Args:
        model: Space model
        base: T_(-y) class on X
        target: 'todd' (y := 0), 'chern' (normalized limit y -> 1) or 'l'
            (y := -1 followed by Psi_2)
        reference: Known classes of the symmetric powers, t^0..t^N; when given,
            the specialized series must also match them

    Returns:
        PASS, or FAIL with the first differing (n, basis label)
    """
    if target not in TARGETS:
        raise ValueError(f"unknown target {target!r}; expected one of {', '.join(TARGETS)}")
    identity = f"{target} on {model.name}"
    if target == "chern":
        left = chern_limit_series(model, base)
        right = chern_series_direct(model, chern_of_base(base))
    else:
        series = symmetric_class_series(model, base)
        if target == "todd":
            left = series.map_terms(lambda n, a: specialize_y(a, 0))
            right = todd_series_direct(model, specialize_y(base, 0))
        else:
            left = series.map_terms(lambda n, a: scale_by_degree(2, specialize_y(a, -1)))
            L = scale_by_degree(2, specialize_y(base, -1))
            ichi = specialize_y(base, 1).degree_zero_part().constant_value()
            right = l_series(model, L, ichi)

    result = compare_series(identity, left, right)
    if result.passed and reference is not None:
        expected = PontSeries(model, tuple(reference))
        result = compare_series(f"{identity} against reference classes", left, expected)
    return result
