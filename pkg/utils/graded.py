#!/usr/bin/env python3
"""
Even-graded homology classes over a declared basis.

A ``GradedModuleSpec`` lists basis labels with their half degree (half degree
k stands for homological degree 2k). A ``GradedClass`` is a finite
combination of basis elements with Q(y) coefficients; ``DegreeMap`` is a
degree-preserving linear map with rational entries, used for push-forwards.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Tuple, Union

from utils.coeffs import (
    ONE,
    Scalar,
    YRationalFunction,
    rf_evaluate,
    rf_limit,
    y_negate,
    y_power_substitute,
)
from utils.errors import InvariantViolation, ModuleMismatch, PoleError


logger = logging.getLogger(__name__)

Coefficient = Union[YRationalFunction, Fraction, int]


@dataclass(frozen=True)
class GradedModuleSpec:
    """Ordered basis of an even-graded module: (label, half_degree) pairs."""

    basis: Tuple[Tuple[str, int], ...]

    def __post_init__(self):
        basis = tuple((str(label), int(half)) for label, half in self.basis)
        object.__setattr__(self, "basis", basis)
        seen = set()
        for index, (label, half) in enumerate(basis):
            if label in seen:
                raise InvariantViolation("unique-labels", (index,), f"duplicate label {label!r}")
            if half < 0:
                raise InvariantViolation("half-degree", (index,), f"negative half degree {half}")
            seen.add(label)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def labels(self) -> List[str]:
        return [label for label, _ in self.basis]

    def half_degree(self, index: int) -> int:
        return self.basis[index][1]

    def index(self, label: str) -> int:
        for i, (name, _) in enumerate(self.basis):
            if name == label:
                return i
        raise KeyError(label)

    def indices_of_half_degree(self, half: int) -> List[int]:
        return [i for i, (_, k) in enumerate(self.basis) if k == half]


@dataclass(frozen=True)
class GradedClass:
    """
    A class in a graded module with Q(y) coefficients.

    ``coeffs`` holds (basis index, coefficient) pairs sorted by index with no
    zero coefficients; use ``GradedClass.build`` to construct from any mapping.
    """

    module: GradedModuleSpec
    coeffs: Tuple[Tuple[int, YRationalFunction], ...] = field(default=())

    @classmethod
    def build(cls, module: GradedModuleSpec, coefficients: Mapping[int, Coefficient]) -> "GradedClass":
        cleaned = []
        for index, value in sorted(coefficients.items()):
            if not 0 <= index < module.rank:
                raise InvariantViolation("basis-index", (index,), f"module has rank {module.rank}")
            value = YRationalFunction.coerce(value)
            if not value.is_zero():
                cleaned.append((index, value))
        return cls(module, tuple(cleaned))

    @classmethod
    def from_labels(cls, module: GradedModuleSpec, coefficients: Mapping[str, Coefficient]) -> "GradedClass":
        return cls.build(module, {module.index(label): value for label, value in coefficients.items()})

    @classmethod
    def zero(cls, module: GradedModuleSpec) -> "GradedClass":
        return cls(module, ())

    @classmethod
    def unit(cls, module: GradedModuleSpec) -> "GradedClass":
        """The class 1 in a rank-one module concentrated in half degree 0."""
        if module.rank != 1 or module.half_degree(0) != 0:
            raise InvariantViolation("unit-module", (), "unit module must be rank one in half degree 0")
        return cls(module, ((0, ONE),))

    def as_dict(self) -> Dict[int, YRationalFunction]:
        return dict(self.coeffs)

    def coefficient(self, index: int) -> YRationalFunction:
        for i, value in self.coeffs:
            if i == index:
                return value
        return YRationalFunction.constant(0)

    def coefficient_of(self, label: str) -> YRationalFunction:
        return self.coefficient(self.module.index(label))

    def items(self) -> Iterator[Tuple[int, YRationalFunction]]:
        return iter(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_y_free(self) -> bool:
        return all(value.is_constant() for _, value in self.coeffs)

    def degree_zero_part(self) -> YRationalFunction:
        """Sum of the coefficients on half-degree-0 basis elements."""
        total = YRationalFunction.constant(0)
        for index, value in self.coeffs:
            if self.module.half_degree(index) == 0:
                total = total + value
        return total

    def _check_module(self, other: "GradedClass"):
        if self.module != other.module:
            raise ModuleMismatch("classes live in different modules")

    def __add__(self, other: "GradedClass") -> "GradedClass":
        self._check_module(other)
        total = self.as_dict()
        for index, value in other.coeffs:
            total[index] = total[index] + value if index in total else value
        return GradedClass.build(self.module, total)

    def __neg__(self) -> "GradedClass":
        return GradedClass(self.module, tuple((i, -v) for i, v in self.coeffs))

    def __sub__(self, other: "GradedClass") -> "GradedClass":
        return self + (-other)

    def scale(self, factor: Coefficient) -> "GradedClass":
        factor = YRationalFunction.coerce(factor)
        return GradedClass.build(self.module, {i: v * factor for i, v in self.coeffs})

    def map_coefficients(self, transform) -> "GradedClass":
        """Apply transform(half_degree, coefficient) to each coefficient."""
        return GradedClass.build(
            self.module,
            {i: transform(self.module.half_degree(i), v) for i, v in self.coeffs},
        )

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for index, value in self.coeffs:
            text = str(value)
            if value.numerator and len(value.numerator) > 1 and value.is_polynomial():
                text = f"({text})"
            parts.append(f"{text}*{self.module.basis[index][0]}")
        return " + ".join(parts)

    def to_document(self, module_number: int) -> Dict:
        """Serialize as {"module": n, "coeffs": [[label, rational function], ...]}."""
        return {
            "module": module_number,
            "coeffs": [[self.module.basis[i][0], v.to_document()] for i, v in self.coeffs],
        }


@dataclass(frozen=True)
class DegreeMap:
    """
    A degree-preserving linear map between graded modules.

    ``matrix`` maps a source basis index to (target index, rational) pairs.
    """

    source: GradedModuleSpec
    target: GradedModuleSpec
    matrix: Tuple[Tuple[int, Tuple[Tuple[int, Fraction], ...]], ...] = field(default=())

    @classmethod
    def build(
        cls,
        source: GradedModuleSpec,
        target: GradedModuleSpec,
        entries: Iterable[Tuple[int, int, Scalar]],
    ) -> "DegreeMap":
        """
        Build a map from (source index, target index, value) triples.

        Raises:
            InvariantViolation: If an entry is out of range or joins different half degrees
        """
        rows: Dict[int, Dict[int, Fraction]] = {}
        for src, dst, value in entries:
            if not 0 <= src < source.rank or not 0 <= dst < target.rank:
                raise InvariantViolation("basis-index", (src, dst), "map entry out of range")
            value = Fraction(value)
            if not value:
                continue
            if source.half_degree(src) != target.half_degree(dst):
                raise InvariantViolation(
                    "degree-preservation",
                    (src, dst),
                    f"half degree {source.half_degree(src)} mapped to {target.half_degree(dst)}",
                )
            row = rows.setdefault(src, {})
            row[dst] = row.get(dst, Fraction(0)) + value
        matrix = tuple(
            (src, tuple((dst, v) for dst, v in sorted(row.items()) if v))
            for src, row in sorted(rows.items())
        )
        return cls(source, target, tuple((src, row) for src, row in matrix if row))

    @classmethod
    def identity(cls, module: GradedModuleSpec) -> "DegreeMap":
        return cls.build(module, module, [(i, i, 1) for i in range(module.rank)])

    @classmethod
    def zero(cls, source: GradedModuleSpec, target: GradedModuleSpec) -> "DegreeMap":
        return cls(source, target, ())

    def row(self, index: int) -> Tuple[Tuple[int, Fraction], ...]:
        for src, row in self.matrix:
            if src == index:
                return row
        return ()

    def entries(self) -> List[Tuple[int, int, Fraction]]:
        return [(src, dst, v) for src, row in self.matrix for dst, v in row]

    def with_entry(self, src: int, dst: int, value: Scalar) -> "DegreeMap":
        """Copy of the map with entry (src, dst) replaced."""
        kept = [(s, d, v) for s, d, v in self.entries() if (s, d) != (src, dst)]
        return DegreeMap.build(self.source, self.target, kept + [(src, dst, value)])


def adams(r: int, c: GradedClass) -> GradedClass:
    """
    Homological Adams operation: half degree k is scaled by 1/r^k, then y -> y^r.
    """
    if r < 1:
        raise ValueError(f"Adams index must be positive, got {r}")
    if r == 1:
        return c
    return c.map_coefficients(lambda k, v: y_power_substitute(v, r) * Fraction(1, r ** k))


def _normalization_factor(sign: str) -> YRationalFunction:
    if sign == "plus":
        return YRationalFunction.polynomial({0: 1, 1: 1})
    if sign == "minus":
        return YRationalFunction.polynomial({0: 1, 1: -1})
    raise ValueError(f"normalization sign must be 'plus' or 'minus', got {sign!r}")


def normalize(c: GradedClass, sign: str) -> GradedClass:
    """
    Normalization functor: half degree k is multiplied by (1+y)^-k ('plus')
    or (1-y)^-k ('minus', for classes in the T_(-y) convention).
    """
    factor = _normalization_factor(sign)
    return c.map_coefficients(lambda k, v: v / factor ** k if k else v)


def denormalize(c: GradedClass, sign: str) -> GradedClass:
    """Inverse of ``normalize``: half degree k is multiplied by (1 +- y)^k."""
    factor = _normalization_factor(sign)
    return c.map_coefficients(lambda k, v: v * factor ** k if k else v)


def push_forward(m: DegreeMap, c: GradedClass) -> GradedClass:
    """
    Linear image of c under m.

    Raises:
        ModuleMismatch: If c does not live in the source of m
    """
    if c.module != m.source:
        raise ModuleMismatch("class does not live in the source module of the map")
    image: Dict[int, YRationalFunction] = {}
    for src, value in c.coeffs:
        for dst, entry in m.row(src):
            term = value * entry
            image[dst] = image[dst] + term if dst in image else term
    return GradedClass.build(m.target, image)


def specialize_y(c: GradedClass, y0: Scalar, mode: str = "evaluate") -> GradedClass:
    """
    Substitute y = y0 in every coefficient.

    Args:
        c: The class to specialize
        y0: Exact evaluation point
        mode: 'evaluate' for plain evaluation, 'limit' to cancel removable singularities

    Returns:
        A y-free class over the same module

    Raises:
        PoleError: Naming the basis label whose coefficient has a pole at y0
    """
    if mode == "evaluate":
        point_value = rf_evaluate
    elif mode == "limit":
        point_value = rf_limit
    else:
        raise ValueError(f"unknown specialization mode {mode!r}")
    values = {}
    for index, value in c.coeffs:
        try:
            values[index] = point_value(value, y0)
        except PoleError as e:
            raise e.with_label(c.module.basis[index][0]) from e
    logger.debug(f"Specialized {len(values)} coefficients at y = {y0} ({mode})")
    return GradedClass.build(c.module, values)


def scale_by_degree(r: int, c: GradedClass) -> GradedClass:
    """Degree part of the Adams operation only: half degree k scaled by 1/r^k."""
    return c.map_coefficients(lambda k, v: v * Fraction(1, r ** k))


def flip_y_sign(c: GradedClass) -> GradedClass:
    """Substitute y -> -y in every coefficient."""
    return c.map_coefficients(lambda k, v: y_negate(v))
