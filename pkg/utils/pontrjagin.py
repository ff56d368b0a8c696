#!/usr/bin/env python3
"""
Space models, truncated Pontrjagin-ring series and the generating series
of symmetric powers.

A ``SpaceModel`` carries one graded module per symmetric power n = 0..N,
the Pontrjagin product as sparse structure constants and the diagonal
push-forwards d^r from the n = 1 module. ``PontSeries`` values are the
truncated elements sum_n a_n t^n of the resulting ring.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sympy.utilities.iterables import partitions

from utils.coeffs import YRationalFunction
from utils.errors import (
    InvariantViolation,
    ModelMismatch,
    ModuleMismatch,
    NonUnitConstantTerm,
    NonzeroConstantTerm,
)
from utils.graded import DegreeMap, GradedClass, GradedModuleSpec, adams, push_forward


logger = logging.getLogger(__name__)

# (i, j) -> [(k, c), ...]: e_i (x) e_j = sum c * e_k
TensorBlock = Dict[Tuple[int, int], Tuple[Tuple[int, Fraction], ...]]


class SpaceModel:
    """
    Homology of the symmetric powers X^(0..N) with Pontrjagin product and diagonals.

    Args:
        N: Truncation degree
        modules: Graded module for each n = 0..N
        tensors: (n, m) -> block of structure constants into modules[n + m]
        diagonals: r -> DegreeMap d^r from modules[1] to modules[r], r = 1..N
        name: Label used in reports
        validate: Run the full invariant check on construction
    """

    def __init__(
        self,
        N: int,
        modules: Sequence[GradedModuleSpec],
        tensors: Mapping[Tuple[int, int], TensorBlock],
        diagonals: Mapping[int, DegreeMap],
        name: str = "model",
        validate: bool = True,
    ):
        self.N = int(N)
        self.modules = tuple(modules)
        self.tensors = {key: dict(block) for key, block in tensors.items()}
        self.diagonals = dict(diagonals)
        self.name = name
        if validate:
            self.validate()

    def __eq__(self, other):
        if not isinstance(other, SpaceModel):
            return NotImplemented
        if self is other:
            return True
        if self.N != other.N or self.modules != other.modules:
            return False
        if any(self.diagonals.get(r) != other.diagonals.get(r) for r in range(1, self.N + 1)):
            return False
        for n in range(self.N + 1):
            for m in range(self.N + 1 - n):
                if self._nonzero_block(n, m) != other._nonzero_block(n, m):
                    return False
        return True

    __hash__ = None

    def __repr__(self):
        ranks = [module.rank for module in self.modules]
        return f"SpaceModel(name={self.name!r}, N={self.N}, ranks={ranks})"

    def _nonzero_block(self, n: int, m: int) -> TensorBlock:
        return {key: row for key, row in self.tensors.get((n, m), {}).items() if row}

    # -- structure ----------------------------------------------------------

    def basis_product(self, n: int, i: int, m: int, j: int) -> Dict[int, Fraction]:
        """Structure constants of e_i (degree n) times e_j (degree m)."""
        return dict(self.tensors.get((n, m), {}).get((i, j), ()))

    def multiply(self, x: GradedClass, n: int, z: GradedClass, m: int) -> GradedClass:
        """Pontrjagin product of a class on X^(n) with a class on X^(m)."""
        if n + m > self.N:
            raise ValueError(f"product lands in degree {n + m} above truncation {self.N}")
        if x.module != self.modules[n] or z.module != self.modules[m]:
            raise ModuleMismatch(f"factors do not live in modules {n} and {m}")
        block = self.tensors.get((n, m), {})
        result: Dict[int, YRationalFunction] = {}
        for i, xv in x.coeffs:
            for j, zv in z.coeffs:
                row = block.get((i, j))
                if not row:
                    continue
                product = xv * zv
                for k, c in row:
                    term = product * c
                    result[k] = result[k] + term if k in result else term
        return GradedClass.build(self.modules[n + m], result)

    def diagonal(self, r: int) -> DegreeMap:
        return self.diagonals[r]

    def unit_class(self) -> GradedClass:
        return GradedClass.unit(self.modules[0])

    # -- validation ---------------------------------------------------------

    def validate(self) -> None:
        """
        Check every structural invariant of the model.

        Raises:
            InvariantViolation: Naming the invariant and the offending indices
        """
        if self.N < 0:
            raise InvariantViolation("truncation", (self.N,), "N must be non-negative")
        if len(self.modules) != self.N + 1:
            raise InvariantViolation("module-count", (len(self.modules),), f"expected {self.N + 1} modules")
        unit_module = self.modules[0]
        if unit_module.rank != 1 or unit_module.half_degree(0) != 0:
            raise InvariantViolation("unit-module", (0,), "modules[0] must be rank one in half degree 0")

        for (n, m), block in self.tensors.items():
            if n < 0 or m < 0 or n + m > self.N:
                raise InvariantViolation("tensor-range", (n, m), "tensor outside truncation")
            source_n, source_m, target = self.modules[n], self.modules[m], self.modules[n + m]
            for (i, j), row in block.items():
                if not (0 <= i < source_n.rank and 0 <= j < source_m.rank):
                    raise InvariantViolation("basis-index", (n, m, i, j), "tensor factor out of range")
                for k, value in row:
                    if not 0 <= k < target.rank:
                        raise InvariantViolation("basis-index", (n, m, i, j, k), "tensor target out of range")
                    if value and source_n.half_degree(i) + source_m.half_degree(j) != target.half_degree(k):
                        raise InvariantViolation(
                            "degree-preservation", (n, m, i, j, k), "Pontrjagin product must add half degrees"
                        )

        for m in range(self.N + 1):
            for j in range(self.modules[m].rank):
                expected = {j: Fraction(1)}
                if _clean(self.basis_product(0, 0, m, j)) != expected:
                    raise InvariantViolation("unit-law", (0, m, 0, j), "1 * e_j != e_j")
                if _clean(self.basis_product(m, j, 0, 0)) != expected:
                    raise InvariantViolation("unit-law", (m, 0, j, 0), "e_j * 1 != e_j")

        for n in range(self.N + 1):
            for m in range(self.N + 1 - n):
                for i in range(self.modules[n].rank):
                    for j in range(self.modules[m].rank):
                        if _clean(self.basis_product(n, i, m, j)) != _clean(self.basis_product(m, j, n, i)):
                            raise InvariantViolation("commutativity", (n, m, i, j), "e_i * e_j != e_j * e_i")

        for n in range(1, self.N + 1):
            for m in range(1, self.N + 1 - n):
                for k in range(1, self.N + 1 - n - m):
                    self._check_associativity(n, m, k)

        for r in range(1, self.N + 1):
            if r not in self.diagonals:
                raise InvariantViolation("diagonal-missing", (r,), f"no diagonal d^{r}")
            d = self.diagonals[r]
            if d.source != self.modules[1] or d.target != self.modules[r]:
                raise InvariantViolation("diagonal-modules", (r,), f"d^{r} must map modules[1] to modules[{r}]")
        if self.N >= 1 and self.diagonals[1] != DegreeMap.identity(self.modules[1]):
            raise InvariantViolation("diagonal-identity", (1,), "d^1 must be the identity")
        logger.debug(f"Validated {self!r}")

    def _check_associativity(self, n: int, m: int, k: int) -> None:
        for i in range(self.modules[n].rank):
            for j in range(self.modules[m].rank):
                left_first = self.basis_product(n, i, m, j)
                for l in range(self.modules[k].rank):
                    left: Dict[int, Fraction] = {}
                    for a, c in left_first.items():
                        for b, e in self.basis_product(n + m, a, k, l).items():
                            left[b] = left.get(b, Fraction(0)) + c * e
                    right: Dict[int, Fraction] = {}
                    for a, c in self.basis_product(m, j, k, l).items():
                        for b, e in self.basis_product(n, i, m + k, a).items():
                            right[b] = right.get(b, Fraction(0)) + c * e
                    if _clean(left) != _clean(right):
                        raise InvariantViolation(
                            "associativity", (n, m, k, i, j, l), "(e_i * e_j) * e_l != e_i * (e_j * e_l)"
                        )

    def truncated(self, N: int) -> "SpaceModel":
        """The same model restricted to X^(0..N), N <= self.N."""
        if not 0 <= N <= self.N:
            raise ValueError(f"cannot truncate a model with N={self.N} to {N}")
        tensors = {(n, m): block for (n, m), block in self.tensors.items() if n + m <= N}
        diagonals = {r: d for r, d in self.diagonals.items() if r <= N}
        return SpaceModel(N, self.modules[: N + 1], tensors, diagonals, name=self.name, validate=False)

    # -- perturbation -------------------------------------------------------

    def with_tensor_entry(self, n: int, m: int, i: int, j: int, k: int, value, symmetric: bool = True) -> "SpaceModel":
        """Copy of the model with one structure constant replaced (no validation)."""
        tensors = {key: dict(block) for key, block in self.tensors.items()}

        def put(a, b, p, q):
            block = tensors.setdefault((a, b), {})
            row = {t: c for t, c in block.get((p, q), ())}
            row[k] = Fraction(value)
            block[(p, q)] = tuple(sorted((t, c) for t, c in row.items() if c))

        put(n, m, i, j)
        if symmetric:
            put(m, n, j, i)
        return SpaceModel(self.N, self.modules, tensors, self.diagonals, name=f"{self.name}*", validate=False)

    def with_diagonal_entry(self, r: int, src: int, dst: int, value) -> "SpaceModel":
        """Copy of the model with one diagonal entry replaced (no validation)."""
        diagonals = dict(self.diagonals)
        diagonals[r] = diagonals[r].with_entry(src, dst, value)
        return SpaceModel(self.N, self.modules, self.tensors, diagonals, name=f"{self.name}*", validate=False)


def _clean(row: Mapping[int, Fraction]) -> Dict[int, Fraction]:
    return {k: Fraction(v) for k, v in row.items() if v}


@dataclass(frozen=True)
class PontSeries:
    """Truncated series a_0 + a_1 t + ... + a_N t^N with a_n on X^(n)."""

    model: SpaceModel
    terms: Tuple[GradedClass, ...]

    def __post_init__(self):
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        if len(terms) != self.model.N + 1:
            raise InvariantViolation("series-length", (len(terms),), f"expected {self.model.N + 1} terms")
        for n, term in enumerate(terms):
            if term.module != self.model.modules[n]:
                raise ModuleMismatch(f"term {n} does not live in modules[{n}]")

    def __eq__(self, other):
        if not isinstance(other, PontSeries):
            return NotImplemented
        return self.model == other.model and self.terms == other.terms

    @property
    def N(self) -> int:
        return self.model.N

    def __getitem__(self, n: int) -> GradedClass:
        return self.terms[n]

    def __add__(self, other: "PontSeries") -> "PontSeries":
        _check_same_model(self, other)
        return PontSeries(self.model, tuple(a + b for a, b in zip(self.terms, other.terms)))

    def __sub__(self, other: "PontSeries") -> "PontSeries":
        _check_same_model(self, other)
        return PontSeries(self.model, tuple(a - b for a, b in zip(self.terms, other.terms)))

    def scale(self, factor) -> "PontSeries":
        return PontSeries(self.model, tuple(term.scale(factor) for term in self.terms))

    def map_terms(self, transform) -> "PontSeries":
        """Apply transform(n, a_n) to each coefficient; results must stay in modules[n]."""
        return PontSeries(self.model, tuple(transform(n, term) for n, term in enumerate(self.terms)))

    def to_document(self) -> Dict:
        """Serialize as {"N": n, "terms": [GradedClass, ...]}."""
        return {"N": self.N, "terms": [term.to_document(n) for n, term in enumerate(self.terms)]}


def _check_same_model(a: PontSeries, b: PontSeries) -> None:
    if a.model is not b.model and a.model != b.model:
        raise ModelMismatch("series are built over different space models")


def zero_series(model: SpaceModel) -> PontSeries:
    return PontSeries(model, tuple(GradedClass.zero(module) for module in model.modules))


def unit_series(model: SpaceModel) -> PontSeries:
    terms = [model.unit_class()] + [GradedClass.zero(module) for module in model.modules[1:]]
    return PontSeries(model, tuple(terms))


def pont_mul(a: PontSeries, b: PontSeries) -> PontSeries:
    """
    Cauchy product c_n = sum_{i+j=n} a_i (.) b_j, truncated at N.

    Raises:
        ModelMismatch: If the series use different models
    """
    _check_same_model(a, b)
    model = a.model
    terms = []
    for n in range(model.N + 1):
        total = GradedClass.zero(model.modules[n])
        for i in range(n + 1):
            if a.terms[i].is_zero() or b.terms[n - i].is_zero():
                continue
            total = total + model.multiply(a.terms[i], i, b.terms[n - i], n - i)
        terms.append(total)
    return PontSeries(model, tuple(terms))


def pont_exp(a: PontSeries) -> PontSeries:
    """
    Exponential sum_k a^k / k! of a series with zero constant term.

    Computed by Horner accumulation 1 + a(1 + a/2(1 + a/3(...))).

    Raises:
        NonzeroConstantTerm: If a_0 != 0
    """
    if not a.terms[0].is_zero():
        raise NonzeroConstantTerm("exponential needs a zero constant term")
    unit = unit_series(a.model)
    result = unit
    for k in range(a.N, 0, -1):
        result = unit + pont_mul(a, result).scale(Fraction(1, k))
    return result


def pont_log(u: PontSeries) -> PontSeries:
    """
    Logarithm of a series with unit constant term.

    Raises:
        NonUnitConstantTerm: If u_0 is not the unit class
    """
    if u.terms[0] != u.model.unit_class():
        raise NonUnitConstantTerm("logarithm needs the unit as constant term")
    x = u - unit_series(u.model)
    total = zero_series(u.model)
    power = x
    for k in range(1, u.N + 1):
        total = total + power.scale(Fraction((-1) ** (k + 1), k))
        power = pont_mul(power, x)
    return total


def adams_diagonal_terms(model: SpaceModel, base: GradedClass) -> List[GradedClass]:
    """Psi_r(d^r_* base) for r = 1..N; index 0 holds the zero class of modules[0]."""
    if model.N >= 1 and base.module != model.modules[1]:
        raise ModuleMismatch("base class must live in modules[1]")
    terms = [GradedClass.zero(model.modules[0])]
    for r in range(1, model.N + 1):
        terms.append(adams(r, push_forward(model.diagonal(r), base)))
    return terms


def symmetric_class_series(
    model: SpaceModel,
    base: GradedClass,
    twist: Optional[YRationalFunction] = None,
) -> PontSeries:
    """
    Generating series exp(sum_r Psi_r(d^r_* base) t^r / r) of the symmetric powers.

    Args:
        model: Space model of X and its symmetric products
        base: Class on X = X^(1), in the T_(-y) convention
        twist: Optional scalar genus chi_{-y}(X') multiplying base, for the
            projection X x X' -> X

    Returns:
        The series whose t^n coefficient is the class of the n-th symmetric power
    """
    if model.N >= 1 and base.module != model.modules[1]:
        raise ModuleMismatch("base class must live in modules[1]")
    if twist is not None:
        base = base.scale(twist)
    inner = adams_diagonal_terms(model, base)
    exponent = PontSeries(
        model,
        tuple([inner[0]] + [inner[r].scale(Fraction(1, r)) for r in range(1, model.N + 1)]),
    )
    logger.debug(f"Building symmetric class series on {model!r}")
    return pont_exp(exponent)


@dataclass(frozen=True)
class CycleType:
    """Cycle type of a permutation of n letters: multiplicities (k_1, ..., k_n)."""

    n: int
    multiplicities: Tuple[int, ...]

    def __post_init__(self):
        if any(k < 0 for k in self.multiplicities):
            raise InvariantViolation("cycle-type", self.multiplicities, "negative multiplicity")
        if sum((r + 1) * k for r, k in enumerate(self.multiplicities)) != self.n:
            raise InvariantViolation("cycle-type", self.multiplicities, f"does not partition {self.n}")

    def k(self, r: int) -> int:
        return self.multiplicities[r - 1] if 1 <= r <= len(self.multiplicities) else 0

    @property
    def weight(self) -> Fraction:
        """N_Pi / n! = 1 / prod_r (k_r! r^k_r)."""
        denominator = 1
        for r, k in enumerate(self.multiplicities, start=1):
            denominator *= math.factorial(k) * r ** k
        return Fraction(1, denominator)

    @property
    def count(self) -> int:
        """Number of permutations with this cycle type."""
        return int(math.factorial(self.n) * self.weight)


def enumerate_cycle_types(n: int) -> List[Tuple[CycleType, int]]:
    """
    All cycle types of Sigma_n with their class sizes, in lexicographic order
    of (k_1, ..., k_n).
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    types = []
    for parts in partitions(n):
        parts = dict(parts)
        types.append(CycleType(n, tuple(parts.get(r, 0) for r in range(1, n + 1))))
    types.sort(key=lambda ct: ct.multiplicities)
    return [(ct, ct.count) for ct in types]


def partition_sum_series(model: SpaceModel, base: GradedClass, workers: int = 1) -> PontSeries:
    """
    Generating series computed directly as a sum over cycle types.

    The t^n coefficient is sum_Pi (N_Pi / n!) prod_r (d^r_* Psi_r base)^(k_r),
    with no exponential involved. Degrees are independent and are evaluated
    on a thread pool when workers > 1; the result does not depend on it.
    """
    if model.N >= 1 and base.module != model.modules[1]:
        raise ModuleMismatch("base class must live in modules[1]")
    # push forward after the Adams operation, the reverse of adams_diagonal_terms
    localized = [GradedClass.zero(model.modules[0])] + [
        push_forward(model.diagonal(r), adams(r, base)) for r in range(1, model.N + 1)
    ]
    powers: Dict[Tuple[int, int], GradedClass] = {}

    def power(r: int, k: int) -> GradedClass:
        # lives in modules[r * k]
        if k == 0:
            return model.unit_class()
        if (r, k) not in powers:
            powers[(r, k)] = model.multiply(power(r, k - 1), r * (k - 1), localized[r], r)
        return powers[(r, k)]

    for r in range(1, model.N + 1):
        for k in range(1, model.N // r + 1):
            power(r, k)

    def coefficient(n: int) -> GradedClass:
        total = GradedClass.zero(model.modules[n])
        for cycle_type, _ in enumerate_cycle_types(n):
            product, degree = model.unit_class(), 0
            for r, k in enumerate(cycle_type.multiplicities, start=1):
                if k:
                    product = model.multiply(product, degree, powers[(r, k)], r * k)
                    degree += r * k
            total = total + product.scale(cycle_type.weight)
        return total

    degrees = range(model.N + 1)
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            terms = list(pool.map(coefficient, degrees))
    else:
        terms = [coefficient(n) for n in degrees]
    return PontSeries(model, tuple(terms))


def push_forward_series(
    maps: Sequence[DegreeMap],
    series: PontSeries,
    target: SpaceModel,
) -> PontSeries:
    """
    Termwise push-forward f^(n)_* of a series into the Pontrjagin ring of another model.

    Args:
        maps: One DegreeMap per n = 0..N from series.model.modules[n] to target.modules[n]
        series: Series to push forward
        target: Model of the target space (same truncation)
    """
    if target.N != series.N or len(maps) != series.N + 1:
        raise ModelMismatch("push-forward needs one map per degree and equal truncation")
    terms = []
    for n, (m, term) in enumerate(zip(maps, series.terms)):
        if m.target != target.modules[n]:
            raise ModuleMismatch(f"map {n} does not land in target.modules[{n}]")
        terms.append(push_forward(m, term))
    return PontSeries(target, tuple(terms))
