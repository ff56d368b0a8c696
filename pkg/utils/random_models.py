#!/usr/bin/env python3
"""
Seeded random space models, classes and series for the property suites.

A random model has basis elements e(n, a, s) of X^(n) with half degree
a * step (a <= min(n * growth, cap)) and a colour s in Z/g. Products are
coboundaries of random weights w:

    e(n, a, s) (.) e(m, b, t) = w(n+m, a+b, s+t) / (w(n, a, s) w(m, b, t)) e(n+m, a+b, s+t)

and vanish when a + b leaves the allowed range. Such tensors are
commutative, associative and unital, so every seed yields a valid model.
"""

import logging
import random
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from utils.coeffs import YRationalFunction
from utils.graded import DegreeMap, GradedClass, GradedModuleSpec
from utils.pontrjagin import PontSeries, SpaceModel


logger = logging.getLogger(__name__)

# (colours g, cap, step): every shape has rank <= 3 and half degrees <= 3.
SHAPES = [
    (1, 1, 1),
    (1, 1, 2),
    (1, 1, 3),
    (1, 2, 1),
    (2, 0, 1),
    (3, 0, 1),
]


def _nonzero_rational(rng: random.Random, bound: int = 3) -> Fraction:
    numerator = 0
    while numerator == 0:
        numerator = rng.randint(-bound, bound)
    return Fraction(numerator, rng.randint(1, bound))


def random_model(seed: int, N: int) -> SpaceModel:
    """
    Random valid model with truncation N, determined by the seed.

    Args:
        seed: Seed of the generator
        N: Truncation degree

    Returns:
        A validated SpaceModel named 'random-<seed>'
    """
    rng = random.Random(seed)
    colours, cap, step = SHAPES[rng.randrange(len(SHAPES))]
    growth = rng.choice([1, 2])

    def allowed(n: int) -> List[Tuple[int, int]]:
        if n == 0:
            return [(0, 0)]
        bound = min(n * growth, cap)
        keys = []
        for a in range(bound + 1):
            for s in range(colours):
                keys.append((a, s))
        return keys

    keys = [allowed(n) for n in range(N + 1)]
    modules = [
        GradedModuleSpec(tuple((f"e{a}_{s}", a * step) for a, s in degree_keys)) for degree_keys in keys
    ]
    index = [{key: i for i, key in enumerate(degree_keys)} for degree_keys in keys]
    weights: Dict[Tuple[int, int, int], Fraction] = {(0, 0, 0): Fraction(1)}
    for n in range(1, N + 1):
        for a, s in keys[n]:
            weights[(n, a, s)] = _nonzero_rational(rng)

    tensors = {}
    for n in range(N + 1):
        for m in range(N + 1 - n):
            block = {}
            for a, s in keys[n]:
                for b, t in keys[m]:
                    product = (a + b, (s + t) % colours)
                    if product not in index[n + m]:
                        continue
                    value = weights[(n + m,) + product] / (weights[(n, a, s)] * weights[(m, b, t)])
                    block[(index[n][(a, s)], index[m][(b, t)])] = ((index[n + m][product], value),)
            tensors[(n, m)] = block

    diagonals = {}
    for r in range(1, N + 1):
        if r == 1:
            diagonals[r] = DegreeMap.identity(modules[1])
            continue
        entries = []
        for i, (_, half) in enumerate(modules[1].basis):
            for j in modules[r].indices_of_half_degree(half):
                entries.append((i, j, rng.randint(-2, 2)))
        diagonals[r] = DegreeMap.build(modules[1], modules[r], entries)

    model = SpaceModel(N, modules, tensors, diagonals, name=f"random-{seed}")
    logger.debug(f"Random model {model!r} with shape colours={colours}, cap={cap}, step={step}")
    return model


def random_coefficient(rng: random.Random, y_degree: int = 2, allow_poles: bool = False) -> YRationalFunction:
    """Random polynomial in y with small integer coefficients, optionally divided by 1+y."""
    value = YRationalFunction.polynomial({e: rng.randint(-3, 3) for e in range(y_degree + 1)})
    if allow_poles and rng.random() < 0.25:
        value = value / YRationalFunction.polynomial({0: 1, 1: 1})
    return value


def random_class(
    module: GradedModuleSpec,
    rng: random.Random,
    y_degree: int = 2,
    y_free: bool = False,
    allow_poles: bool = False,
) -> GradedClass:
    """Random class in a module; y_free gives rational coefficients only."""
    coefficients = {}
    for i in range(module.rank):
        if y_free:
            coefficients[i] = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        else:
            coefficients[i] = random_coefficient(rng, y_degree, allow_poles)
    return GradedClass.build(module, coefficients)


def random_series(
    model: SpaceModel,
    rng: random.Random,
    constant: Optional[str] = None,
    y_degree: int = 1,
) -> PontSeries:
    """
    Random series over the model.

    Args:
        constant: None for a random constant term, 'zero' or 'unit'
    """
    terms = [random_class(module, rng, y_degree) for module in model.modules]
    if constant == "zero":
        terms[0] = GradedClass.zero(model.modules[0])
    elif constant == "unit":
        terms[0] = model.unit_class()
    return PontSeries(model, tuple(terms))
