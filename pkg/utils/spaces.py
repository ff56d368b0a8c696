#!/usr/bin/env python3
"""
Builtin space models and direct characteristic-class calculators for P^n.

The point model and the P^1 model (whose symmetric powers are the projective
spaces P^n) are built here, together with the Hirzebruch, Todd, L and Chern
classes of P^n computed from Chern roots. Truncated power series in the
variable alpha are expanded with sympy's ring_series over Q[alpha, y].
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, List, Tuple

from sympy.polys.domains import QQ
from sympy.polys.ring_series import (
    mul_xin,
    rs_exp,
    rs_mul,
    rs_pow,
    rs_series_inversion,
    rs_subs,
    rs_tanh,
)
from sympy.polys.rings import ring

from utils.coeffs import YRationalFunction, from_qq
from utils.graded import (
    DegreeMap,
    GradedClass,
    GradedModuleSpec,
    adams,
    flip_y_sign,
    normalize,
    specialize_y,
)
from utils.pontrjagin import SpaceModel


logger = logging.getLogger(__name__)

# Series in alpha with polynomial coefficients in y.
ALPHA_RING, _ALPHA, _YA = ring("alpha, y", QQ)

GENERA = ("todd", "l", "chern")


@dataclass(frozen=True)
class TruncatedAlphaSeries:
    """sum_k c_k alpha^k mod alpha^(D+1) with Q(y) coefficients."""

    coefficients: Tuple[YRationalFunction, ...]

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k: int) -> YRationalFunction:
        return self.coefficients[k]

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coefficients):
            if c.is_zero():
                continue
            power = "" if k == 0 else ("*alpha" if k == 1 else f"*alpha^{k}")
            parts.append(f"({c}){power}")
        return " + ".join(parts) or "0"


def _alpha_coefficients(p, order: int) -> List[YRationalFunction]:
    """Split an element of Q[alpha, y] into its alpha^k coefficients, k <= order."""
    by_power: List[Dict[int, Fraction]] = [{} for _ in range(order + 1)]
    for (k, e), c in p.items():
        if k <= order:
            by_power[k][e] = from_qq(c)
    return [YRationalFunction.polynomial(terms) for terms in by_power]


def _shift_down(p):
    """p / alpha for a series without alpha-free terms."""
    return mul_xin(p, 0, -1)


@lru_cache(maxsize=None)
def _todd_series(prec: int):
    """alpha / (1 - e^-alpha) mod alpha^prec."""
    e = rs_exp(-_ALPHA, _ALPHA, prec + 1)
    return rs_series_inversion(_shift_down(ALPHA_RING.one - e), _ALPHA, prec)


@lru_cache(maxsize=None)
def _l_series(prec: int):
    """alpha / tanh(alpha) mod alpha^prec."""
    return rs_series_inversion(_shift_down(rs_tanh(_ALPHA, _ALPHA, prec + 1)), _ALPHA, prec)


@lru_cache(maxsize=None)
def _q_series(prec: int):
    """Q_y(alpha) = alpha (1 + y e^-alpha) / (1 - e^-alpha)."""
    e = rs_exp(-_ALPHA, _ALPHA, prec)
    return rs_mul(_todd_series(prec), ALPHA_RING.one + _YA * e, _ALPHA, prec)


@lru_cache(maxsize=None)
def _q_normalized_series(prec: int):
    """Q_y(alpha (1+y)) / (1+y); the rescaled series is divisible by 1+y."""
    rescaled = rs_subs(_q_series(prec), {_ALPHA: _ALPHA * (1 + _YA)}, _ALPHA, prec)
    return rescaled.exquo(1 + _YA)


def _genus_series(genus: str, prec: int):
    if genus == "todd":
        return _todd_series(prec)
    if genus == "l":
        return _l_series(prec)
    if genus == "chern":
        return ALPHA_RING.one + _ALPHA
    raise ValueError(f"unknown genus {genus!r}; expected one of {', '.join(GENERA)}")


def q_series(order: int, normalized: bool = False) -> TruncatedAlphaSeries:
    """
    Expansion of Q_y(alpha) (or the normalized Q^_y(alpha)) up to alpha^order.

    Args:
        order: Highest alpha power kept
        normalized: Return Q^_y(alpha) = Q_y(alpha (1+y)) / (1+y)

    Returns:
        The truncated series with exact Q(y) coefficients
    """
    if order < 0:
        raise ValueError(f"order must be non-negative, got {order}")
    p = _q_normalized_series(order + 1) if normalized else _q_series(order + 1)
    return TruncatedAlphaSeries(tuple(_alpha_coefficients(p, order)))


@lru_cache(maxsize=None)
def pn_module(n: int) -> GradedModuleSpec:
    """Basis b0..bn of H_*(P^n); b_a is a linear P^a, at half degree a."""
    return GradedModuleSpec(tuple((f"b{a}", a) for a in range(n + 1)))


def _cap(n: int, coefficients: List[YRationalFunction]) -> GradedClass:
    """Cap a polynomial in the hyperplane class h with [P^n]: h^k becomes b_(n-k)."""
    return GradedClass.build(pn_module(n), {n - k: c for k, c in enumerate(coefficients[: n + 1])})


def hirzebruch_class_pn(n: int) -> GradedClass:
    """
    T_y*(P^n) from the Euler sequence: Q_y(h)^(n+1) / (1+y) capped with [P^n].
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    total = rs_pow(_q_series(n + 1), n + 1, _ALPHA, n + 1)
    one_plus_y = YRationalFunction.polynomial({0: 1, 1: 1})
    return _cap(n, [c / one_plus_y for c in _alpha_coefficients(total, n)])


def normalized_hirzebruch_class_pn(n: int) -> GradedClass:
    """T^_y*(P^n) = Q^_y(h)^(n+1) capped with [P^n]; Q^_y(0) = 1."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    total = rs_pow(_q_normalized_series(n + 1), n + 1, _ALPHA, n + 1)
    return _cap(n, _alpha_coefficients(total, n))


def genus_class_pn(n: int, genus: str) -> GradedClass:
    """
    Todd, L or Chern class of P^n with rational coefficients.

    Args:
        n: Dimension of the projective space
        genus: 'todd' for h/(1-e^-h), 'l' for h/tanh h, 'chern' for 1+h

    Returns:
        The power series to the (n+1)-th power, capped with [P^n]
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    total = rs_pow(_genus_series(genus, n + 1), n + 1, _ALPHA, n + 1)
    return _cap(n, _alpha_coefficients(total, n))


def hirzebruch_base_p1() -> GradedClass:
    """T_(-y)*(P^1) = (1-y) b1 + (1+y) b0, the base class of the P^1 series."""
    return flip_y_sign(hirzebruch_class_pn(1))


def adams_normalized_limit(r: int, c: GradedClass) -> GradedClass:
    """
    lim_{y->1} of the (1-y)-normalization of Psi_r(c), for c in the T_(-y) convention.

    Applied to T_(-y)*(X) the result is the Chern class c_*(X) for every r.
    """
    return specialize_y(normalize(adams(r, c), "minus"), 1, mode="limit")


# -- builtin models -----------------------------------------------------------


def point_model(N: int) -> SpaceModel:
    """
    X = pt: every symmetric power is a point, all structure maps are 1.

    Built without running SpaceModel.validate, which the model passes.
    """
    if N < 0:
        raise ValueError(f"N must be non-negative, got {N}")
    module = GradedModuleSpec((("pt", 0),))
    modules = [module] * (N + 1)
    one = ((0, Fraction(1)),)
    tensors = {(n, m): {(0, 0): one} for n in range(N + 1) for m in range(N + 1 - n)}
    diagonals = {r: DegreeMap.identity(module) for r in range(1, N + 1)}
    return SpaceModel(N, modules, tensors, diagonals, name="point", validate=False)


def p1_model(N: int) -> SpaceModel:
    """
    X = P^1 with Sym^n P^1 = P^n.

    The product of linear subspaces is b_a (.) b_b = C(a+b, a) b_(a+b); the
    diagonal d^r sends b0 to b0 and b1 to r b1 (the rational normal curve).
    Built without running SpaceModel.validate, which the model passes.
    """
    if N < 0:
        raise ValueError(f"N must be non-negative, got {N}")
    modules = [pn_module(n) for n in range(N + 1)]
    tensors = {}
    for n in range(N + 1):
        for m in range(N + 1 - n):
            tensors[(n, m)] = {
                (a, b): ((a + b, Fraction(comb(a + b, a))),) for a in range(n + 1) for b in range(m + 1)
            }
    diagonals = {}
    for r in range(1, N + 1):
        diagonals[r] = DegreeMap.build(modules[1], modules[r], [(0, 0, 1), (1, 1, r)])
    logger.debug(f"Built the P^1 model up to N={N}")
    return SpaceModel(N, modules, tensors, diagonals, name="p1", validate=False)


def degree_maps(model: SpaceModel, point: SpaceModel) -> List[DegreeMap]:
    """Push-forward to a point in each degree: half-degree-0 basis elements map to 1."""
    maps = []
    for n in range(model.N + 1):
        source = model.modules[n]
        entries = [(i, 0, 1) for i in source.indices_of_half_degree(0)]
        maps.append(DegreeMap.build(source, point.modules[n], entries))
    return maps


def builtin_model(name: str, N: int) -> SpaceModel:
    """Builtin model by name: 'point' or 'p1'."""
    if name == "point":
        return point_model(N)
    if name == "p1":
        return p1_model(N)
    raise ValueError(f"unknown builtin model {name!r}")


def builtin_base(model: SpaceModel, kind: str) -> GradedClass:
    """
    Base class on X = X^(1) of a builtin model.

    'hirzebruch' is T_(-y)*(X); 'todd', 'l' and 'chern' are the y-free genus
    classes. On the point every one of them is the unit.
    """
    if model.N < 1:
        raise ValueError("a base class needs a model with N >= 1")
    module = model.modules[1]
    if model.name == "point":
        if kind not in ("hirzebruch",) + GENERA:
            raise ValueError(f"unknown base class {kind!r}")
        return GradedClass.build(module, {0: 1})
    if model.name == "p1":
        if kind == "hirzebruch":
            base = hirzebruch_base_p1()
        else:
            base = genus_class_pn(1, kind)
        return GradedClass.build(module, base.as_dict())
    raise ValueError(f"no builtin base classes for model {model.name!r}")
