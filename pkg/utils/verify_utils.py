#!/usr/bin/env python3
"""
Verification suites for the symmetric product engine.

Each suite checks a family of exact identities and returns one
``VerificationResult`` per identity:

    p1               P^1 series against the direct P^n classes, with the
                     Todd, Chern and L specializations
    oracle           exp formula against the sum over cycle types
    genera           Macdonald, Zagier and chi_y closed forms
    specializations  verify_specialization on the builtin models
    laws             ring and operator laws on random inputs
    sensitivity      perturbed P^1 structure constants must break the P^1 identity
                     or the model invariants
"""

import logging
import random
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from utils.coeffs import YRationalFunction, rf_arith
from utils.errors import ConfigurationError, InvariantViolation, SymprodError
from utils.genera import (
    ScalarSeries,
    arithmetic_genus_series,
    chi_series,
    degree_series,
    even_factor_series,
    macdonald_series,
    zagier_exp_form,
    zagier_signature_series,
)
from utils.graded import (
    GradedClass,
    adams,
    denormalize,
    flip_y_sign,
    normalize,
    push_forward,
    scale_by_degree,
    specialize_y,
)
from utils.pipelines import (
    VerificationResult,
    chern_limit_series,
    chern_series_direct,
    compare_series,
    l_series,
    l_series_factors,
    todd_series_direct,
    verify_specialization,
)
from utils.pontrjagin import (
    PontSeries,
    SpaceModel,
    partition_sum_series,
    pont_exp,
    pont_log,
    pont_mul,
    push_forward_series,
    symmetric_class_series,
    unit_series,
)
from utils.random_models import random_class, random_coefficient, random_model, random_series
from utils.spaces import (
    adams_normalized_limit,
    degree_maps,
    genus_class_pn,
    hirzebruch_base_p1,
    hirzebruch_class_pn,
    normalized_hirzebruch_class_pn,
    p1_model,
    point_model,
)


logger = logging.getLogger(__name__)

SUITES = ("p1", "oracle", "genera", "specializations", "laws", "sensitivity")

ONE_PLUS_Y = YRationalFunction.polynomial({0: 1, 1: 1})


def compare_scalar(identity: str, left: ScalarSeries, right: ScalarSeries) -> VerificationResult:
    """Exact comparison of two scalar series."""
    if left.N != right.N:
        return VerificationResult(identity, False, detail=f"truncations differ: {left.N} vs {right.N}")
    for n in range(left.N + 1):
        if left[n] != right[n]:
            return VerificationResult(identity, False, detail=f"t^{n}: {left[n]} != {right[n]}")
    return VerificationResult(identity, True)


def compare_classes(identity: str, left: GradedClass, right: GradedClass) -> VerificationResult:
    if left == right:
        return VerificationResult(identity, True)
    return VerificationResult(identity, False, detail=f"{left} != {right}")


def check(identity: str, condition: Callable[[], bool], detail: str = "") -> VerificationResult:
    """Evaluate a boolean identity; engine errors count as failures."""
    try:
        passed = bool(condition())
    except SymprodError as e:
        return VerificationResult(identity, False, detail=f"{type(e).__name__}: {e}")
    return VerificationResult(identity, passed, detail="" if passed else detail)


def _reference(model: SpaceModel, classes: Sequence[GradedClass]) -> PontSeries:
    return PontSeries(model, tuple(classes))


def _p1_base(model: SpaceModel) -> GradedClass:
    return GradedClass.build(model.modules[1], hirzebruch_base_p1().as_dict())


def _p1_series(N: int, model: Optional[SpaceModel] = None) -> PontSeries:
    model = model if model is not None else p1_model(N)
    return symmetric_class_series(model, _p1_base(model))


def suite_p1(N: int) -> List[VerificationResult]:
    """The P^1 series and its Todd, Chern and L specializations, n <= N."""
    model = p1_model(N)
    series = _p1_series(N, model)
    results = [
        compare_series(
            "symmetric powers of P^1 give T_(-y)*(P^n)",
            series,
            _reference(model, [flip_y_sign(hirzebruch_class_pn(n)) for n in range(N + 1)]),
        )
    ]

    todd = series.map_terms(lambda n, a: specialize_y(a, 0))
    results.append(
        compare_series("y = 0 equals the direct Todd series", todd, todd_series_direct(model, genus_class_pn(1, "todd")))
    )
    results.append(
        compare_series(
            "Todd series equals td_*(P^n)",
            todd,
            _reference(model, [genus_class_pn(n, "todd") for n in range(N + 1)]),
        )
    )
    results.append(
        compare_scalar("arithmetic genera are (1-t)^-1", degree_series(todd), arithmetic_genus_series(1, N))
    )

    chern = chern_limit_series(model, _p1_base(model))
    results.append(
        compare_series(
            "Chern limit equals the direct Chern series",
            chern,
            chern_series_direct(model, genus_class_pn(1, "chern")),
        )
    )
    results.append(
        compare_series(
            "Chern series equals c_*(P^n)",
            chern,
            _reference(model, [genus_class_pn(n, "chern") for n in range(N + 1)]),
        )
    )
    results.append(compare_scalar("Euler characteristics are (1-t)^-2", degree_series(chern), macdonald_series(2, N)))

    l_classes = series.map_terms(lambda n, a: scale_by_degree(2, specialize_y(a, -1)))
    results.append(
        compare_series(
            "Psi_2 of T_1 equals the direct L series",
            l_classes,
            l_series(model, genus_class_pn(1, "l"), 2),
        )
    )
    results.append(
        compare_series(
            "L series equals L_*(P^n)",
            l_classes,
            _reference(model, [genus_class_pn(n, "l") for n in range(N + 1)]),
        )
    )
    results.append(
        compare_scalar("signatures are 1, 0, 1, 0, ...", degree_series(l_classes), zagier_signature_series(0, 2, N))
    )
    odd_exponent, even_factor = l_series_factors(model, genus_class_pn(1, "l"), 2)
    results.append(
        check(
            "L exponent has only odd powers of t",
            lambda: all(odd_exponent.terms[r].is_zero() for r in range(0, N + 1, 2)),
            "nonzero even term in the odd exponent",
        )
    )
    results.append(
        compare_scalar("degrees of the even L factor are (1-t^2)^-1", degree_series(even_factor), even_factor_series(2, N))
    )

    for n in range(N + 1):
        results.extend(_pn_identities(n))
    return results


def _pn_identities(n: int) -> List[VerificationResult]:
    """Specializations of T_y*(P^n) and its normalized form."""
    hirzebruch = hirzebruch_class_pn(n)
    normalized = normalized_hirzebruch_class_pn(n)
    todd, l_class, chern = (genus_class_pn(n, genus) for genus in ("todd", "l", "chern"))
    chi_y = YRationalFunction.polynomial({p: (-1) ** p for p in range(n + 1)})
    results = [
        compare_classes(f"P^{n}: T_0 = td", specialize_y(hirzebruch, 0), todd),
        compare_classes(f"P^{n}: Psi_2 T_1 = L", adams(2, specialize_y(hirzebruch, 1)), l_class),
        compare_classes(
            f"P^{n}: normalized T at y = -1 is c", specialize_y(normalize(hirzebruch, "plus"), -1, "limit"), chern
        ),
        check(f"P^{n}: degree-zero part is chi_y", lambda: hirzebruch.coefficient_of("b0") == chi_y),
        compare_classes(f"P^{n}: normalization of T is T^", normalize(hirzebruch, "plus"), normalized),
        compare_classes(f"P^{n}: T^ at y = 0 is td", specialize_y(normalized, 0), todd),
        compare_classes(f"P^{n}: T^ at y = 1 is L", specialize_y(normalized, 1), l_class),
        compare_classes(f"P^{n}: T^ at y = -1 is c", specialize_y(normalized, -1), chern),
    ]
    for r in (1, 2, 3):
        results.append(
            compare_classes(
                f"P^{n}: normalized limit of Psi_{r} T_(-y) is c",
                adams_normalized_limit(r, flip_y_sign(hirzebruch)),
                chern,
            )
        )
    return results


def _oracle_cases(N: int, seed: int, count: int):
    point = point_model(N)
    yield point, GradedClass.build(point.modules[1], {0: ONE_PLUS_Y}) if N >= 1 else None
    p1 = p1_model(N)
    yield p1, _p1_base(p1) if N >= 1 else None
    for offset in range(count):
        model = random_model(seed + offset, N)
        rng = random.Random(seed + offset)
        yield model, random_class(model.modules[1], rng, allow_poles=True) if N >= 1 else None


def suite_oracle(N: int, seed: int = 0, count: int = 10, workers: int = 1) -> List[VerificationResult]:
    """Sum over cycle types against the exponential formula, for builtin and random models."""
    results = []
    for model, base in _oracle_cases(N, seed, count):
        if base is None:
            continue
        results.append(
            compare_series(
                f"cycle-type sum equals exp formula on {model.name}",
                partition_sum_series(model, base, workers=workers),
                symmetric_class_series(model, base),
            )
        )
    return results


def suite_genera(N: int) -> List[VerificationResult]:
    """Scalar closed forms and the degree-zero rows of the P^1 series."""
    results = []
    for chi in (1, 2, 3, 5):
        results.append(
            compare_scalar(f"Macdonald series for chi = {chi}", chi_series(YRationalFunction.constant(chi), N), macdonald_series(chi, N))
        )
    zagier_failures = []
    for sigma in range(-6, 7):
        for chi in range(-6, 7):
            if (sigma - chi) % 2:
                continue
            try:
                zagier_signature_series(sigma, chi, N)
            except SymprodError as e:
                zagier_failures.append(f"({sigma}, {chi}): {e}")
    results.append(
        VerificationResult(
            "Zagier closed form equals its exp form, |sigma|, |chi| <= 6",
            not zagier_failures,
            detail="; ".join(zagier_failures[:3]),
        )
    )
    for sigma, chi in ((1, 1), (0, 2), (3, -1)):
        g = YRationalFunction.polynomial({0: Fraction(chi + sigma, 2), 1: Fraction(chi - sigma, 2)})
        results.append(
            compare_scalar(
                f"chi_y series at y = -1 matches Zagier exp form for (sigma, chi) = ({sigma}, {chi})",
                chi_series(g, N).specialize(-1),
                zagier_exp_form(sigma, chi, N),
            )
        )
    results.append(
        compare_scalar(
            "chi_y(Sym^n P^1) = 1 + y + ... + y^n",
            chi_series(ONE_PLUS_Y, N),
            ScalarSeries.from_values([YRationalFunction.polynomial({p: 1 for p in range(n + 1)}) for n in range(N + 1)]),
        )
    )
    g1, g2 = ONE_PLUS_Y, YRationalFunction.polynomial({0: 2, 2: -1})
    results.append(
        compare_scalar("chi_y series is multiplicative", chi_series(g1 + g2, N), chi_series(g1, N) * chi_series(g2, N))
    )
    for chi_a in (0, 1, 2):
        results.append(
            compare_scalar(
                f"arithmetic genus series for chi_a = {chi_a}",
                arithmetic_genus_series(chi_a, N),
                chi_series(YRationalFunction.constant(chi_a), N),
            )
        )

    if N >= 1:
        p1_series = _p1_series(N)
        point = point_model(N)
        results.append(
            compare_scalar("degree series of the P^1 series is chi_y", degree_series(p1_series), chi_series(ONE_PLUS_Y, N))
        )
        pushed = push_forward_series(degree_maps(p1_series.model, point), p1_series, point)
        results.append(
            compare_series(
                "push-forward to a point is the point series of chi_(-y)(P^1)",
                pushed,
                symmetric_class_series(point, GradedClass.build(point.modules[1], {0: ONE_PLUS_Y})),
            )
        )
    return results


def suite_specializations(N: int) -> List[VerificationResult]:
    """verify_specialization on the P^1 model (with reference classes) and the point."""
    results = []
    if N < 1:
        return results
    model = p1_model(N)
    base = _p1_base(model)
    for target in ("todd", "chern", "l"):
        reference = [genus_class_pn(n, target) for n in range(N + 1)]
        results.append(verify_specialization(model, base, target, reference=reference))
    point = point_model(N)
    for target in ("todd", "chern", "l"):
        results.append(verify_specialization(point, GradedClass.build(point.modules[1], {0: ONE_PLUS_Y}), target))
    return results


def _law_cases(seed: int, cases: int, N: int = 3):
    for case in range(cases):
        rng = random.Random(seed * 100003 + case)
        yield rng, random_model(rng.randrange(1 << 30), N)


def suite_laws(seed: int = 0, cases: int = 100) -> List[VerificationResult]:
    """Field, ring and operator laws, each on `cases` random inputs."""
    failures: Dict[str, List[str]] = {}

    def record(law: str, passed: bool, where: str) -> None:
        failures.setdefault(law, [])
        if not passed:
            failures[law].append(where)

    for case, (rng, model) in enumerate(_law_cases(seed, cases)):
        where = f"case {case} ({model.name})"

        a, b, c = (random_coefficient(rng, 2, allow_poles=True) for _ in range(3))
        record("coefficient field: associativity", rf_arith(rf_arith(a, b, "mul"), c, "mul") == rf_arith(a, rf_arith(b, c, "mul"), "mul"), where)
        record("coefficient field: distributivity", a * (b + c) == a * b + a * c, where)
        if not a.is_zero():
            record("coefficient field: inverses", rf_arith(a, a, "div") == 1, where)

        x, z, w = (random_series(model, rng) for _ in range(3))
        record("Pontrjagin ring: commutativity", pont_mul(x, z) == pont_mul(z, x), where)
        record("Pontrjagin ring: associativity", pont_mul(pont_mul(x, z), w) == pont_mul(x, pont_mul(z, w)), where)
        record("Pontrjagin ring: unit", pont_mul(unit_series(model), x) == x, where)
        record("Pontrjagin ring: distributivity", pont_mul(x, z + w) == pont_mul(x, z) + pont_mul(x, w), where)

        u = random_series(model, rng, constant="unit")
        record("exp(log(u)) = u", pont_exp(pont_log(u)) == u, where)
        p, q = random_series(model, rng, constant="zero"), random_series(model, rng, constant="zero")
        record("exp(p + q) = exp(p) exp(q)", pont_exp(p + q) == pont_mul(pont_exp(p), pont_exp(q)), where)

        r, s = rng.randint(1, 4), rng.randint(1, 4)
        base = random_class(model.modules[1], rng, allow_poles=True)
        record("Psi_r Psi_s = Psi_rs", adams(r, adams(s, base)) == adams(r * s, base), where)
        degree = rng.randint(1, model.N)
        d = model.diagonal(degree)
        record(
            "Adams operations commute with push-forward",
            adams(r, push_forward(d, base)) == push_forward(d, adams(r, base)),
            where,
        )
        record("denormalize inverts normalize", denormalize(normalize(base, "plus"), "plus") == base, where)

    results = []
    for law, failed in failures.items():
        results.append(
            VerificationResult(
                f"{law} ({cases} cases)", not failed, detail=", ".join(failed[:3])
            )
        )
    return results


def suite_sensitivity(N: int) -> List[VerificationResult]:
    """
    Every single perturbation of a P^1 structure constant or diagonal entry is detected.

    A perturbation is detected when the P^1 identity fails or the perturbed model
    fails SpaceModel.validate, as it would on loading. Products b_a (.) b_b with
    a, b >= 2 never enter the P^1 series, whose exponent lies in the span of b0
    and b1; associativity catches those.
    """
    model = p1_model(N)
    expected = [flip_y_sign(hirzebruch_class_pn(n)) for n in range(N + 1)]
    undetected = []
    total = 0

    def detected(perturbed: SpaceModel) -> bool:
        if list(_p1_series(N, perturbed).terms) != expected:
            return True
        try:
            perturbed.validate()
        except InvariantViolation:
            return True
        return False

    for n in range(1, N + 1):
        for m in range(n, N + 1 - n):
            for a in range(n + 1):
                for b in range(m + 1):
                    if n == m and b < a:
                        continue
                    k, value = model.basis_product(n, a, m, b).popitem()
                    total += 1
                    if not detected(model.with_tensor_entry(n, m, a, b, k, value + 1)):
                        undetected.append(f"tensor ({n}, {m}, {a}, {b})")
    for r in range(2, N + 1):
        for src in range(2):
            total += 1
            value = dict(model.diagonal(r).row(src)).get(src, Fraction(0))
            if not detected(model.with_diagonal_entry(r, src, src, value + 1)):
                undetected.append(f"diagonal d^{r} ({src}, {src})")
    return [
        VerificationResult(
            f"{total} single perturbations of the P^1 model break the P^1 identity or the model invariants",
            not undetected,
            detail=", ".join(undetected[:5]),
        )
    ]


def run_suite(name: str, N: int, seed: int = 0, workers: int = 1) -> List[VerificationResult]:
    """
    Run one suite, or all of them for name 'all'.

    Raises:
        ConfigurationError: If N < 1
        ValueError: For an unknown suite name
    """
    if N < 1:
        raise ConfigurationError(f"verification suites need N >= 1, got {N}")
    if name == "all":
        results = []
        for suite in SUITES:
            results.extend(run_suite(suite, N, seed, workers))
        return results
    logger.info(f"Running suite {name} with N={N}")
    if name == "p1":
        return suite_p1(N)
    if name == "oracle":
        return suite_oracle(N, seed, workers=workers)
    if name == "genera":
        return suite_genera(N)
    if name == "specializations":
        return suite_specializations(N)
    if name == "laws":
        return suite_laws(seed)
    if name == "sensitivity":
        return suite_sensitivity(N)
    raise ValueError(f"unknown suite {name!r}")
