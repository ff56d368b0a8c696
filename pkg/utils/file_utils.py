#!/usr/bin/env python3
"""
Reading and writing model files, class files and series documents.

Documents are YAML (JSON documents parse as well). All numbers that carry
exact values are strings "p/q" or "p"; unknown keys are rejected. Parse
problems raise ``ParseError``; documents that parse but describe an invalid
model raise ``InvariantViolation``.
"""

import logging
import os
from fractions import Fraction
from typing import Any, Dict, List, Optional

import yaml

from utils.coeffs import YRationalFunction, format_rational, parse_rational
from utils.errors import InvariantViolation, ParseError
from utils.graded import DegreeMap, GradedClass, GradedModuleSpec
from utils.pontrjagin import SpaceModel


logger = logging.getLogger(__name__)

MODEL_KEYS = {"N", "modules", "tensors", "diagonals"}
CLASS_KEYS = {"module", "coeffs"}


def read_file_content(file_path: str) -> str:
    """
    Read a UTF-8 text file, dropping a leading byte order mark.

    Raises:
        ParseError: If the file cannot be read
    """
    try:
        with open(file_path, "r", encoding="utf-8") as file:
            content = file.read()
    except (OSError, UnicodeDecodeError) as e:
        raise ParseError(f"cannot read {file_path}: {e}") from e
    if content.startswith("\ufeff"):
        content = content[1:]
    return content


def load_document(file_path: str) -> Any:
    """Parse a YAML or JSON document from a file."""
    content = read_file_content(file_path)
    try:
        return yaml.safe_load(content)
    except yaml.YAMLError as e:
        raise ParseError(f"invalid document {file_path}: {e}") from e


def _expect_mapping(value, keys, what: str) -> Dict:
    if not isinstance(value, dict):
        raise ParseError(f"{what} must be a mapping, got {type(value).__name__}")
    unknown = set(value) - keys
    if unknown:
        raise ParseError(f"unknown keys in {what}: {sorted(map(str, unknown))}")
    return value


def _expect_int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{what} must be an integer, got {value!r}")
    return value


def _expect_list(value, what: str) -> List:
    if not isinstance(value, list):
        raise ParseError(f"{what} must be a list, got {value!r}")
    return value


def _parse_module(entry, n: int) -> GradedModuleSpec:
    basis = []
    for position, item in enumerate(_expect_list(entry, f"modules[{n}]")):
        if not isinstance(item, list) or len(item) != 2 or not isinstance(item[0], str):
            raise ParseError(f"modules[{n}][{position}] must be [label, half_degree]")
        basis.append((item[0], _expect_int(item[1], f"half degree of {item[0]!r}")))
    return GradedModuleSpec(tuple(basis))


def model_from_document(document, name: str = "model") -> SpaceModel:
    """
    Build and validate a SpaceModel from a parsed document.

    Raises:
        ParseError: If the document is malformed
        InvariantViolation: If the model breaks a structural invariant
    """
    document = _expect_mapping(document, MODEL_KEYS, "model")
    missing = MODEL_KEYS - set(document)
    if missing:
        raise ParseError(f"model is missing keys: {sorted(missing)}")
    N = _expect_int(document["N"], "N")
    if N < 0:
        raise InvariantViolation("truncation", (N,), "N must be non-negative")
    modules = [_parse_module(entry, n) for n, entry in enumerate(_expect_list(document["modules"], "modules"))]
    if len(modules) != N + 1:
        raise InvariantViolation("module-count", (len(modules),), f"expected {N + 1} modules")

    tensors: Dict = {}
    for block in _expect_list(document["tensors"], "tensors"):
        block = _expect_mapping(block, {"n", "m", "entries"}, "tensor block")
        n, m = _expect_int(block.get("n"), "tensor n"), _expect_int(block.get("m"), "tensor m")
        if (n, m) in tensors:
            raise ParseError(f"duplicate tensor block ({n}, {m})")
        if n < 0 or m < 0 or n + m > N:
            raise InvariantViolation("tensor-range", (n, m), "tensor outside truncation")
        rows: Dict = {}
        for entry in _expect_list(block.get("entries", []), f"tensor ({n}, {m}) entries"):
            if not isinstance(entry, list) or len(entry) != 4:
                raise ParseError(f"tensor ({n}, {m}) entry must be [i, j, k, value], got {entry!r}")
            i, j, k = (_expect_int(x, "tensor index") for x in entry[:3])
            row = rows.setdefault((i, j), {})
            if k in row:
                raise ParseError(f"duplicate tensor entry ({n}, {m}, {i}, {j}, {k})")
            row[k] = parse_rational(entry[3])
        tensors[(n, m)] = {key: tuple(sorted((k, v) for k, v in row.items() if v)) for key, row in rows.items()}

    diagonals = {}
    for block in _expect_list(document["diagonals"], "diagonals"):
        block = _expect_mapping(block, {"r", "entries"}, "diagonal block")
        r = _expect_int(block.get("r"), "diagonal r")
        if not 1 <= r <= N:
            raise InvariantViolation("diagonal-range", (r,), f"r must lie in 1..{N}")
        if r in diagonals:
            raise ParseError(f"duplicate diagonal d^{r}")
        entries = []
        for entry in _expect_list(block.get("entries", []), f"diagonal d^{r} entries"):
            if not isinstance(entry, list) or len(entry) != 3:
                raise ParseError(f"diagonal d^{r} entry must be [src, dst, value], got {entry!r}")
            src, dst = (_expect_int(x, "diagonal index") for x in entry[:2])
            entries.append((src, dst, parse_rational(entry[2])))
        diagonals[r] = DegreeMap.build(modules[1], modules[r], entries)

    return SpaceModel(N, modules, tensors, diagonals, name=name)


def load_model(file_path: str) -> SpaceModel:
    """Load and validate a model file."""
    name = os.path.splitext(os.path.basename(file_path))[0]
    model = model_from_document(load_document(file_path), name=name)
    logger.info(f"Loaded {model!r} from {file_path}")
    return model


def class_from_document(document, model: SpaceModel) -> GradedClass:
    """
    Build a GradedClass in one of the model's modules.

    Raises:
        ParseError: If the document is malformed
        InvariantViolation: If the module number or a label does not exist
    """
    document = _expect_mapping(document, CLASS_KEYS, "class")
    n = _expect_int(document.get("module"), "module")
    if not 0 <= n <= model.N:
        raise InvariantViolation("module-range", (n,), f"model has modules 0..{model.N}")
    module = model.modules[n]
    coefficients: Dict[int, YRationalFunction] = {}
    for entry in _expect_list(document.get("coeffs", []), "coeffs"):
        if not isinstance(entry, list) or len(entry) != 2 or not isinstance(entry[0], str):
            raise ParseError(f"class entry must be [label, coefficient], got {entry!r}")
        label, value = entry
        if label not in module.labels:
            raise InvariantViolation("basis-label", (n,), f"no basis element {label!r} in modules[{n}]")
        index = module.index(label)
        value = YRationalFunction.from_document(value)
        coefficients[index] = coefficients[index] + value if index in coefficients else value
    return GradedClass.build(module, coefficients)


def load_class(file_path: str, model: SpaceModel) -> GradedClass:
    """Load a class file against a model."""
    return class_from_document(load_document(file_path), model)


def model_to_document(model: SpaceModel) -> Dict:
    """Serialize a model in the format read by ``load_model``."""
    tensors = []
    for (n, m) in sorted(model.tensors):
        entries = [
            [i, j, k, format_rational(v)]
            for (i, j), row in sorted(model.tensors[(n, m)].items())
            for k, v in row
            if v
        ]
        tensors.append({"n": n, "m": m, "entries": entries})
    diagonals = [
        {"r": r, "entries": [[src, dst, format_rational(v)] for src, dst, v in model.diagonal(r).entries()]}
        for r in sorted(model.diagonals)
    ]
    return {
        "N": model.N,
        "modules": [[[label, half] for label, half in module.basis] for module in model.modules],
        "tensors": tensors,
        "diagonals": diagonals,
    }


def dump_document(document: Dict, file_path: Optional[str] = None) -> str:
    """
    Render a document as YAML, optionally writing it to a file.

    Returns:
        The YAML text
    """
    text = yaml.safe_dump(document, sort_keys=False, allow_unicode=True, default_flow_style=None)
    if file_path:
        with open(file_path, "w", encoding="utf-8") as file:
            file.write(text)
        logger.info(f"Wrote document to {file_path}")
    return text


def save_model(model: SpaceModel, file_path: str) -> None:
    dump_document(model_to_document(model), file_path)


def rational_or_none(text: Optional[str]) -> Optional[Fraction]:
    """Parse an optional rational flag value."""
    if text is None:
        return None
    return parse_rational(text)
