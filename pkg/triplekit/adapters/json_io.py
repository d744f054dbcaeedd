"""JSON reading and writing for factors, elements, oracles and reports.

Complex scalars are [re, im]; matrices are row-major nested arrays of scalars.
"""

import json
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import ValidationError

from ..engine import (
    Element,
    FactorDescriptor,
    OracleRecipe,
    direct_sum,
    herm,
    rect,
    skew,
    spin,
)


def complex_to_json(value: complex) -> list[float]:
    value = complex(value)
    return [float(value.real), float(value.imag)]


def array_to_json(array: np.ndarray) -> list:
    """Nested lists with every entry as [re, im]."""
    stacked = np.stack([np.real(array), np.imag(array)], axis=-1)
    return stacked.tolist()


def array_from_json(data: Any, shape: tuple[int, ...]) -> np.ndarray:
    """
    Parse nested [re, im] pairs (or plain reals) into a complex array.

    Args:
        data: Nested lists from JSON
        shape: Expected array shape

    Returns:
        Complex array of the given shape

    Raises:
        ValueError: If the data does not match the shape
    """
    try:
        raw = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"element data is not numeric: {exc}") from exc
    if raw.shape == shape + (2,):
        return raw[..., 0] + 1j * raw[..., 1]
    if raw.shape == shape:
        return raw.astype(complex)
    raise ValueError(f"element data has shape {raw.shape}, expected {shape} of [re, im] pairs")


def factor_to_dict(factor: FactorDescriptor) -> dict[str, Any]:
    kind = factor.kind.value
    if kind == "rect":
        return {"kind": "rect", "m": factor.m, "n": factor.n}
    if kind == "spin":
        return {"kind": "spin", "dim": factor.dim}
    if kind == "sum":
        return {"kind": "sum", "components": [factor_to_dict(c) for c in factor.components]}
    return {"kind": kind, "n": factor.n}


def factor_from_dict(spec: Any) -> FactorDescriptor:
    """
    Build a FactorDescriptor from its JSON form.

    Raises:
        ValueError: If the spec is malformed
    """
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ValueError("factor spec must be an object with a 'kind'")
    kind = spec["kind"]
    try:
        if kind == "rect":
            return rect(int(spec["m"]), int(spec["n"]))
        if kind == "skew":
            return skew(int(spec["n"]))
        if kind == "herm":
            return herm(int(spec["n"]))
        if kind == "spin":
            return spin(int(spec.get("dim", spec.get("d", spec.get("n")))))
        if kind == "sum":
            components = spec["components"]
            if not isinstance(components, list):
                raise ValueError("sum components must be a list")
            return direct_sum(*(factor_from_dict(c) for c in components))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed {kind} factor spec: {exc}") from exc
    raise ValueError(f"unknown factor kind: {kind!r}")


def element_to_dict(x: Element) -> dict[str, Any]:
    if x.factor.is_sum:
        data = [element_to_dict(part)["data"] for part in x.components]
    else:
        data = array_to_json(x.data)
    return {"factor": factor_to_dict(x.factor), "data": data}


def element_from_dict(payload: Any, factor: FactorDescriptor | None = None) -> Element:
    """
    Build an Element from {"factor": ..., "data": ...}.

    Args:
        payload: Parsed JSON object
        factor: Factor to use when the payload omits one

    Raises:
        ValueError: If the payload is malformed or does not fit its factor
    """
    if not isinstance(payload, dict) or "data" not in payload:
        raise ValueError("element must be an object with 'data'")
    if "factor" in payload:
        factor = factor_from_dict(payload["factor"])
    if factor is None:
        raise ValueError("element has no factor")
    return _element_data(factor, payload["data"])


def _element_data(factor: FactorDescriptor, data: Any) -> Element:
    if factor.is_sum:
        if not isinstance(data, list) or len(data) != len(factor.components):
            raise ValueError(f"{factor} needs a list of {len(factor.components)} component arrays")
        return Element(factor, tuple(_element_data(c, d) for c, d in zip(factor.components, data)))
    return Element(factor, array_from_json(data, factor.shape))


def load_json(path: str | Path) -> Any:
    """
    Load a JSON file.

    Raises:
        ValueError: If the file is missing or not valid JSON
    """
    path = Path(path)
    if not path.exists():
        raise ValueError(f"file not found: {path}")
    try:
        with open(path) as f:
            return json.load(f)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path} is not valid JSON: {exc}") from exc


def load_factor(source: str) -> FactorDescriptor:
    """Factor from inline JSON text or a path to a JSON file."""
    text = source.strip()
    if text.startswith("{"):
        try:
            return factor_from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ValueError(f"factor spec is not valid JSON: {exc}") from exc
    return factor_from_dict(load_json(source))


def load_element(path: str | Path) -> Element:
    return element_from_dict(load_json(path))


def load_oracle_table(payload: Any) -> list[tuple[Element, Element]]:
    """Pairs from a JSON list of {"in": element, "out": element}."""
    if not isinstance(payload, list):
        raise ValueError("oracle table must be a JSON list")
    pairs = []
    for index, entry in enumerate(payload):
        if not isinstance(entry, dict) or "in" not in entry or "out" not in entry:
            raise ValueError(f"oracle table entry {index} needs 'in' and 'out'")
        pairs.append((element_from_dict(entry["in"]), element_from_dict(entry["out"])))
    return pairs


def oracle_table_to_json(pairs: list[tuple[Element, Element]]) -> list[dict[str, Any]]:
    return [{"in": element_to_dict(x), "out": element_to_dict(y)} for x, y in pairs]


def load_oracle_spec(source: str | Path) -> OracleRecipe | list[tuple[Element, Element]]:
    """
    Load an oracle spec: a recipe object or a lookup table list.

    Raises:
        ValueError: If the file is neither
    """
    payload = load_json(source)
    if isinstance(payload, list):
        return load_oracle_table(payload)
    try:
        return OracleRecipe.model_validate(payload)
    except ValidationError as exc:
        raise ValueError(f"invalid oracle recipe: {exc}") from exc


def dumps_report(report: dict[str, Any]) -> str:
    """Deterministic JSON text for a report."""
    return json.dumps(report, indent=2, sort_keys=True)


def save_report(report: dict[str, Any], path: str | Path):
    """
    Write a report to disk.

    Args:
        report: JSON-serializable report dict
        path: Destination file
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        f.write(dumps_report(report))
        f.write("\n")


def save_oracle_table(pairs: list[tuple[Element, Element]], path: str | Path):
    """Write a lookup table that ``load_oracle_spec`` reads back."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        f.write(json.dumps(oracle_table_to_json(pairs), indent=2))
        f.write("\n")
