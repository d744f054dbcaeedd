"""
Pytest configuration and fixtures for triplekit tests.

This module provides factors, matrix units, spin states and JSON fixture
files shared by the engine, adapter and CLI tests.
"""

import json
from collections.abc import Callable
from pathlib import Path

import numpy as np
import pytest

from triplekit.adapters.json_io import element_to_dict
from triplekit.engine import DEFAULT_TOLERANCE, Element, Tolerance, rect, spin

# =============================================================================
# Sample factors
# =============================================================================

SAMPLE_FACTOR_SPECS = {
    "spin4": {"kind": "spin", "dim": 4},
    "rect23": {"kind": "rect", "m": 2, "n": 3},
    "rect33": {"kind": "rect", "m": 3, "n": 3},
    "skew5": {"kind": "skew", "n": 5},
    "herm3": {"kind": "herm", "n": 3},
}

# Spin states of spin(4): P_{z+} = 1/2 (e_0 + i e_3)
SAMPLE_P_ZPLUS = [0.5, 0.0, 0.0, 0.5j]
SAMPLE_P_ZMINUS = [0.5, 0.0, 0.0, -0.5j]


# =============================================================================
# Fixtures
# =============================================================================


@pytest.fixture
def tol() -> Tolerance:
    return DEFAULT_TOLERANCE


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def matrix_unit() -> Callable[..., Element]:
    """Factory for E_ij in rect(m, n)."""

    def make(m: int, n: int, i: int, j: int, scale: complex = 1.0) -> Element:
        data = np.zeros((m, n), dtype=complex)
        data[i, j] = scale
        return Element(rect(m, n), data)

    return make


@pytest.fixture
def spin4_states() -> dict[str, Element]:
    factor = spin(4)
    return {
        "e0": Element(factor, [1, 0, 0, 0]),
        "p_zplus": Element(factor, SAMPLE_P_ZPLUS),
        "p_zminus": Element(factor, SAMPLE_P_ZMINUS),
    }


@pytest.fixture
def write_json(tmp_path: Path) -> Callable[[str, object], Path]:
    """Write a JSON payload (or an Element) into tmp_path and return the path."""

    def write(name: str, payload: object) -> Path:
        if isinstance(payload, Element):
            payload = element_to_dict(payload)
        path = tmp_path / name
        path.write_text(json.dumps(payload))
        return path

    return write


@pytest.fixture
def sample_factor_specs() -> dict[str, dict]:
    return dict(SAMPLE_FACTOR_SPECS)
