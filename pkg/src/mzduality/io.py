"""JSON readers and writers for scenarios, strategies and observables.

Complex matrices are nested row-major lists whose entries are ``[re, im]``
pairs; a bare number is accepted as a real entry.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import MZDualityError, ScenarioFormatError
from .interferometer import InterferometerConfig
from .unsharp import UnsharpObservable
from .which_path import Strategy

__all__ = [
    "parse_complex",
    "matrix_from_literal",
    "matrix_to_literal",
    "vector_from_literal",
    "vector_to_literal",
    "scenario_from_dict",
    "scenario_to_dict",
    "load_scenario",
    "strategy_from_dict",
    "strategy_to_dict",
    "load_strategy",
    "observable_from_dict",
    "observable_to_dict",
]


def parse_complex(entry) -> complex:
    if isinstance(entry, bool):
        raise ScenarioFormatError(f"not a number: {entry!r}")
    if isinstance(entry, (int, float)):
        return complex(entry)
    if isinstance(entry, (list, tuple)) and len(entry) == 2:
        re, im = entry
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in (re, im)):
            return complex(re, im)
    raise ScenarioFormatError(f"expected [re, im] pair, got {entry!r}")


def vector_from_literal(data) -> np.ndarray:
    if not isinstance(data, list) or not data:
        raise ScenarioFormatError("vector must be a non-empty list")
    return np.array([parse_complex(e) for e in data], dtype=complex)


def matrix_from_literal(data) -> np.ndarray:
    if not isinstance(data, list) or not data or not all(isinstance(row, list) for row in data):
        raise ScenarioFormatError("matrix must be a non-empty list of rows")
    width = len(data[0])
    if any(len(row) != width for row in data):
        raise ScenarioFormatError("matrix rows have different lengths")
    m = np.array([[parse_complex(e) for e in row] for row in data], dtype=complex)
    if not np.all(np.isfinite(m)):
        raise ScenarioFormatError("matrix has non-finite entries")
    return m


def _pair(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def vector_to_literal(v) -> list:
    return [_pair(complex(z)) for z in np.asarray(v).ravel()]


def matrix_to_literal(m) -> list:
    return [[_pair(complex(z)) for z in row] for row in np.asarray(m)]


def _require(data: dict, key: str):
    if not isinstance(data, dict):
        raise ScenarioFormatError("expected a JSON object")
    if key not in data:
        raise ScenarioFormatError(f"missing field {key!r}")
    return data[key]


def _real(data: dict, key: str) -> float:
    value = _require(data, key)
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ScenarioFormatError(f"field {key!r} must be a finite number")
    return float(value)


def scenario_from_dict(data: dict) -> InterferometerConfig:
    """Build a config; any contract failure is reported as ScenarioFormatError."""
    try:
        return InterferometerConfig(
            r=_real(data, "r"),
            phi=_real(data, "phi"),
            particle_state=matrix_from_literal(_require(data, "particle_state")),
            detector_state=matrix_from_literal(_require(data, "detector_state")),
            detector_unitary=matrix_from_literal(_require(data, "detector_unitary")),
            port=data.get("port", "A"),
        )
    except ScenarioFormatError:
        raise
    except MZDualityError as exc:
        raise ScenarioFormatError(str(exc)) from exc


def scenario_to_dict(config: InterferometerConfig) -> dict:
    return {
        "r": config.r,
        "phi": config.phi,
        "port": config.port,
        "particle_state": matrix_to_literal(config.particle_state),
        "detector_state": matrix_to_literal(config.detector_state),
        "detector_unitary": matrix_to_literal(config.detector_unitary),
    }


def _read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise ScenarioFormatError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioFormatError(f"{path}: invalid JSON ({exc})") from exc


def load_scenario(path) -> InterferometerConfig:
    return scenario_from_dict(_read_json(path))


def strategy_from_dict(data: dict) -> Strategy:
    basis = _require(data, "basis")
    subset = _require(data, "subset")
    if not isinstance(basis, list) or not isinstance(subset, list):
        raise ScenarioFormatError("strategy needs a list 'basis' and a list 'subset'")
    if any(isinstance(i, bool) or not isinstance(i, int) for i in subset):
        raise ScenarioFormatError("subset entries must be integers")
    try:
        return Strategy(np.array([vector_from_literal(v) for v in basis]), frozenset(subset))
    except ScenarioFormatError:
        raise
    except (MZDualityError, ValueError) as exc:
        raise ScenarioFormatError(str(exc)) from exc


def strategy_to_dict(strategy: Strategy) -> dict:
    return {
        "basis": [vector_to_literal(v) for v in strategy.basis],
        "subset": sorted(strategy.subset),
    }


def load_strategy(path) -> Strategy:
    return strategy_from_dict(_read_json(path))


def observable_from_dict(data: dict) -> UnsharpObservable:
    bias = _real(data, "bias")
    direction = _require(data, "direction")
    if (
        not isinstance(direction, list)
        or len(direction) != 3
        or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in direction)
    ):
        raise ScenarioFormatError("direction must be three real numbers")
    return UnsharpObservable(bias, np.array(direction, dtype=float))


def observable_to_dict(obs: UnsharpObservable) -> dict:
    return {"bias": obs.bias, "direction": [float(v) for v in obs.direction]}
