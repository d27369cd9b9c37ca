import json

import numpy as np
import pytest

from mzduality.errors import ScenarioFormatError
from mzduality.io import (
    load_scenario,
    load_strategy,
    matrix_from_literal,
    observable_from_dict,
    observable_to_dict,
    parse_complex,
    scenario_from_dict,
    scenario_to_dict,
    strategy_from_dict,
    strategy_to_dict,
)
from mzduality.sampling import haar_unitary
from mzduality.unsharp import UnsharpObservable
from mzduality.which_path import Strategy

from conftest import make_config, random_config


@pytest.mark.parametrize(
    "entry, expected", [(1, 1), (0.5, 0.5), ([0.1, -2], complex(0.1, -2)), ((3, 4), 3 + 4j)]
)
def test_parse_complex(entry, expected):
    assert parse_complex(entry) == expected


@pytest.mark.parametrize("entry", ["1", True, [1], [1, 2, 3], [1, "x"], None])
def test_parse_complex_rejects(entry):
    with pytest.raises(ScenarioFormatError):
        parse_complex(entry)


def test_matrix_rejects_ragged():
    with pytest.raises(ScenarioFormatError):
        matrix_from_literal([[1, 0], [0]])


def test_scenario_round_trip(rng, tmp_path):
    for port in ("A", "B"):
        cfg = random_config(rng, port=port)
        path = tmp_path / "s.json"
        path.write_text(json.dumps(scenario_to_dict(cfg)))
        back = load_scenario(path)
        assert back.r == cfg.r and back.phi == cfg.phi and back.port == port
        assert np.array_equal(back.detector_unitary, cfg.detector_unitary)
        assert np.array_equal(back.particle_state, cfg.particle_state)


def test_real_entries_accepted():
    data = scenario_to_dict(make_config())
    data["particle_state"] = [[0.5, 0.5], [0.5, 0.5]]
    assert np.allclose(scenario_from_dict(data).particle_state, 0.5)


@pytest.mark.parametrize(
    "change",
    [
        {"r": 1.5},
        {"r": "half"},
        {"phi": float("nan")},
        {"port": "C"},
        {"particle_state": [[[1, 0], [1, 0]], [[0, 0], [0, 0]]]},
        {"detector_unitary": [[1, 1], [0, 1]]},
        {"detector_state": [[1, 0, 0], [0, 0, 0], [0, 0, 0]]},
    ],
)
def test_scenario_rejects(change):
    data = scenario_to_dict(make_config())
    data.update(change)
    with pytest.raises(ScenarioFormatError):
        scenario_from_dict(data)


def test_scenario_missing_field():
    data = scenario_to_dict(make_config())
    del data["detector_state"]
    with pytest.raises(ScenarioFormatError, match="detector_state"):
        scenario_from_dict(data)


def test_load_errors(tmp_path):
    with pytest.raises(ScenarioFormatError):
        load_scenario(tmp_path / "absent.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ScenarioFormatError):
        load_scenario(bad)


def test_strategy_round_trip(rng, tmp_path):
    strategy = Strategy(haar_unitary(3, rng).T, {0, 2})
    path = tmp_path / "strategy.json"
    path.write_text(json.dumps(strategy_to_dict(strategy)))
    back = load_strategy(path)
    assert back.subset == strategy.subset
    assert np.array_equal(back.basis, strategy.basis)


@pytest.mark.parametrize(
    "data",
    [
        {"basis": [[1, 0], [1, 0]], "subset": [0]},
        {"basis": [[1, 0], [0, 1]], "subset": [2]},
        {"basis": [[1, 0], [0, 1]], "subset": ["0"]},
        {"basis": [[1, 0], [0, 1]]},
    ],
)
def test_strategy_rejects(data):
    with pytest.raises(ScenarioFormatError):
        strategy_from_dict(data)


def test_observable_round_trip():
    o = UnsharpObservable(0.1, np.array([0.2, -0.3, 0.4]))
    back = observable_from_dict(json.loads(json.dumps(observable_to_dict(o))))
    assert back.bias == o.bias and np.array_equal(back.direction, o.direction)


def test_observable_rejects_short_direction():
    with pytest.raises(ScenarioFormatError):
        observable_from_dict({"bias": 0, "direction": [0, 1]})
