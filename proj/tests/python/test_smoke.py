import math

import pytest

import bfn_source as bfn


def test_default_grid():
    cfg = bfn.RunConfig()
    assert cfg.steps_per_pass() == 12000
    assert cfg.dt() * 12000 == pytest.approx(3.0, abs=1e-15)


def test_measurement_starts_at_rest():
    y = bfn.synthesize(bfn.RunConfig())
    assert len(y) == 12001
    assert y[0] == 0.0


def test_short_estimate_decreases_error():
    cfg = bfn.RunConfig()
    cfg.iterations = 3
    out = bfn.estimate(cfg)
    errors = out["l2_error"]
    assert len(errors) == 3
    assert errors[0] < 1 / math.sqrt(30)
    assert errors[2] < errors[1] < errors[0]
    assert len(out["q_hat"]) == 21


def test_bad_config_raises():
    with pytest.raises(ValueError):
        bfn.load_config(None, ["n_cells=2"])
    with pytest.raises(ValueError):
        bfn.load_config(None, ["nonsense=1"])
