"""End-to-end search behavior: determinism, diagnostics, honest verdicts."""
import math
from dataclasses import FrozenInstanceError, replace

import pytest

from bandflow import (
    SWEEP_COLUMNS,
    SurfaceSpec,
    WitnessSearchConfig,
    canonical_json,
    find_witness,
    jsonify,
    sweep,
    sweep_summary,
)

# trimmed grids keep each search under a second while still covering
# both a power and a slope candidate
SMALL = WitnessSearchConfig(
    families=("power", "helmholtz"),
    p_grid=(3.0, 16.0),
    delta_grid=(1e-3,),
    slope_fractions=(0.85,),
    w_count=5,
)


def test_small_search_on_reference_band():
    res = find_witness(SurfaceSpec(2.0, 0.5), SMALL)
    assert res.verdict == "not-found"
    assert not res.certified
    d = res.diagnostics
    assert d["candidates_examined"] == 3
    assert d["stable_count"] >= 1
    assert d["best_mc_over_stable"] < 0.0
    assert d["optimal_bump_ratio"] > 1.0
    assert len(res.mc_results) == 1
    assert res.mc_results[0].method == "formula-1d"
    assert res.stability is not None and res.conditions is not None
    assert "No certified pair" in res.implication


def test_search_is_deterministic():
    first = canonical_json(jsonify(find_witness(SurfaceSpec(2.0, 0.5), SMALL)))
    second = canonical_json(jsonify(find_witness(SurfaceSpec(2.0, 0.5), SMALL)))
    assert first == second


def test_worker_count_does_not_change_the_answer():
    serial = find_witness(SurfaceSpec(2.0, 0.5), replace(SMALL, workers=1))
    parallel = find_witness(SurfaceSpec(2.0, 0.5), replace(SMALL, workers=4))
    assert canonical_json(jsonify(serial)) == canonical_json(jsonify(parallel))


def test_sphere_yields_no_witness():
    res = find_witness(SurfaceSpec(1.0, 0.5), SMALL)
    assert res.verdict == "not-found"
    assert res.diagnostics["optimal_bump_ratio"] == math.inf


def test_empty_family_list():
    res = find_witness(SurfaceSpec(2.0, 0.5), replace(SMALL, families=()))
    assert res.verdict == "not-found"
    assert res.diagnostics["candidates_examined"] == 0
    assert res.mc_results == ()


def test_config_is_frozen_and_described():
    with pytest.raises(FrozenInstanceError):
        SMALL.w_count = 9
    desc = SMALL.describe()
    assert desc["families"] == ["power", "helmholtz"]
    assert desc["workers"] == SMALL.workers


def test_sweep_row_matches_standalone_search():
    rows = sweep([2.0], [0.5], SMALL)
    assert len(rows) == 1
    standalone = find_witness(SurfaceSpec(2.0, 0.5), replace(SMALL, workers=1))
    assert canonical_json(jsonify(rows[0])) == canonical_json(jsonify(standalone))


def test_sweep_survives_a_bad_cell():
    rows = sweep([0.5], [0.5], SMALL)
    assert len(rows) == 1
    assert rows[0].verdict == "error"
    assert "error" in rows[0].diagnostics


def test_sweep_summary_columns():
    rows = sweep([2.0], [0.5], SMALL)
    summary = sweep_summary(rows[0])
    assert tuple(summary) == SWEEP_COLUMNS
    assert summary["verdict"] == "not-found"
    assert summary["a"] == 2.0 and summary["b"] == 0.5
    assert math.isfinite(summary["lambda1"])
