import json
import math

import pytest

from isophase.errors import InvalidInputError, ParameterError
from isophase.experiments import (
    CSV_COLUMNS,
    CellResult,
    ExperimentConfig,
    SweepResult,
    estimate_probability,
    export,
    locate_empirical_threshold,
    parse_csv,
    run_sweep,
)


def _row(m, p_hat, n=16):
    return CellResult("embed", n, m, 0.5, 0.5, 10, int(10 * p_hat), 0, p_hat,
                      max(0.0, p_hat - 0.1), min(1.0, p_hat + 0.1), 1.0, 5, 0)


def test_wilson_examples():
    p_hat, lo, hi = estimate_probability(0, 100)
    assert p_hat == 0.0
    assert hi == pytest.approx(0.036998, abs=5e-4)
    p_hat2, lo2, hi2 = estimate_probability(100, 100)
    assert p_hat2 == 1.0
    assert lo2 == pytest.approx(1.0 - hi, abs=1e-12)
    p_hat3, lo3, hi3 = estimate_probability(50, 100)
    assert p_hat3 == 0.5
    assert (0.5 - lo3) == pytest.approx(hi3 - 0.5, abs=1e-12)
    with pytest.raises(ParameterError):
        estimate_probability(5, 4)


def test_threshold_interpolation_examples():
    rows = [_row(9, 1.0), _row(10, 0.0)]
    assert locate_empirical_threshold(rows) == pytest.approx(9.5)
    assert locate_empirical_threshold([_row(3, 1.0), _row(4, 1.0)]) is None
    rows2 = [_row(5, 1.0), _row(6, 0.8), _row(7, 0.2), _row(8, 0.0)]
    assert locate_empirical_threshold(rows2) == pytest.approx(6.5)


def test_config_validation():
    with pytest.raises(InvalidInputError):
        ExperimentConfig("embed", (8,), 0.5, 0.5, trials=0, m_values=(2,))
    with pytest.raises(InvalidInputError):
        ExperimentConfig("nope", (8,), 0.5, 0.5, m_values=(2,))
    with pytest.raises(InvalidInputError):
        ExperimentConfig("embed", (8,), 0.5, 0.5)  # neither m rule
    with pytest.raises(InvalidInputError):
        ExperimentConfig("embed", (8,), 0.5, 0.5, m_values=(2,), m_offsets=(0,))
    with pytest.raises(InvalidInputError):
        ExperimentConfig.from_json("{not json")
    with pytest.raises(InvalidInputError):
        ExperimentConfig.from_json('{"problem": "embed", "n_values": [8], "m_values": [2], "bogus": 1}')


def test_config_q_override_flag():
    cfg = ExperimentConfig.from_json(
        '{"problem": "embed", "n_values": [8], "m_values": [2], "p": 0.5, "q": 0.3}'
    )
    assert cfg.q_overridden
    cfg2 = ExperimentConfig.from_json(
        '{"problem": "embed", "n_values": [8], "m_values": [2], "p": 0.5}'
    )
    assert not cfg2.q_overridden and cfg2.q == 0.5


def test_m_offsets_resolve_around_center():
    cfg = ExperimentConfig("embed", (32,), 0.5, 0.5, m_offsets=(-1, 0, 1), m_values=None)
    assert cfg.resolve_m_values(32) == [10, 11, 12]  # center 2*log2(32)+1 = 11
    cfg2 = ExperimentConfig("common", (12,), 0.5, 0.5, m_offsets=(0,), m_values=None)
    assert cfg2.resolve_m_values(12) == [11]  # round(m_star(12)) = round(10.797)


def test_small_embed_sweep_is_certain():
    cfg = ExperimentConfig("embed", (32,), 0.5, 0.5, trials=100, master_seed=5,
                           m_values=(2,))
    res = run_sweep(cfg)
    row = res.rows[0]
    assert row.p_hat == 1.0
    assert row.unknowns == 0
    assert not res.invalid


def test_common_m1_always_succeeds():
    cfg = ExperimentConfig("common", (9,), 0.4, 0.7, trials=60, master_seed=3,
                           m_values=(1,))
    row = run_sweep(cfg).rows[0]
    assert row.p_hat == 1.0 and row.unknowns == 0


def test_full_isomorphism_never_happens():
    cfg = ExperimentConfig("embed", (32,), 0.5, 0.5, trials=100, master_seed=11,
                           m_values=(32,))
    row = run_sweep(cfg).rows[0]
    assert row.p_hat == 0.0 and row.unknowns == 0


def test_success_curve_nonincreasing_up_to_ci():
    cfg = ExperimentConfig("embed", (16,), 0.5, 0.5, trials=80, master_seed=21,
                           m_values=(3, 5, 7, 9, 11))
    res = run_sweep(cfg)
    rows = res.rows
    for a, b in zip(rows, rows[1:]):
        width = (a.ci_high - a.ci_low) + (b.ci_high - b.ci_low)
        assert b.p_hat <= a.p_hat + width


def test_determinism_across_worker_counts(tmp_path):
    base = dict(problem="embed", n_values=(16,), p=0.5, q=0.5, trials=25,
                master_seed=77, m_values=(3, 5, 7, 9))
    res1 = run_sweep(ExperimentConfig(**base, workers=1))
    res3 = run_sweep(ExperimentConfig(**base, workers=3))
    tallies1 = [(r.n, r.m, r.successes, r.unknowns) for r in res1.rows]
    tallies3 = [(r.n, r.m, r.successes, r.unknowns) for r in res3.rows]
    assert tallies1 == tallies3
    f1, f3 = tmp_path / "a.csv", tmp_path / "b.csv"
    export(res1, "csv", str(f1))
    export(res3, "csv", str(f3))
    assert _strip_wall_ms(f1.read_text()) == _strip_wall_ms(f3.read_text())


def _strip_wall_ms(text):
    wall_idx = CSV_COLUMNS.split(",").index("wall_ms")
    out = []
    for i, line in enumerate(text.splitlines()):
        if i == 0:
            out.append(line)
            continue
        parts = line.split(",")
        parts[wall_idx] = "_"
        out.append(",".join(parts))
    return "\n".join(out)


def test_export_round_trip(tmp_path):
    cfg = ExperimentConfig("common", (6,), 0.5, 0.5, trials=20, master_seed=1,
                           m_values=(1, 2, 3))
    res = run_sweep(cfg)
    csv_path = tmp_path / "out.csv"
    jsonl_path = tmp_path / "out.jsonl"
    export(res, "csv", str(csv_path))
    export(res, "jsonl", str(jsonl_path))
    parsed = parse_csv(csv_path.read_text())
    assert len(parsed) == len(res.rows)
    for row, raw in zip(res.rows, parsed):
        assert raw == row.as_dict()
    lines = [json.loads(line) for line in jsonl_path.read_text().splitlines()]
    assert lines == [row.as_dict() for row in res.rows]


def test_empty_sweep_header_only(tmp_path):
    cfg = ExperimentConfig("embed", (8,), 0.5, 0.5, m_values=(2,))
    empty = SweepResult((), {}, False, cfg)
    path = tmp_path / "empty.csv"
    export(empty, "csv", str(path))
    assert path.read_text() == CSV_COLUMNS + "\n"


def test_unknowns_surface_and_flag_invalid():
    cfg = ExperimentConfig("embed", (24,), 0.5, 0.5, trials=20, master_seed=9,
                           m_values=(8,), node_budget=10)
    res = run_sweep(cfg)
    row = res.rows[0]
    assert row.unknowns > 0
    assert row.successes + row.failures + row.unknowns == row.trials
    assert res.invalid


def test_budget_trials_excluded_from_p_hat():
    cfg = ExperimentConfig("embed", (24,), 0.5, 0.5, trials=30, master_seed=13,
                           m_values=(6,), node_budget=40)
    row = run_sweep(cfg).rows[0]
    determined = row.trials - row.unknowns
    if determined:
        assert row.p_hat == pytest.approx(row.successes / determined)
    else:
        assert math.isnan(row.p_hat)
