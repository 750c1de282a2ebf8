import json

import pytest

from polyforge.errors import ConfigError
from polyforge.suite import (
    RunConfig,
    compute_golden,
    corpus_digest,
    default_golden_path,
    load_golden,
    run_suite,
)

QUICK = (1, 3, 7, 9)


def test_golden_file_matches_the_oracles():
    assert load_golden(default_golden_path()) == json.loads(json.dumps(compute_golden()))


def test_subset_run_and_outputs(tmp_path):
    res = run_suite(RunConfig(criteria=QUICK, n_values=(3, 5), out_dir=str(tmp_path)))
    assert res.passed, res.summary()
    assert [r.id for r in res.results] == list(QUICK)
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["seed"] == 1729 and report["config"]["n_values"] == [3, 5]
    summary = (tmp_path / "summary.txt").read_text()
    assert summary.strip().endswith("ALL PASS")
    assert len([ln for ln in summary.splitlines() if ln.startswith("criterion")]) == len(QUICK)


def test_report_is_byte_identical_across_runs():
    cfg = RunConfig(criteria=QUICK, n_values=(3,))
    assert run_suite(cfg).report_json() == run_suite(cfg).report_json()


def test_report_holds_no_timings():
    text = run_suite(RunConfig(criteria=(1,))).report_json()
    assert "elapsed" not in text and "time" not in text


def test_corrupted_golden_fails_the_named_criterion(tmp_path):
    golden = compute_golden()
    golden["affine_A2_ball_sizes"] = [1, 4, 10, 19, 30]
    golden["random_tree_7_6"] = [[0, 1]]
    path = tmp_path / "golden.json"
    path.write_text(json.dumps(golden))
    res = run_suite(RunConfig(criteria=(1, 7, 9), golden_path=str(path)))
    status = {r.id: r.status for r in res.results}
    assert status == {1: "pass", 7: "fail", 9: "fail"}
    assert res.exit_status == 1
    assert "FAILURES PRESENT" in res.summary()


def test_golden_missing_keys_is_a_failure_not_a_crash(tmp_path):
    path = tmp_path / "golden.json"
    path.write_text("{}")
    res = run_suite(RunConfig(criteria=(1, 9), golden_path=str(path)))
    assert not res.passed


def test_bad_golden_path(tmp_path):
    with pytest.raises(ConfigError):
        run_suite(RunConfig(criteria=(1,), golden_path=str(tmp_path / "missing.json")))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        run_suite(RunConfig(criteria=(1,), golden_path=str(bad)))


@pytest.mark.parametrize("kw", [
    {"seed": -1}, {"seed": 2 ** 64}, {"n_values": (2,)}, {"tree_sizes": (0, 3)},
    {"tree_sizes": (5, 3)}, {"rounds": -1}, {"thickness": 2}, {"criteria": (10,)},
])
def test_config_validation(kw):
    with pytest.raises(ConfigError):
        RunConfig(**kw).validate()


def test_seed_changes_the_corpus():
    assert corpus_digest(RunConfig(seed=1)) != corpus_digest(RunConfig(seed=2))
    assert corpus_digest(RunConfig(seed=1)) == corpus_digest(RunConfig(seed=1))


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("POLYFORGE_SEED", "0x10")
    assert RunConfig.from_env().seed == 16
    monkeypatch.setenv("POLYFORGE_SEED", "abc")
    with pytest.raises(ConfigError):
        RunConfig.from_env()


def test_threaded_run_matches_sequential():
    a = run_suite(RunConfig(criteria=QUICK, n_values=(3,)))
    b = run_suite(RunConfig(criteria=QUICK, n_values=(3,), workers=2))
    assert a.report_json() == b.report_json()


def test_determinism_rerun():
    res = run_suite(RunConfig(criteria=(1, 9), verify_determinism=True))
    r9 = next(r for r in res.results if r.id == 9)
    assert r9.details["full_rerun_identical"] is True
