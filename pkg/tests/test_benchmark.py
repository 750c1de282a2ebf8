import json
import runpy
import sys
from pathlib import Path

BENCH = Path(__file__).resolve().parent.parent / "benchmarks" / "bench_kernels.py"


def test_benchmark_backends_agree(tmp_path, monkeypatch, capsys):
    out = tmp_path / "bench.json"
    monkeypatch.setattr(sys, "argv", [str(BENCH), "--repeat", "1", "--json", str(out)])
    ns = runpy.run_path(str(BENCH))
    try:
        assert ns["main"](["--repeat", "1", "--json", str(out)]) == 0
    finally:
        from polyforge import kernels
        ns["use"](kernels._impl)
    rows = json.loads(out.read_text())["rows"]
    assert rows and not any(r.get("mismatch") for r in rows)
