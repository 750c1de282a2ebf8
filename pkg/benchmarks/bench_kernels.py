"""Time the compiled and pure-Python kernel backends on the same workloads.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--json out.json]

Both backends are loaded side by side and swapped into ``polyforge.kernels``
for each run, so higher-level calls (copy search, completion, codec) exercise
whichever backend is active. Outputs of the two backends are compared too.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time

from polyforge import _purepy, kernels
from polyforge.completion import count_pending_pairs, free_completion
from polyforge.corpus import random_tree
from polyforge.gadgets import gadget_A, gadget_B
from polyforge.matching import enumerate_copies
from polyforge.tree_codec import decode, encode

try:
    from polyforge import _fastgraph
except ImportError:
    _fastgraph = None

KERNELS = ["bfs", "components", "pairs_at_distance", "exists_pair_at_distance",
           "count_pairs_at_distance", "girth", "max_eccentricity", "find_embeddings"]


def use(impl) -> None:
    for name in KERNELS:
        setattr(kernels, name, getattr(impl, name))


def workloads():
    big = free_completion(gadget_B(3).B, 2).last.structure
    indptr, indices = big.csr
    A5, B5 = gadget_A(5), gadget_B(5).B
    trees = [random_tree(100 + k, 1 + k % 6) for k in range(8)]

    def codec():
        return [len(decode(encode(t, 4, 1))) for t in trees]

    return {
        f"bfs x50 ({len(big)} elements)": lambda: [int(kernels.bfs(indptr, indices, k).max()) for k in range(50)],
        "girth": lambda: int(kernels.girth(indptr, indices)),
        "max_eccentricity": lambda: int(kernels.max_eccentricity(indptr, indices)),
        "count_pairs_at_distance": lambda: int(kernels.count_pairs_at_distance(indptr, indices, 4, 2 ** 62)),
        "copies of A(5) in B(5)": lambda: len(enumerate_copies(A5, B5)),
        "pending pairs, B(4) round 1": lambda: count_pending_pairs(free_completion(gadget_B(4).B, 1).last),
        "encode/decode 8 trees, n=4": codec,
    }


def time_once(fn):
    t = time.perf_counter()
    out = fn()
    return time.perf_counter() - t, out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", help="write the timings here")
    args = ap.parse_args(argv)

    backends = [("pure", _purepy)]
    if _fastgraph is not None:
        backends.insert(0, ("compiled", _fastgraph))
    else:
        print("compiled backend unavailable; timing the pure-Python kernels only", file=sys.stderr)

    use(_purepy)
    jobs = workloads()
    rows = []
    mismatches = 0
    for label, fn in jobs.items():
        row = {"workload": label}
        outputs = {}
        for name, impl in backends:
            use(impl)
            times = []
            for _ in range(args.repeat):
                dt, out = time_once(fn)
                times.append(dt)
            row[name] = statistics.median(times)
            outputs[name] = out
        if len({json.dumps(o, sort_keys=True) for o in outputs.values()}) > 1:
            mismatches += 1
            row["mismatch"] = True
        rows.append(row)

    width = max(len(r["workload"]) for r in rows)
    header = f"{'workload':<{width}}  " + "  ".join(f"{n:>10}" for n, _ in backends)
    if len(backends) == 2:
        header += "  speedup"
    print(header)
    for r in rows:
        line = f"{r['workload']:<{width}}  " + "  ".join(f"{r[n]:>9.4f}s" for n, _ in backends)
        if len(backends) == 2:
            line += f"  {r['pure'] / max(r['compiled'], 1e-9):>6.1f}x"
        if r.get("mismatch"):
            line += "  OUTPUT MISMATCH"
        print(line)
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump({"repeat": args.repeat, "rows": rows}, fh, indent=2)
            fh.write("\n")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
