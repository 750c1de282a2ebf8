"""Acceptance suite: nine criteria, a JSON report, and a text summary.

The JSON report holds only deterministic content; wall-clock times go to the
summary and to :attr:`SuiteResult.elapsed`.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable

from polyforge import oracles
from polyforge.completion import Degeneracy, free_completion, is_degenerate
from polyforge.confinement import confined_copies_in_completion, is_confined
from polyforge.corpus import cycle_polygon, random_partial_polygon, random_tree
from polyforge.coxeter import CoxeterDiagram, ball, reduce_word, triangle, words_equal
from polyforge.errors import ConfigError, SphericalRank3Residue
from polyforge.gadgets import cycle_census, expected_census, gadget_A, gadget_B
from polyforge.incidence import diameter, girth, is_partial_polygon
from polyforge.matching import copy_images
from polyforge.chambers import BuildParams, build, check_conditions
from polyforge.tree_codec import Tree, decode, encode, reduction_check, trees_isomorphic

DEFAULT_SEED = 1729
CRITERIA = tuple(range(1, 10))
BUDGETS = {1: 1.0, 2: 300.0, 3: 60.0, 4: 120.0, 5: 300.0, 6: 300.0, 7: 120.0, 8: 300.0, 9: None}
NAMES = {
    1: "gadget exactness",
    2: "gadget properties",
    3: "cycle census",
    4: "completion invariants",
    5: "copy localization",
    6: "tree round-trip",
    7: "coxeter soundness",
    8: "chamber-system stage invariants",
    9: "determinism",
}
COMPLETION_CAP = 20_000


def default_golden_path() -> Path:
    return Path(str(resources.files("polyforge") / "data" / "golden.json"))


@dataclass
class RunConfig:
    seed: int = DEFAULT_SEED
    n_values: tuple[int, ...] | None = None
    tree_sizes: tuple[int, int] = (1, 8)
    rounds: int = 3
    depth: int = 3
    thickness: int = 3
    criteria: tuple[int, ...] = CRITERIA
    golden_path: str | None = None
    out_dir: str | None = None
    workers: int = 1
    verify_determinism: bool = False

    def validate(self) -> None:
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2 ** 64:
            raise ConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed!r}")
        if self.n_values is not None and any(n < 3 for n in self.n_values):
            raise ConfigError("gonality values must be >= 3")
        lo, hi = self.tree_sizes
        if not 1 <= lo <= hi:
            raise ConfigError(f"bad tree size range {self.tree_sizes}")
        if self.rounds < 0 or self.depth < 0:
            raise ConfigError("rounds and depth must be >= 0")
        if self.thickness < 3:
            raise ConfigError("thickness must be >= 3")
        bad = [c for c in self.criteria if c not in CRITERIA]
        if bad:
            raise ConfigError(f"unknown criteria {bad}")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")

    def to_dict(self) -> dict:
        out = asdict(self)
        out.pop("out_dir")
        out.pop("workers")
        out.pop("golden_path")
        out["n_values"] = None if self.n_values is None else sorted(self.n_values)
        out["tree_sizes"] = list(self.tree_sizes)
        out["criteria"] = sorted(self.criteria)
        return out

    @classmethod
    def from_env(cls, **kw) -> "RunConfig":
        cfg = cls(**kw)
        env = os.environ.get("POLYFORGE_SEED")
        if env:
            try:
                cfg.seed = int(env, 0)
            except ValueError:
                raise ConfigError(f"POLYFORGE_SEED is not an integer: {env!r}") from None
        return cfg


@dataclass
class CriterionResult:
    id: int
    name: str
    status: str
    details: dict = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status != "fail"


@dataclass
class SuiteResult:
    config: RunConfig
    results: list[CriterionResult]
    elapsed: dict[int, float]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def exit_status(self) -> int:
        return 0 if self.passed else 1

    def report(self) -> dict:
        return {"seed": self.config.seed,
                "config": self.config.to_dict(),
                "passed": self.passed,
                "criteria": [{"id": r.id, "name": r.name, "status": r.status,
                              "details": r.details, "failures": r.failures}
                             for r in sorted(self.results, key=lambda r: r.id)]}

    def report_json(self) -> str:
        return json.dumps(self.report(), sort_keys=True, indent=2) + "\n"

    def summary(self) -> str:
        lines = []
        for r in sorted(self.results, key=lambda r: r.id):
            t = self.elapsed.get(r.id)
            budget = BUDGETS.get(r.id)
            timing = "" if t is None else f" ({t:.2f} s" + (f" of {budget:g} s)" if budget else ")")
            lines.append(f"criterion {r.id} {r.name}: {r.status.upper()}{timing}")
            lines.extend(f"    {msg}" for msg in r.failures[:5])
        lines.append("ALL PASS" if self.passed else "FAILURES PRESENT")
        return "\n".join(lines)


class _Check:
    """Collects failure messages for one criterion."""

    def __init__(self):
        self.failures: list[str] = []
        self.details: dict = {}

    def expect(self, ok: bool, message: str) -> None:
        if not ok:
            self.failures.append(message)


def load_golden(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"golden file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"golden file is not valid JSON: {exc}") from None


def _ns(cfg: RunConfig, wanted) -> list[int]:
    if cfg.n_values is None:
        return list(wanted)
    return [n for n in wanted if n in set(cfg.n_values)]


def _json_safe(x):
    return "inf" if x == float("inf") else x


# -- criteria ------------------------------------------------------------------

def criterion_1(cfg: RunConfig, golden: dict, c: _Check) -> None:
    for n in _ns(cfg, (3, 4)):
        A = gadget_A(n).structure
        got = {"elements": len(A), "girth": _json_safe(girth(A)), "diameter": _json_safe(diameter(A)),
               "valencies": sorted({len(A.neighbours(x)) for x in A.ids})}
        c.details[str(n)] = got
        c.expect(got == golden["gadget_A"][str(n)], f"gadget_A({n}) stats {got} != {golden['gadget_A'][str(n)]}")


def criterion_2(cfg: RunConfig, golden: dict, c: _Check) -> None:
    for n in _ns(cfg, range(3, 11)):
        pair = gadget_B(n)
        row = {"A_partial": is_partial_polygon(pair.A.structure, n),
               "A_confined": is_confined(pair.A),
               "B_confined": is_confined(pair.B),
               "B_degeneracy": is_degenerate(pair.B).value}
        c.expect(row["A_partial"] and row["A_confined"], f"A({n}) not a confined partial polygon")
        c.expect(row["B_confined"], f"B({n}) not confined")
        c.expect(row["B_degeneracy"] == Degeneracy.NON_DEGENERATE.value, f"B({n}) is {row['B_degeneracy']}")
        if n <= 6:
            row["copy_images"] = len(copy_images(pair.A, pair.B))
            c.expect(row["copy_images"] == golden["copy_images"][str(n)],
                     f"A({n}) has {row['copy_images']} images in B")
        c.details[str(n)] = row


def criterion_3(cfg: RunConfig, golden: dict, c: _Check) -> None:
    for n in _ns(cfg, range(5, 11)):
        got = cycle_census(gadget_A(n))
        want = golden["census"][str(n)]
        c.details[str(n)] = got
        for key, value in want.items():
            c.expect(got.get(key) == value, f"n={n} class {key}: {got.get(key)} != {value}")
        c.expect(expected_census(n) == want, f"n={n} golden census disagrees with closed forms")


def _stage_checks(c: _Check, name: str, trace, n: int) -> None:
    for r, st in enumerate(trace.stages):
        g = girth(st.structure)
        c.expect(g >= 2 * n, f"{name}: stage {r} girth {g} < {2 * n}")
    for r, pairs in enumerate(trace.processed_pairs):
        nxt = trace.stages[r + 1].structure
        # the joining chain must be present, so no processed pair is left at n+1 or infinity
        for k, (a, b, _) in enumerate(pairs):
            path = [a] + [f"z^{r + 1}_{k}_{p}" for p in range(1, n - 1)] + [b]
            if not all(x in nxt for x in path) or not all(nxt.incident(x, y) for x, y in zip(path, path[1:])):
                c.expect(False, f"{name}: pair {a},{b} of round {r + 1} not joined")
                break
        if r + 1 < len(trace.processed_pairs):
            stale = {(a, b) for a, b, _ in pairs} & {(a, b) for a, b, _ in trace.processed_pairs[r + 1]}
            c.expect(not stale, f"{name}: {len(stale)} stale pairs after round {r + 1}")


def criterion_4(cfg: RunConfig, golden: dict, c: _Check) -> None:
    ns = _ns(cfg, (3, 4, 5))
    rounds = min(cfg.rounds, 3)
    count = 0
    if ns:
        for k in range(200):
            n = ns[k % len(ns)]
            size = 8 + (k * 7) % 17
            P = random_partial_polygon(cfg.seed + k, n, size)
            trace = free_completion(P, rounds, max_elements=COMPLETION_CAP)
            _stage_checks(c, f"random #{k} (n={n})", trace, n)
            count += 1
    c.details["random_inputs"] = count
    grown = {}
    for n in _ns(cfg, range(3, 11)):
        trace = free_completion(gadget_B(n).B, rounds, max_elements=COMPLETION_CAP)
        _stage_checks(c, f"B({n})", trace, n)
        grown[str(n)] = [len(s) for s in trace.stages]
    c.details["gadget_B_stage_sizes"] = grown
    verdicts = {}
    for n in ns:
        flat = is_degenerate(cycle_polygon(2 * n, n)).value
        wide = is_degenerate(cycle_polygon(2 * n + 2, n)).value
        verdicts[str(n)] = [flat, wide]
        c.expect(flat == Degeneracy.DEGENERATE.value, f"{2 * n}-cycle as {n}-gon is {flat}")
        c.expect(wide == Degeneracy.NON_DEGENERATE.value, f"{2 * n + 2}-cycle as {n}-gon is {wide}")
    c.details["cycle_verdicts"] = verdicts


def _tree_sizes(cfg: RunConfig, k: int, cap: int | None = None) -> int:
    lo, hi = cfg.tree_sizes
    if cap is not None:
        hi = min(hi, cap)
        lo = min(lo, hi)
    return lo + k % (hi - lo + 1)


def criterion_5(cfg: RunConfig, golden: dict, c: _Check) -> None:
    for n in _ns(cfg, (3, 4, 5)):
        copies = outside = 0
        for k in range(20):
            G = random_tree(cfg.seed + 1000 + k, _tree_sizes(cfg, k, 6))
            enc = encode(G, n, 0)
            found = confined_copies_in_completion(enc.base, 1, gadget_A(n))
            copies += len(found)
            bad = [f for f in found if not f.inside_base]
            outside += len(bad)
            images = {frozenset(f.embedding.values()) for f in found}
            c.expect(len(images) >= len(G), f"n={n} tree #{k}: {len(images)} images for {len(G)} vertices")
        c.details[str(n)] = {"copies": copies, "outside_base": outside}
        c.expect(outside == 0, f"n={n}: {outside} copies leave the base")


def _shuffled(G: Tree, seed: int) -> Tree:
    import random

    rng = random.Random(f"relabel:{seed}")
    perm = list(G.vertices)
    rng.shuffle(perm)
    return G.relabelled(dict(zip(G.vertices, perm)))


def criterion_6(cfg: RunConfig, golden: dict, c: _Check) -> None:
    ns = _ns(cfg, (3, 4, 5))
    trips = 0
    for k in range(100):
        G = random_tree(cfg.seed + 2000 + k, _tree_sizes(cfg, k))
        for n in ns:
            for rounds in (0, 1):
                back = decode(encode(G, n, rounds))
                trips += 1
                c.expect(trees_isomorphic(back, G), f"tree #{k} n={n} rounds={rounds} not recovered")
    pairs = agree = 0
    if ns:
        for k in range(50):
            G1 = random_tree(cfg.seed + 3000 + k, _tree_sizes(cfg, k))
            if k % 2 == 0:
                G2 = _shuffled(G1, cfg.seed + k)
            else:
                G2 = random_tree(cfg.seed + 4000 + k, len(G1))
            rep = reduction_check(G1, G2, ns[k % len(ns)], k % 2)
            pairs += 1
            agree += rep.consistent
            c.expect(rep.consistent, f"pair #{k}: inputs iso {rep.inputs_isomorphic}, decoded iso {rep.decoded_isomorphic}")
    c.details.update({"roundtrips": trips, "pairs": pairs, "consistent_pairs": agree})


def _partition_agrees(D: CoxeterDiagram, gens: dict, letters, max_len: int) -> tuple[int, int]:
    by_perm: dict = {}
    by_word: dict = {}
    words = list(oracles.all_words(letters, max_len))
    for w in words:
        by_perm.setdefault(oracles.evaluate(w, gens), []).append(w)
        by_word.setdefault(reduce_word(D, w).word, []).append(w)
    blocks_p = sorted(sorted(b) for b in by_perm.values())
    blocks_w = sorted(sorted(b) for b in by_word.values())
    return len(words), int(blocks_p == blocks_w)


def criterion_7(cfg: RunConfig, golden: dict, c: _Check) -> None:
    dihedral = {}
    for m in range(2, 9):
        D = CoxeterDiagram(("s", "t"), [("s", "t", m)])
        total, ok = _partition_agrees(D, oracles.dihedral_permutations(m), "st", 6)
        # spot-check the pairwise predicate itself on the longest words
        probe = [w for w in oracles.all_words("st", 6) if len(w) == 6][:8]
        for w1 in probe:
            for w2 in probe:
                same = oracles.evaluate(w1, oracles.dihedral_permutations(m)) == \
                    oracles.evaluate(w2, oracles.dihedral_permutations(m))
                ok &= words_equal(D, w1, w2) == same
        dihedral[str(m)] = {"words": total, "agrees": bool(ok)}
        c.expect(bool(ok), f"dihedral m={m}: word problem disagrees with permutations")
    S4 = CoxeterDiagram(("1", "2", "3"), [("1", "2", 3), ("2", "3", 3)])
    total, ok = _partition_agrees(S4, oracles.symmetric_permutations(4), ("1", "2", "3"), 6)
    c.expect(bool(ok), "S4: word problem disagrees with permutations")
    c.details["dihedral"] = dihedral
    c.details["S4"] = {"words": total, "agrees": bool(ok), "elements": len(ball(S4, 6))}
    c.expect(len(ball(S4, 6)) == 24, "S4 ball of radius 6 is not the whole group")
    free = CoxeterDiagram(("s", "t"), [("s", "t", "inf")])
    sizes = [len(ball(free, r)) for r in range(9)]
    c.details["rank2_infinite"] = sizes
    c.expect(sizes == [2 * r + 1 for r in range(9)], f"rank-2 infinite ball sizes {sizes}")
    A2 = triangle(3, 3, 3)
    sizes = [len(ball(A2, r)) for r in range(5)]
    c.details["affine_A2"] = sizes
    c.expect(sizes == golden["affine_A2_ball_sizes"], f"affine A2 ball sizes {sizes} != golden")
    c.expect(sizes == oracles.ball_sizes_by_matrices(A2, 4), "affine A2 ball sizes disagree with matrix BFS")


def _chamber_diagrams() -> dict[str, CoxeterDiagram]:
    return {"affine_A2": triangle(3, 3, 3),
            "triangle_3_inf_inf": triangle(3, "inf", "inf"),
            "all_infinite": triangle("inf", "inf", "inf")}


def criterion_8(cfg: RunConfig, golden: dict, c: _Check) -> None:
    q = cfg.thickness
    for name, D in _chamber_diagrams().items():
        cs = build(BuildParams(D, cfg.depth, q))
        stages = [check_conditions(cs, None, n) for n in range(cfg.depth + 1)]
        sizes = [sum(1 for x in cs.chambers if cs.stage[x] <= n) for n in range(cfg.depth + 1)]
        row = {"stage_sizes": sizes,
               "passed": [r.passed for r in stages],
               "residues_checked": [r.residues_checked for r in stages],
               "residues_skipped": [r.residues_skipped for r in stages]}
        c.details[name] = row
        for r in stages:
            if not r.passed:
                c.failures.extend(f"{name} stage {r.stage}: {v}" for v in r.violations[:3])
        if cfg.depth >= 1:
            c.expect(sizes[1] == 1 + D.rank * (q - 1), f"{name}: stage 1 has {sizes[1]} chambers")
        want = golden.get("chamber_stage_sizes", {}).get(name)
        if want is not None and q == 3 and cfg.depth <= len(want) - 1:
            c.expect(sizes == want[:cfg.depth + 1], f"{name}: stage sizes {sizes} != golden {want}")
    try:
        build(BuildParams(triangle(2, 3, 5), cfg.depth, q))
        c.expect(False, "triangle (2,3,5) was not rejected")
        c.details["rejects_2_3_5"] = False
    except SphericalRank3Residue:
        c.details["rejects_2_3_5"] = True


def corpus_digest(cfg: RunConfig) -> str:
    """Hash of every seeded input the suite draws."""
    h = hashlib.sha256()
    for k in range(100):
        t = random_tree(cfg.seed + 2000 + k, _tree_sizes(cfg, k))
        h.update(repr(t.edges).encode())
    for k in range(200):
        P = random_partial_polygon(cfg.seed + k, 3 + k % 3, 8 + (k * 7) % 17)
        h.update(repr(P.structure.incidences()).encode())
    return h.hexdigest()


def criterion_9(cfg: RunConfig, golden: dict, c: _Check) -> None:
    first, second = corpus_digest(cfg), corpus_digest(cfg)
    c.details["corpus_digest"] = first
    c.expect(first == second, "seeded corpus differs between two generations")
    pinned = [list(e) for e in random_tree(7, 6).edges]
    c.expect(pinned == golden["random_tree_7_6"], f"random_tree(7, 6) = {pinned} != golden")


RUNNERS: dict[int, Callable] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9,
}


def _run_one(cid: int, cfg: RunConfig, golden: dict) -> tuple[CriterionResult, float]:
    chk = _Check()
    t = time.perf_counter()
    try:
        RUNNERS[cid](cfg, golden, chk)
    except (KeyError, TypeError) as exc:
        chk.failures.append(f"golden data unusable: {exc!r}")
    except Exception as exc:  # a crash is a failure of this criterion, not of the run
        chk.failures.append(f"raised {type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - t
    status = "fail" if chk.failures else "pass"
    return CriterionResult(cid, NAMES[cid], status, chk.details, chk.failures), elapsed


def _run_all(cfg: RunConfig, golden: dict, ids) -> tuple[list[CriterionResult], dict[int, float]]:
    if cfg.workers == 1:
        done = [_run_one(cid, cfg, golden) for cid in ids]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            done = list(pool.map(lambda cid: _run_one(cid, cfg, golden), ids))
    results = sorted((r for r, _ in done), key=lambda r: r.id)
    return results, {r.id: t for r, t in done}


def run_suite(cfg: RunConfig | None = None) -> SuiteResult:
    """Run the selected criteria; see :class:`SuiteResult` for the outputs."""
    cfg = cfg or RunConfig()
    cfg.validate()
    golden = load_golden(cfg.golden_path or default_golden_path())
    ids = sorted(set(cfg.criteria))
    results, elapsed = _run_all(cfg, golden, ids)
    if cfg.verify_determinism and 9 in ids:
        again, _ = _run_all(cfg, golden, [i for i in ids if i != 9])
        a = json.dumps([asdict(r) for r in results if r.id != 9], sort_keys=True)
        b = json.dumps([asdict(r) for r in again], sort_keys=True)
        r9 = next(r for r in results if r.id == 9)
        r9.details["full_rerun_identical"] = a == b
        if a != b:
            r9.failures.append("second run produced a different report")
            r9.status = "fail"
    result = SuiteResult(cfg, results, elapsed)
    if cfg.out_dir:
        out = Path(cfg.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(result.report_json(), encoding="utf-8")
        (out / "summary.txt").write_text(result.summary() + "\n", encoding="utf-8")
    return result


def compute_golden() -> dict:
    """Values pinned in the golden file, computed from the reference oracles."""
    out = {
        "gadget_A": {
            "3": {"elements": 14, "girth": 6, "diameter": 3, "valencies": [3]},
            "4": {"elements": 30, "girth": 8, "diameter": 4, "valencies": [3]},
        },
        "copy_images": {str(n): 2 for n in range(3, 7)},
        "census": {str(n): expected_census(n) for n in range(5, 11)},
        "affine_A2_ball_sizes": oracles.ball_sizes_by_matrices(triangle(3, 3, 3), 4),
        "random_tree_7_6": [list(e) for e in random_tree(7, 6).edges],
    }
    sizes = {}
    for name, D in _chamber_diagrams().items():
        cs = build(BuildParams(D, 3, 3))
        sizes[name] = [sum(1 for x in cs.chambers if cs.stage[x] <= n) for n in range(4)]
    out["chamber_stage_sizes"] = sizes
    return out
