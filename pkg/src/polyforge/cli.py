"""Command-line entry point: ``polyforge <command> ...``."""

from __future__ import annotations

import argparse
import os
import sys

from polyforge import io
from polyforge.completion import free_completion, is_degenerate
from polyforge.confinement import confined_core, hyperfree_tuples, is_confined
from polyforge.corpus import random_tree
from polyforge.coxeter import ball, diagram_from_dict, has_spherical_rank3
from polyforge.errors import ConfigError, PolyforgeError
from polyforge.gadgets import gadget_A, gadget_B
from polyforge.matching import enumerate_copies, group_by_image
from polyforge.chambers import BuildParams, build, check_conditions
from polyforge.suite import DEFAULT_SEED, RunConfig, run_suite
from polyforge.tree_codec import decode, encode, trees_isomorphic


def _seed(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get("POLYFORGE_SEED")
    if env:
        try:
            return int(env, 0)
        except ValueError:
            raise ConfigError(f"POLYFORGE_SEED is not an integer: {env!r}") from None
    return DEFAULT_SEED


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_structure(args, P) -> None:
    if args.format == "dot":
        _emit(args, io.export_dot(P))
    else:
        _emit(args, io.dumps(io.polygon_to_dict(P)))


def _read_polygon(path: str, n: int | None):
    return io.polygon_from_dict(io.load_json(path), n)


# -- commands ------------------------------------------------------------------

def cmd_gadget(args) -> int:
    P = gadget_A(args.n) if args.which == "A" else gadget_B(args.n).B
    _emit_structure(args, P)
    return 0


def cmd_copies(args) -> int:
    host = _read_polygon(args.host, args.n)
    pattern = _read_polygon(args.pattern, host.n)
    embs = enumerate_copies(pattern, host, limit=args.limit)
    images = group_by_image(embs)
    out = {"embeddings": len(embs),
           "images": [sorted(img) for img in images],
           "image_count": len(images)}
    _emit(args, io.dumps(out))
    return 0


def cmd_complete(args) -> int:
    P = _read_polygon(args.input, args.n)
    trace = free_completion(P, args.rounds, max_elements=args.max_elements)
    if args.format == "dot":
        _emit(args, io.export_dot(trace.last))
    else:
        _emit(args, io.dumps(io.trace_to_dict(trace)))
    return 0


def cmd_confined(args) -> int:
    P = _read_polygon(args.input, args.n)
    out = {"confined": is_confined(P),
           "hyperfree": [io.hyperfree_to_dict(h) for h in hyperfree_tuples(P)],
           "core": sorted(confined_core(P)),
           "degeneracy": is_degenerate(P).value}
    _emit(args, io.dumps(out))
    return 0


def cmd_encode(args) -> int:
    tree = io.tree_from_dict(io.load_json(args.tree))
    enc = encode(tree, args.n, args.rounds)
    _emit_structure(args, enc.last)
    return 0


def cmd_decode(args) -> int:
    P = _read_polygon(args.input, args.n)
    _emit(args, io.dumps(io.tree_to_dict(decode(P, P.n))))
    return 0


def cmd_roundtrip(args) -> int:
    seed = _seed(args.seed)
    failures = []
    for k in range(args.count):
        size = 1 + k % args.max_vertices
        G = random_tree(seed + k, size)
        back = decode(encode(G, args.n, args.rounds))
        if not trees_isomorphic(G, back):
            failures.append({"index": k, "tree": io.tree_to_dict(G)})
    out = {"n": args.n, "rounds": args.rounds, "seed": seed, "count": args.count,
           "failures": failures, "passed": not failures}
    _emit(args, io.dumps(out))
    return 0 if not failures else 1


def cmd_coxeter(args) -> int:
    D = diagram_from_dict(io.load_json(args.diagram))
    if args.action == "ball":
        elems = ball(D, args.radius)
        out = {"radius": args.radius, "size": len(elems),
               "sizes": [sum(1 for x in elems if x.length <= r) for r in range(args.radius + 1)],
               "elements": [list(x.word) for x in elems]}
    else:
        check = has_spherical_rank3(D)
        out = {"spherical": check.found,
               "witness": list(check.witness) if check.witness else None}
    _emit(args, io.dumps(out))
    return 0


def cmd_chambers(args) -> int:
    if args.action == "build":
        D = diagram_from_dict(io.load_json(args.diagram))
        tree = io.tree_from_dict(io.load_json(args.tree)) if args.tree else None
        cs = build(BuildParams(D, args.depth, args.thickness, residue_seed=tree,
                               residue_rounds=args.residue_rounds))
        if args.format == "dot":
            _emit(args, io.chamber_system_dot(cs))
        else:
            _emit(args, io.dumps(io.chamber_system_to_dict(cs)))
        return 0
    cs = io.chamber_system_from_dict(io.load_json(args.input))
    stage = cs.depth if args.stage is None else args.stage
    rep = check_conditions(cs, None, stage)
    out = {"stage": rep.stage, "passed": rep.passed, "image": rep.image_ok,
           "adjacency": rep.adjacency_ok, "dichotomy": rep.dichotomy_ok,
           "denuded": rep.denuded_ok, "residues_checked": rep.residues_checked,
           "residues_skipped": rep.residues_skipped, "violations": rep.violations}
    _emit(args, io.dumps(out))
    return 0 if rep.passed else 1


def cmd_suite(args) -> int:
    cfg = RunConfig(
        seed=_seed(args.seed),
        n_values=tuple(args.n) if args.n else None,
        criteria=tuple(args.criteria) if args.criteria else RunConfig().criteria,
        golden_path=args.golden,
        out_dir=args.out_dir,
        workers=args.workers,
        verify_determinism=not args.no_rerun,
    )
    result = run_suite(cfg)
    print(result.summary(), file=sys.stderr)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(result.report_json())
    elif not args.out_dir:
        sys.stdout.write(result.report_json())
    return result.exit_status


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polyforge", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, fmt=False):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        sp.add_argument("--out", help="output file (default: stdout)")
        if fmt:
            sp.add_argument("--format", choices=("json", "dot"), default="json")
        return sp

    sp = add("gadget", cmd_gadget, "emit gadget A or B", fmt=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--which", choices=("A", "B"), default="A")

    sp = add("copies", cmd_copies, "enumerate induced copies of a pattern")
    sp.add_argument("--pattern", required=True)
    sp.add_argument("--host", required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--limit", type=int)

    sp = add("complete", cmd_complete, "run free completion rounds", fmt=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--rounds", type=int, default=1)
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--max-elements", type=int)

    sp = add("confined", cmd_confined, "confinedness verdict and hyperfree tuples")
    sp.add_argument("--n", type=int)
    sp.add_argument("--in", dest="input", required=True)

    sp = add("encode", cmd_encode, "encode a tree as a partial n-gon", fmt=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--rounds", type=int, default=0)
    sp.add_argument("--tree", required=True)

    sp = add("decode", cmd_decode, "decode a partial n-gon back to a tree")
    sp.add_argument("--n", type=int)
    sp.add_argument("--in", dest="input", required=True)

    sp = add("roundtrip", cmd_roundtrip, "encode/decode seeded random trees")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--max-vertices", type=int, default=8)
    sp.add_argument("--rounds", type=int, default=0)
    sp.add_argument("--seed", type=lambda s: int(s, 0))

    sp = add("coxeter", cmd_coxeter, "Coxeter group queries")
    sp.add_argument("action", choices=("ball", "spherical3"))
    sp.add_argument("--diagram", required=True)
    sp.add_argument("--radius", type=int, default=2)

    sp = add("ronan", cmd_chambers, "build or check a chamber system", fmt=True)
    sp.add_argument("action", choices=("build", "check"))
    sp.add_argument("--diagram")
    sp.add_argument("--depth", type=int, default=3)
    sp.add_argument("--thickness", type=int, default=3)
    sp.add_argument("--tree")
    sp.add_argument("--residue-rounds", type=int, default=0)
    sp.add_argument("--in", dest="input")
    sp.add_argument("--stage", type=int)

    sp = add("suite", cmd_suite, "run the acceptance suite")
    sp.add_argument("--seed", type=lambda s: int(s, 0))
    sp.add_argument("--n", type=int, nargs="+", help="restrict gonalities")
    sp.add_argument("--criteria", type=int, nargs="+")
    sp.add_argument("--golden")
    sp.add_argument("--out-dir")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--no-rerun", action="store_true", help="skip the second run of the determinism check")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "ronan":
        need = "diagram" if args.action == "build" else "input"
        if getattr(args, need) is None:
            parser.error(f"ronan {args.action} needs --{'diagram' if need == 'diagram' else 'in'}")
    try:
        return args.func(args)
    except (PolyforgeError, OSError, ValueError, KeyError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
