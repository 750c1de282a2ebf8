"""JSON round-trips for the core types, and DOT export."""

from __future__ import annotations

import json
from typing import Any, Mapping

from polyforge.completion import CompletionTrace
from polyforge.confinement import HyperfreeKind, HyperfreeTuple
from polyforge.coxeter import (
    CoxeterDiagram,
    GroupElement,
    diagram_from_dict,
    diagram_to_dict,
    reduce_word,
)
from polyforge.incidence import IncidenceStructure, PartialPolygon, Sort, build_structure
from polyforge.chambers import ChamberSystem
from polyforge.tree_codec import Tree


def dumps(data: Any) -> str:
    """Stable JSON text: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def load_json(path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def save_json(path, data: Any) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(data))


# -- incidence structures ------------------------------------------------------

def structure_to_dict(s, labels: Mapping[str, str] | None = None) -> dict:
    if isinstance(s, PartialPolygon):
        return polygon_to_dict(s)
    return {"points": list(s.points), "lines": list(s.lines),
            "incidences": [list(e) for e in s.incidences()],
            "labels": dict(sorted((labels or {}).items()))}


def structure_from_dict(data: Mapping) -> IncidenceStructure:
    return build_structure(data.get("points", []), data.get("lines", []),
                           [tuple(e) for e in data.get("incidences", [])])


def polygon_to_dict(P: PartialPolygon) -> dict:
    out = structure_to_dict(P.structure, P.labels)
    out["n"] = P.n
    return out


def polygon_from_dict(data: Mapping, n: int | None = None, *, check: bool = True) -> PartialPolygon:
    n = data.get("n") if n is None else n
    if n is None:
        raise ValueError("gonality missing: pass n or include it in the JSON")
    labels = data.get("labels") or None
    return PartialPolygon(structure_from_dict(data), int(n), labels, check=check)


# -- completion traces ---------------------------------------------------------

def trace_to_dict(trace: CompletionTrace) -> dict:
    return {"n": trace.last.n,
            "stages": [polygon_to_dict(P) for P in trace.stages],
            "processed_pairs": [[list(p) for p in rnd] for rnd in trace.processed_pairs],
            "stabilized": trace.stabilized,
            "truncated": trace.truncated}


def trace_from_dict(data: Mapping) -> CompletionTrace:
    n = data["n"]
    return CompletionTrace(
        stages=[polygon_from_dict(st, n, check=False) for st in data["stages"]],
        processed_pairs=[[tuple(p) for p in rnd] for rnd in data.get("processed_pairs", [])],
        stabilized=bool(data.get("stabilized", False)),
        truncated=bool(data.get("truncated", False)))


# -- hyperfree tuples ----------------------------------------------------------

def hyperfree_to_dict(h: HyperfreeTuple) -> dict:
    out = {"kind": h.kind.value, "elements": list(h.elements)}
    if h.endpoints is not None:
        out["endpoints"] = list(h.endpoints)
    return out


def hyperfree_from_dict(data: Mapping) -> HyperfreeTuple:
    ends = data.get("endpoints")
    return HyperfreeTuple(HyperfreeKind(data["kind"]), tuple(data["elements"]),
                          tuple(ends) if ends is not None else None)


# -- trees ---------------------------------------------------------------------

def tree_to_dict(t: Tree) -> dict:
    return {"vertices": list(t.vertices), "edges": [list(e) for e in t.edges]}


def tree_from_dict(data: Mapping) -> Tree:
    return Tree(data["vertices"], [tuple(e) for e in data.get("edges", [])])


# -- Coxeter data --------------------------------------------------------------

def element_to_json(x: GroupElement) -> list[str]:
    return list(x.word)


def element_from_json(D: CoxeterDiagram, word) -> GroupElement:
    return reduce_word(D, list(word))


# -- chamber systems -----------------------------------------------------------

def chamber_system_to_dict(cs: ChamberSystem) -> dict:
    gens = cs.diagram.generators
    panels = {}
    deficient = []
    for g in gens:
        live = [(pid, mem) for pid, mem in sorted(cs.members[g].items()) if mem]
        panels[g] = [list(mem) for _, mem in live]
        for k, (pid, _) in enumerate(live):
            if (g, pid) in cs.deficient:
                deficient.append([g, k])
    return {"diagram": diagram_to_dict(cs.diagram),
            "thickness": cs.thickness,
            "depth": cs.depth,
            "chambers": [{"id": c, "rho": element_to_json(cs.rho[c]), "stage": cs.stage[c]}
                         for c in cs.chambers],
            "panels": panels,
            "frontier": sorted(cs.frontier, key=lambda c: int(c[1:]) if c[1:].isdigit() else c),
            "deficient": deficient,
            "residue_models": cs.residue_models}


def chamber_system_from_dict(data: Mapping) -> ChamberSystem:
    D = diagram_from_dict(data["diagram"])
    cs = ChamberSystem(D, int(data["thickness"]))
    cs.depth = int(data.get("depth", 0))
    for entry in data["chambers"]:
        c = entry["id"]
        rho = element_from_json(D, entry["rho"])
        cs.chambers.append(c)
        cs.rho[c] = rho
        cs.stage[c] = int(entry["stage"])
        cs._by_rho.setdefault(rho.word, []).append(c)
    for g in D.generators:
        cs.members[g] = {}
        cs.panel_of[g] = {}
        for pid, mem in enumerate(data["panels"][g]):
            cs.members[g][pid] = list(mem)
            for c in mem:
                cs.panel_of[g][c] = pid
        cs._next_panel[g] = len(data["panels"][g])
        missing = [c for c in cs.chambers if c not in cs.panel_of[g]]
        if missing:
            raise ValueError(f"chamber {missing[0]} has no {g}-panel")
    cs.deficient = {(g, int(k)) for g, k in data.get("deficient", [])}
    cs.residue_models = dict(data.get("residue_models", {}))
    return cs


# -- DOT -----------------------------------------------------------------------

def _quote(x: str) -> str:
    return '"' + str(x).replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(structure, name: str = "G") -> str:
    """Points as filled black dots, lines as hollow white circles."""
    s = structure.structure if isinstance(structure, PartialPolygon) else structure
    out = [f"graph {name} {{"]
    for x in s.ids:
        if s.sort(x) is Sort.POINT:
            out.append(f"  {_quote(x)} [shape=circle, style=filled, fillcolor=black, label=\"\"];")
        else:
            out.append(f"  {_quote(x)} [shape=circle, style=filled, fillcolor=white, label=\"\"];")
    for a, b in sorted(s.incidences()):
        out.append(f"  {_quote(a)} -- {_quote(b)};")
    out.append("}")
    return "\n".join(out) + "\n"


def chamber_system_dot(cs: ChamberSystem, name: str = "Chambers") -> str:
    """Chambers as nodes; consecutive chambers of each panel joined by an edge labelled with its type."""
    out = [f"graph {name} {{"]
    for c in cs.chambers:
        out.append(f"  {_quote(c)} [label={_quote(str(cs.rho[c]))}];")
    for g in cs.diagram.generators:
        for mem in cs.panels(g):
            for a, b in zip(mem, mem[1:]):
                out.append(f"  {_quote(a)} -- {_quote(b)} [label={_quote(g)}];")
    out.append("}")
    return "\n".join(out) + "\n"
