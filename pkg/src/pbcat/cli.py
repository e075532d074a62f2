"""File-format ingestion, suite orchestration, reporting, and diagram export.

Category files are JSON: either an explicit table (objects, morphisms,
identities, composition triples) or a poset shortcut (objects plus generating
relations, closed transitively); optional weq/tcof classes (explicit id lists
or the shortcuts "all" / "isos"), an optional factorization block, and an
optional brown block.  Mixing the poset shortcut with an explicit table is
rejected.

Reports are deterministic: canonical JSON with sorted keys and a null timing
field (wall-clock times are shown only in the text format), so two runs on
the same input are byte-identical.  Exit codes: 0 pass or unknown-only,
1 any failing check, 2 input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Mapping, Optional, Union

from . import fincat as fc
from . import relcat as rc
from . import simplicial as sp
from . import weiss as ws

FORMAT_TAG = "pbcat-category/1"
BUDGET_ENV = "PBCAT_BUDGET"
DEFAULT_BUDGET = ws.DEFAULT_BUDGET


class ParseError(Exception):
    def __init__(self, message: str, report: Optional[fc.CheckReport] = None):
        super().__init__(message)
        self.report = report


Structure = Union[rc.PBCStructure, rc.RelativeCategory, rc.BrownStructure]


# -- parsing -------------------------------------------------------------------

def _resolve_class(cat: fc.FinCategory, value, what: str) -> frozenset[str]:
    if value == "all":
        return frozenset(cat.morphisms)
    if value == "isos":
        return frozenset(cat.isomorphisms())
    if isinstance(value, list):
        unknown = [m for m in value if m not in cat.morphisms]
        if unknown:
            raise ParseError(f"{what} mentions unknown morphisms: {unknown}")
        return frozenset(value) | frozenset(cat.identity.values())
    raise ParseError(f"{what} must be a list of morphism ids, \"all\", or \"isos\"")


def _carrier_from_obj(obj: dict) -> fc.FinCategory:
    has_poset = "poset" in obj
    has_table = any(k in obj for k in ("morphisms", "composition", "identities"))
    if has_poset and has_table:
        raise ParseError("file mixes the poset shortcut with an explicit table; pick one")
    if has_poset:
        p = obj["poset"]
        try:
            return fc.poset_category(p["objects"], [tuple(r) for r in p.get("relations", [])])
        except fc.CategoryError as exc:
            raise ParseError(f"poset shortcut invalid: {exc}") from exc
    if "objects" not in obj or "morphisms" not in obj:
        raise ParseError("file needs either a poset block or objects+morphisms")
    morphisms = {}
    for m in obj["morphisms"]:
        if not all(k in m for k in ("id", "src", "tgt")):
            raise ParseError(f"morphism entry missing id/src/tgt: {m}")
        if m["id"] in morphisms:
            raise ParseError(f"duplicate morphism id: {m['id']}")
        morphisms[m["id"]] = (m["src"], m["tgt"])
    identities = obj.get("identities")
    if identities is None:
        raise ParseError("explicit tables must list identities per object")
    comp = {}
    for triple in obj.get("composition", []):
        if len(triple) != 3:
            raise ParseError(f"composition entries are [g, f, g∘f]: {triple}")
        g, f, h = triple
        comp[(g, f)] = h
    cat = fc.FinCategory.build(obj["objects"], morphisms, identities, comp)
    rep = fc.validate_category(cat)
    if not rep.ok:
        raise ParseError("category table invalid:\n" + rep.render(), rep)
    return cat


def parse_spec_obj(obj: dict, budget: int = DEFAULT_BUDGET) -> Structure:
    if obj.get("format") != FORMAT_TAG:
        raise ParseError(f"unsupported format tag: {obj.get('format')!r}; expected {FORMAT_TAG!r}")
    cat = _carrier_from_obj(obj)
    rep = fc.validate_category(cat)
    if not rep.ok:
        raise ParseError("category invalid:\n" + rep.render(), rep)
    weq = _resolve_class(cat, obj.get("weq", "isos"), "weq")
    rel = rc.RelativeCategory.of(cat, weq)
    rrep = rc.check_relative_category(rel)
    if not rrep.ok:
        raise ParseError("weq is not a wide subcategory:\n" + rrep.render(), rrep)
    if "brown" in obj:
        b = obj["brown"]
        cof = _resolve_class(cat, b.get("cof", "all"), "cof")
        cops = {}
        for entry in b.get("coproducts", []):
            cops[(entry["left"], entry["right"])] = (
                entry["object"], entry["inj_left"], entry["inj_right"])
        cyl = b.get("cylinder", {})
        cylinder = rc.CylinderData(
            cyl.get("cyl", {x: x for x in cat.objects}),
            cyl.get("on_mor", {m: m for m in cat.morphisms}),
            cyl.get("fold_cof", {x: cat.identity[x] for x in cat.objects}),
            cyl.get("fold_weq", {x: cat.identity[x] for x in cat.objects}),
        )
        cofw = fc.WideSubcategory.of(cat, cof)
        crep = cofw.check()
        if not crep.ok:
            raise ParseError("cof is not a wide subcategory:\n" + crep.render(), crep)
        return rc.BrownStructure(rel, cofw,
                                 rc.ChosenCoproducts(b.get("initial", ""), cops), cylinder)
    tcof_given = "tcof" in obj
    fact_given = "factorization" in obj
    tcof = _resolve_class(cat, obj.get("tcof", obj.get("weq", "isos")), "tcof")
    tc = fc.WideSubcategory.of(cat, tcof)
    trep = tc.check()
    if not trep.ok:
        raise ParseError("tcof is not a wide subcategory:\n" + trep.render(), trep)
    fact: Optional[rc.FactorizationScheme] = None
    if fact_given:
        block = obj["factorization"]
        assignments = block.get("assignments", {})
        mid, front, back, section = {}, {}, {}, {}
        for f, entry in assignments.items():
            mid[f] = entry["mid"]
            front[f] = entry["c"]
            back[f] = entry["w"]
            section[f] = entry["s"]
        for f in weq:
            if f not in mid:
                raise ParseError(f"factorization block missing weak equivalence {f}")
        if "mu" in block:
            mu = {}
            for entry in block["mu"]:
                mu[(entry["from"], entry["to"], entry["src_leg"], entry["tgt_leg"])] = entry["mid_map"]
            fact = rc.FactorizationScheme(mid, front, back, section, mu)
        else:
            mu = rc.derive_mu(rel, tc, mid, front, back, section, budget=budget)
            if mu is None:
                raise ParseError("no functorial μ completes the given factorization block")
            fact = rc.FactorizationScheme(mid, front, back, section, mu)
    else:
        fact = rc.derive_factorization(rel, tc, budget=budget)
        if fact is None and not tcof_given:
            # nothing PBC-specific was claimed; fall back to a relative category
            return rel
    return rc.PBCStructure(rel, tc, fact)


def parse_spec(path: str, budget: int = DEFAULT_BUDGET) -> Structure:
    """Load and validate a category file; the richest structure supported by
    the file's fields is returned (Brown > PBC > relative category)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise ParseError(f"{path}: top level must be an object")
    return parse_spec_obj(obj, budget)


def serialize_structure(structure: Structure, name: str = "") -> dict:
    """Explicit-table JSON for any parsed structure; parse ∘ serialize is the
    identity on the underlying data."""
    if isinstance(structure, rc.BrownStructure):
        cat = structure.carrier
    elif isinstance(structure, rc.PBCStructure):
        cat = structure.carrier
    else:
        cat = structure.carrier
    obj: dict = {
        "format": FORMAT_TAG,
        "name": name,
        "objects": list(cat.objects),
        "morphisms": [{"id": m, "src": a, "tgt": b}
                      for m, (a, b) in sorted(cat.morphisms.items())],
        "identities": dict(cat.identity),
        "composition": [[g, f, h] for (g, f), h in sorted(cat.composition.items())],
    }
    if isinstance(structure, rc.BrownStructure):
        obj["weq"] = sorted(structure.rel.weq.members)
        obj["brown"] = {
            "cof": sorted(structure.cof.members),
            "initial": structure.coproducts.initial,
            "coproducts": [
                {"left": x, "right": y, "object": o, "inj_left": ix, "inj_right": iy}
                for (x, y), (o, ix, iy) in sorted(structure.coproducts.pairs.items())],
            "cylinder": {
                "cyl": dict(structure.cylinder.cyl),
                "on_mor": dict(structure.cylinder.on_mor),
                "fold_cof": dict(structure.cylinder.fold_cof),
                "fold_weq": dict(structure.cylinder.fold_weq),
            },
        }
        return obj
    if isinstance(structure, rc.PBCStructure):
        obj["weq"] = sorted(structure.weq)
        obj["tcof"] = sorted(structure.tcof.members)
        if structure.fact is not None:
            obj["factorization"] = {
                "assignments": {
                    f: {"mid": structure.fact.mid[f], "c": structure.fact.front[f],
                        "w": structure.fact.back[f], "s": structure.fact.section[f]}
                    for f in sorted(structure.weq)},
                "mu": [{"from": f, "to": g, "src_leg": u, "tgt_leg": v, "mid_map": t}
                       for (f, g, u, v), t in sorted(structure.fact.mu.items())],
            }
        return obj
    obj["weq"] = sorted(structure.weq.members)
    return obj


# -- reports ---------------------------------------------------------------------

@dataclass
class CheckEntry:
    name: str
    status: str
    detail: str = ""
    witness: Optional[dict] = None


@dataclass
class Report:
    suite: str
    fixture: str
    fixture_hash: str
    config: dict
    checks: list[CheckEntry] = field(default_factory=list)
    timing: Optional[float] = None

    def add(self, name: str, status: str, detail: str = "",
            witness: Optional[dict] = None) -> None:
        self.checks.append(CheckEntry(name, status, detail, witness))

    @property
    def failed(self) -> bool:
        return any(c.status == "fail" for c in self.checks)

    def to_json_obj(self) -> dict:
        return {
            "suite": self.suite,
            "fixture": self.fixture,
            "fixture_hash": self.fixture_hash,
            "config": self.config,
            "checks": [{"name": c.name, "status": c.status, "detail": c.detail}
                       for c in self.checks],
            "witnesses": [{"check": c.name, **c.witness}
                          for c in self.checks if c.witness],
            "timing": None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"suite: {self.suite}   fixture: {self.fixture}"]
        for c in self.checks:
            mark = {"pass": "ok  ", "fail": "FAIL", "unknown": "??  "}[c.status]
            line = f"  [{mark}] {c.name}"
            if c.detail:
                line += f"  — {c.detail}"
            if c.witness:
                line += f"  (witness: {c.witness.get('kind')})"
            lines.append(line)
        n_fail = sum(1 for c in self.checks if c.status == "fail")
        n_unknown = sum(1 for c in self.checks if c.status == "unknown")
        verdict = "FAIL" if n_fail else ("pass with unknowns" if n_unknown else "pass")
        lines.append(f"  => {verdict} ({len(self.checks)} checks, {n_fail} fail, "
                     f"{n_unknown} unknown)")
        if self.timing is not None:
            lines.append(f"  time: {self.timing:.2f}s")
        return "\n".join(lines) + "\n"


def fixture_hash(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()[:16]


def emit_report(report: Report, fmt: str, path: Optional[str]) -> str:
    text = report.to_json() if fmt == "json" else report.to_text()
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


# -- suites -------------------------------------------------------------------------

def _require_pbc(structure: Structure) -> rc.PBCStructure:
    if isinstance(structure, rc.PBCStructure):
        return structure
    if isinstance(structure, rc.BrownStructure):
        rep = rc.check_brown_category(structure)
        if not rep.ok:
            raise ParseError("brown block invalid:\n" + rep.render(), rep)
        return rc.brown_to_pbc(structure)
    raise ParseError("this suite needs a PBC (give tcof and/or a factorization block)")


def suite_validate(structure: Structure, report: Report, options: dict) -> None:
    if isinstance(structure, rc.BrownStructure):
        rep = rc.check_brown_category(structure)
        report.add("brown-axioms", "pass" if rep.ok else "fail", rep.render() if not rep.ok else "")
        if rep.ok:
            pbc = rc.brown_to_pbc(structure)
            prep = rc.check_pbc(pbc)
            report.add("induced-pbc", "pass" if prep.ok else "fail",
                       prep.render() if not prep.ok else "")
        return
    if isinstance(structure, rc.PBCStructure):
        rel_rep = rc.check_relative_category(structure.rel)
        report.add("relative-category", "pass" if rel_rep.ok else "fail",
                   rel_rep.render() if not rel_rep.ok else "")
        two = rc.check_two_out_of_three(structure.rel)
        report.add("two-out-of-three", "pass" if two.ok else "fail",
                   two.render() if not two.ok else "")
        rep = rc.check_pbc(structure)
        report.add("pbc-axioms", "pass" if rep.ok else "fail",
                   rep.render() if not rep.ok else "")
        return
    rel_rep = rc.check_relative_category(structure)
    report.add("relative-category", "pass" if rel_rep.ok else "fail",
               rel_rep.render() if not rel_rep.ok else "")
    two = rc.check_two_out_of_three(structure)
    report.add("two-out-of-three", "pass" if two.ok else "fail",
               two.render() if not two.ok else "")


def suite_segal(structure: Structure, report: Report, options: dict) -> None:
    pbc = _require_pbc(structure)
    budget = options["budget"]
    max_n = options.get("max_n", 3)
    level1 = ws.enumerate_Cn(pbc, 1, budget)
    for n in range(2, max_n + 1):
        res = ws.segal_check(pbc, n, budget, level1=level1)
        report.add(f"segal@{n}", "pass" if res.holds else "fail",
                   f"|C_{n}| = {res.objects_level}, spine = {res.objects_spine}")


def suite_weiss(structure: Structure, report: Report, options: dict) -> None:
    pbc = _require_pbc(structure)
    budget = options["budget"]
    k = options.get("max_dim", 2)
    wb = ws.weiss_bicategory(pbc, k, budget)
    report.add("level0-discrete", "pass" if wb.level0_discrete else "fail")
    for n, res in sorted(wb.tamsamani.items()):
        report.add(f"tamsamani@{n}", "pass" if res.ok else "fail")
    same, pieces = ws.weiss_level1_decomposition(pbc, budget)
    report.add("level1-is-mapping-categories", "pass" if same else "fail",
               f"{len(pieces)} ordered pairs")
    screp = sp.check_simplicial_category(wb.simplicial)
    report.add("simplicial-identities", "pass" if screp.ok else "fail",
               screp.render() if not screp.ok else "")


def suite_homology(structure: Structure, report: Report, options: dict) -> None:
    cat = structure.carrier
    dim = options.get("dim", 2)
    cycle = sp.find_morphism_cycle(cat)
    if cycle is not None:
        raise ParseError(f"carrier is not loop-free; cycle: {' ; '.join(cycle)}")
    h = sp.homology(cat, dim)
    for n in range(dim + 1):
        report.add(f"homology@{n}", "pass", h.group_str(n))


def suite_main_theorem(structure: Structure, report: Report, options: dict) -> None:
    pbc = _require_pbc(structure)
    rep = ws.main_theorem_suite(pbc, options.get("max_dim", 2), options["budget"])
    for entry in rep.entries:
        report.add(entry.name, entry.status, entry.detail,
                   entry.witness.to_json_obj() if entry.witness else None)


def suite_map_space(structure: Structure, report: Report, options: dict) -> None:
    pbc = _require_pbc(structure)
    budget = options["budget"]
    x, y, dim = options["from"], options["to"], options.get("dim", 2)
    mc = ws.mapping_category(pbc, x, y, budget)
    report.add("mapping-category", "pass",
               f"{len(mc.objects)} zig-zags, {len(mc.morphisms)} morphisms")
    hs = ws.hom_space(pbc, x, y, dim, budget)
    counts = {n: len(hs.simplices[n]) for n in range(dim + 1)}
    report.add("hom-space-simplices", "pass", json.dumps(counts, sort_keys=True))
    if sp.is_loop_free(mc):
        h = sp.homology(mc, dim)
        for n in range(dim + 1):
            report.add(f"hom-space-homology@{n}", "pass", h.group_str(n))
    else:
        report.add("hom-space-homology", "unknown", "mapping category has cycles")


def suite_compose(structure: Structure, report: Report, options: dict) -> None:
    pbc = _require_pbc(structure)

    def parse_zig(spec: str) -> ws.ZigZag:
        parts = spec.split(":")
        if len(parts) != 2:
            raise ParseError(f"zig-zag spec must be FORWARD:BACKWARD, got {spec!r}")
        fwd, bwd = parts
        cat = pbc.carrier
        if fwd not in cat.morphisms or bwd not in cat.morphisms:
            raise ParseError(f"unknown morphisms in zig-zag spec {spec!r}")
        z = ws.ZigZag(cat.src(fwd), cat.tgt(fwd), cat.src(bwd), fwd, bwd)
        zrep = ws.check_zigzag(pbc, z)
        if not zrep.ok:
            raise ParseError("invalid zig-zag:\n" + zrep.render())
        return z

    z1 = parse_zig(options["z1"])
    z2 = parse_zig(options["z2"])
    if z1.right != z2.left:
        raise ParseError(f"zig-zags not composable: {z1.right} != {z2.left}")
    filled, outer = ws.compose_zigzags(pbc, z1, z2)
    report.add("composite", "pass",
               f"{outer.left} --{outer.forward}--> {outer.apex} <=={outer.backward}== {outer.right}")
    report.add("filled-diagram", "pass",
               json.dumps(dict(sorted(filled.object_assignment.items())), sort_keys=True))
    report.add("backward-leg-tcof", "pass" if outer.backward in pbc.tcof.members else "fail",
               outer.backward)


SUITES = {
    "validate": suite_validate,
    "segal": suite_segal,
    "weiss": suite_weiss,
    "homology": suite_homology,
    "main-theorem": suite_main_theorem,
    "map-space": suite_map_space,
    "compose": suite_compose,
}


def run_suite(structure: Structure, suite: str, options: dict,
              fixture: str = "", fixture_digest: str = "") -> Report:
    """Execute a named suite and collect a deterministic report."""
    config = {k: v for k, v in sorted(options.items()) if k != "budget"}
    config["budget"] = options.get("budget", DEFAULT_BUDGET)
    report = Report(suite, fixture, fixture_digest, config)
    t0 = time.monotonic()
    SUITES[suite](structure, report, options)
    report.timing = time.monotonic() - t0
    return report


# -- DOT export -------------------------------------------------------------------------

def _dot_escape(s: str) -> str:
    return s.replace('"', '\\"')


def export_dot_category(cat: fc.FinCategory,
                        tcof: frozenset[str] = frozenset(),
                        weq: frozenset[str] = frozenset()) -> str:
    """Objects as nodes; indecomposable non-identity morphisms as edges.
    Trivial cofibrations are dashed, other weak equivalences gray."""
    nonid = [m for m in cat.morphisms if not cat.is_identity(m)]
    composites = set()
    for g in nonid:
        for f in nonid:
            if cat.composable(g, f):
                composites.add(cat.compose(g, f))
    lines = ["digraph category {", "  rankdir=LR;"]
    for o in cat.objects:
        lines.append(f'  "{_dot_escape(o)}";')
    for m in sorted(nonid):
        if m in composites:
            continue
        a, b = cat.morphisms[m]
        style = []
        if m in tcof:
            style.append("style=dashed")
        elif m in weq:
            style.append("color=gray40")
        attr = f', {", ".join(style)}' if style else ""
        lines.append(f'  "{_dot_escape(a)}" -> "{_dot_escape(b)}" '
                     f'[label="{_dot_escape(m)}"{attr}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


PENTAGON_POS = {
    "(0,0)": (0.0, 0.0), "(1,1)": (2.0, 0.0), "(2,2)": (4.0, 0.0),
    "(0,1)": (1.0, 1.0), "(1,2)": (3.0, 1.0), "(0,2)": (2.0, 2.0),
}


def export_dot_pentagon(pbc: rc.PBCStructure, diagram: fc.Functor) -> str:
    """A degree-2 diagram laid out as the pentagon: vertices on the base row,
    apexes above, pushout corner on top; backward edges dashed."""
    tn = sp.build_T(2)
    lines = ["digraph pentagon {", "  layout=neato;"]
    for t_obj, (x, y) in sorted(PENTAGON_POS.items()):
        label = _dot_escape(diagram.object_map[t_obj])
        lines.append(f'  "{t_obj}" [label="{label}", pos="{x},{y}!"];')
    gens = sorted(tn.backward_generators) + sorted(tn.forward_generators)
    for g in gens:
        a, b = tn.category.morphisms[g]
        img = _dot_escape(diagram.morphism_map[g])
        style = ", style=dashed" if g in tn.backward else ""
        lines.append(f'  "{a}" -> "{b}" [label="{img}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(target, path: Optional[str] = None, **kwargs) -> str:
    """Write a DOT rendering of a category or of a degree-2 diagram."""
    if isinstance(target, fc.FinCategory):
        text = export_dot_category(target, kwargs.get("tcof", frozenset()),
                                   kwargs.get("weq", frozenset()))
    elif isinstance(target, fc.Functor):
        text = export_dot_pentagon(kwargs["pbc"], target)
    else:
        raise fc.CategoryError(f"cannot export {type(target).__name__} as DOT")
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def suite_export_dot(structure: Structure, options: dict) -> str:
    target = options.get("target", "carrier")
    if target == "carrier":
        tcof = structure.tcof.members if isinstance(structure, rc.PBCStructure) else frozenset()
        weq = (structure.weq if isinstance(structure, rc.PBCStructure)
               else structure.rel.weq.members if isinstance(structure, rc.BrownStructure)
               else structure.weq.members)
        return export_dot_category(structure.carrier, tcof, weq)
    if target.startswith("c2:"):
        pbc = _require_pbc(structure)
        index = int(target.split(":", 1)[1])
        level2 = ws.enumerate_Cn(pbc, 2, options["budget"])
        ids = list(level2.category.objects)
        if not (0 <= index < len(ids)):
            raise ParseError(f"c2 index {index} out of range (0..{len(ids) - 1})")
        return export_dot_pentagon(pbc, level2.diagrams[ids[index]])
    if target.startswith("map:"):
        pbc = _require_pbc(structure)
        try:
            x, y = target.split(":", 1)[1].split(",")
        except ValueError:
            raise ParseError("map target must be map:X,Y") from None
        mc = ws.mapping_category(pbc, x, y, options["budget"])
        return export_dot_category(mc)
    raise ParseError(f"unknown export target {target!r}; use carrier, c2:<index>, or map:X,Y")


# -- entry point ----------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS,
                        help=f"enumeration budget (default from ${BUDGET_ENV} or {DEFAULT_BUDGET})")
    common.add_argument("--format", choices=["json", "text"], default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS,
                        help="write the report to this path")
    p = argparse.ArgumentParser(
        prog="pbcat",
        parents=[common],
        description="Verify partial Brown category axioms and the zig-zag "
                    "constructions they support, at desk scale.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        sp_ = sub.add_parser(name, help=help_text, parents=[common])
        sp_.add_argument("file")
        return sp_

    add("validate", "check every axiom the file's structure claims")
    s = add("segal", "Segal comparison functors at degrees 2..N")
    s.add_argument("--max-n", type=int, default=3)
    s = add("weiss", "discreteness, Tamsamani conditions, level-1 decomposition")
    s.add_argument("--max-dim", type=int, default=2)
    s = add("map-space", "a zig-zag mapping category and its nerve")
    s.add_argument("--from", dest="from_", required=True, metavar="X")
    s.add_argument("--to", required=True, metavar="Y")
    s.add_argument("--dim", type=int, default=2)
    s = add("compose", "pushout composition of two zig-zags")
    s.add_argument("--z1", required=True, metavar="FWD:BWD")
    s.add_argument("--z2", required=True, metavar="FWD:BWD")
    s = add("homology", "integer homology of the loop-free carrier")
    s.add_argument("--dim", type=int, default=2)
    s = add("main-theorem", "adjunction, retraction, and fiber evidence per level")
    s.add_argument("--max-dim", type=int, default=2)
    s = add("export-dot", "graph rendering of the carrier, a pentagon, or a mapping category")
    s.add_argument("--target", default="carrier")
    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    budget = getattr(args, "budget", None)
    if budget is None:
        budget = int(os.environ.get(BUDGET_ENV, DEFAULT_BUDGET))
    args.format = getattr(args, "format", None) or "text"
    args.out = getattr(args, "out", None)
    try:
        structure = parse_spec(args.file, budget)
        digest = fixture_hash(args.file)
        if args.command == "export-dot":
            options = {"target": args.target, "budget": budget}
            text = suite_export_dot(structure, options)
            if args.out:
                with open(args.out, "w", encoding="utf-8") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return 0
        options: dict = {"budget": budget}
        if args.command == "segal":
            options["max_n"] = args.max_n
        elif args.command in ("weiss", "main-theorem"):
            options["max_dim"] = args.max_dim
        elif args.command == "map-space":
            options.update({"from": args.from_, "to": args.to, "dim": args.dim})
        elif args.command == "homology":
            options["dim"] = args.dim
        elif args.command == "compose":
            options.update({"z1": args.z1, "z2": args.z2})
        report = run_suite(structure, args.command, options,
                           fixture=os.path.basename(args.file), fixture_digest=digest)
    except ParseError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2
    except fc.BudgetExceededError as exc:
        sys.stderr.write(f"budget exceeded: {exc}\n")
        return 3
    except fc.CategoryError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return 2
    text = emit_report(report, args.format, args.out)
    if not args.out:
        sys.stdout.write(text)
    return 1 if report.failed else 0


if __name__ == "__main__":
    sys.exit(main())
