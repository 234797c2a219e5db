"""Command-line front end: `trihw <command> SPEC [options]`."""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .algebra import (IncompleteSimples, LiftDivergence, NotFound, frobeniusScan, verifyAlgebra)
from .hwcat import Engine, HighestWeightError, RequiresSemisimpleT
from .klres import (CIPresentation, bettiTable, degreesKLCriterion, klParityCheck,
                    koszulCheckUpTo, resolveTrivial)
from .kernel import LaurentPoly
from .specfile import SCHEMA, SpecError, bundle_to_spec, content_hash, dumps, loads
from .triangular import NotTriangular, ambidexterityCheck, verifyTriangular
from .zoo import ZOO, genericRRCA

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3

COMMANDS = ("verify", "simples", "matrices", "bgg", "tilting", "kl", "blocks", "report")


class InputError(Exception):
    pass


# ------------------------------------------------------------ sections


def _lp(p: LaurentPoly):
    return p.to_json()


def _matrix_json(m):
    return [[_lp(p) for p in row] for row in m]


def section_verify(bundle, cfg):
    A = bundle.algebra
    out = {"algebra": {"name": A.name, "field": A.field.descriptor, "dim": A.dim,
                       "support": list(A.support())}}
    alg = verifyAlgebra(A)
    out["verifyAlgebra"] = alg.to_json()
    violations = [] if alg.ok else ["algebra axioms fail"]
    informational = []
    td = bundle.td
    if td is None:
        out["triangular"] = None
        informational.append("no triangular decomposition supplied")
        return out, violations, informational
    rep = verifyTriangular(A, td)
    out["verifyTriangular"] = rep.to_json()
    if not rep.ok:
        violations.append("triangular decomposition fails verification")
        return out, violations, informational
    amb = ambidexterityCheck(td)
    out["ambidextrous"] = amb.ambidextrous
    if not amb.ambidextrous:
        out["ambidexterity_witness"] = amb.witness_text
        informational.append("not ambidextrous")
    out["semisimple_T"] = td.semisimple_t
    if not td.semisimple_t:
        out["notes"] = ["T is not semisimple: completeness of irr_T assumed"]
    return out, violations, informational


def section_simples(engine, cfg):
    simples = engine.allSimples()
    bij = engine.verifyBijection()
    out = {"simples": {l: {"dim": s.module.dim,
                           "graded_dims": {str(k): v for k, v in s.module.graded_dims().items()},
                           "degree": s.degree}
                       for l, s in simples.items()},
           "bijection": bij.to_json(),
           "rigid": list(engine.rigidSimples()),
           "rigid_quotient_dim": engine.rigidQuotient().dim}
    return out, ([] if bij.ok else bij.violations), []


def section_matrices(engine, cfg):
    dm = engine.decompositionMatrices()
    rel = engine.verifyRelation()
    ung = engine.ungradedDecomposition()
    at_one = tuple(tuple(p.at_one() for p in row) for row in dm.D_Delta)
    out = dm.to_json()
    out["relation"] = rel.to_json()
    out["D_Delta_at_1_matches_ungraded"] = at_one == ung
    viol = list(rel.violations)
    if at_one != ung:
        viol.append("D_Delta at t=1 differs from the ungraded decomposition matrix")
    return out, viol, []


def section_bgg(engine, cfg):
    out, viol, info = {}, [], []
    bgg = engine.bggCheck()
    out["bgg"] = bgg.ok
    if not bgg.ok:
        info.append("not BGG")
        out["bgg_violations"] = bgg.violations
    if engine.td.semisimple_t:
        bim = engine.bggBimoduleCheck()
        out["bgg_bimodule"] = bim.ok
        if bim.ok != bgg.ok:
            viol.append("character and bimodule BGG checks disagree")
    br = engine.brauerReciprocityCheck()
    out["brauer_reciprocity"] = br.to_json()
    viol += br.violations
    fam = engine.compareFamilies()
    out["families"] = fam.details
    out["families_equal"] = fam.ok
    if bgg.ok and not fam.ok:
        viol.append("families differ from standard families on a BGG algebra")
    return out, viol, info


def section_tilting(engine, cfg):
    si = engine.selfInjectivityCheck()
    out = {"self_injectivity": si.to_json()}
    viol, info = [], []
    if not si.self_injective:
        info.append("not self-injective")
        if si.projective_injective:
            out["tilting"] = {"projective_injective": list(si.projective_injective)}
            out["summary"] = "not self-injective; tilting objects are the projective-injectives"
        else:
            out["tilting"] = {"projective_injective": []}
            out["summary"] = "not self-injective; no tilting objects"
        return out, viol, info
    try:
        tdata = engine.tiltingData()
    except RequiresSemisimpleT as exc:
        out["summary"] = f"self-injective; {exc}"
        return out, viol, info
    out["tilting"] = tdata.to_json()
    if not tdata.consistent:
        viol += tdata.notes
    ver = engine.verifyTilting()
    out["verify_tilting"] = ver.to_json()
    viol += ver.violations
    out["summary"] = "self-injective; tilting objects are the projectives"
    return out, viol, info


def section_kl(engine, bundle, cfg):
    td = engine.td
    ci = None
    if bundle.complete_intersection is not None:
        ci = CIPresentation(*bundle.complete_intersection)
    verdict = klParityCheck(engine, cfg.max_step, ci)
    out = {"kl": verdict.to_json()}
    Ap, _ = td.plus_algebra()
    Am, _ = td.minus_algebra()
    out["betti_plus"] = bettiTable(resolveTrivial(Ap, cfg.max_step)).to_json()
    out["betti_minus"] = bettiTable(resolveTrivial(Am, cfg.max_step)).to_json()
    kp, wp = koszulCheckUpTo(Ap, cfg.max_step)
    km, wm = koszulCheckUpTo(Am, cfg.max_step)
    out["koszul"] = {"plus": kp, "minus": km, "depth": cfg.max_step}
    if ci is not None:
        out["degrees_criterion"] = degreesKLCriterion(ci)
    out["degree_convention"] = "internal degrees negative on the A- side, positive on A+"
    return out, [], ([] if verdict.holds else ["KL parity fails"])


def section_blocks(engine, cfg):
    blocks = engine.blocks()
    out = {"blocks": [list(b.labels) for b in blocks],
           "standard_families": [list(f) for f in engine.standardFamilies()]}
    return out, [], []


def section_duality(engine, bundle, cfg):
    if bundle.tau is None:
        return {"duality": None}, [], []
    F = engine.F
    frob = frobeniusScan(engine.A, seed=cfg.seed, hints=bundle.frobenius_hints).get(0, NotFound)
    rep = engine.verifyInvolution(bundle.tau)
    if not rep.ok:
        return {"duality": {"involution": rep.to_json()}}, rep.violations, []
    dual = engine.verifyDuality(bundle.tau, frob if frob is not NotFound else None)
    return {"duality": dual.to_json()}, dual.violations, []


def section_frobenius(engine, bundle, cfg):
    scan = frobeniusScan(engine.A, seed=cfg.seed, hints=bundle.frobenius_hints)
    F = engine.F
    return {"frobenius": {str(d): (None if f is NotFound else f.to_json(F))
                          for d, f in scan.items()}}, [], []


# ------------------------------------------------------------ orchestration


def run(bundle, command, cfg):
    """Return (document, violations, informational)."""
    doc = {"schema": SCHEMA, "command": command, "seed": cfg.seed}
    violations, info = [], []

    def merge(res):
        part, v, i = res
        doc.update(part)
        violations.extend(v)
        info.extend(i)

    merge(section_verify(bundle, cfg))
    if command == "verify":
        return doc, violations, info
    if bundle.td is None:
        raise InputError("spec has no triangular section")
    if violations:
        return doc, violations, info
    engine = Engine(bundle.td, seed=cfg.seed)
    if command in ("simples", "report"):
        merge(section_simples(engine, cfg))
    if command in ("matrices", "report"):
        merge(section_matrices(engine, cfg))
    if command in ("bgg", "report"):
        merge(section_bgg(engine, cfg))
    if command in ("blocks", "report"):
        merge(section_blocks(engine, cfg))
    if command in ("tilting", "report"):
        merge(section_tilting(engine, cfg))
    if command in ("kl", "report"):
        merge(section_kl(engine, bundle, cfg))
    if command == "report":
        merge(section_frobenius(engine, bundle, cfg))
        merge(section_duality(engine, bundle, cfg))
    return doc, violations, info


# ------------------------------------------------------------ rendering


def _render_laurent_matrix(labels, m):
    cells = [[str(LaurentPoly.from_json(x)) for x in row] for row in m]
    width = max([len(str(l)) for l in labels] + [len(c) for row in cells for c in row])
    lines = [" " * (width + 2) + "  ".join(str(l).rjust(width) for l in labels)]
    for l, row in zip(labels, cells):
        lines.append(str(l).rjust(width) + "  " + "  ".join(c.rjust(width) for c in row))
    return lines


def render_text(doc) -> str:
    lines = []
    labels = doc.get("labels")

    def walk(key, val, indent):
        pad = "  " * indent
        if key in ("C_L", "C_Delta", "D_Delta") and labels is not None:
            lines.append(f"{pad}{key}:")
            lines.extend(pad + "  " + s for s in _render_laurent_matrix(labels, val))
        elif isinstance(val, dict) and val:
            lines.append(f"{pad}{key}:")
            for k, v in val.items():
                walk(k, v, indent + 1)
        elif isinstance(val, list) and val and any(isinstance(v, (dict, list)) for v in val):
            lines.append(f"{pad}{key}:")
            for k, v in enumerate(val):
                walk(f"- {k}", v, indent + 1)
        else:
            if isinstance(val, dict):
                text = "(none)"
            elif isinstance(val, bool) or val is None:
                text = json.dumps(val)
            elif isinstance(val, list):
                text = ", ".join(str(v) for v in val) if val else "(none)"
            else:
                text = str(val)
            lines.append(f"{pad}{key}: {text}")

    for k, v in doc.items():
        if k != "labels":
            walk(k, v, 0)
    if labels is not None:
        lines.insert(0, "labels: " + ", ".join(labels))
    return "\n".join(lines) + "\n"


def render(doc, fmt) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=1, ensure_ascii=False) + "\n"
    return render_text(doc)


# ------------------------------------------------------------ entry points


def _parse_param(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _zoo_bundle(name, params):
    if name == "genericRRCA":
        return genericRRCA(*params)
    if name not in ZOO:
        raise InputError(f"unknown zoo algebra {name!r}; choose from "
                         f"{', '.join(sorted(list(ZOO) + ['genericRRCA']))}")
    try:
        return ZOO[name](*params)
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad parameters for {name}: {exc}") from None


def build_parser():
    p = argparse.ArgumentParser(prog="trihw", description="Highest-weight data of graded "
                                "algebras with a triangular decomposition.")
    p.add_argument("--version", action="version", version=f"trihw {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--max-step", type=int, default=6)
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--cache-dir", default=None)
        sp.add_argument("--strict", action="store_true")

    for c in COMMANDS:
        sp = sub.add_parser(c, help=f"run the {c} pipeline on a spec file")
        sp.add_argument("spec", help="algebra spec file (JSON)")
        common(sp)
    zp = sub.add_parser("zoo", help="emit a spec file for an example algebra")
    zp.add_argument("name")
    zp.add_argument("params", nargs="*", help="constructor parameters (JSON literals)")
    zp.add_argument("--emit", default="-", help="output path (default stdout)")
    return p


def _cached(cfg, key, compute):
    if not cfg.cache_dir:
        return compute()
    path = os.path.join(cfg.cache_dir, key + ".json")
    if os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    result = compute()
    os.makedirs(cfg.cache_dir, exist_ok=True)
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(result, fh, ensure_ascii=False)
    os.replace(tmp, path)
    return result


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        if args.command == "zoo":
            bundle = _zoo_bundle(args.name, [_parse_param(x) for x in args.params])
            text = dumps(bundle_to_spec(bundle))
            if args.emit == "-":
                stdout.write(text)
            else:
                with open(args.emit, "w", encoding="utf-8") as fh:
                    fh.write(text)
            return EXIT_OK
        if args.jobs < 1 or args.max_step < 0:
            raise InputError("--jobs must be >= 1 and --max-step >= 0")
        try:
            with open(args.spec, encoding="utf-8") as fh:
                spec_text = fh.read()
        except OSError as exc:
            raise InputError(f"{args.spec}: {exc.strerror or exc}") from None
        key = content_hash(spec_text, args.command, args.seed, args.max_step)

        def compute():
            bundle = loads(spec_text)
            doc, violations, info = run(bundle, args.command, args)
            return {"doc": doc, "violations": violations, "informational": info}

        result = _cached(args, key, compute)
    except (SpecError, InputError) as exc:
        stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT
    except (HighestWeightError, IncompleteSimples, LiftDivergence, NotTriangular) as exc:
        stderr.write(f"internal invariant breach: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL
    doc = dict(result["doc"])
    doc["violations"] = result["violations"]
    doc["informational"] = result["informational"]
    stdout.write(render(doc, args.format))
    if result["violations"]:
        return EXIT_VIOLATION
    if args.strict and result["informational"]:
        return EXIT_VIOLATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
