"""Command-line front end with a stable exit-code contract.

Exit codes: 0 all checked properties pass and results are complete; 1 a
checked property fails (report carries a witness); 2 usage or parse error;
3 a budget was exhausted and only partial results exist; 4 internal
inconsistency (a bug, never an input problem).

Reports go to stdout and are byte-identical for identical inputs and seed;
wall-clock timing goes to stderr only.  Work counters inside reports are
deterministic evaluation/node counts.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .errors import (BudgetExceededError, FrameValidationError, GRDFError,
                     InternalInconsistencyError, PreconditionError)
from .grdf import load_grdf
from .multmaps import (SearchConfig, search_n_derivations, search_n_multiplicative_isos,
                       verify_additive, verify_n_derivation, verify_n_multiplicative)
from .peirce import check_martindale_family, check_peirce_relations, peirce_decompose
from .rings import check_barnes_axioms, check_nobusawa, find_idempotents, find_unities
from .theorem import hunt_counterexamples, run_additivity_pipeline, run_derivation_pipeline

SCHEMA = "gammaring.report/1"

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_BUG = 4

_GAMMA_KEYS = {"alpha", "beta", "gamma", "gamma1", "lambda", "mu", "delta"}


def _is_gamma_key(key: str) -> bool:
    if key in _GAMMA_KEYS:
        return True
    return len(key) >= 2 and key[0] == "g" and key[1:].isdigit()


def _element(ring, index: int, side: str) -> dict:
    group = ring.m_group if side == "m" else ring.gamma_group
    out = {"index": int(index), "residues": list(group.element_at(int(index)))}
    mat = ring.element_matrix(int(index), side)
    if mat is not None:
        out["matrix"] = mat
    return out


def _render_witness(ring, witness):
    if witness is None:
        return None
    out = {}
    for key, val in witness.items():
        if isinstance(val, bool) or not isinstance(val, int):
            out[key] = val
        else:
            out[key] = _element(ring, val, "gamma" if _is_gamma_key(key) else "m")
    return out


def _verdict(ring, check: str, passed: bool, exact: bool, checked: int,
             witness=None, gating: bool = True) -> dict:
    return {"check": check, "passed": bool(passed), "exact": bool(exact),
            "checked": int(checked), "witness": _render_witness(ring, witness),
            "gating": gating}


def _status(verdicts, complete: bool = True) -> int:
    if any(not v["passed"] for v in verdicts if v["gating"]):
        return EXIT_FAIL
    if not complete or any(not v["exact"] for v in verdicts if v["gating"]):
        return EXIT_BUDGET
    return EXIT_PASS


def _pair_dict(pair, additive: bool) -> dict:
    return {"phi": [int(v) for v in pair.phi], "psi": [int(v) for v in pair.psi],
            "additive": bool(additive)}


def cmd_axioms(doc, args):
    ring = doc.ring
    verdicts = [_verdict(ring, r.axiom, r.holds, True, r.checked, r.witness)
                for r in check_barnes_axioms(ring)]
    if ring.nu is not None:
        for r in check_nobusawa(ring):
            # the two faithfulness readings are reported, not gated: the
            # quantifier is ambiguous and both verdicts are informative
            gating = not r.axiom.startswith("nobusawa-iii")
            verdicts.append(_verdict(ring, r.axiom, r.holds, True, r.checked,
                                     r.witness, gating))
    return _status(verdicts), {"verdicts": verdicts}


def cmd_idempotents(doc, args):
    ring = doc.ring
    idems = [{"e": _element(ring, r.e, "m"), "gamma": _element(ring, r.gamma, "gamma"),
              "nontrivial": r.nontrivial} for r in find_idempotents(ring)]
    unities = [{"one": _element(ring, r.one, "m"), "gamma": _element(ring, r.gamma, "gamma")}
               for r in find_unities(ring)]
    return EXIT_PASS, {"idempotents": idems, "unities": unities,
                       "counts": {"idempotents": len(idems),
                                  "nontrivial": sum(i["nontrivial"] for i in idems),
                                  "unities": len(unities)}}


def cmd_peirce(doc, args):
    ring = doc.ring
    if not doc.frame_specs:
        raise GRDFError("peirce needs a 'frames' section")
    verdicts = []
    blocks = []
    for i, frame in enumerate(doc.build_frames()):
        components = peirce_decompose(frame)
        sizes = {f"M{a}{b}": len(components.components[(a, b)]) for a, b in components.components}
        blocks.append({"frame": i, "sizes": sizes})
        rel = check_peirce_relations(components)
        witness = None
        if rel.violations:
            witness = {k: v for k, v in rel.violations[0].items() if isinstance(v, int)}
        verdicts.append(_verdict(ring, f"frame[{i}]-relations", rel.holds, True,
                                 ring.m_order**2 * ring.gamma_order, witness))
        if not rel.holds:
            verdicts[-1]["detail"] = {k: v for k, v in rel.violations[0].items()
                                      if not isinstance(v, int)}
    return _status(verdicts), {"verdicts": verdicts, "components": blocks}


def cmd_conditions(doc, args):
    ring = doc.ring
    frames = doc.build_frames()
    rep = check_martindale_family(ring, frames)
    verdicts = []
    for i, violations in enumerate(rep.frame_violations):
        witness = None
        if violations:
            witness = dict(violations[0].witness)
            witness["invariant"] = violations[0].invariant
        verdicts.append(_verdict(ring, f"frame[{i}]-valid", not violations, True,
                                 ring.m_order * ring.gamma_order, witness))
    verdicts.append(_verdict(ring, "condition-ii", rep.cond_ii.holds, True,
                             rep.cond_ii.checked, rep.cond_ii.witness))
    if rep.cond_iii is not None:
        verdicts.append(_verdict(ring, "condition-iii", rep.cond_iii.holds, True,
                                 rep.cond_iii.checked, rep.cond_iii.witness))
    for i, r in enumerate(rep.cond_iv):
        verdicts.append(_verdict(ring, f"condition-iv[{i}]", r.holds, True,
                                 r.checked, r.witness))
    report = {"verdicts": verdicts, "overall": rep.overall}
    if rep.reason:
        report["reason"] = rep.reason
        return EXIT_FAIL, report
    return _status(verdicts), report


def cmd_verify_iso(doc, args):
    ring = doc.ring
    if not doc.maps:
        raise GRDFError("verify-iso needs a 'maps' section")
    verdicts = []
    for i, pair in enumerate(doc.maps):
        vr = verify_n_multiplicative(pair, args.n, args.budget, args.seed)
        verdicts.append(_verdict(ring, f"map[{i}]-{args.n}-multiplicative",
                                 vr.passed, vr.exact, vr.checked, vr.witness))
        ar = verify_additive(pair)
        verdicts.append(_verdict(ring, f"map[{i}]-additive", ar.passed, True,
                                 ar.checked, ar.witness, gating=False))
    return _status(verdicts), {"verdicts": verdicts}


def cmd_verify_derivation(doc, args):
    ring = doc.ring
    if not doc.derivations:
        raise GRDFError("verify-derivation needs a 'derivations' section")
    verdicts = []
    for i, deriv in enumerate(doc.derivations):
        vr = verify_n_derivation(deriv, args.n, args.budget, args.seed)
        verdicts.append(_verdict(ring, f"derivation[{i}]-{args.n}-leibniz",
                                 vr.passed, vr.exact, vr.checked, vr.witness))
        ar = verify_additive(deriv)
        verdicts.append(_verdict(ring, f"derivation[{i}]-additive", ar.passed, True,
                                 ar.checked, ar.witness, gating=False))
    return _status(verdicts), {"verdicts": verdicts}


def cmd_search_iso(doc, args):
    ring = doc.ring
    config = SearchConfig(n=args.n, budget=args.budget, seed=args.seed)
    res = search_n_multiplicative_isos(ring, ring, config)
    pairs = [(p, verify_additive(p).passed) for p in res.found]
    non_additive = [p for p, add in pairs if not add]
    report = {
        "found": len(res.found),
        "additive": sum(1 for _, add in pairs if add),
        "complete": res.complete,
        "nodes": res.nodes,
        "pairs": [_pair_dict(p, add) for p, add in pairs],
    }
    if args.require_additive and non_additive:
        report["witness"] = _pair_dict(non_additive[0], False)
        wr = verify_additive(non_additive[0])
        report["witness"]["additivity_witness"] = _render_witness(ring, wr.witness)
        return EXIT_FAIL, report
    return (EXIT_PASS if res.complete else EXIT_BUDGET), report


def cmd_search_derivations(doc, args):
    ring = doc.ring
    config = SearchConfig(n=args.n, budget=args.budget, seed=args.seed)
    res = search_n_derivations(ring, config)
    tables = [(d, verify_additive(d).passed) for d in res.found]
    non_additive = [d for d, add in tables if not add]
    report = {
        "found": len(res.found),
        "additive": sum(1 for _, add in tables if add),
        "complete": res.complete,
        "nodes": res.nodes,
        "derivations": [{"d": list(d.key()), "additive": bool(add)} for d, add in tables],
    }
    if args.require_additive and non_additive:
        d = non_additive[0]
        wr = verify_additive(d)
        report["witness"] = {"d": list(d.key()),
                             "additivity_witness": _render_witness(ring, wr.witness)}
        return EXIT_FAIL, report
    return (EXIT_PASS if res.complete else EXIT_BUDGET), report


def _pipeline_entry(ring, label, rep):
    return {
        "subject": label,
        "confirmed": rep.defect_zero and rep.agreement,
        "n": rep.n, "k": rep.k,
        "hypotheses": {
            "zero-slots": rep.hypotheses.zero_slots.passed,
            "left-absorption": rep.hypotheses.left_absorption.passed,
            "right-absorption": rep.hypotheses.right_absorption.passed,
            "exact": rep.hypotheses.all_exact,
        },
        "defect_zero": rep.defect_zero,
        "additive": rep.additive.passed,
        "agreement": rep.agreement,
    }


def cmd_theorem(doc, args):
    ring = doc.ring
    if not doc.frame_specs:
        raise GRDFError("theorem needs a 'frames' section")
    if not doc.maps and not doc.derivations:
        raise GRDFError("theorem needs a 'maps' or 'derivations' section")
    frames = doc.build_frames()
    entries = []
    failures = []
    for i, pair in enumerate(doc.maps):
        label = f"map[{i}]"
        try:
            rep = run_additivity_pipeline(pair, args.n, frames, args.budget, args.k)
            entries.append(_pipeline_entry(ring, label, rep))
        except (PreconditionError, ValueError) as ex:
            failures.append({"subject": label, "error": str(ex)})
    for i, deriv in enumerate(doc.derivations):
        label = f"derivation[{i}]"
        try:
            rep = run_derivation_pipeline(ring, deriv, args.n, frames, args.budget, args.k)
            entries.append(_pipeline_entry(ring, label, rep))
        except (PreconditionError, ValueError) as ex:
            failures.append({"subject": label, "error": str(ex)})
    report = {"pipelines": entries, "failures": failures}
    return (EXIT_FAIL if failures else EXIT_PASS), report


def cmd_hunt(args):
    rings = []
    for path in args.input:
        doc = load_grdf(path)
        rings.append((path, doc.ring))
    survey = hunt_counterexamples(rings, n=args.n, budget=args.budget)
    entries = []
    for e in survey.entries:
        witnesses = []
        for kind, obj in e.witnesses:
            if kind == "iso":
                witnesses.append({"kind": kind, "phi": [int(v) for v in obj.phi],
                                  "psi": [int(v) for v in obj.psi]})
            else:
                witnesses.append({"kind": kind, "d": list(obj.key())})
        entries.append({
            "ring": e.name,
            "conditions": e.conditions,
            "qualifying": e.qualifying,
            "frames": e.frame_count,
            "isos": {"found": e.iso_found, "additive": e.iso_additive,
                     "complete": e.iso_complete},
            "derivations": {"found": e.deriv_found, "additive": e.deriv_additive,
                            "complete": e.deriv_complete},
            "witnesses": witnesses,
        })
    report = {"survey": entries, "complete": survey.complete}
    return (EXIT_PASS if survey.complete else EXIT_BUDGET), report


def _render_text(report: dict, indent: int = 0) -> str:
    lines = []
    pad = "  " * indent

    def fmt_witness(w):
        if w is None:
            return ""
        parts = []
        for k, v in w.items():
            if isinstance(v, dict) and "index" in v:
                parts.append(f"{k}={v['index']}")
            else:
                parts.append(f"{k}={v}")
        return "  witness: " + " ".join(parts)

    for key in sorted(report):
        val = report[key]
        if key == "verdicts":
            for v in val:
                mark = "PASS" if v["passed"] else "FAIL"
                exact = "" if v["exact"] else " (partial)"
                info = "" if v.get("gating", True) else " [info]"
                lines.append(f"{pad}{mark:4s} {v['check']:32s} checked={v['checked']}"
                             f"{exact}{info}{fmt_witness(v.get('witness'))}")
        elif key in ("pairs", "derivations") and isinstance(val, list) and len(val) > 20:
            lines.append(f"{pad}{key}: {len(val)} entries (full list in json format)")
        elif isinstance(val, list):
            lines.append(f"{pad}{key}:")
            for item in val:
                if isinstance(item, dict):
                    flat = json.dumps(item, sort_keys=True)
                    lines.append(f"{pad}  {flat}")
                else:
                    lines.append(f"{pad}  {item}")
        elif isinstance(val, dict):
            lines.append(f"{pad}{key}: {json.dumps(val, sort_keys=True)}")
        else:
            lines.append(f"{pad}{key}: {val}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gammaring",
        description="Finite gamma-ring verification and multiplicative-map additivity tool")
    sub = parser.add_subparsers(dest="command", required=True)
    commands = {
        "axioms": "verify the defining product axioms",
        "idempotents": "list idempotents and unity pairs",
        "peirce": "decompose along the frames and check the block relations",
        "conditions": "check the structural conditions for the frame family",
        "verify-iso": "verify supplied map pairs",
        "search-iso": "enumerate n-multiplicative bijection pairs ring -> ring",
        "verify-derivation": "verify supplied derivation tables",
        "search-derivations": "enumerate n-multiplicative derivations",
        "theorem": "run the full defect/additivity pipelines",
        "hunt": "sweep rings for hypothesis-necessity witnesses",
    }
    for name, help_text in commands.items():
        p = sub.add_parser(name, help=help_text)
        if name == "hunt":
            p.add_argument("--input", action="append", required=True,
                           help="ring description path (repeatable)")
        else:
            p.add_argument("--input", required=True, help="ring description path")
        p.add_argument("--n", type=int, default=2, help="product arity (default 2)")
        p.add_argument("--k", type=int, default=None,
                       help="absorption chain length (default n-1)")
        p.add_argument("--budget", type=int, default=10**8,
                       help="evaluation/node budget (default 1e8)")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for partial-verification sampling")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--require-additive", action="store_true",
                       help="searches fail when a non-additive map is found")
    return parser


_HANDLERS = {
    "axioms": cmd_axioms,
    "idempotents": cmd_idempotents,
    "peirce": cmd_peirce,
    "conditions": cmd_conditions,
    "verify-iso": cmd_verify_iso,
    "verify-derivation": cmd_verify_derivation,
    "search-iso": cmd_search_iso,
    "search-derivations": cmd_search_derivations,
    "theorem": cmd_theorem,
    "hunt": cmd_hunt,
}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as ex:
        return EXIT_USAGE if ex.code not in (0, None) else 0
    if args.n < 2:
        print("error: --n must be >= 2", file=sys.stderr)
        return EXIT_USAGE
    if args.k is not None and args.k < 1:
        print("error: --k must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    if args.budget <= 0:
        print("error: --budget must be positive", file=sys.stderr)
        return EXIT_USAGE

    started = time.perf_counter()
    try:
        if args.command == "hunt":
            code, body = cmd_hunt(args)
        else:
            doc = load_grdf(args.input)
            code, body = _HANDLERS[args.command](doc, args)
    except GRDFError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as ex:
        print(f"budget exhausted: {ex}", file=sys.stderr)
        return EXIT_BUDGET
    except (FrameValidationError, PreconditionError) as ex:
        print(f"check failed: {ex}", file=sys.stderr)
        return EXIT_FAIL
    except InternalInconsistencyError as ex:
        print(f"internal inconsistency (bug): {ex}", file=sys.stderr)
        return EXIT_BUG

    report = {"schema": SCHEMA, "command": args.command,
              "options": {"input": args.input, "n": args.n, "k": args.k,
                          "budget": args.budget, "seed": args.seed}}
    report.update(body)
    report["exit"] = code
    if args.format == "json":
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(_render_text(report) + "\n")
    print(f"elapsed {time.perf_counter() - started:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
