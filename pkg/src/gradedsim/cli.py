"""Command-line front end.

Exit codes: 0 the check holds or the computation finished, 1 the check
fails (a witness is printed), 2 input or usage error, 3 a fixpoint hit its
iteration cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import corpus, dawr, jsonio, lmp, ltsr, mdp
from .glue import checkers, final_language_check, glue, glued_from_graded
from .errors import CheckFailed, ContainmentError, FixpointNotConverged, GradedSimError
from .fixpoint import FixpointConfig, nat_widening_bound
from .grades import INF, MinGradeMatrix, Pseudometric, Relation, collapse, lax_monoidal_closure
from .systems import KINDS, Da, Dawr, Lmp, Ltsr, Mdp, load_json, parse, summary

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: list
    system: str
    verdict: str
    payload: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0

    def to_dict(self):
        return {"command": self.command, "system": self.system, "verdict": self.verdict,
                "payload": self.payload, "elapsed_ms": round(self.elapsed_ms, 3)}


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _system(path):
    return parse(_read(path))


def _payload(path, states=None):
    return jsonio.loads(_read(path), states)


def _cfg(args, system=None, gap=None):
    cap = args.max_iter
    if args.widening is not None:
        bound = INF if args.widening == "inf" else int(args.widening)
    elif system is not None and gap is not None:
        bound = nat_widening_bound(len(system.states), gap)
    else:
        bound = INF
    return FixpointConfig(widening_bound=bound, iteration_cap=cap)


def _witness_payload(w, states):
    return {"witness": w.to_dict(states)}


# ---------------------------------------------------------------- commands


def cmd_check(args):
    system = _system(args.file)
    st = system.states
    path = args.relation or args.graded
    payload = _payload(path, st)
    if args.graded:
        if not isinstance(payload, MinGradeMatrix):
            raise UsageError("--graded expects a graded matrix document")
        checker = checkers(system)[0]
    else:
        if isinstance(system, Lmp) and not isinstance(system, Mdp):
            if not isinstance(payload, Pseudometric):
                raise UsageError("the ungraded notion for an LMP is a pseudometric document")
            checker = lmp.check_metric_bisimulation
        else:
            if not isinstance(payload, Relation):
                raise UsageError("--relation expects a relation document")
            checker = {Dawr: dawr.check_da_simulation, Da: dawr.check_da_simulation,
                       Ltsr: ltsr.check_lts_bisimulation, Mdp: mdp.check_mdp_simulation}[type(system)]
    w = checker(system, payload)
    if w is None:
        return EXIT_OK, summary(system), "holds", {}
    return EXIT_FAIL, summary(system), "fails", _witness_payload(w, st)


def cmd_similarity(args):
    system = _system(args.file)
    st = system.states
    if args.graded:
        if isinstance(system, Dawr):
            result = dawr.dawr_graded_similarity(system, _cfg(args, system, dawr.max_reward_gap(system)))
        elif isinstance(system, Ltsr):
            result = ltsr.amortised_bisimilarity(system, _cfg(args, system, ltsr.max_reward_gap(system)))
        elif isinstance(system, Mdp):
            raise UsageError("graded similarity is not computed for MDPs; use `check --graded`")
        elif isinstance(system, Lmp):
            result = lmp.graded_bisimilarity(system, _cfg(args))
        else:
            raise UsageError("plain DAs have no graded similarity")
    elif isinstance(system, Da):
        result = dawr.da_similarity(system)
    elif isinstance(system, Ltsr):
        result = ltsr.lts_bisimilarity(system)
    elif isinstance(system, Mdp):
        result = mdp.mdp_similarity(system)
    else:
        result = lmp.metric_bisimilarity(system, _cfg(args))
    return EXIT_OK, summary(system), "done", {"result": jsonio.to_doc(result, st)}


def cmd_collapse(args):
    system = _system(args.file)
    graded = _payload(args.graded, system.states)
    if not isinstance(graded, MinGradeMatrix):
        raise UsageError("--graded expects a graded matrix document")
    push = checkers(system)[2] if isinstance(system, (Dawr, Ltsr, Lmp)) else collapse
    return EXIT_OK, summary(system), "done", {"result": jsonio.to_doc(push(graded), system.states)}


def cmd_closure(args):
    doc = jsonio.unwrap(load_json(_read(args.graded)))
    graded = jsonio.from_doc(doc)
    if not isinstance(graded, MinGradeMatrix):
        raise UsageError("--graded expects a graded matrix document")
    closed = lax_monoidal_closure(graded)
    return EXIT_OK, "", "done", {"result": jsonio.to_doc(closed, doc["states"])}


def cmd_galois(args):
    doc = jsonio.unwrap(load_json(_read(args.file)))
    payload = jsonio.from_doc(doc)
    if args.direction == "R":
        if not isinstance(payload, Pseudometric):
            raise UsageError("galois R expects a pseudometric document")
        result = lmp.galois_R(payload)
    else:
        if not isinstance(payload, MinGradeMatrix):
            raise UsageError("galois L expects a graded matrix document")
        result = lmp.galois_L(payload)
    return EXIT_OK, "", "done", {"result": jsonio.to_doc(result, doc["states"])}


def cmd_glue(args):
    system = _system(args.file)
    graded = _payload(args.graded, system.states)
    if not isinstance(graded, MinGradeMatrix):
        raise UsageError("--graded expects a graded matrix document")
    try:
        if args.ungraded:
            g = glue(graded, _payload(args.ungraded, system.states), system)
        else:
            g = glued_from_graded(graded, system)
    except CheckFailed as exc:
        payload = {"component": exc.component, **_witness_payload(exc.witness, system.states)}
        return EXIT_FAIL, summary(system), "fails", payload
    except ContainmentError as exc:
        i, j = exc.pair
        return EXIT_FAIL, summary(system), "fails", {"containment": [system.states[i], system.states[j]],
                                                     "detail": str(exc)}
    return EXIT_OK, summary(system), "holds", {"result": g.to_dict()}


def cmd_lang_check(args):
    system = _system(args.file)
    if not isinstance(system, Da):
        raise UsageError("lang-check expects a da or dawr system")
    res = final_language_check(system)
    st = system.states
    payload = {
        "separating": [{"pair": [st[s], st[t]], "word": list(w)} for (s, t), w in sorted(res.separating.items())],
        "mismatch": None if res.mismatch is None else [st[i] for i in res.mismatch],
    }
    return (EXIT_OK if res.ok else EXIT_FAIL), summary(system), ("holds" if res.ok else "fails"), payload


def cmd_corpus(args):
    seed = int(os.environ.get("GRADEDSIM_SEED", args.seed))
    seeds = range(seed, seed + args.count)
    kinds = [args.kind] * args.count
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            reports = list(pool.map(corpus.run_properties, kinds, seeds))
    else:
        reports = [corpus.run_properties(k, s) for k, s in zip(kinds, seeds)]
    failures = [{"seed": r.seed, "system": r.summary, "failed": [k for k, v in r.checks.items() if not v]}
                for r in reports if not r.ok]
    names = list(reports[0].checks) if reports else []
    totals = {name: sum(r.checks[name] for r in reports) for name in names}
    payload = {"kind": args.kind, "count": args.count, "first_seed": seed,
               "passed": {k: f"{v}/{len(reports)}" for k, v in totals.items()}, "failures": failures}
    verdict = "holds" if not failures else "fails"
    return (EXIT_OK if not failures else EXIT_FAIL), f"{args.count} generated {args.kind} systems", verdict, payload


# ---------------------------------------------------------------- output


def _cell(v):
    return "∞" if v == "inf" else str(v)


def _table(doc):
    kind = doc.get("kind")
    states = doc.get("states", [])
    if kind in ("graded", "pseudometric"):
        rows = doc["entries"] if kind == "graded" else doc["distances"]
        width = max([len(s) for s in states] + [len(_cell(v)) for r in rows for v in r])
        lines = [" " * width + " " + " ".join(s.rjust(width) for s in states)]
        for s, row in zip(states, rows):
            lines.append(s.rjust(width) + " " + " ".join(_cell(v).rjust(width) for v in row))
        return "\n".join(lines)
    if kind == "relation":
        pairs = {tuple(p) for p in doc["pairs"]}
        width = max(len(s) for s in states)
        lines = [" " * width + " " + " ".join(s.rjust(width) for s in states)]
        for s in states:
            lines.append(s.rjust(width) + " " + " ".join(("x" if (s, t) in pairs else ".").rjust(width)
                                                        for t in states))
        return "\n".join(lines)
    return json.dumps(doc, indent=2, ensure_ascii=False)


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2, ensure_ascii=False)
    out = [f"command : {' '.join(report.command)}"]
    if report.system:
        out.append(f"system  : {report.system}")
    out.append(f"verdict : {report.verdict}")
    p = report.payload
    if "result" in p and isinstance(p["result"], dict) and p["result"].get("kind") != "glued":
        out.append(_table(p["result"]))
    elif "witness" in p:
        w = p["witness"]
        sym = f" on {w['symbol']}" if w["symbol"] else ""
        prefix = f"{p['component']} component: " if "component" in p else ""
        out.append(f"witness : {prefix}{w['kind']} at ({w['pair'][0]}, {w['pair'][1]}){sym}: {w['detail']}")
    elif "passed" in p:
        for name, frac in p["passed"].items():
            out.append(f"  {frac:>9}  {name}")
        for f in p["failures"]:
            out.append(f"  seed {f['seed']} ({f['system']}): {', '.join(f['failed'])}")
    elif "separating" in p:
        if p["mismatch"]:
            out.append(f"mismatch: ({p['mismatch'][0]}, {p['mismatch'][1]})")
        for entry in p["separating"]:
            word = " ".join(entry["word"]) or "ε"
            out.append(f"  {entry['pair'][0]} / {entry['pair'][1]}: {word}")
    elif p:
        out.append(json.dumps(p, indent=2, ensure_ascii=False))
    out.append(f"time    : {report.elapsed_ms:.1f} ms")
    return "\n".join(out)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--max-iter", type=int, default=None, help="fixpoint iteration cap")
    common.add_argument("--widening", default=None, help="widening bound for natural grades, or 'inf'")
    common.add_argument("--quiet", action="store_true", help="print nothing; rely on the exit code")

    parser = argparse.ArgumentParser(prog="gradedsim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("check", parents=[common], help="check a relation or graded matrix")
    p.add_argument("file")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--relation")
    g.add_argument("--graded")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("similarity", parents=[common], help="compute the (graded) similarity")
    p.add_argument("file")
    p.add_argument("--graded", action="store_true")
    p.set_defaults(func=cmd_similarity)

    p = sub.add_parser("collapse", parents=[common], help="collapse a graded matrix")
    p.add_argument("file")
    p.add_argument("--graded", required=True)
    p.set_defaults(func=cmd_collapse)

    p = sub.add_parser("closure", parents=[common], help="lax monoidal closure of a graded matrix")
    p.add_argument("--graded", required=True)
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("galois", parents=[common], help="apply L (graded -> metric) or R (metric -> graded)")
    p.add_argument("direction", choices=("L", "R"))
    p.add_argument("file")
    p.set_defaults(func=cmd_galois)

    p = sub.add_parser("glue", parents=[common], help="build a glued simulation")
    p.add_argument("file")
    p.add_argument("--graded", required=True)
    p.add_argument("--ungraded")
    p.set_defaults(func=cmd_glue)

    p = sub.add_parser("lang-check", parents=[common], help="mutual similarity vs language equality")
    p.add_argument("file")
    p.set_defaults(func=cmd_lang_check)

    p = sub.add_parser("corpus", parents=[common], help="run the property suite on generated systems")
    p.add_argument("--kind", choices=KINDS, required=True)
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_corpus)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        code, system, verdict, payload = args.func(args)
    except UsageError as exc:
        print(f"gradedsim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FixpointNotConverged as exc:
        print(f"gradedsim: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GradedSimError, ValueError) as exc:
        print(f"gradedsim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = Report(list(argv if argv is not None else sys.argv[1:]), system, verdict, payload,
                    (time.perf_counter() - start) * 1000)
    if not args.quiet:
        print(render(report, args.format), file=out)
    return code


def main():
    sys.exit(run())
