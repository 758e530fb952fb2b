"""Command-line front end.

Every verb maps to one engine call and produces a RunReport; the text and
JSON renderings are deterministic for fixed inputs and seed.  Input paths
that do not exist are looked up among the bundled fixtures, so
``--domain restaurant --program wishes`` works out of the box.

Exit codes: 0 ok, 1 verification failed, 2 usage or parse error,
3 size bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import asp, fca, formats, logic, programs
from .cpengine import DEFAULT_MAX_DOMAIN, CPEngine
from .errors import BoundExceeded, ProgramError, RZError
from .generate import random_classical_program

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3

_SUFFIXES = {"domain": ".poset", "program": ".rzp", "classical": ".lp",
             "context": ".cxt", "theory": ".thy"}


@dataclass
class RunReport:
    verb: str
    status: str = "ok"
    payload: dict = field(default_factory=dict)
    seed: int | None = None
    bounds: dict = field(default_factory=dict)
    timing: float | None = None
    text: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        doc = {"verb": self.verb, "status": self.status, "payload": self.payload,
               "seed": self.seed, "bounds": self.bounds}
        if self.timing is not None:
            doc["timing"] = round(self.timing, 6)
        return json.dumps(doc, sort_keys=True, indent=2)

    @property
    def exit_code(self) -> int:
        return {"ok": EXIT_OK, "fail": EXIT_FAIL}.get(self.status, EXIT_USAGE)


def bundled(name: str) -> Path:
    return Path(str(resources.files("rzlogic") / "data" / name))


def read_input(path: str, kind: str) -> str:
    p = Path(path)
    if p.is_file():
        return p.read_text()
    for candidate in (bundled(path), bundled(path + _SUFFIXES[kind])):
        if candidate.is_file():
            return candidate.read_text()
    raise FileNotFoundError(f"no such {kind} file: {path}")


def _domain(args):
    return formats.parse_domain_file(read_input(args.domain, "domain"),
                                     auto_bottom=args.auto_bottom)


def _names(d, xs):
    return d.sorted_names(xs)


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--{n.replace('_', '-')} is required for {args.verb}")


class UsageError(RZError):
    pass


# -- verbs -----------------------------------------------------------------

def cmd_check_domain(args, rep):
    _need(args, "domain")
    d = _domain(args)
    rep.payload = {"elements": list(d.names), "size": len(d), "bottom": d.name(d.bottom),
                   "covers": [[d.name(x), d.name(y)] for x, y in d.covers()],
                   "aliases": {a: d.name(t) for a, t in sorted(d.aliases.items())}}
    rep.text = [f"{len(d)} elements, bottom {d.name(d.bottom)}"]


def cmd_entail(args, rep):
    _need(args, "domain", "theory", "clause")
    d = _domain(args)
    theory = formats.parse_theory(read_input(args.theory, "theory"), d)
    clause = formats.parse_clause(args.clause, d)
    result = logic.entails(d, theory, clause)
    rep.payload = {"entails": result, "consistent": logic.is_consistent(d, theory),
                   "minimal_models": _names(d, d.minimal_elements(logic.model_set(d, theory)))}
    rep.text = ["yes" if result else "no"]


def cmd_models(args, rep):
    _need(args, "domain")
    d = _domain(args)
    if args.theory is not None:
        theory = formats.parse_theory(read_input(args.theory, "theory"), d)
        ms = logic.model_set(d, theory)
        rep.payload = {"models": _names(d, ms),
                       "minimal_models": _names(d, d.minimal_elements(ms))}
        rep.text = [" ".join(rep.payload["minimal_models"])]
        return
    _need(args, "program")
    p = formats.parse_program_file(read_input(args.program, "program"), d)
    ms = programs.program_models(p)
    cons = programs.cons_program(p)
    rep.payload = {"models": _names(d, ms), "minimal_models": _names(d, programs.minimal_models(p))}
    if len(d) <= args.max_domain:
        rep.payload["cons_clauses"] = len(cons.clauses())
    rep.bounds = {"max_domain": args.max_domain}
    rep.text = [" ".join(rep.payload["minimal_models"])]


def cmd_answer_models(args, rep):
    _need(args, "domain", "program")
    d = _domain(args)
    p = formats.parse_program_file(read_input(args.program, "program"), d)
    found = programs.enumerate_answer_models(p)
    rep.payload = {"answer_models": _names(d, found),
                   "witnesses": {d.name(w): d.name(programs.answer_witness(w, p)) for w in found}}
    rep.text = [" ".join(rep.payload["answer_models"])]


def cmd_min_answer_models(args, rep):
    _need(args, "domain", "program")
    d = _domain(args)
    p = formats.parse_program_file(read_input(args.program, "program"), d)
    found = programs.enumerate_min_answer_models(p)
    rep.payload = {"min_answer_models": _names(d, found),
                   "reduct_sizes": {d.name(w): len(programs.reduct(p, w)) for w in found}}
    rep.text = [" ".join(rep.payload["min_answer_models"])]


def cmd_fixpoint(args, rep):
    _need(args, "domain", "program")
    d = _domain(args)
    p = formats.parse_program_file(read_input(args.program, "program"), d)
    if not p.negation_free:
        raise ProgramError("fixpoint needs a program without default negation")
    engine = CPEngine(d, max_domain=args.max_domain)
    stages = engine.trace(p)
    fix = stages[-1]
    models = engine.models_of(fix.clauses)
    rep.bounds = {"max_domain": args.max_domain}
    rep.payload = {"iterations": len(stages) - 1, "clauses": len(fix),
                   "minimal_models": _names(d, d.members(d.minimal_mask(models)))}
    rep.text = [f"iterations {len(stages) - 1}", f"clauses {len(fix)}"]


def cmd_asp_solve(args, rep):
    _need(args, "program")
    p = formats.parse_classical_program(read_input(args.program, "classical"))
    found = asp.answer_sets(p)
    rep.payload = {"answer_sets": [str(a) for a in found]}
    rep.text = [str(a) for a in found] or ["no answer sets"]


def _classical_batch(args, negation):
    if args.program is not None:
        return [formats.parse_classical_program(read_input(args.program, "classical"))], None
    rng = random.Random(args.seed)
    variables = [f"p{i}" for i in range(args.vars)]
    return [random_classical_program(rng, args.vars, args.rules, negation=negation)
            for _ in range(args.count)], variables


def _verify(args, rep, negation, check):
    batch, variables = _classical_batch(args, negation)
    rep.seed = args.seed if args.program is None else None
    rep.bounds = {"programs": len(batch), "vars": args.vars, "rules": args.rules}
    failures = []
    for k, p in enumerate(batch):
        r = check(p, variables)
        if not r.passed:
            failures.append({"index": k, "program": str(p), "counterexample": r.counterexample})
    rep.status = "fail" if failures else "ok"
    rep.payload = {"checked": len(batch), "failures": failures[:5],
                   "failed": len(failures)}
    if len(batch) == 1:
        rep.payload["details"] = check(batch[0], variables).details
    rep.text = [f"{'pass' if not failures else 'FAIL'}: {len(batch) - len(failures)}"
                f"/{len(batch)} programs"]


def cmd_verify_thm1(args, rep):
    _verify(args, rep, True, asp.verify_theorem1)


def cmd_verify_thm2(args, rep):
    if args.program is not None:
        p = formats.parse_classical_program(read_input(args.program, "classical"))
        if not p.negation_free:
            raise ProgramError("verify-thm2 needs a program without 'not'")
    _verify(args, rep, False, asp.verify_theorem2)


def _context(args):
    _need(args, "context")
    return formats.parse_context_file(read_input(args.context, "context"), args.format)


def cmd_fca_concepts(args, rep):
    ctx = _context(args)
    concepts = fca.all_concepts(ctx)
    ordo = {n: i for i, n in enumerate(ctx.objects)}
    orda = {n: i for i, n in enumerate(ctx.attributes)}
    rows = [{"extent": sorted(c.extent, key=ordo.get), "intent": sorted(c.intent, key=orda.get)}
            for c in concepts]
    rep.payload = {"concepts": rows, "count": len(rows)}
    rep.text = [f"{{{', '.join(r['extent'])}}} | {{{', '.join(r['intent'])}}}" for r in rows]


def cmd_fca_aoc(args, rep):
    ctx = _context(args)
    aoc = fca.aoc_poset(ctx)
    n = len(aoc)
    below = [[aoc.labels[j][0] for j in range(n) if j != i and aoc.leq(j, i)] for i in range(n)]
    rep.payload = {"nodes": [{"labels": list(aoc.labels[i]), "below": below[i]}
                             for i in range(n)], "count": n}
    rep.text = ["=".join(lab) for lab in aoc.labels]


def cmd_fca_domain(args, rep):
    ctx = _context(args)
    d, emb = fca.to_domain(fca.aoc_poset(ctx))
    rep.payload = {"poset": formats.emit_domain(d), "size": len(d),
                   "embedding": fca.check_embedding(emb)}
    rep.text = formats.emit_domain(d).rstrip("\n").split("\n")


def cmd_fca_verify_thm3(args, rep):
    ctx = _context(args)
    exhaustive = True if args.exhaustive else None
    r = fca.verify_theorem3(ctx, exhaustive=exhaustive, samples=args.samples, seed=args.seed)
    rep.seed = None if r.exhaustive else args.seed
    rep.status = "ok" if r.passed else "fail"
    rep.payload = {"checked": r.checked, "exhaustive": r.exhaustive,
                   "embedding": r.embedding, "counterexample": r.counterexample}
    rep.text = [f"{'pass' if r.passed else 'FAIL'}: {r.checked} subsets"
                f"{' (exhaustive)' if r.exhaustive else ''}"]


VERBS = {
    "check-domain": cmd_check_domain,
    "entail": cmd_entail,
    "models": cmd_models,
    "answer-models": cmd_answer_models,
    "min-answer-models": cmd_min_answer_models,
    "fixpoint": cmd_fixpoint,
    "asp-solve": cmd_asp_solve,
    "verify-thm1": cmd_verify_thm1,
    "verify-thm2": cmd_verify_thm2,
    "fca-concepts": cmd_fca_concepts,
    "fca-aoc": cmd_fca_aoc,
    "fca-domain": cmd_fca_domain,
    "fca-verify-thm3": cmd_fca_verify_thm3,
}
ALIASES = {"verify-thm3": "fca-verify-thm3"}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rzlogic", description=__doc__.split("\n")[0])
    ap.add_argument("verb", choices=sorted(VERBS) + sorted(ALIASES))
    ap.add_argument("--domain")
    ap.add_argument("--program")
    ap.add_argument("--theory")
    ap.add_argument("--clause")
    ap.add_argument("--context")
    ap.add_argument("--format", choices=["cxt", "csv"], default="cxt")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-domain", type=int, default=DEFAULT_MAX_DOMAIN)
    ap.add_argument("--exhaustive", action="store_true")
    ap.add_argument("--samples", type=int, default=4096)
    ap.add_argument("--auto-bottom", action="store_true")
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--vars", type=int, default=5)
    ap.add_argument("--rules", type=int, default=8)
    ap.add_argument("--json", action="store_true")
    ap.add_argument("--timing", action="store_true")
    return ap


def run(args: argparse.Namespace) -> RunReport:
    args.verb = ALIASES.get(args.verb, args.verb)
    rep = RunReport(args.verb)
    start = time.perf_counter()
    try:
        VERBS[args.verb](args, rep)
    except BoundExceeded as exc:
        rep = RunReport(args.verb, status="error", payload={"error": str(exc), "code": EXIT_BOUND})
    except (RZError, FileNotFoundError) as exc:
        rep = RunReport(args.verb, status="error", payload={"error": str(exc), "code": EXIT_USAGE})
    if args.timing:
        rep.timing = time.perf_counter() - start
    return rep


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    rep = run(args)
    if rep.status == "error":
        code = rep.payload["code"]
        if args.json:
            print(rep.to_json())
        else:
            print(f"error: {rep.payload['error']}", file=sys.stderr)
        return code
    if args.json:
        print(rep.to_json())
    else:
        for line in rep.text:
            print(line)
        if rep.timing is not None:
            print(f"time {rep.timing:.3f}s")
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
