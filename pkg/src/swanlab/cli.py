"""Command-line front end.

Every command prints one JSON document (schema ``swanlab/1``) on standard
output.  Exit codes: 0 success, 1 parse or configuration error, 2 result
outside the theorem / definition range (the result is still printed, with a
``status`` field), 3 reduction budget exceeded (upper bound reported).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from .differentials import LOG, PLAIN, GradedForm, bgr_normal_form
from .errors import (ConfigError, NotInBGr, OutOfTheoremRange, ReductionBudgetExceeded,
                     SwanlabError, UnsupportedRange)
from .field import FieldConfig
from .parser import parse_element, parse_residue, render
from .ramification import CharacterClass, ConductorReport, analyze
from .witt import (build_context, fil_membership, fil_prime_membership, verschiebung,
                   witt_add, witt_frobenius, witt_neg)

SCHEMA = "swanlab/1"
EXIT_OK, EXIT_ERROR, EXIT_RANGE, EXIT_BUDGET = 0, 1, 2, 3


# --------------------------------------------------------------------------
# job specification


def _degree(p, q):
    e, size = 0, 1
    while size < q:
        size *= p
        e += 1
    if size != q:
        raise ConfigError("q = %d is not a power of p = %d" % (q, p))
    return e


def parse_residue_kind(text: str):
    """'perfect', 'rational' or 'rational(name)' -> (kind, variable name)."""
    text = text.strip()
    if text == "perfect":
        return "perfect", "y"
    m = re.fullmatch(r"rational(?:\((\w+)\))?", text)
    if not m:
        raise ConfigError("residue must be 'perfect' or 'rational(<var>)', got %r" % text)
    var = m.group(1) or "y"
    if var in ("pi", "g"):
        raise ConfigError("variable name %r is reserved" % var)
    return "rational", var


def make_config(job: dict) -> FieldConfig:
    try:
        p = int(job["p"])
    except (KeyError, TypeError, ValueError):
        raise ConfigError("field characteristic p is required") from None
    q = int(job.get("q") or p)
    kind, var = parse_residue_kind(job.get("residue", "perfect"))
    modulus = job.get("modulus")
    if isinstance(modulus, str):
        modulus = [int(c) for c in modulus.replace(",", " ").split()]
    return FieldConfig(p, _degree(p, q), residue_kind=kind,
                       modulus=tuple(modulus) if modulus else None, var=var)


def _components(cfg, spec, key="witt"):
    comps = spec.get(key)
    if isinstance(comps, str):
        comps = json.loads(comps)
    if not isinstance(comps, list) or not comps:
        raise ConfigError("%s must be a non-empty JSON list of expressions" % key)
    return [parse_element(str(s), cfg) for s in comps]


def _character(cfg, job, key="witt"):
    return CharacterClass.from_components(cfg, _components(cfg, job, key))


# --------------------------------------------------------------------------
# rendering


def graded_json(g: GradedForm | None):
    return None if g is None else g.to_json()


def vector_json(v):
    return [render(c) for c in v.comps]


def report_json(rep: ConductorReport) -> dict:
    return {
        "sw": rep.sw,
        "rsw": graded_json(rep.rsw),
        "sw_mod": rep.sw_mod,
        "rsw_mod": graded_json(rep.rsw_mod),
        "rsw_mod_status": rep.rsw_mod_status,
        "log_slope": rep.log_slope,
        "slope": rep.slope,
        "log_char_point": graded_json(rep.log_char_point),
        "char_point": graded_json(rep.char_point),
        "representative": vector_json(rep.representative),
        "status": rep.status,
    }


def _budget(job):
    out = {}
    budget = job.get("budget") or {}
    for key in ("max_iterations", "search_depth", "max_states"):
        if budget.get(key) is not None:
            out[key] = int(budget[key])
    return out


# --------------------------------------------------------------------------
# commands; each returns (exit code, payload)


def cmd_conductor(job):
    cfg = make_config(job)
    rep = analyze(_character(cfg, job), **_budget(job))
    payload = report_json(rep)
    return (EXIT_OK if rep.status == "ok" else EXIT_RANGE), payload


def cmd_reduce(job):
    cfg = make_config(job)
    chi = _character(cfg, job)
    rep = analyze(chi, **_budget(job))
    return EXIT_OK, {"input": vector_json(chi.representative),
                     "representative": vector_json(rep.representative), "sw": rep.sw,
                     "status": "ok"}


def _n_range(text):
    m = re.fullmatch(r"\s*(\d+)\s*\.\.\s*(\d+)\s*", str(text))
    if not m:
        raise ConfigError("n-range must look like a..b, got %r" % text)
    a, b = int(m.group(1)), int(m.group(2))
    if a > b:
        raise ConfigError("empty n-range %r" % text)
    return range(a, b + 1)


def cmd_filtration(job):
    cfg = make_config(job)
    chi = _character(cfg, job)
    levels = _n_range(job.get("n_range", "0..5"))
    rep = analyze(chi, **_budget(job))
    x, red = chi.representative, rep.representative
    return EXIT_OK, {
        "n": list(levels),
        "fil": [n >= rep.sw for n in levels],
        "fil_prime": [n >= rep.sw_mod for n in levels],
        "representative_fil": [fil_membership(x, n) for n in levels],
        "representative_fil_prime": [fil_prime_membership(x, n) for n in levels],
        "reduced": vector_json(red),
        "status": "ok",
    }


def cmd_normalform(job):
    cfg = make_config(job)
    variant = job.get("variant", LOG)
    if variant not in (LOG, PLAIN):
        raise ConfigError("variant must be 'log' or 'plain'")
    n = int(job["n"])
    g = GradedForm(n, variant, parse_residue(str(job.get("alpha", "0")), cfg),
                   parse_residue(str(job.get("beta", "0")), cfg))
    try:
        nf = bgr_normal_form(g)
    except NotInBGr as exc:
        return EXIT_RANGE, {"form": g.to_json(), "status": "not_in_bgr", "message": str(exc)}
    return EXIT_OK, {"form": g.to_json(), "normal_form": nf.to_json(), "status": "ok"}


def cmd_witt(job):
    cfg = make_config(job)
    op = job.get("op")
    x = _character(cfg, job).representative
    if op == "add":
        y = _character(cfg, job, "witt2").representative
        if len(y) != len(x):
            raise ConfigError("both vectors need the same length")
        out = witt_add(x, y)
    elif op == "neg":
        out = witt_neg(x)
    elif op == "frobenius":
        out = witt_frobenius(x)
    elif op == "v":
        out = verschiebung(x, int(job.get("times", 1)))
    else:
        raise ConfigError("unknown witt op %r" % (op,))
    return EXIT_OK, {"op": op, "result": vector_json(out), "status": "ok"}


def cmd_selftest(job):
    from .selftest import run
    suites = job.get("suite") or None
    results = run(suites, scale=Fraction(str(job.get("scale", 1))), seed=int(job.get("seed", 0)))
    rows = []
    ok = True
    for rep, millis in results:
        row = rep.to_json()
        row["milliseconds"] = millis
        rows.append(row)
        ok = ok and rep.ok
    return (EXIT_OK if ok else EXIT_ERROR), {"suites": rows, "status": "ok" if ok else "failed"}


COMMANDS = {
    "conductor": cmd_conductor,
    "reduce": cmd_reduce,
    "filtration": cmd_filtration,
    "normalform": cmd_normalform,
    "witt": cmd_witt,
    "selftest": cmd_selftest,
}


def run_job(job: dict):
    """Execute one job dict; never raises for library errors."""
    command = job.get("command", "conductor")
    try:
        if command not in COMMANDS:
            raise ConfigError("unknown command %r" % (command,))
        code, payload = COMMANDS[command](job)
    except ReductionBudgetExceeded as exc:
        code = EXIT_BUDGET
        payload = {"status": "budget_exceeded", "message": str(exc), "upper_bound": True,
                   "sw_upper_bound": exc.sw_upper_bound,
                   "representative": vector_json(exc.best) if exc.best is not None else None}
    except (OutOfTheoremRange, UnsupportedRange) as exc:
        code, payload = EXIT_RANGE, {"status": "out_of_range", "message": str(exc)}
    except (SwanlabError, ValueError, KeyError, json.JSONDecodeError) as exc:
        code = EXIT_ERROR
        err = {"type": type(exc).__name__, "message": str(exc)}
        if hasattr(exc, "position"):
            err["position"] = exc.position
            err["expected"] = list(exc.expected)
        payload = {"status": "error", "error": err}
    payload["command"] = command
    if "p" in job and command != "selftest":
        try:
            payload.setdefault("field", make_config(job).describe())
        except SwanlabError:
            pass
    payload["schema"] = SCHEMA
    return code, payload


def _dump(obj):
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


# --------------------------------------------------------------------------
# argument parsing


def _field_args(sp):
    sp.add_argument("-p", type=int, required=True, help="characteristic")
    sp.add_argument("-q", type=int, help="size of the constant field GF(q) (default p)")
    sp.add_argument("--modulus", help="monic modulus coefficients, low degree first")
    sp.add_argument("--residue", default="perfect", help="'perfect' or 'rational(y)'")
    sp.add_argument("--witt", required=True, help="JSON list of component expressions")
    sp.add_argument("--max-iterations", type=int, dest="max_iterations")
    sp.add_argument("--search-depth", type=int, dest="search_depth")
    sp.add_argument("--max-states", type=int, dest="max_states")


def build_parser():
    parser = argparse.ArgumentParser(prog="swanlab", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (("conductor", "sw, rsw, sw', rsw' and theorem outputs"),
                            ("reduce", "reduced representative")):
        _field_args(sub.add_parser(name, help=help_text))
    sp = sub.add_parser("filtration", help="membership table for fil and fil'")
    _field_args(sp)
    sp.add_argument("--n-range", dest="n_range", default="0..5")
    sp = sub.add_parser("normalform", help="normal form of a graded differential form")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-q", type=int)
    sp.add_argument("--modulus")
    sp.add_argument("--residue", default="rational(y)")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--variant", choices=(LOG, PLAIN), default=LOG)
    sp.add_argument("--alpha", default="0", help="coefficient of dy")
    sp.add_argument("--beta", default="0", help="coefficient of dlog(pi) (log) or dpi (plain)")
    sp = sub.add_parser("witt", help="Witt vector arithmetic")
    _field_args(sp)
    sp.add_argument("--op", choices=("add", "neg", "frobenius", "v"), required=True)
    sp.add_argument("--witt2", help="second operand for add")
    sp.add_argument("--times", type=int, default=1, help="power of V")
    sp = sub.add_parser("selftest", help="run the property suites")
    sp.add_argument("--suite", action="append", help="suite name (repeatable)")
    sp.add_argument("--scale", default="1", help="trial-count multiplier, e.g. 1/10")
    sp.add_argument("--seed", type=int, default=0)
    sp = sub.add_parser("batch", help="run a JSON list of jobs")
    sp.add_argument("file", help="JSON file with a list of job objects, or - for stdin")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes")
    return parser


def _job_from_args(ns) -> dict:
    job = {k: v for k, v in vars(ns).items() if v is not None}
    budget = {k: job.pop(k) for k in ("max_iterations", "search_depth", "max_states") if k in job}
    if budget:
        job["budget"] = budget
    return job


def run_batch(jobs, workers=1):
    if not isinstance(jobs, list):
        raise ConfigError("batch input must be a JSON list of jobs")
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_job, jobs))
    else:
        results = [run_job(j) for j in jobs]
    code = max((c for c, _ in results), default=EXIT_OK)
    return code, {"schema": SCHEMA, "results": [payload for _, payload in results],
                  "status": "ok" if code == EXIT_OK else "partial"}


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    if ns.command == "batch":
        try:
            if ns.file == "-":
                jobs = json.load(sys.stdin)
            else:
                with open(ns.file) as fh:
                    jobs = json.load(fh)
            code, payload = run_batch(jobs, ns.jobs)
        except (OSError, ValueError) as exc:
            code, payload = EXIT_ERROR, {"schema": SCHEMA, "status": "error",
                                         "error": {"type": type(exc).__name__, "message": str(exc)}}
    else:
        code, payload = run_job(_job_from_args(ns))
    print(_dump(payload))
    return code


if __name__ == "__main__":
    sys.exit(main())
