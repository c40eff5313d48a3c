"""Command-line front end: read a JSON job, run it, write a JSON report.

Exit codes: 0 every certificate passes, 1 some certificate fails,
2 inconclusive (bound or budget), 3 malformed input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import __version__
from .descent import (
    DescentDatum, FpModule, RingExtension, amitsur_exactness, cocycle_check, descend, random_invertible,
    verify_effectivity,
)
from .errors import BudgetExhausted, InputError, NotFree, PreconditionFailed
from .exactalg import CoeffField, PresentedAlgebra, RingMap, limit
from .exactalg.budget import DEFAULT_GROEBNER_STEPS, DEFAULT_POINT_CAP
from .flf import FiniteFreeAlgebra
from .gallery import gallery, list_gallery
from .grading import MGrading
from .quotients import (
    FAIL, INCONCLUSIVE, PASS, Certificate, ConstantAction, freeness_check_constant, freeness_check_diag,
    overall, quotient_diag, quotient_flf, relation_from_constant_action, verify_flf_quotient,
)

FORMAT_VERSION = 1
DEFAULT_BOUND = 8
EXIT_CODES = {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}
INPUT_ERROR = 3

TASKS = ("quotient-diag", "quotient-flf", "torsor-check", "freeness", "gallery", "descent", "finite-free")


class JobError(InputError):
    """Input error tagged with the location inside the job document."""

    def __init__(self, where: str, message: str):
        self.where = where
        super().__init__(f"{where}: {message}")


def _at(where, fn, *args, **kwargs):
    """Run ``fn`` and re-raise input problems with ``where`` attached."""
    try:
        return fn(*args, **kwargs)
    except JobError:
        raise
    except (InputError, PreconditionFailed, NotFree, KeyError, TypeError, ValueError) as exc:
        msg = f"missing key {exc}" if isinstance(exc, KeyError) else str(exc)
        raise JobError(where, msg) from exc


def _require(job: dict, key: str, where: str):
    if key not in job:
        raise JobError(where, f"missing required key {key!r}")
    return job[key]


# --- job parsing ---------------------------------------------------------------

def parse_field(job: dict) -> CoeffField:
    return _at("field", CoeffField.from_spec, str(job.get("field", "QQ")))


def parse_ring(spec: dict, field: CoeffField, where: str = "ring", name: str | None = None) -> PresentedAlgebra:
    if not isinstance(spec, dict):
        raise JobError(where, "expected an object with vars / inverted / relations")
    variables = _require(spec, "vars", where)
    if not isinstance(variables, list) or not all(isinstance(v, str) for v in variables):
        raise JobError(f"{where}.vars", "expected a list of variable names")
    inverted = spec.get("inverted", [])
    A = _at(where, PresentedAlgebra, field, variables, [], inverted, name=name)
    rels = []
    for i, r in enumerate(spec.get("relations", [])):
        rels.append(_at(f"{where}.relations[{i}]", A.parse, str(r)))
    if not rels:
        return A
    return _at(where, PresentedAlgebra, field, variables, [str(r) for r in rels], inverted, name=name)


def parse_grading(job: dict, A: PresentedAlgebra) -> MGrading:
    frag = _require(job, "grading", "job")
    return _at("grading", MGrading.from_json, A, frag)


def parse_action(job: dict, A: PresentedAlgebra) -> ConstantAction:
    frag = _require(job, "action", "job")
    group = _require(frag, "group", "action")
    gens = _require(frag, "generators", "action")
    return _at("action", ConstantAction.from_generators, A, str(group), gens)


def _job_bound(job: dict, override: int | None) -> int:
    if override is not None:
        return override
    if "bound" in job:
        b = job["bound"]
        if not isinstance(b, int) or b < 0:
            raise JobError("bound", "expected a nonnegative integer")
        return b
    return DEFAULT_BOUND


# --- tasks ---------------------------------------------------------------------

def _task_quotient_diag(job, field, bound, rng):
    A = parse_ring(_require(job, "ring", "job"), field)
    g = parse_grading(job, A)
    res = quotient_diag(g, bound, override=bool(job.get("override", False)))
    return res.certificates, res.to_dict()


def _task_torsor(job, field, bound, rng):
    certs, results = _task_quotient_diag(job, field, bound, rng)
    return certs, results


def _task_quotient_flf(job, field, bound, rng):
    A = parse_ring(_require(job, "ring", "job"), field)
    a = parse_action(job, A)
    r = _at("action", relation_from_constant_action, a)
    res = quotient_flf(r, bound, override=bool(job.get("override", False)))
    certs = list(res.certificates)
    if res.B is not None and res.verdict == PASS:
        certs += verify_flf_quotient(r, res)
    out = res.to_dict()
    out["certificates"] = [c.to_dict() for c in certs]
    return certs, out


def _task_freeness(job, field, bound, rng):
    A = parse_ring(_require(job, "ring", "job"), field)
    if "action" in job:
        c = freeness_check_constant(parse_action(job, A))
    elif "grading" in job:
        c = freeness_check_diag(parse_grading(job, A), bound)
    else:
        raise JobError("job", "freeness needs an 'action' or a 'grading' fragment")
    return [c], {}


def _task_gallery(job, field, bound, rng, cli_bound=None):
    name = _require(job, "name", "job")
    params = job.get("params", {})
    if not isinstance(params, dict):
        raise JobError("params", "expected an object")
    rep = _at("name", gallery, str(name), cli_bound if cli_bound is not None else job.get("bound"), **params)
    return rep.certificates, {"name": rep.name, "description": rep.description, **rep.results}


def _matrix(rows, alg, where):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise JobError(where, "expected a list of rows")
    return [[_at(f"{where}[{i}][{j}]", alg.parse, str(x)) for j, x in enumerate(r)] for i, r in enumerate(rows)]


def _task_descent(job, field, bound, rng):
    frag = _require(job, "descent", "job")
    base = parse_ring(frag.get("base", job.get("ring", {"vars": []})), field, "descent.base", name="A")
    cover = parse_ring(_require(frag, "cover", "descent"), field, "descent.cover", name="B")
    structural = None
    if "structural" in frag:
        structural = _at("descent.structural", RingMap, base, cover, frag["structural"])
    ext = _at("descent.cover", RingExtension, base, cover, structural, frag.get("basis"))
    mod = _require(frag, "module", "descent")
    ngens = _require(mod, "gens", "descent.module")
    on_base = "phi" not in frag
    owner = base if on_base else cover
    rels = _matrix(mod.get("relations", []), owner, "descent.module.relations")
    M = _at("descent.module", FpModule, owner, int(ngens), rels)
    certs = []
    results = {"rank": ext.rank, "basis": [str(b) for b in ext.basis]}
    if on_base:
        ok = amitsur_exactness(ext, M)
        certs.append(Certificate("amitsur-exactness", PASS if ok else FAIL, "M -> M⊗B -> M⊗B⊗B is exact"))
        d = DescentDatum.canonical(ext, M)
    else:
        phi = _matrix(frag["phi"], ext.t2.algebra, "descent.phi")
        d = _at("descent.phi", DescentDatum, ext, M, phi)
    certs += _descend_certs(d, results, "datum")
    n_twists = int(frag.get("twists", 0))
    if n_twists:
        if not on_base:
            raise JobError("descent.twists", "random twists need a module over the base")
        ok_count = 0
        for _ in range(n_twists):
            P, Pinv = random_invertible(cover, M.ngens, rng)
            t = DescentDatum.twisted(ext, d.module, P, Pinv)
            if cocycle_check(t) and verify_effectivity(t, descend(t)):
                ok_count += 1
        certs.append(Certificate("random-twists", PASS if ok_count == n_twists else FAIL,
                                 f"{ok_count}/{n_twists} seeded twists descend effectively"))
    return certs, results


def _descend_certs(d, results, label):
    if not cocycle_check(d):
        return [Certificate(f"{label}:cocycle", FAIL, "pr13(phi) != pr12(phi)·pr23(phi)")]
    res = descend(d)
    ok = verify_effectivity(d, res)
    results[label] = {
        "generators": res.module.ngens,
        "relations": [[str(x) for x in r] for r in res.module.relations],
        "comparison": [[str(x) for x in r] for r in res.comparison],
    }
    return [Certificate(f"{label}:cocycle", PASS, "pr13(phi) = pr12(phi)·pr23(phi)"),
            Certificate(f"{label}:effectivity", PASS if ok else FAIL, "M ⊗_A B -> M' is an isomorphism")]


def _task_finite_free(job, field, bound, rng):
    A = parse_ring(_require(job, "ring", "job"), field)
    frag = _require(job, "finite_free", "job")
    ff = _at("finite_free", FiniteFreeAlgebra.from_fragment, A, frag)
    results = {"rank": ff.rank, "basis": [str(b) for b in ff.basis],
               "base": {"variables": list(ff.base.variables), "relations": [str(r) for r in ff.base.relations]}}
    ok = ff.verify()
    certs = [Certificate("basis", PASS if ok else FAIL, f"free of rank {ff.rank}", results["basis"])]
    elements = frag.get("elements", [str(v) for v in A.variables])
    table = {}
    for i, e in enumerate(elements):
        b = _at(f"finite_free.elements[{i}]", A.parse, str(e))
        table[str(e)] = {
            "coordinates": [str(x) for x in ff.expand(b)],
            "norm": str(ff.norm(b)),
            "trace": str(ff.trace(b)),
            "charpoly": str(ff.charpoly_poly(b)),
        }
        ch = ff.cayley_hamilton(b)
        certs.append(Certificate(f"cayley-hamilton:{e}", PASS if ch else FAIL, "b satisfies its charpoly"))
    results["elements"] = table
    return certs, results


_DISPATCH = {
    "quotient-diag": _task_quotient_diag,
    "quotient-flf": _task_quotient_flf,
    "torsor-check": _task_torsor,
    "freeness": _task_freeness,
    "gallery": _task_gallery,
    "descent": _task_descent,
    "finite-free": _task_finite_free,
}


# --- driver ---------------------------------------------------------------------

def run(job: dict, seed: int = 0, bound: int | None = None, budget: int | None = None) -> tuple[dict, int]:
    """Run one job; returns ``(report, exit_code)``. Never raises on bad input."""
    report = {"format_version": FORMAT_VERSION, "tool_version": __version__, "seed": seed}
    t0 = time.perf_counter()
    steps = budget if budget is not None else DEFAULT_GROEBNER_STEPS
    try:
        if not isinstance(job, dict):
            raise JobError("job", "expected a JSON object")
        task = _require(job, "task", "job")
        report["task"] = task
        if task not in _DISPATCH:
            raise JobError("task", f"unknown task {task!r}; expected one of {', '.join(TASKS)}")
        b = job.get("budgets", {})
        if not isinstance(b, dict):
            raise JobError("budgets", "expected an object")
        if budget is None:
            steps = int(b.get("groebner_steps", steps))
        points = int(b.get("point_cap", DEFAULT_POINT_CAP))
        rng = random.Random(seed)
        with limit(steps, points) as bud:
            try:
                if task == "gallery":
                    certs, results = _task_gallery(job, None, None, rng, bound)
                else:
                    field = parse_field(job)
                    certs, results = _DISPATCH[task](job, field, _job_bound(job, bound), rng)
                exhausted = []
            except BudgetExhausted as exc:
                certs, results = [Certificate("budget", INCONCLUSIVE, str(exc))], {}
                exhausted = [exc.what]
        verdict = overall(certs)
        report.update({
            "verdict": verdict,
            "exit_code": EXIT_CODES[verdict],
            "certificates": [c.to_dict() for c in certs],
            "results": results,
            "budget": {"groebner_steps": steps, "point_cap": points, "used": bud.used,
                       "exhausted": bool(exhausted), "exhausted_in": exhausted},
        })
    except JobError as exc:
        report.update({"verdict": "input-error", "exit_code": INPUT_ERROR,
                       "error": {"location": exc.where, "message": str(exc)}})
    except (InputError, PreconditionFailed, NotFree) as exc:
        report.update({"verdict": "input-error", "exit_code": INPUT_ERROR,
                       "error": {"location": "job", "message": str(exc)}})
    report["timings"] = {"total_seconds": round(time.perf_counter() - t0, 6)}
    return report, report["exit_code"]


def load_job(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise JobError(path, f"cannot read job file: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise JobError(f"{path}:{exc.lineno}:{exc.colno}", f"invalid JSON: {exc.msg}") from exc


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False, default=str) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quotalg", description="Quotients of affine schemes by flat group actions.")
    p.add_argument("--job", help="path to the JSON job file")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized batches (default 0)")
    p.add_argument("--bound", type=int, help="degree bound, overrides the job")
    p.add_argument("--budget", type=int, help="Gröbner step budget, overrides the job")
    p.add_argument("--list-gallery", action="store_true", help="print the registered examples and exit")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.list_gallery:
        for name, desc in list_gallery():
            print(f"{name}\t{desc}")
        return 0
    if not args.job:
        print("quotalg: --job is required (or use --list-gallery)", file=sys.stderr)
        return INPUT_ERROR
    if args.seed < 0 or args.seed >= 2 ** 64:
        print("quotalg: --seed must be an unsigned 64-bit integer", file=sys.stderr)
        return INPUT_ERROR
    try:
        job = load_job(args.job)
    except JobError as exc:
        report = {"format_version": FORMAT_VERSION, "tool_version": __version__, "verdict": "input-error",
                  "exit_code": INPUT_ERROR, "error": {"location": exc.where, "message": str(exc)}}
        code = INPUT_ERROR
    else:
        report, code = run(job, seed=args.seed, bound=args.bound, budget=args.budget)
    text = dumps(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code == INPUT_ERROR:
        print(f"quotalg: {report['error']['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
