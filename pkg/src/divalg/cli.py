"""Batch front-end: parse a job configuration, run tasks, emit reports.

Configs are INI-style documents (``#`` comments, ``key = value``); reports are
one JSON document per task with a fixed schema version.  Reports are
byte-stable across runs: everything is ordered deterministically and no
wall-clock data is embedded (timings go to the console only).
"""

from __future__ import annotations

import argparse
import configparser
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import induction, tables, toric
from .errors import DivalgError, SchemaError
from .graded import (
    FGCertificate,
    GeneratorSet,
    decompose,
    find_algebra_generators,
    find_module_generators,
    growth_degree,
    truncate,
)

SCHEMA_VERSION = "divalg-report/1"

TORIC_TASKS = {
    "hilbert",
    "fg-algebra",
    "fg-module",
    "truncate",
    "decompose",
    "restrict",
    "induct-34",
    "induct-35",
    "induct-36",
    "fixmov",
    "fix-stability",
    "supp-fix",
}
TABULATED_TASKS = {"nonfg"}
ALL_TASKS = TORIC_TASKS | TABULATED_TASKS | {"kappa"}


@dataclass
class TaskSpec:
    name: str
    kind: str
    params: dict


@dataclass
class JobConfig:
    backend: str
    variety: object
    divisors: dict
    tables: dict
    tasks: list


# ---------------------------------------------------------------------------
# config parsing


def _config_parser():
    parser = configparser.ConfigParser(
        delimiters=("=",), comment_prefixes=("#",), interpolation=None, strict=True
    )
    parser.optionxform = str
    return parser


def _parse_int_list(text, location):
    try:
        return [int(tok) for tok in text.split()]
    except ValueError as exc:
        raise SchemaError(location, f"expected integers, got {text!r}") from exc


def _parse_vector_list(text, location):
    vectors = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        vectors.append(tuple(_parse_int_list(chunk, location)))
    if not vectors:
        raise SchemaError(location, "empty vector list")
    return vectors


def _parse_coeffs(text, location):
    out = []
    for tok in text.split():
        try:
            out.append(Fraction(tok))
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(location, f"bad coefficient {tok!r}") from exc
    return tuple(out)


def load_config(path) -> JobConfig:
    path = Path(path)
    parser = _config_parser()
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(str(path), f"cannot read config: {exc}") from exc
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise SchemaError(str(path), f"unparseable config: {exc}") from exc

    if not parser.has_section("geometry"):
        raise SchemaError("geometry", "missing [geometry] section")
    backend = parser.get("geometry", "backend", fallback="").strip()
    if backend not in ("toric", "tabulated"):
        raise SchemaError("geometry:backend", f"unknown backend {backend!r}")

    variety = None
    if backend == "toric":
        if not parser.has_option("geometry", "rays") or not parser.has_option(
            "geometry", "cones"
        ):
            raise SchemaError("geometry", "toric backend needs rays and cones")
        rays = _parse_vector_list(parser.get("geometry", "rays"), "geometry:rays")
        cones = _parse_vector_list(parser.get("geometry", "cones"), "geometry:cones")
        dims = {len(r) for r in rays}
        if len(dims) != 1:
            raise SchemaError("geometry:rays", "rays of mixed dimension")
        try:
            variety = toric.ToricVariety(
                toric.Fan(dims.pop(), tuple(rays), tuple(cones))
            )
        except (ValueError, DivalgError) as exc:
            raise SchemaError("geometry", f"bad fan: {exc}") from exc

    divisors = {}
    if parser.has_section("divisors"):
        if variety is None:
            raise SchemaError("divisors", "divisors need the toric backend")
        for name, value in parser.items("divisors"):
            coeffs = _parse_coeffs(value, f"divisors:{name}")
            if len(coeffs) != len(variety.fan.rays):
                raise SchemaError(
                    f"divisors:{name}", "coefficient count does not match ray count"
                )
            try:
                divisors[name] = toric.CartierDivisor(variety, coeffs)
            except DivalgError as exc:
                raise SchemaError(f"divisors:{name}", str(exc)) from exc

    table_map = {}
    if parser.has_section("tables"):
        for name, value in parser.items("tables"):
            table_path = (path.parent / value.strip()).resolve()
            try:
                table_map[name] = tables.read_table(table_path)
            except OSError as exc:
                raise SchemaError(f"tables:{name}", f"cannot read table: {exc}") from exc

    task_list = []
    for section in parser.sections():
        if not section.startswith("task."):
            continue
        name = section[len("task.") :]
        params = dict(parser.items(section))
        kind = params.pop("kind", "").strip()
        if kind not in ALL_TASKS:
            raise SchemaError(f"{section}:kind", f"unknown task kind {kind!r}")
        if kind in TORIC_TASKS and backend != "toric":
            raise SchemaError(section, f"task {kind} requires the toric backend")
        task_list.append(TaskSpec(name=name, kind=kind, params=params))

    return JobConfig(
        backend=backend,
        variety=variety,
        divisors=divisors,
        tables=table_map,
        tasks=task_list,
    )


# ---------------------------------------------------------------------------
# parameter access


def _need(params, key, location):
    if key not in params or not str(params[key]).strip():
        raise SchemaError(location, f"missing parameter {key!r}")
    return str(params[key]).strip()


def _get_int(params, key, location, default=None):
    if key not in params:
        if default is None:
            raise SchemaError(location, f"missing integer parameter {key!r}")
        return default
    try:
        return int(str(params[key]).strip())
    except ValueError as exc:
        raise SchemaError(location, f"{key} must be an integer") from exc


def _get_divisor(cfg, params, key, location):
    name = _need(params, key, location)
    if name not in cfg.divisors:
        raise SchemaError(location, f"unknown divisor {name!r}")
    return cfg.divisors[name]


def _get_table(cfg, params, key, location):
    name = _need(params, key, location)
    if name not in cfg.tables:
        raise SchemaError(location, f"unknown table {name!r}")
    return cfg.tables[name]


def _get_parts(cfg, params, location):
    text = _need(params, "parts", location)
    parts = []
    for tok in text.split():
        if "*" in tok:
            mult_text, name = tok.split("*", 1)
            try:
                mult = int(mult_text)
            except ValueError as exc:
                raise SchemaError(location, f"bad multiplicity in {tok!r}") from exc
        else:
            mult, name = 1, tok
        if name not in cfg.divisors:
            raise SchemaError(location, f"unknown divisor {name!r} in parts")
        parts.append((mult, cfg.divisors[name]))
    if not parts:
        raise SchemaError(location, "empty parts list")
    return parts


# ---------------------------------------------------------------------------
# JSON encoding


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, GeneratorSet):
        return [[d, _jsonable(l)] for d, l in obj.entries]
    if isinstance(obj, FGCertificate):
        payload = {
            "kind": obj.kind,
            "generators": _jsonable(obj.generators),
            "generator_count": len(obj.generators),
            "stabilization_degree": obj.stabilization_degree,
        }
        if obj.bound is not None:
            payload["bound"] = obj.bound
        if obj.witness is not None:
            payload["witness"] = _jsonable(obj.witness)
        return payload
    if isinstance(obj, toric.CartierDivisor):
        return {"coeffs": [_jsonable(c) for c in obj.coeffs]}
    if hasattr(obj, "__dataclass_fields__"):
        return {
            key: _jsonable(getattr(obj, key)) for key in obj.__dataclass_fields__
        }
    return obj


def _trace_payload(trace: induction.PipelineTrace):
    return {
        "alpha": _jsonable(list(trace.alpha)),
        "bound": trace.bound,
        "coverage": trace.coverage,
        "chain_note": (
            "restriction hypotheses verified along the visited chain only"
            if trace.coverage == "visited"
            else "restriction hypotheses verified for every admissible step"
        ),
        "final_generators": _jsonable(trace.final_generators),
        "steps": [
            {
                "multiplicities": list(step.multiplicities),
                "part_index": step.part_index,
                "kernel_generators": _jsonable(step.kernel_gens),
                "image_generators": _jsonable(step.image_gens),
                "exactness": [list(row) for row in step.exactness],
            }
            for step in trace.steps
        ],
    }


# ---------------------------------------------------------------------------
# task execution (each returns ok, verdict, payload, optional dims table)


def _dims_list(pairs):
    return [[m, d] for m, d in pairs]


def _run_hilbert(cfg, spec, loc):
    D = _get_divisor(cfg, spec.params, "divisor", loc)
    max_degree = _get_int(spec.params, "max_degree", loc, default=10)
    dims = [(m, toric.h0(cfg.variety, m * D)) for m in range(0, max_degree + 1)]
    return True, "dimension table computed", {"dimensions": _dims_list(dims)}, dims


def _run_fg_algebra(cfg, spec, loc):
    L = _get_divisor(cfg, spec.params, "divisor", loc)
    cert = toric.exact_fg_algebra(cfg.variety, L)
    payload = {"certificate": _jsonable(cert)}
    bound = _get_int(spec.params, "bound", loc, default=0)
    if bound:
        R = toric.divisorial_algebra(cfg.variety, L)
        _, counts, _ = find_algebra_generators(R, bound, seed=cert.generators)
        cross_ok = not any(counts.values())
        payload["bounded_search_cross_check"] = {
            "bound": bound,
            "new_generators": sum(counts.values()),
            "agrees": cross_ok,
        }
        if not cross_ok:
            return False, "exact certificate contradicted by bounded search", payload, None
    verdict = (
        f"exact: {len(cert.generators)} generators, "
        f"stabilization degree {cert.stabilization_degree}"
    )
    return True, verdict, payload, None


def _run_fg_module(cfg, spec, loc):
    D = _get_divisor(cfg, spec.params, "divisor", loc)
    L = _get_divisor(cfg, spec.params, "scaling", loc)
    p = _get_int(spec.params, "p", loc, default=0)
    cert = toric.exact_fg_module(cfg.variety, D, L, p)
    payload = {"certificate": _jsonable(cert), "offset": p}
    if cert.kind == "non-fg-witness":
        return True, "non-fg-witness", payload, None
    verdict = (
        f"exact: {len(cert.generators)} generators, "
        f"stabilization degree {cert.stabilization_degree}"
    )
    return True, verdict, payload, None


def _run_truncate(cfg, spec, loc):
    L = _get_divisor(cfg, spec.params, "divisor", loc)
    period = _get_int(spec.params, "I", loc)
    max_degree = _get_int(spec.params, "max_degree", loc, default=10)
    R = truncate(toric.divisorial_algebra(cfg.variety, L), period)
    dims = [(m, R.slice(m).dimension) for m in range(0, max_degree + 1)]
    return (
        True,
        f"truncation by {period} computed",
        {"period": period, "dimensions": _dims_list(dims)},
        dims,
    )


def _run_decompose(cfg, spec, loc):
    D = _get_divisor(cfg, spec.params, "divisor", loc)
    L = _get_divisor(cfg, spec.params, "scaling", loc)
    p = _get_int(spec.params, "p", loc, default=0)
    period = _get_int(spec.params, "I", loc)
    max_degree = _get_int(spec.params, "max_degree", loc, default=10)
    M = toric.divisorial_module(cfg.variety, D, L, p)
    comps = decompose(M, period)
    rows = []
    sums_ok = True
    for m in range(p, max_degree + 1):
        total = M.slice(m).dimension
        split = [c.slice(m).dimension for c in comps]
        sums_ok = sums_ok and total == sum(split)
        rows.append({"degree": m, "dimension": total, "components": split})
    offsets = [-((i - p) // period) for i in range(period)]
    payload = {
        "period": period,
        "component_offsets": offsets,
        "per_degree": rows,
        "dimension_sums_match": sums_ok,
    }
    return sums_ok, "decomposition bookkeeping checked", payload, None


def _run_restrict(cfg, spec, loc):
    L = _get_divisor(cfg, spec.params, "scaling", loc)
    C = _get_divisor(cfg, spec.params, "orders", loc)
    p = _get_int(spec.params, "p", loc, default=0)
    max_degree = _get_int(spec.params, "max_degree", loc, default=10)
    bound = _get_int(spec.params, "bound", loc, default=max_degree)
    M = toric.divisorial_module(cfg.variety, toric.zero_divisor(cfg.variety), L, p)
    K = toric.restriction_kernel(cfg.variety, L, C, p)
    Q = toric.restriction_image(M, K)
    R = toric.divisorial_algebra(cfg.variety, L)
    rows = []
    exact_ok = True
    for m in range(p, max_degree + 1):
        dm, dk, dq = M.slice(m).dimension, K.slice(m).dimension, Q.slice(m).dimension
        exact_ok = exact_ok and dm == dk + dq
        rows.append([m, dm, dk, dq])
    gens, cert = find_module_generators(Q, R, bound)
    payload = {
        "per_degree": rows,
        "exactness_holds": exact_ok,
        "image_certificate": _jsonable(cert),
    }
    dims = [(m, row[3]) for m, row in zip(range(p, max_degree + 1), rows)]
    return exact_ok, "restriction kernel/image computed", payload, dims


def _run_induct34(cfg, spec, loc):
    parts = _get_parts(cfg, spec.params, loc)
    D = _get_divisor(cfg, spec.params, "divisor", loc)
    p = _get_int(spec.params, "p", loc, default=0)
    bound = _get_int(spec.params, "bound", loc, default=8)
    trace = induction.module_restriction_induction(cfg.variety, parts, D, p, bound)
    verdict = f"module generators recovered ({len(trace.final_generators)} elements)"
    return True, verdict, {"trace": _trace_payload(trace)}, None


def _run_induct35(cfg, spec, loc):
    parts = _get_parts(cfg, spec.params, loc)
    bound = _get_int(spec.params, "bound", loc, default=8)
    first = _get_int(spec.params, "first", loc, default=0)
    cert, trace = induction.algebra_restriction_induction(
        cfg.variety, parts, bound, first_index=first
    )
    verdict = f"algebra generators recovered ({len(cert.generators)} elements)"
    payload = {"certificate": _jsonable(cert), "trace": _trace_payload(trace)}
    return True, verdict, payload, None


def _run_induct36(cfg, spec, loc):
    parts = _get_parts(cfg, spec.params, loc)
    ample = _get_divisor(cfg, spec.params, "ample", loc)
    p = _get_int(spec.params, "p", loc, default=0)
    bound = _get_int(spec.params, "bound", loc, default=8)
    l_text = _need(spec.params, "l_values", loc)
    l_values = _parse_int_list(l_text, loc)
    report = induction.twisted_module_induction(
        cfg.variety, parts, ample, l_values, p, bound
    )
    payload = {
        "algebra_certificate": _jsonable(report.algebra_certificate),
        "algebra_trace": _trace_payload(report.algebra_trace),
        "modules": [
            {
                "twist": l,
                "certificate": _jsonable(cert),
                "trace": _trace_payload(trace),
            }
            for l, cert, trace in report.module_results
        ],
    }
    return True, f"algebra plus {len(l_values)} twisted modules verified", payload, None


def _run_fixmov(cfg, spec, loc):
    D = _get_divisor(cfg, spec.params, "divisor", loc)
    fixed, movable = toric.fix_mov(cfg.variety, D)
    same = toric.h0(cfg.variety, movable) == toric.h0(cfg.variety, D)
    payload = {
        "fix": _jsonable(fixed),
        "mov": _jsonable(movable),
        "h0_preserved": same,
    }
    return same, "fixed and movable parts computed", payload, None


def _run_fix_stability(cfg, spec, loc):
    L = _get_divisor(cfg, spec.params, "divisor", loc)
    J = _get_int(spec.params, "J", loc, default=1)
    m_max = _get_int(spec.params, "m_max", loc, default=10)
    report = toric.fix_stability_check(cfg.variety, L, J, m_max)
    payload = {
        "J": J,
        "fixed_part": _jsonable(report.fixed_part),
        "movable_part": _jsonable(report.movable_part),
        "per_degree": [list(row) for row in report.per_degree],
        "movable_basepoint_free": report.movable_basepoint_free,
        "first_failure": report.first_failure,
    }
    verdict = "stable" if report.stable else "unstable"
    return report.stable, verdict, payload, None


def _run_supp_fix(cfg, spec, loc):
    L = _get_divisor(cfg, spec.params, "divisor", loc)
    G = _get_divisor(cfg, spec.params, "ample", loc)
    J = _get_int(spec.params, "J", loc, default=1)
    r = _get_int(spec.params, "r", loc, default=0)
    m_start = _get_int(spec.params, "m_start", loc, default=1)
    m_end = _get_int(spec.params, "m_end", loc, default=10)
    report = toric.supp_fix_with_ample(
        cfg.variety, L, J, r, G, range(m_start, m_end + 1)
    )
    payload = {
        "target_support": list(report.target_support),
        "per_degree": [[m, list(supp)] for m, supp in report.per_degree],
        "threshold": report.threshold,
    }
    verdict = (
        f"support stabilizes from m = {report.threshold}"
        if report.stabilizes
        else "support never matches in range"
    )
    return report.stabilizes, verdict, payload, None


def _run_kappa(cfg, spec, loc):
    if "table" in spec.params:
        table = _get_table(cfg, spec.params, "table", loc)
        dims = table.dims()
        degrees = table.degrees()
    else:
        L = _get_divisor(cfg, spec.params, "divisor", loc)
        max_degree = _get_int(spec.params, "max_degree", loc, default=12)
        ample_name = spec.params.get("ample")
        G = (
            _get_divisor(cfg, spec.params, "ample", loc)
            if ample_name
            else toric.zero_divisor(cfg.variety)
        )
        dims = {
            m: toric.h0(cfg.variety, m * L + G) for m in range(0, max_degree + 1)
        }
        degrees = sorted(dims)
    estimate = growth_degree(dims, degrees)
    payload = {
        "exponent": estimate.exponent,
        "estimated_at_degree": estimate.at_degree,
        "is_estimate": True,
        "dimensions": _dims_list(sorted(dims.items())),
    }
    dims_rows = sorted(dims.items())
    return True, f"growth exponent estimate {estimate.exponent}", payload, dims_rows


def _run_nonfg(cfg, spec, loc):
    alg = _get_table(cfg, spec.params, "algebra_table", loc)
    mod = _get_table(cfg, spec.params, "module_table", loc)
    probe = _get_int(spec.params, "probe", loc, default=mod.max_degree())
    verdict_obj = tables.nonfg_witness(alg, mod, probe)
    payload = {
        "fired": verdict_obj.fired,
        "probe_bound": verdict_obj.probe_bound,
        "max_generator_degree": verdict_obj.max_generator_degree,
        "algebra_provenance": alg.provenance,
        "module_provenance": mod.provenance,
    }
    if verdict_obj.witness is not None:
        payload["witness"] = {
            "probes": [list(row) for row in verdict_obj.witness.probes],
            "algebra_growth": verdict_obj.witness.algebra_growth,
            "module_growth": verdict_obj.witness.module_growth,
        }
    verdict = "non-fg-witness" if verdict_obj.fired else "no witness in range"
    return verdict_obj.fired, verdict, payload, None


_RUNNERS = {
    "hilbert": _run_hilbert,
    "fg-algebra": _run_fg_algebra,
    "fg-module": _run_fg_module,
    "truncate": _run_truncate,
    "decompose": _run_decompose,
    "restrict": _run_restrict,
    "induct-34": _run_induct34,
    "induct-35": _run_induct35,
    "induct-36": _run_induct36,
    "fixmov": _run_fixmov,
    "fix-stability": _run_fix_stability,
    "supp-fix": _run_supp_fix,
    "kappa": _run_kappa,
    "nonfg": _run_nonfg,
}


def _execute(cfg, spec):
    loc = f"task.{spec.name}"
    try:
        ok, verdict, payload, dims = _RUNNERS[spec.kind](cfg, spec, loc)
    except SchemaError:
        raise
    except DivalgError as exc:
        return False, "error", {"error": f"{type(exc).__name__}: {exc}"}, None
    return ok, verdict, payload, dims


def _report_document(cfg, spec, ok, verdict, payload):
    return {
        "schema": SCHEMA_VERSION,
        "task": {
            "name": spec.name,
            "kind": spec.kind,
            "params": {k: str(v) for k, v in sorted(spec.params.items())},
        },
        "backend": cfg.backend,
        "ok": ok,
        "verdict": verdict,
        "payload": payload,
    }


# ---------------------------------------------------------------------------
# the run entry point


def _override_tasks(cfg, names, args):
    tasks = []
    for name in names:
        base = next((t for t in cfg.tasks if t.name == name), None)
        if base is None:
            base = next((t for t in cfg.tasks if t.kind == name), None)
        if base is None:
            if name not in ALL_TASKS:
                raise SchemaError("--task", f"unknown task {name!r}")
            base = TaskSpec(name=name, kind=name, params={})
        params = dict(base.params)
        if args.divisor:
            params["divisor"] = args.divisor
        if args.max_degree is not None:
            params["max_degree"] = str(args.max_degree)
        if args.bound is not None:
            params["bound"] = str(args.bound)
        if args.probe is not None:
            params["probe"] = str(args.probe)
        tasks.append(TaskSpec(name=base.name, kind=base.kind, params=params))
    return tasks


def run(config_path, args) -> int:
    try:
        cfg = load_config(config_path)
        if args.task:
            task_list = _override_tasks(cfg, args.task, args)
        else:
            task_list = list(cfg.tasks)
            for spec in task_list:
                if args.max_degree is not None:
                    spec.params["max_degree"] = str(args.max_degree)
                if args.bound is not None:
                    spec.params["bound"] = str(args.bound)
                if args.probe is not None:
                    spec.params["probe"] = str(args.probe)
        if not task_list:
            raise SchemaError(str(config_path), "no tasks to run")
    except SchemaError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    def work(item):
        index, spec = item
        started = time.monotonic()
        try:
            ok, verdict, payload, dims = _execute(cfg, spec)
        except SchemaError as exc:
            return index, spec, None, None, None, str(exc), 0.0, None
        elapsed = time.monotonic() - started
        return index, spec, ok, verdict, payload, None, elapsed, dims

    items = list(enumerate(task_list, start=1))
    if args.parallel:
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(lambda it: work(it), items))
    else:
        results = [work(it) for it in items]

    any_failed = False
    for result in sorted(results, key=lambda r: r[0]):
        if result[2] is None:
            print(f"config error: {result[5]}", file=sys.stderr)
            return 2
        index, spec, ok, verdict, payload, _, elapsed, dims = result
        document = _report_document(cfg, spec, ok, verdict, payload)
        stem = f"{index:03d}_{spec.name}"
        report_path = out_dir / f"{stem}.json"
        report_path.write_text(
            json.dumps(document, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )
        if args.csv and dims:
            csv_path = out_dir / f"{stem}.csv"
            lines = ["degree,dimension"] + [f"{m},{d}" for m, d in dims]
            csv_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        status = "ok" if ok else "FAIL"
        print(f"[{status}] {spec.name} ({spec.kind}): {verdict}  [{elapsed:.2f}s]")
        any_failed = any_failed or not ok
    if args.strict and any_failed:
        return 1
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="divalg",
        description="Exact section-ring and graded-module analyses with certificates.",
    )
    parser.add_argument(
        "--schema-version", action="store_true", help="print the report schema version"
    )
    sub = parser.add_subparsers(dest="command")
    runp = sub.add_parser("run", help="run the tasks of a job configuration")
    runp.add_argument("config")
    runp.add_argument(
        "--task", action="append", help="run only this task (name or kind); repeatable"
    )
    runp.add_argument("--divisor", help="divisor name override for --task")
    runp.add_argument("--max-degree", type=int, dest="max_degree")
    runp.add_argument("--bound", type=int)
    runp.add_argument("--probe", type=int)
    runp.add_argument("--strict", action="store_true")
    runp.add_argument("--parallel", action="store_true")
    runp.add_argument("--out", default="divalg-reports")
    runp.add_argument("--csv", action="store_true")
    runp.add_argument("--schema-version", action="store_true", dest="schema_version_run")
    args = parser.parse_args(argv)

    if args.schema_version or getattr(args, "schema_version_run", False):
        print(SCHEMA_VERSION)
        return 0
    if args.command != "run":
        parser.print_help()
        return 2
    return run(args.config, args)


if __name__ == "__main__":
    raise SystemExit(main())
