"""The ``bckit verify`` command.

Suites are expanded into independent tasks, one per (check id, outer
parameters).  Tasks run in a process pool when ``--jobs`` exceeds 1; the
results are sorted before emission so the report never depends on the
worker count.  Exit codes: 0 when every check passes, 1 when any fails,
and 2 for malformed input or an unwritable output path.
"""

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from itertools import product

from . import __version__, combinatorics, cube_checks, form_checks, mutations

REPORT_VERSION = "1"
SUITES = ("coeffs", "appendix", "forms", "cubes", "product")
DEFAULT_MAX_N = {"coeffs": 8, "appendix": 8, "forms": 4, "product": 3, "cubes": 4}
FORMS_MAX_L = 3
DEFAULT_TRIALS = 100
DEFAULT_SEED = 0
MUTATION_TARGETS = {"A-SIGN-FLIP": "coeffs", "SBINOM-OFFBY1": "coeffs", "S-FORM-DROP-SIGN": "forms"}

COEFF_IDS = ("PASCAL", "VANDERMONDE", "A-ANTISYM-1", "A-ANTISYM-2", "A-DIFF-I", "A-DIFF-J",
             "A-BOUNDARY", "A-RECURRENCE-N", "A-RECURRENCE-M", "L521", "L522", "L523", "L524",
             "BCREC")
APPENDIX_IDS = ("APPA1", "APPA2", "APPA3")
PRODUCT_IDS = ("P518", "P518-EXTRACT")
FORM_IDS = tuple(k for k in form_checks.CATALOG if k not in PRODUCT_IDS)

# flag-based cube ids take S_n elements, whose Cub has dimension n - 1
CUBE_FLAG_IDS = ("SIMPLICIAL", "CHAIN-RANDOM", "L31", "BW-FACES")
CUBE_PAIR_IDS = ("P52-LEFT", "G2-DEGEN")


class ConfigError(Exception):
    pass


def _build_parser():
    parser = argparse.ArgumentParser(prog="bckit", description="Exact verification of identity catalogs.")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES + ("all",))
    v.add_argument("--max-n", type=int)
    v.add_argument("--max-m", type=int)
    v.add_argument("--max-l", type=int)
    v.add_argument("--trials", type=int)
    v.add_argument("--seed", type=int)
    v.add_argument("--format", choices=("json", "md"), default="json")
    v.add_argument("--out")
    v.add_argument("--mutation")
    v.add_argument("--jobs", type=int)
    v.add_argument("--normalize-timing", action="store_true")
    return parser


def _env_int(env, name):
    raw = env.get(name)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from None


def _available_workers():
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


def parse_config(argv, env=None):
    """Flags override environment variables, which override defaults."""
    env = os.environ if env is None else env
    args = _build_parser().parse_args(argv)
    seed = args.seed if args.seed is not None else _env_int(env, "BCKIT_SEED")
    jobs = args.jobs if args.jobs is not None else _env_int(env, "BCKIT_JOBS")
    cfg = {
        "suite": args.suite,
        "max_n": args.max_n,
        "max_m": args.max_m,
        "max_l": args.max_l,
        "trials": DEFAULT_TRIALS if args.trials is None else args.trials,
        "seed": DEFAULT_SEED if seed is None else seed,
        "format": args.format,
        "out": args.out,
        "mutation": args.mutation,
        "jobs": _available_workers() if jobs is None else jobs,
        "normalize_timing": args.normalize_timing,
    }
    for key in ("max_n", "max_m", "max_l", "trials", "jobs"):
        if cfg[key] is not None and cfg[key] < 1:
            raise ConfigError(f"--{key.replace('_', '-')} must be a positive integer")
    if not 0 <= cfg["seed"] < 2 ** 64:
        raise ConfigError("seed must be a 64-bit unsigned integer")
    if cfg["mutation"] is not None and cfg["mutation"] not in mutations.MUTATIONS:
        raise ConfigError(f"unknown mutation {cfg['mutation']!r}")
    return cfg


def _limits(cfg, suite):
    n = cfg["max_n"] or DEFAULT_MAX_N[suite]
    m = cfg["max_m"] or n
    l = cfg["max_l"] or (min(n, FORMS_MAX_L) if suite == "forms" else n)
    return n, m, l


def _grid(names, ranges):
    for values in product(*(ranges[k] for k in names)):
        yield dict(zip(names, values))


def suite_tasks(cfg, suite):
    """(suite, check id, params) for every entry of the suite at the configured ranges."""
    n, m, l = _limits(cfg, suite)
    out = []
    if suite == "coeffs":
        for cid in COEFF_IDS:
            names = combinatorics.CATALOG[cid][0]
            if cid == "PASCAL":
                grid = ({"a": a} for a in range(0, n + m + 1))
            elif cid == "VANDERMONDE":
                grid = _grid(names, {"a": range(n + m + 1), "b": range(n + 1), "c": range(m + 1)})
            else:
                grid = _grid(names, {"n": range(1, n + 1), "m": range(1, m + 1), "l": range(1, l + 1)})
            out += [(suite, cid, p) for p in grid]
    elif suite == "appendix":
        for cid in APPENDIX_IDS:
            names = combinatorics.CATALOG[cid][0]
            grid = _grid(names, {"n": range(1, n + 1), "m": range(1, m + 1), "l": range(1, l + 1)})
            out += [(suite, cid, p) for p in grid]
    elif suite == "forms":
        for cid in FORM_IDS:
            names, _, low = form_checks.CATALOG[cid]
            if names == ("n",):
                # the product formula takes n degree-one arguments, like the pair ids
                top = n + 1 if cid == "P63" else n
                grid = ({"n": k} for k in range(low, top + 1))
            elif names == ("n", "m"):
                # the Leibniz rule needs a product of positive degree
                floor = 1 if cid == "LEIBNIZ" else 0
                grid = (p for p in _grid(names, {"n": range(low, n + 1), "m": range(low, m + 1)})
                        if floor <= p["n"] + p["m"] <= n + 1)
            else:
                grid = _grid(names, {k: range(low, l + 1) for k in names})
            out += [(suite, cid, p) for p in grid]
    elif suite == "product":
        for cid in PRODUCT_IDS:
            grid = _grid(("n", "m", "l"), {"n": range(1, n + 1), "m": range(1, m + 1), "l": range(1, l + 1)})
            out += [(suite, cid, p) for p in grid]
    elif suite == "cubes":
        for cid, (names, _, lows, _) in cube_checks.CATALOG.items():
            cap = cube_checks.MAX_PARAMS.get(cid, {}).get("n")
            if cid in CUBE_PAIR_IDS:
                grid = (p for p in _grid(names, {"n": range(n + 1), "m": range(m + 1)})
                        if p["n"] + p["m"] <= n)
            else:
                top = n + 1 if cid in CUBE_FLAG_IDS else n
                if cap is not None:
                    top = min(top, cap)
                grid = ({"n": k} for k in range(lows[0], top + 1))
            out += [(suite, cid, p) for p in grid]
    else:
        raise ConfigError(f"unknown suite {suite!r}")
    return out


def run_task(task, trials, seed):
    suite, cid, params = task
    if suite == "cubes":
        return cube_checks.check_cube_identity(cid, params, trials, seed)
    if suite in ("forms", "product"):
        return form_checks.check_form_identity(cid, params)
    return combinatorics.check_coeff_identity(cid, params)


def _worker(args):
    task, trials, seed = args
    return task[0], run_task(task, trials, seed)


def _sort_key(result):
    return result.check_id, tuple(sorted(result.params.items()))


def run_suite(cfg):
    suites = SUITES if cfg["suite"] == "all" else (cfg["suite"],)
    tasks = [t for s in suites for t in suite_tasks(cfg, s)]
    start = time.perf_counter()
    work = [(t, cfg["trials"], cfg["seed"]) for t in tasks]
    if cfg["jobs"] > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=cfg["jobs"], initializer=mutations.set_mutation,
                                 initargs=(cfg["mutation"],)) as pool:
            results = list(pool.map(_worker, work, chunksize=1))
    else:
        with mutations.apply_mutation(cfg["mutation"]):
            results = [_worker(w) for w in work]
    elapsed = int((time.perf_counter() - start) * 1000)
    by_suite = {s: [] for s in suites}
    for suite, result in results:
        by_suite[suite].append(result)
    report = {
        "version": REPORT_VERSION,
        "tool_version": __version__,
        "config": _config_echo(cfg),
        "suites": [{"id": s, "checks": sorted(rs, key=_sort_key)} for s, rs in by_suite.items()],
        "elapsed_ms": elapsed,
    }
    flat = [r for rs in by_suite.values() for r in rs]
    report["summary"] = {"total": len(flat), "passed": sum(r.passed for r in flat),
                         "failed": sum(not r.passed for r in flat)}
    return report


def _config_echo(cfg):
    echo = {k: cfg[k] for k in ("suite", "max_n", "max_m", "max_l", "trials", "seed", "mutation")}
    echo["mutated"] = cfg["mutation"] is not None
    suites = SUITES if cfg["suite"] == "all" else (cfg["suite"],)
    echo["limits"] = {s: dict(zip(("max_n", "max_m", "max_l"), _limits(cfg, s))) for s in suites}
    return echo


def _writable(path):
    if os.path.isdir(path):
        return False
    if os.path.exists(path):
        return os.access(path, os.W_OK)
    return os.access(os.path.dirname(os.path.abspath(path)), os.W_OK)


def emit_report(report, fmt, normalize_timing=False):
    data = {
        "version": report["version"],
        "tool_version": report["tool_version"],
        "config": report["config"],
        "suites": [{"id": s["id"], "checks": [r.as_dict(normalize_timing) for r in s["checks"]]}
                   for s in report["suites"]],
        "summary": report["summary"],
        "elapsed_ms": 0 if normalize_timing else report["elapsed_ms"],
    }
    if fmt == "json":
        return (json.dumps(data, indent=2, sort_keys=False, ensure_ascii=False) + "\n").encode()
    lines = [f"# bckit report v{data['version']}", ""]
    cfg = data["config"]
    lines.append("config: " + ", ".join(f"{k}={cfg[k]}" for k in cfg))
    s = data["summary"]
    lines += [f"summary: {s['passed']}/{s['total']} passed, {s['failed']} failed", ""]
    for suite in data["suites"]:
        lines += [f"## {suite['id']}", "", "| id | params | status | witness | elapsed_ms |",
                  "|---|---|---|---|---|"]
        for c in suite["checks"]:
            params = ", ".join(f"{k}={v}" for k, v in c["params"].items())
            witness = c.get("witness", "").replace("|", "\\|").replace("\n", " ")
            lines.append(f"| {c['id']} | {params} | {c['status']} | {witness} | {c['elapsed_ms']} |")
        lines.append("")
    return "\n".join(lines).encode()


def main(argv=None, env=None):
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv, env)
    except SystemExit as exc:
        return 2 if exc.code else 0
    except ConfigError as exc:
        print(f"bckit: error: {exc}", file=sys.stderr)
        return 2
    if cfg["out"] and not _writable(cfg["out"]):
        print(f"bckit: error: cannot write {cfg['out']}", file=sys.stderr)
        return 2
    report = run_suite(cfg)
    payload = emit_report(report, cfg["format"], cfg["normalize_timing"])
    if cfg["out"]:
        try:
            with open(cfg["out"], "wb") as fh:
                fh.write(payload)
        except OSError as exc:
            print(f"bckit: error: cannot write {cfg['out']}: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
    return 0 if report["summary"]["failed"] == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
