"""Command-line entry point.

Every command builds a report envelope (command, parameters, results,
tool_version, plus seed and rng_id when randomness is involved) and prints
it as JSON or as CSV rows. Exit codes: 0 ok, 1 internal error, 2 bad input,
3 resource cap.
"""

import argparse
import csv
import io
import json
import os
import sys
import tempfile

from . import __version__, tables
from .config import DEFAULT_CAPS, ResourceCapError
from .factor_bench import detect_scheme, gen_semiprime, run_campaign
from .group_audit import audit
from .numthy import SemiprimeSpec
from .period_prob import PeriodSpec, probability_report
from .sampler import RNG_ID, make_rng, run_trials

EXIT_OK, EXIT_INTERNAL, EXIT_PRECONDITION, EXIT_CAP = 0, 1, 2, 3


def envelope(command: str, parameters: dict, results, seed: int | None = None) -> dict:
    env = {"command": command, "parameters": parameters, "results": results, "tool_version": __version__}
    if seed is not None:
        env["seed"] = seed
        env["rng_id"] = RNG_ID
    return env


# Each command returns (envelope, csv_rows, csv_decimals, exit_code).

def cmd_prob(a):
    if a.averaged and a.k is not None:
        raise ValueError("--k and --averaged are mutually exclusive")
    rep = probability_report(a.r, a.q, k=a.k, oracle=a.oracle)
    res = rep.to_dict()
    params = {"r": a.r, "q": a.q, "k": a.k, "oracle": a.oracle, "averaged": a.k is None}
    rows = [{"variant": v, "value": res[v]} for v in ("exact", "oracle", "asymptotic", "limit") if res[v] is not None]
    return envelope("prob", params, res), rows, None, EXIT_OK


def cmd_table(a):
    rows, decimals = tables.BUILDERS[a.which]()
    return envelope("table", {"which": a.which}, rows), rows, decimals, EXIT_OK


def cmd_simulate(a):
    s = run_trials(PeriodSpec.of(a.r), a.q, a.trials, a.seed)
    res = s.to_dict()
    params = {"r": a.r, "q": a.q, "trials": a.trials, "seed": a.seed}
    return envelope("simulate", params, res, a.seed), [res], None, EXIT_OK


def cmd_bench(a):
    if a.N is not None:
        if a.p is None or a.q is None or a.p * a.q != a.N:
            raise ValueError("--N needs --p and --q with p*q = N")
        spec = SemiprimeSpec.from_factors(a.p, a.q)
    elif a.cp is not None and a.cq is not None:
        spec = gen_semiprime(a.cp, a.cq, a.d_max, make_rng(a.seed, 1 << 32))
    else:
        raise ValueError("give either --cp and --cq, or --N with --p and --q")
    rep = run_campaign(spec, a.scheme, a.runs, a.seed)
    params = {"cp": a.cp, "cq": a.cq, "d_max": a.d_max, "N": a.N, "p": a.p, "q": a.q,
              "scheme": a.scheme, "runs": a.runs, "seed": a.seed}
    res = rep.to_dict()
    return envelope("bench", params, res, a.seed), res["records"], None, EXIT_OK


def cmd_audit(a):
    caps = DEFAULT_CAPS.with_env()
    max_n = caps.audit_max_n if a.max_n is None else a.max_n
    rep = audit(max_n, caps)
    rows = []
    for r in rep.rows:
        d = r.to_dict()
        d["matrix"] = " ".join(map(str, d["matrix"]))
        d["predicted"] = " ".join(map(str, d["predicted"]))
        rows.append(d)
    res = {"max_n": max_n, "count": len(rows), "passed": rep.passed, "rows": rows}
    code = EXIT_OK if rep.passed else EXIT_INTERNAL
    return envelope("audit", {"max_n": max_n}, res), rows, None, code


def cmd_detect(a):
    if (a.p is None) != (a.q is None):
        raise ValueError("--p and --q go together")
    if a.p is not None:
        if a.p * a.q != a.N:
            raise ValueError(f"{a.p}*{a.q} != {a.N}")
        target = SemiprimeSpec.from_factors(a.p, a.q)
    else:
        target = a.N
    dec = detect_scheme(target)
    res = {"N": a.N, "scheme": dec.scheme, "inferred": dec.inferred, "c_q_lower": dec.c_q_lower,
           "evidence": [[name, val] for name, val in dec.evidence]}
    row = {k: res[k] for k in ("N", "scheme", "inferred", "c_q_lower")}
    return envelope("detect", {"N": a.N, "p": a.p, "q": a.q}, res), [row], None, EXIT_OK


def _fmt(v, places):
    if isinstance(v, float) and places is not None:
        return f"{v:.{places}f}"
    if isinstance(v, float):
        return repr(v)
    return "" if v is None else str(v)


def to_csv(rows: list[dict], decimals: list[dict] | None = None) -> str:
    buf = io.StringIO()
    if not rows:
        return ""
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    for i, row in enumerate(rows):
        places = decimals[i] if decimals else {}
        w.writerow({k: _fmt(v, places.get(k)) for k, v in row.items()})
    return buf.getvalue()


def write_atomic(path: str, text: str):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".shorbench-")
    try:
        with os.fdopen(fd, "w") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="shorbench", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    fmt = argparse.ArgumentParser(add_help=False)
    g = fmt.add_mutually_exclusive_group()
    g.add_argument("--json", dest="fmt", action="store_const", const="json")
    g.add_argument("--csv", dest="fmt", action="store_const", const="csv")
    fmt.add_argument("--out", help="write output here instead of stdout")
    fmt.set_defaults(fmt="json")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("prob", parents=[fmt], help="success probability for period r")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--k", type=int)
    s.add_argument("--oracle", action="store_true")
    s.add_argument("--averaged", action="store_true")
    s.set_defaults(func=cmd_prob)

    s = sub.add_parser("table", parents=[fmt], help="table and figure data")
    s.add_argument("which", choices=sorted(tables.BUILDERS))
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("simulate", parents=[fmt], help="Monte-Carlo measurement statistics")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--trials", type=int, default=100_000)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("bench", parents=[fmt], help="scheme A/B factoring campaign")
    s.add_argument("--cp", type=int)
    s.add_argument("--cq", type=int)
    s.add_argument("--d-max", type=int, default=15)
    s.add_argument("--N", type=int)
    s.add_argument("--p", type=int)
    s.add_argument("--q", type=int)
    s.add_argument("--scheme", choices=["A", "B"], required=True)
    s.add_argument("--runs", type=int, default=50)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("audit", parents=[fmt], help="exhaustive coset-count and Leander audit")
    s.add_argument("--max-n", type=int)
    s.set_defaults(func=cmd_audit)

    s = sub.add_parser("detect", parents=[fmt], help="pick scheme A or B from Jacobi symbols")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--p", type=int)
    s.add_argument("--q", type=int)
    s.set_defaults(func=cmd_detect)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        env, rows, decimals, code = args.func(args)
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    text = to_csv(rows, decimals) if args.fmt == "csv" else json.dumps(env, indent=2) + "\n"
    if args.out:
        write_atomic(args.out, text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
