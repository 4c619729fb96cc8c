"""Command-line front end: run check suites and emit JSON or text reports.

Exit codes: 0 when every selected check passes, 1 on a failed check,
2 on a configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence

from . import funrel, lax, lweights
from .finite_reps import check_relations_finite, vector_module, verma_module
from .loop_reps import check_relations_borel, evaluation_map, osc_rep
from .report import CheckReport

COMMANDS = ("relations", "lweights", "ybe", "rll", "funrel", "dump")
CORRUPTIONS = {
    "relations": ("rho", "E1"),
    "lweights": ("e0",),
    "ybe": ("a",),
    "rll": ("L21",),
    "funrel": ("shift",),
    "dump": (),
}


class ConfigError(ValueError):
    """Invalid flag combination."""


def _csv_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qloop", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--l", type=int, default=1, help="rank l of sl_{l+1}")
    p.add_argument("--trunc", type=int, default=4, help="Fock/Verma truncation N")
    p.add_argument("--umax", type=int, default=3, help="highest power n_max of u")
    p.add_argument("--s", type=_csv_ints, default=None, help="grading s_0,...,s_l")
    p.add_argument("--lambda", dest="lam", type=_csv_ints, default=None, help="integral weight in the K basis")
    p.add_argument("--a", default="all", help="oscillator index a or 'all'")
    p.add_argument("--kind", choices=("theta", "theta-bar", "both"), default="both")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--points", type=int, default=20)
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--stable", action="store_true", help="omit timings (byte-identical reruns)")
    p.add_argument("--corrupt", default=None, help="inject a known perturbation (negative control)")
    p.add_argument("--tensor", action="store_true", help="funrel: include the computed tensor-product check")
    p.add_argument("--module", default="theta", choices=("theta", "theta-bar", "verma", "vector", "eval",
                                                          "L", "M", "R"),
                   help="dump: which object to print")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    return p


# -- configuration -----------------------------------------------------------------------------


def _validate(args: argparse.Namespace) -> None:
    l = args.l
    if l < 1:
        raise ConfigError("--l must be at least 1")
    if args.trunc < 1:
        raise ConfigError("--trunc must be at least 1")
    if args.umax < 1:
        raise ConfigError("--umax must be at least 1")
    if args.points < 1:
        raise ConfigError("--points must be at least 1")
    if args.seed < 0 or args.seed >= 2 ** 64:
        raise ConfigError("--seed must be an unsigned 64-bit integer")
    if args.jobs < 1:
        raise ConfigError("--jobs must be at least 1")
    if args.s is not None:
        if len(args.s) != l + 1:
            raise ConfigError(f"--s needs {l + 1} integers for l = {l}")
        if any(x < 0 for x in args.s) or sum(args.s) < 1:
            raise ConfigError("--s entries must be non-negative with positive sum")
    if args.lam is not None and len(args.lam) != l + 1:
        raise ConfigError(f"--lambda needs {l + 1} integers for l = {l}")
    if args.a != "all":
        try:
            a = int(args.a)
        except ValueError:
            raise ConfigError("--a must be an integer or 'all'") from None
        if not 1 <= a <= l + 1:
            raise ConfigError(f"--a must lie in 1..{l + 1}")
    if args.corrupt is not None and args.corrupt not in CORRUPTIONS[args.command]:
        allowed = ", ".join(CORRUPTIONS[args.command]) or "none"
        raise ConfigError(f"--corrupt {args.corrupt!r} is not defined for {args.command} (allowed: {allowed})")


def _a_values(args) -> list[int]:
    return list(range(1, args.l + 2)) if args.a == "all" else [int(args.a)]


def _kinds(args) -> list[str]:
    return {"theta": ["theta"], "theta-bar": ["theta_bar"], "both": ["theta", "theta_bar"]}[args.kind]


def _default_lambdas(l: int) -> list[tuple[int, ...]]:
    one = (1,) + (0,) * l
    two = tuple(max(0, 2 - k) for k in range(l + 1))
    return [one, two]


def _s(args):
    return list(args.s) if args.s else None


# -- suite tasks (top-level so they can be sent to worker processes) -----------------------------


def _task_finite(l: int, lam, N: int, corrupt):
    mod = vector_module(l) if lam is None else verma_module(lam, N)
    if corrupt == "E1":
        mod = mod.corrupted("E1")
    return check_relations_finite(mod)


def _task_borel_osc(l: int, a: int, kind: str, N: int, s, corrupt):
    return check_relations_borel(osc_rep(l, a, kind, N, s, corrupt="rho" if corrupt == "rho" else None))


def _task_borel_eval(lam, N: int, s):
    return check_relations_borel(evaluation_map(verma_module(lam, N), s))


def _tasks(args) -> list[tuple[str, Callable, dict]]:
    l, N, n, s, c = args.l, args.trunc, args.umax, _s(args), args.corrupt
    out: list[tuple[str, Callable, dict]] = []
    if args.command == "relations":
        out.append(("vector: ", _task_finite, dict(l=l, lam=None, N=N, corrupt=c)))
        lams = [args.lam] if args.lam else _default_lambdas(l)
        for lam in lams:
            out.append((f"verma{list(lam)}: ", _task_finite, dict(l=l, lam=lam, N=N, corrupt=c)))
        for kind in _kinds(args):
            for a in _a_values(args):
                out.append((f"{kind}_{a}: ", _task_borel_osc, dict(l=l, a=a, kind=kind, N=N, s=s, corrupt=c)))
        for lam in lams:
            out.append((f"eval verma{list(lam)}: ", _task_borel_eval, dict(lam=lam, N=N, s=s)))
    elif args.command == "lweights":
        for kind in _kinds(args):
            for a in _a_values(args):
                out.append(("", lweights.check_closed_vs_computed,
                            dict(l=l, a=a, kind=kind, N=N, n_max=n, s=s, corrupt=c)))
        if args.kind == "both":
            for a in _a_values(args):
                out.append(("symmetry: ", lweights.check_barred_symmetry,
                            dict(l=l, a=a, N=N, n_max=n, s=s, corrupt=c)))
        if args.lam:
            out.append(("", lweights.check_verma_vs_evaluation, dict(lam=args.lam, N=N, n_max=n, s=s)))
    elif args.command == "ybe":
        out.append(("", lax.check_ybe_R, dict(l=l, s=s, points=args.points, seed=args.seed, corrupt=c)))
    elif args.command == "rll":
        out.append(("", lax.check_rll, dict(l=l, s=s, N=N, points=args.points, seed=args.seed, corrupt=c)))
    elif args.command == "funrel":
        for kind in _kinds(args):
            out.append((f"{kind}: ", funrel.check_osc_prefund, dict(l=l, kind=kind, s=s, corrupt=c)))
            out.append((f"{kind} reverse: ", funrel.check_reverse, dict(l=l, kind=kind, s=s, corrupt=c)))
        lams = [args.lam] if args.lam else [(0,) * (l + 1)] + _default_lambdas(l)
        for lam in lams:
            out.append((f"tq{list(lam)}: ", funrel.check_tq_factorization, dict(lam=lam, s=s, corrupt=c)))
        if l == 1:
            out.append(("", funrel.check_l1_coincidence, dict(N=N)))
        if args.tensor:
            out.append(("", funrel.check_tensor_computed, dict(l=l, N=N, n_max=n, s=s, corrupt=c)))
    return out


def run_suite(args: argparse.Namespace) -> CheckReport:
    """Run the selected checks and merge them into one ordered report."""
    params = {"l": args.l, "N": args.trunc, "n_max": args.umax, "s": _s(args),
              "lambda": list(args.lam) if args.lam else None, "a": args.a, "kind": args.kind,
              "seed": args.seed, "points": args.points, "corrupt": args.corrupt}
    report = CheckReport(args.command, params)
    tasks = _tasks(args)
    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            futures = [pool.submit(fn, **kw) for _, fn, kw in tasks]
            results = [f.result() for f in futures]
    else:
        results = [fn(**kw) for _, fn, kw in tasks]
    for (prefix, _, _), sub in zip(tasks, results):
        report.extend(sub, prefix)
    return report


def dump(args: argparse.Namespace) -> dict:
    l, N, s = args.l, args.trunc, _s(args)
    m = args.module
    if m in ("theta", "theta-bar"):
        if args.a == "all":
            raise ConfigError("dump needs a single --a")
        return osc_rep(l, int(args.a), m.replace("-", "_"), N, s).dump()
    if m == "vector":
        return evaluation_map(vector_module(l), s).dump()
    if m in ("verma", "eval"):
        lam = args.lam or _default_lambdas(l)[0]
        if m == "verma":
            mod = verma_module(lam, N)
            return {"name": mod.name, "basis": [list(b) for b in mod.basis.labels]}
        return evaluation_map(verma_module(lam, N), s).dump()
    if m == "L":
        return {"name": "L~", "entries": lax.build_L_tilde(l, s).render()}
    if m == "M":
        return {"name": "M~", "entries": lax.build_M_tilde(l, s).render()}
    return {"name": "R~", "entries": lax.build_R_tilde(l, s).render()}


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        _validate(args)
        if args.command == "dump":
            _emit(json.dumps(dump(args), indent=2, default=str), args.out)
            return 0
        report = run_suite(args)
    except (ConfigError, ValueError) as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"qloop: error: {exc}\n")
        return 2
    text = report.to_json(args.stable) if args.format == "json" else report.to_text()
    _emit(text, args.out)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
