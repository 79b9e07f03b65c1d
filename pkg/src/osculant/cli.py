"""Command-line interface: ``osc <command> (--catalog NAME | --config FILE) ...``.

Exit codes: 0 when every check passes (or the command is informational),
1 when a check fails, 2 on usage or config errors.
"""

from __future__ import annotations

import argparse
import logging
import sys
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

from . import catalog, config, geometry, report, verify
from .geometry import GeometryError, SamplePlan
from .polynomial import PolynomialError
from .verify import Status

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def tool_version() -> str:
    try:
        return version("osculant")
    except PackageNotFoundError:
        return "0+unknown"


class UsageError(Exception):
    pass


def _shared() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    src = p.add_argument_group("variety")
    src.add_argument("--catalog", metavar="NAME", help="catalog entry (see `osc catalog list`)")
    src.add_argument("--degree", type=int, help="degree for rnc, rnc_in_hyperplane, cone_rnc")
    src.add_argument("--ambient", type=int, help="ambient dimension for rnc_in_hyperplane")
    src.add_argument("--config", metavar="FILE", help="variety config file")
    plan = p.add_argument_group("sampling")
    plan.add_argument("--seed", type=int, default=42)
    plan.add_argument("--samples", type=int, default=5)
    plan.add_argument("--height", type=int, default=1000)
    p.add_argument("--json", metavar="PATH", help="write the JSON report here")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="osc", description="Exact osculating spaces of parametrized varieties.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {tool_version()}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log rejected sample points")
    sub = parser.add_subparsers(dest="command", required=True)
    shared = _shared()

    p = sub.add_parser("profile", parents=[shared], help="osculating dimensions h_0..h_M at a general point")
    p.add_argument("--max-order", type=int)

    p = sub.add_parser("span", parents=[shared], help="dimension of the span of X, or of all order-m osculating spaces")
    p.add_argument("--order", type=int)

    p = sub.add_parser("osc-variety-dim", parents=[shared], help="dimension of the order-m osculating variety")
    p.add_argument("--order", type=int, required=True)

    p = sub.add_parser("lemma-check", parents=[shared], help="tangent spaces of T(m,X) lie in T(m+1,p,X)")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--target-order", type=int, help="test membership in this order instead of m+1")

    p = sub.add_parser("constancy", parents=[shared], help="first-order corank of q -> T(m,q,X)")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--point", help="comma-separated parameter values (default: profile witness)")

    p = sub.add_parser("dichotomy", parents=[shared], help="check the dichotomy for a jump 1 <= k <= n-1")
    p.add_argument("--order", type=int, required=True)

    p = sub.add_parser("proposition", parents=[shared], help="h_m = h_{m+1} = h forces X into P^h")
    p.add_argument("--order", type=int, help="default: first m with h_m = h_{m+1}")

    p = sub.add_parser("bound", parents=[shared], help="dim T(m,X) <= h_m + k")
    p.add_argument("--order", type=int, required=True)

    cat = sub.add_parser("catalog", help="list or export catalog entries")
    cat_sub = cat.add_subparsers(dest="action", required=True)
    cat_sub.add_parser("list")
    ex = cat_sub.add_parser("export")
    ex.add_argument("name")
    ex.add_argument("--degree", type=int)
    ex.add_argument("--ambient", type=int)
    ex.add_argument("--out", metavar="PATH")
    return parser


def _entry_params(args) -> dict:
    params = {}
    if args.degree is not None:
        params["degree"] = args.degree
    if args.ambient is not None:
        params["ambient"] = args.ambient
    return params


def _load(args):
    """(config, parametrization, fiber, fiber_order, catalog entry or None)."""
    if bool(args.catalog) == bool(args.config):
        raise UsageError("give exactly one of --catalog or --config")
    if args.catalog:
        try:
            entry = catalog.get(args.catalog, **_entry_params(args))
        except TypeError as exc:
            raise UsageError(f"{args.catalog}: {exc}") from None
        cfg = config.from_parametrization(entry.parametrization, entry.fiber, entry.fiber_order)
        return cfg, entry.parametrization, entry.fiber, entry.fiber_order, entry
    cfg = config.load_config(args.config)
    fiber = cfg.fiber.build() if cfg.fiber else None
    return cfg, cfg.parametrization(), fiber, cfg.fiber.order if cfg.fiber else None, None


def _point(text: str, n: int):
    parts = [x.strip() for x in text.split(",")]
    if len(parts) != n:
        raise UsageError(f"--point needs {n} comma-separated values")
    try:
        return geometry.as_point(parts)
    except ValueError:
        raise UsageError(f"bad --point {text!r}") from None


def _command_record(args) -> dict:
    skip = {"json", "verbose", "seed", "samples", "height", "config"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def _run_check(args, P, fiber, fiber_order, entry) -> tuple[dict, str, list[str]]:
    """Returns (result payload, verdict, human-readable lines)."""
    plan = SamplePlan(seed=args.seed, samples=args.samples, height_bound=args.height)
    cmd = args.command
    if cmd == "profile":
        m_max = args.max_order if args.max_order is not None else (entry.max_order if entry else 4)
        prof = geometry.profile(P, m_max, plan)
        dims = "[" + ",".join(str(d) for d in prof.dims) + "]"
        lines = [dims, f"witness t0 = {_fmt(prof.witness)}"]
        verdict = "info"
        payload = {"profile": prof}
        if entry is not None and m_max <= entry.max_order:
            expected = list(entry.expected_profile[: m_max + 1])
            payload["expected_profile"] = expected
            payload["provenance"] = entry.provenance
            verdict = "pass" if prof.dims == expected else "fail"
            lines.append(f"expected {expected}: {verdict}")
        return payload, verdict, lines
    if cmd == "span":
        if args.order is None:
            res = geometry.variety_span(P, plan)
            return {"span": res}, "info", [f"dim <X> = {res.dim}"]
        res = geometry.joint_osculating_span(P, args.order, plan)
        return {"order": args.order, "span": res}, "info", [f"dim <T({args.order},p,X) : p in X> = {res.dim}"]
    if cmd == "osc-variety-dim":
        d = geometry.osculating_variety_dim(P, args.order, plan)
        return {"order": args.order, "osculating_variety_dim": d}, "info", [f"dim T({args.order},X) = {d}"]
    if cmd == "lemma-check":
        rep = verify.lemma_inclusion_check(P, args.order, args.trials, plan, args.target_order)
        held = len(rep.trials) - rep.failures
        line = f"{held}/{len(rep.trials)} inclusions hold (order {rep.m} in T({rep.target_order},p,X))"
        return {"lemma": rep}, rep.status.value, [line]
    if cmd == "constancy":
        t0 = _point(args.point, P.n) if args.point else geometry.profile(P, args.order + 1, plan).witness
        reason = geometry.rejection_reason(P, t0)
        if reason is not None:
            raise UsageError(f"point {_fmt(t0)} rejected: {reason}")
        res = verify.first_order_constancy_corank(P, args.order, t0)
        lines = [f"t0 = {_fmt(t0)}: corank k' = {res.corank}, fiber_dim_lb = {res.fiber_dim_lb}"]
        return {"order": args.order, "t0": t0, "constancy": res}, "info", lines
    if cmd == "dichotomy":
        use_fiber = fiber if (fiber_order is None or fiber_order == args.order) else None
        rep = verify.dichotomy_check(P, args.order, plan, use_fiber)
        lines = [f"m={rep.m} h={rep.h} k={rep.k} n={rep.n}: {rep.status.value}"
                 + (f" via branch {rep.branch}" if rep.branch else "")]
        if rep.applicable:
            lines.append(f"span = {rep.span_dim} (branch A needs <= {rep.h + rep.k}); "
                         f"corank k' = {rep.corank}, fiber_dim_lb = {rep.fiber_dim_lb}")
        if rep.fiber is not None:
            f = rep.fiber
            lines.append(f"fiber: constancy {sum(f.constancy_equal)}/{len(f.constancy_equal)}, "
                         f"span {f.span_dim} <= {f.span_bound}, dim {f.dim} >= {f.dim_bound}")
        return {"dichotomy": rep}, rep.status.value, lines
    if cmd == "proposition":
        m = args.order if args.order is not None else verify.first_stable_order(P, plan)
        rep = verify.proposition_check(P, m, plan)
        line = f"m={m}: h_m={rep.h_m}, h_m+1={rep.h_next}, span={rep.span_dim}: {rep.status.value}"
        return {"proposition": rep}, rep.status.value, [line]
    if cmd == "bound":
        rep = verify.osculating_bound_check(P, args.order, plan)
        line = f"dim T({rep.m},X) = {rep.osculating_variety_dim} <= {rep.h} + {rep.k}: {rep.status.value}"
        return {"bound": rep}, rep.status.value, [line]
    raise UsageError(f"unknown command {cmd}")


def _fmt(t0) -> str:
    return "(" + ", ".join(str(x) for x in t0) + ")"


def _catalog(args) -> int:
    if args.action == "list":
        for name in catalog.names():
            print(name)
        return EXIT_OK
    entry = catalog.get(args.name, **_entry_params(args))
    text = config.export_entry(entry)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "catalog":
            return _catalog(args)
        cfg, P, fiber, fiber_order, entry = _load(args)
        try:
            payload, verdict, lines = _run_check(args, P, fiber, fiber_order, entry)
        except GeometryError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FAIL
    except (UsageError, config.ConfigError, catalog.UnknownEntryError, PolynomialError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) else str(exc)
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE

    print(f"{P.name}: {args.command}")
    for line in lines:
        print(f"  {line}")
    if args.json:
        doc = {
            "schema": report.SCHEMA,
            "tool_version": tool_version(),
            "command": args.command,
            "arguments": _command_record(args),
            "variety": {
                "name": cfg.name,
                "params": list(cfg.params),
                "coords": list(cfg.coords),
                "digest": config.digest(cfg),
            },
            "plan": {"seed": args.seed, "samples": args.samples, "height_bound": args.height},
            "result": payload,
            "verdict": verdict,
        }
        report.write(doc, args.json)
    return EXIT_FAIL if verdict == Status.FAIL.value else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
