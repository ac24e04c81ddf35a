"""Command-line driver: verification suites, sweeps, meshes, classification.

Exit codes: 0 = pass, 1 = verification failure, 2 = configuration or
domain error.  Reports are deterministic for fixed seed + config; pass
``--timing`` to include wall time (at the cost of byte-stability).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from . import codim2, wick
from .catalog import CATALOG_IDS, get_field, swap_variables
from .config import CONFIG_ENV_VAR, load_config
from .errors import ZmcForgeError
from .export import SWEEP_TARGETS, sample_mesh, sweep_convergence
from .jets import imag_magnitude
from .residuals import RESIDUAL_OF
from .suites import SUITE_IDS, GridSpec, run_suite

__all__ = ["main", "build_parser"]


def _add_grid_args(p, defaults=(-1.0, 1.0, 24, -1.0, 1.0, 24)):
    p.add_argument("--grid", nargs=6, type=float, metavar=("XMIN", "XMAX", "NX",
                   "YMIN", "YMAX", "NY"), default=list(defaults),
                   help="grid box and resolution")
    p.add_argument("--margin", type=float, default=0.0,
                   help="shrink the box by this margin before sampling")


def _grid_from_args(args) -> GridSpec:
    g = args.grid
    return GridSpec(g[0], g[1], int(g[2]), g[3], g[4], int(g[5]),
                    margin=args.margin)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="zmc-forge",
        description="verify, sample, and classify zero-mean-curvature "
                    "surface families and their series decompositions")
    ap.add_argument("--config", default=None,
                    help=f"TOML config path (or ${CONFIG_ENV_VAR})")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a registered verification suite")
    p.add_argument("suite", help=f"one of {', '.join(SUITE_IDS)} "
                   f"(or 'thm4.1' with --part, or 'all')")
    p.add_argument("--part", type=int, choices=(1, 2, 3, 4), default=None)
    p.add_argument("--variant", choices=("statement", "proof", "rederived"),
                   default=None,
                   help="restrict a thm4.1 suite to one identity variant")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None, help="write the JSON report here")
    p.add_argument("--timing", action="store_true",
                   help="include wall time (report no longer byte-stable)")

    p = sub.add_parser("sample", help="export a surface mesh (OBJ + CSV)")
    p.add_argument("surface", help=f"one of {', '.join(CATALOG_IDS)}")
    p.add_argument("--theta", type=float, default=None)
    _add_grid_args(p)
    p.add_argument("--out", required=True, help="output .obj path")
    p.add_argument("--csv", default=None, help="sidecar CSV path")

    p = sub.add_parser("sweep", help="convergence sweep to CSV")
    p.add_argument("target", choices=SWEEP_TARGETS)
    p.add_argument("--point", nargs=2, type=float, required=True,
                   metavar=("A", "B"))
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--n-list", default="10,100,1000,10000",
                   help="comma-separated pair counts")
    p.add_argument("--out", required=True)

    p = sub.add_parser("er-sweep", help="arctangent-lattice sweep "
                       "(shorthand for 'sweep er' over powers of ten)")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--b", type=float, required=True)
    p.add_argument("--n-max", type=int, default=1_000_000)
    p.add_argument("--out", required=True)

    p = sub.add_parser("classify", help="pointwise expansion-scalar "
                       "classification over a grid")
    p.add_argument("--immersion", choices=("F", "G", "H"), required=True)
    p.add_argument("--surface", required=True)
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--swap", action="store_true",
                   help="interchange the surface's arguments before "
                        "immersing (needed for H on soliton-type graphs)")
    _add_grid_args(p)
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--summary", default=None, help="summary JSON path")

    p = sub.add_parser("wick", help="rotation-rule realness/residual report")
    p.add_argument("--from", dest="source", required=True,
                   help="catalog id of the input surface")
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--rule", choices=("2.1", "2.2", "2.3"), required=True)
    _add_grid_args(p, defaults=(-1.2, 1.2, 24, -1.2, 1.2, 24))
    p.add_argument("--out", default=None, help="write the JSON report here")
    return ap


def _cmd_verify(args, cfg) -> int:
    suite = args.suite
    if suite == "thm4.1":
        if args.part is None:
            return _fail("suite 'thm4.1' needs --part {1,2,3,4}")
        suite = f"thm4.1-p{args.part}"
    if args.variant is not None:
        if not suite.startswith("thm4.1"):
            return _fail("--variant only applies to thm4.1 suites")
        cfg = dict(cfg)
        cfg["suites"] = dict(cfg["suites"])
        cfg["suites"]["thm4.1"] = dict(cfg["suites"]["thm4.1"])
        cfg["suites"]["thm4.1"]["variant"] = args.variant
    suites = list(SUITE_IDS) if suite == "all" else [suite]
    all_pass = True
    reports = []
    for sid in suites:
        rep = run_suite(sid, config=cfg, seed=args.seed, timing=args.timing)
        print(rep.summary_line())
        reports.append(rep)
        all_pass = all_pass and rep.passed
    if args.out:
        payload = (reports[0].to_json() if len(reports) == 1 else
                   json.dumps([json.loads(r.to_json()) for r in reports],
                              sort_keys=True, indent=2) + "\n")
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    return 0 if all_pass else 1


def _cmd_sample(args, cfg) -> int:
    summary = sample_mesh(args.surface, args.theta, _grid_from_args(args),
                          args.out, csv_path=args.csv,
                          causal_tol=cfg["tolerances"]["causal_tol"])
    print(json.dumps(summary, sort_keys=True))
    return 0


def _cmd_sweep(args, cfg) -> int:
    n_list = [int(tok) for tok in args.n_list.split(",") if tok.strip()]
    rows = sweep_convergence(args.target, tuple(args.point), args.theta,
                             n_list, args.out)
    ok = all(rows[i][3] >= rows[i + 1][3] for i in range(len(rows) - 1))
    print(f"wrote {len(rows)} rows to {args.out}; final gap = {rows[-1][2]:.3e}")
    return 0 if ok else 1


def _cmd_er_sweep(args, cfg) -> int:
    n_list = []
    n = 10
    while n <= args.n_max:
        n_list.append(n)
        n *= 10
    rows = sweep_convergence("er", (args.a, args.b), None, n_list, args.out)
    print(f"wrote {len(rows)} rows to {args.out}; final gap = {rows[-1][2]:.3e}")
    return 0


def _cmd_classify(args, cfg) -> int:
    hf = get_field(args.surface, theta=args.theta)
    if args.swap:
        hf = swap_variables(hf)
    grid = _grid_from_args(args)
    counts = {}
    skipped = 0
    rows = []
    for (a, b) in grid.points():
        try:
            data = codim2.immerse(args.immersion, hf, a, b)
        except ZmcForgeError:
            skipped += 1
            continue
        cls = codim2.classify(data.k1, data.k2)
        counts[cls.kind] = counts.get(cls.kind, 0) + 1
        rows.append((a, b, data.k1, data.k2, cls.kind))
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "y", "k1", "k2", "class"])
        for (a, b, k1, k2, kind) in rows:
            writer.writerow([f"{a:.17g}", f"{b:.17g}", f"{k1:.17g}",
                             f"{k2:.17g}", kind])
    summary = {"immersion": args.immersion, "surface": hf.id,
               "points": len(rows), "skipped_not_spacelike": skipped,
               "class_counts": counts}
    if args.summary:
        with open(args.summary, "w", encoding="utf-8") as fh:
            json.dump(summary, fh, sort_keys=True, indent=2)
            fh.write("\n")
    print(json.dumps(summary, sort_keys=True))
    return 0 if rows else 1


def _cmd_wick(args, cfg) -> int:
    src = get_field(args.source, theta=args.theta)
    transform = {"2.1": wick.wick_mse_to_zmc,
                 "2.2": wick.wick_mse_to_bie_even,
                 "2.3": wick.wick_mse_to_bie_odd}[args.rule]
    prof = wick.parity_profile(src)
    out = transform(src)
    raw_rule = {"2.1": "2.1-odd" if prof.is_odd_odd() else "2.1-even",
                "2.2": "2.2", "2.3": "2.3"}[args.rule]
    raw = wick.wick_raw(src, raw_rule)
    residual = RESIDUAL_OF[out.expected_pde]
    tols = cfg["tolerances"]
    max_im = max_res = 0.0
    used = 0
    for pt in _grid_from_args(args).points():
        if not out.domain(*pt):
            continue
        used += 1
        max_im = max(max_im, imag_magnitude(raw.jet(*pt)))
        max_res = max(max_res, abs(residual(out.jet(*pt))))
    passed = max_im <= tols["wick_im"] and max_res <= tols["wick_residual"]
    report = {"rule": args.rule, "input": src.id, "output": out.id,
              "parity": list(prof.tags), "grid_points_used": used,
              "max_im": max_im, "max_target_residual": max_res,
              "tolerances": {"im": tols["wick_im"],
                             "residual": tols["wick_residual"]},
              "passed": passed}
    payload = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload)
    print(payload, end="")
    return 0 if passed else 1


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return 2


_COMMANDS = {
    "verify": _cmd_verify,
    "sample": _cmd_sample,
    "sweep": _cmd_sweep,
    "er-sweep": _cmd_er_sweep,
    "classify": _cmd_classify,
    "wick": _cmd_wick,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        return _COMMANDS[args.command](args, cfg)
    except ZmcForgeError as exc:
        return _fail(str(exc))
    except (ValueError, OSError) as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
