"""Command-line front end: build, reduce, analyze, and regenerate tables.

Configuration comes from an optional JSON file plus flag overrides; every
report embeds the tool version, a hash of the effective configuration, and
the seed, so identical inputs reproduce identical bytes.

Exit codes: 0 ok, 1 validation error, 2 internal error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from pathlib import Path

from . import __version__, fixtures, tables
from .classical import INFINITE_DISTANCE, LinearCode, min_distance_exact, min_distance_upper
from .classical_reduction import ReductionOptions, reduce_base_full, reduce_full, weight_violations
from .css import CssCode, css_distance, hgp, hgp_params, lifted_product, lp_square, read_css, write_css
from .gf2 import BinaryMatrix, read_alist, read_text, write_text
from .quantum_reduction import (
    ConingOptions,
    CopyVariant,
    HeightsSpec,
    UnreasonableCodeError,
    full_pipeline,
)
from .ringpoly import BaseMatrix, lift_matrix, read_base_text
from .tanner import count_4cycles, from_classical, from_css, girth, to_dot


class ValidationError(Exception):
    pass


def _apply_threads():
    threads = os.environ.get("WTRED_THREADS")
    if threads:
        import numba

        numba.set_num_threads(max(1, int(threads)))


def _config_hash(cfg: dict) -> str:
    canon = json.dumps(cfg, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


def _report(path: str | None, cfg: dict, payload: dict) -> None:
    body = {
        "tool": "wtred",
        "version": __version__,
        "config_hash": _config_hash(cfg),
        "seed": cfg.get("seed", 0),
        **payload,
    }
    text = json.dumps(body, sort_keys=True, indent=2) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _load_matrix(spec: str) -> BinaryMatrix:
    if spec.startswith("fixture:"):
        obj = fixtures.lookup(spec.split(":", 1)[1])
        if not isinstance(obj, BinaryMatrix):
            raise ValidationError(f"{spec} is not a plain matrix fixture")
        return obj
    text = Path(spec).read_text()
    if spec.endswith(".alist"):
        return read_alist(text)
    return read_text(text)


def _load_base(spec: str) -> BaseMatrix:
    if spec.startswith("fixture:"):
        obj = fixtures.lookup(spec.split(":", 1)[1])
        if not isinstance(obj, BaseMatrix):
            raise ValidationError(f"{spec} is not a base-matrix fixture")
        return obj
    return read_base_text(Path(spec).read_text())


def _load_css(spec: str) -> CssCode:
    if spec.startswith("fixture:"):
        obj = fixtures.lookup(spec.split(":", 1)[1])
        if isinstance(obj, tuple):
            return CssCode(*obj)
        raise ValidationError(f"{spec} is not a CSS fixture")
    return read_css(Path(spec).read_text())


def _enc(v):
    return "inf" if v == INFINITE_DISTANCE else v


def _params_payload(code: CssCode, p=None) -> dict:
    payload = {
        "n": code.n,
        "k": code.k,
        "weights": {"w_x": code.w_x, "q_x": code.q_x, "w_z": code.w_z, "q_z": code.q_z},
    }
    if p is not None:
        payload["distance"] = p.as_dict()
    return payload


# -- subcommands -------------------------------------------------------------


def cmd_build(cfg: dict) -> dict:
    construction = cfg.get("construction", "none")
    if construction == "hgp":
        h1 = _load_matrix(cfg["input"])
        if h1.is_zero() and h1.rows * h1.cols == 0:
            raise ValidationError("empty input matrix")
        h2 = _load_matrix(cfg["h2"]) if cfg.get("h2") else h1
        code = hgp(h1, h2)
        p = hgp_params(h1, h2, budget=cfg.get("budget", 10))
    elif construction == "lp":
        a1 = _load_base(cfg["input"])
        if cfg.get("h2"):
            code = lifted_product(a1, _load_base(cfg["h2"]))
        else:
            code = lp_square(a1)
        p = css_distance(code, trials=cfg.get("trials", 0), seed=cfg.get("seed", 0),
                         exact_limit_log2=cfg.get("exact_limit_log2", 20))
    elif construction == "none":
        code = _load_css(cfg["input"])
        p = css_distance(code, trials=cfg.get("trials", 0), seed=cfg.get("seed", 0),
                         exact_limit_log2=cfg.get("exact_limit_log2", 20))
    else:
        raise ValidationError(f"unknown construction {construction!r}")
    if cfg.get("out_css"):
        Path(cfg["out_css"]).write_text(write_css(code))
    return _params_payload(code, p)


def _classical_reduce(cfg: dict) -> dict:
    try:
        h = _load_matrix(cfg["input"])
    except (ValidationError, ValueError) as matrix_err:
        try:
            return _base_reduce(cfg)
        except (ValidationError, ValueError):
            raise matrix_err from None
    opts = ReductionOptions(
        compressed=cfg.get("compressed", False),
        row_threshold=cfg.get("row_threshold", 3),
        col_threshold=cfg.get("col_threshold", 3),
    )
    budget = cfg.get("budget", 12)
    base = reduce_full(h, opts)
    if base == h:
        note = "input already satisfies the thresholds; reduction is a no-op"
    else:
        note = None

    def dist(m):
        c = LinearCode(m)
        if c.k == 0:
            return None
        try:
            return min_distance_exact(c, budget=budget)
        except ValueError:
            return min_distance_upper(c, trials=200, seed=cfg.get("seed", 0))

    d0 = dist(base)
    best = {"d": d0, "seed": None, "matrix": base}
    trials = cfg.get("permute_trials", 0)
    seed = cfg.get("seed", 0)
    for t in range(trials):
        red = reduce_full(h, ReductionOptions(
            compressed=opts.compressed, permute=True, seed=seed + t,
            row_threshold=opts.row_threshold, col_threshold=opts.col_threshold))
        d = dist(red)
        if d is not None and (best["d"] is None or d > best["d"]):
            best = {"d": d, "seed": seed + t, "matrix": red}
    red = best["matrix"]
    if cfg.get("out_matrix"):
        Path(cfg["out_matrix"]).write_text(write_text(red))
    payload = {
        "mode": "classical",
        "input": {"rows": h.rows, "cols": h.cols, "k": LinearCode(h).k,
                  "max_row_weight": h.max_row_weight(), "max_col_weight": h.max_col_weight()},
        "reduced": {"rows": red.rows, "cols": red.cols, "k": LinearCode(red).k,
                    "max_row_weight": red.max_row_weight(), "max_col_weight": red.max_col_weight()},
        "k_preserved": LinearCode(red).k == LinearCode(h).k,
        "distance": {"unpermuted": _enc(d0), "best": _enc(best["d"]),
                     "best_seed": best["seed"], "permute_trials": trials},
        "residual_violations": weight_violations(red, opts),
    }
    if note:
        payload["note"] = note
    if cfg.get("construction") == "hgp":
        p = hgp_params(red, red, budget=budget)
        payload["hgp"] = p.as_dict()
    return payload


def _base_reduce(cfg: dict) -> dict:
    a = _load_base(cfg["input"])
    opts = ReductionOptions(
        compressed=cfg.get("compressed", False),
        row_threshold=cfg.get("row_threshold", 3),
        col_threshold=cfg.get("col_threshold", 3),
    )
    seed = cfg.get("seed", 0)
    trials = cfg.get("permute_trials", 0)

    def qc_dist(m):
        c = LinearCode(lift_matrix(m))
        if c.k == 0:
            return None
        return min_distance_upper(c, trials=cfg.get("trials", 500), seed=seed)

    base = reduce_base_full(a, opts)
    best = {"d": qc_dist(base.matrix), "seed": None, "red": base}
    for t in range(trials):
        red = reduce_base_full(a, ReductionOptions(
            compressed=opts.compressed, permute=True, seed=seed + t,
            row_threshold=opts.row_threshold, col_threshold=opts.col_threshold))
        d = qc_dist(red.matrix)
        if d is not None and (best["d"] is None or d > best["d"]):
            best = {"d": d, "seed": seed + t, "red": red}
    red = best["red"]
    lifted = lift_matrix(red.matrix)
    return {
        "mode": "classical-base",
        "input": {"rows": a.rows, "cols": a.cols, "ell": a.ell,
                  "lifted_n": a.cols * a.ell, "lifted_k": LinearCode(lift_matrix(a)).k},
        "reduced": {"rows": red.matrix.rows, "cols": red.matrix.cols,
                    "lifted_n": lifted.cols, "lifted_k": LinearCode(lifted).k,
                    "max_row_weight": lifted.max_row_weight(),
                    "max_col_weight": lifted.max_col_weight()},
        "k_preserved": LinearCode(lifted).k == LinearCode(lift_matrix(a)).k,
        "distance_upper": {"best": _enc(best["d"]), "best_seed": best["seed"],
                           "permute_trials": trials},
        "diagnostics": red.diagnostics,
    }


def _quantum_reduce(cfg: dict) -> dict:
    code = _load_css(cfg["input"])
    variant = CopyVariant(cfg.get("variant", "original"),
                          cfg.get("targ") if cfg.get("variant") == "targeted" else None)
    heights = cfg.get("heights")
    target_qz = None
    if isinstance(heights, str) and heights.startswith("greedy"):
        if ":" in heights:
            target_qz = int(heights.split(":", 1)[1])
        heights = None
    elif isinstance(heights, str) and heights:
        heights = [int(t) for t in heights.split(",")]
    elif not heights:
        heights = None
    spec = HeightsSpec(cfg.get("ell", 1), heights, target_qz)
    cone = ConingOptions(
        cycle_basis_seed=cfg.get("seed", 0),
        num_basis_trials=cfg.get("cone_trials", 1),
        cellulate_above=cfg.get("cellulate_above", 4),
    )
    if cfg.get("second_ell"):
        cone.second_thickening = HeightsSpec(cfg["second_ell"])
    res = full_pipeline(code, variant, spec, cone)
    out = res.code
    if cfg.get("out_css"):
        Path(cfg["out_css"]).write_text(write_css(out))
    p = css_distance(out, budget=2, trials=cfg.get("trials", 500), seed=cfg.get("seed", 0),
                     exact_limit_log2=cfg.get("exact_limit_log2", 20))
    return {
        "mode": "quantum",
        "stages": res.stages,
        "heights": res.heights,
        "coned_rows": res.coned_rows,
        "k_preserved": out.k == code.k,
        "output": _params_payload(out, p),
    }


def cmd_reduce(cfg: dict) -> dict:
    mode = cfg.get("mode", "classical")
    if mode == "classical":
        return _classical_reduce(cfg)
    if mode == "quantum":
        return _quantum_reduce(cfg)
    raise ValidationError(f"unknown reduce mode {mode!r}")


def cmd_params(cfg: dict) -> dict:
    code = _load_css(cfg["input"])
    return _params_payload(code)


def cmd_distance(cfg: dict) -> dict:
    code = _load_css(cfg["input"])
    p = css_distance(
        code,
        budget=cfg.get("budget", 2),
        trials=cfg.get("trials", 1000),
        seed=cfg.get("seed", 0),
        exact_limit_log2=cfg.get("exact_limit_log2", 24),
    )
    return _params_payload(code, p)


def cmd_cycles(cfg: dict) -> dict:
    spec = cfg["input"]
    try:
        code = _load_css(spec)
        g = from_css(code)
    except (ValidationError, ValueError):
        g = from_classical(_load_matrix(spec))
    counts = count_4cycles(g)
    gv = girth(g)
    return {
        "four_cycles": {"x_only": counts.x_only, "z_only": counts.z_only,
                        "cross": counts.cross, "untyped": counts.untyped},
        "girth": "inf" if gv == math.inf else gv,
    }


def cmd_export_dot(cfg: dict) -> dict:
    spec = cfg["input"]
    try:
        g = from_css(_load_css(spec))
    except (ValidationError, ValueError):
        g = from_classical(_load_matrix(spec))
    dot = to_dot(g)
    if cfg.get("out"):
        Path(cfg["out"]).write_text(dot)
    return {"nodes": g.n_checks + g.n_vars, "edges": len(g.edges),
            "written": cfg.get("out") or "-", "dot": None if cfg.get("out") else dot}


def cmd_tables(cfg: dict) -> dict:
    which = cfg.get("table")
    if which not in tables.TABLES:
        raise ValidationError(
            f"unknown table {which!r}; available: {sorted(tables.TABLES)} "
            "(simulation tables are out of scope)"
        )
    rows = tables.TABLES[which](cfg.get("scale", "desk"), seed=cfg.get("seed", 0))
    csv_text = tables.render_csv(rows)
    if cfg.get("out"):
        Path(cfg["out"]).write_text(csv_text)
    return {"table": which, "rows": len(rows), "csv": None if cfg.get("out") else csv_text}


COMMANDS = {
    "build": cmd_build,
    "reduce": cmd_reduce,
    "params": cmd_params,
    "distance": cmd_distance,
    "cycles": cmd_cycles,
    "export-dot": cmd_export_dot,
    "tables": cmd_tables,
}


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wtred", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON config file; flags override its entries")
        p.add_argument("--seed", type=int)
        p.add_argument("--report", help="write the JSON report here instead of stdout")

    p = sub.add_parser("build", help="construct a code from a matrix/base/fixture")
    common(p)
    p.add_argument("--input")
    p.add_argument("--h2")
    p.add_argument("--construction", choices=["hgp", "lp", "none"])
    p.add_argument("--budget", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--out-css", dest="out_css")

    p = sub.add_parser("reduce", help="classical or quantum weight reduction")
    common(p)
    p.add_argument("--mode", choices=["classical", "quantum"])
    p.add_argument("--input")
    p.add_argument("--compressed", action="store_true", default=None)
    p.add_argument("--permute-trials", dest="permute_trials", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--construction", choices=["hgp"])
    p.add_argument("--out-matrix", dest="out_matrix")
    p.add_argument("--variant", choices=["original", "reduced", "targeted"])
    p.add_argument("--targ", type=int)
    p.add_argument("--ell", type=int)
    p.add_argument("--heights")
    p.add_argument("--cone-trials", dest="cone_trials", type=int)
    p.add_argument("--second-ell", dest="second_ell", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--out-css", dest="out_css")

    for name in ("params", "distance", "cycles"):
        p = sub.add_parser(name)
        common(p)
        p.add_argument("--input")
        if name == "distance":
            p.add_argument("--budget", type=int)
            p.add_argument("--trials", type=int)
            p.add_argument("--exact-limit-log2", dest="exact_limit_log2", type=int)

    p = sub.add_parser("export-dot")
    common(p)
    p.add_argument("--input")
    p.add_argument("--out")

    p = sub.add_parser("tables", help="regenerate a benchmark table as CSV")
    common(p)
    p.add_argument("--table")
    p.add_argument("--scale", choices=["desk", "full"])
    p.add_argument("--out")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    cfg: dict = {}
    if args.config:
        try:
            cfg.update(json.loads(Path(args.config).read_text()))
        except (OSError, json.JSONDecodeError) as e:
            print(f"error: bad config file: {e}", file=sys.stderr)
            return 1
    for key, val in vars(args).items():
        if key in ("command", "config", "report") or val is None:
            continue
        cfg[key] = val
    cfg.setdefault("seed", 0)
    try:
        _apply_threads()
        payload = COMMANDS[args.command](cfg)
    except (ValidationError, UnreasonableCodeError, FileNotFoundError, KeyError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except Exception as e:  # internal
        print(f"internal error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    _report(args.report, cfg, payload)
    return 0


if __name__ == "__main__":
    sys.exit(main())
