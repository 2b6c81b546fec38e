"""``limit-cheeger``: command-line front end.

Every subcommand writes one JSON object (or CSV rows with ``--format csv``)
to standard output.  Exit status: 0 success, 1 a verified inequality or
identity failed, 2 bad input or usage.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from . import cheeger as ch
from . import coarea as co
from . import gallery as gal
from . import graphing as gr
from . import spectral as sp
from .graphon import (
    CapabilityError,
    ResourceError,
    StepGraphon,
    WeightedGraph,
    from_graph,
    is_connected,
    l1_distance,
    load_graph_text,
    load_graphon_json,
)
from .intervals import InputError, StepFunction

SEED_ENV = "LIMIT_CHEEGER_SEED"


class CheckFailed(Exception):
    """Carries a report whose mathematical check failed (exit 1)."""

    def __init__(self, payload):
        super().__init__("check failed")
        self.payload = payload


# --- input helpers ----------------------------------------------------------------


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{SEED_ENV} must be an integer, got {raw!r}")


def _load_source(args):
    """Returns ``("graph", WeightedGraph)`` or ``("graphon", StepGraphon)``."""
    given = [x for x in (args.graph, args.graphon, args.gallery) if x is not None]
    if len(given) != 1:
        raise InputError("give exactly one of --graph, --graphon, --gallery")
    if args.graph is not None:
        return "graph", load_graph_text(args.graph)
    if args.graphon is not None:
        return "graphon", load_graphon_json(args.graphon)
    return "graphon", gal.step_from_name(args.gallery, getattr(args, "level", None))


def _as_graphon(kind, obj) -> StepGraphon:
    return from_graph(obj) if kind == "graph" else obj


def _num(x):
    if isinstance(x, Fraction):
        return float(x)
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    return x


# --- subcommands ------------------------------------------------------------------


def cmd_cheeger(args) -> dict:
    kind, obj = _load_source(args)
    opts = dict(seed=args.seed, starts=args.starts)
    mode = args.mode or ("integral" if kind == "graph" else "fractional")
    if kind == "graph":
        G = obj
        if mode == "integral":
            rep = ch.integral_cheeger(G, **opts)
        elif mode == "fractional":
            rep = ch.fractional_cheeger(G, certify=args.certify, **opts)
        else:
            rep = ch.symmetric_fractional(G, certify=args.certify, **opts)
    else:
        W = obj
        if mode == "integral":
            raise InputError("--integral needs a finite graph (--graph)")
        if mode == "fractional":
            rep = ch.graphon_cheeger(W, certify=args.certify, **opts)
        else:
            rep = ch.symmetric_cheeger(W, certify=args.certify, **opts)
    out = rep.to_json()
    out["input"] = kind
    return out


def cmd_lambda(args) -> dict:
    kind, obj = _load_source(args)
    if kind == "graph":
        return {"lambda": sp.lambda_graph(obj), "method": "eigh", "certified": True, "input": "graph"}
    return {"lambda": sp.lambda_graphon(obj), "method": "eigh", "certified": True, "input": "graphon",
            "convention_note": sp.CONVENTION_NOTE}


def _adjoint_report(W: StepGraphon, trials: int, seed: int) -> dict:
    from .spectral import EdgeStepFunction, apply_d, apply_dstar, inner_e, inner_v

    rng = np.random.default_rng(seed)
    worst_gap, worst_ratio = 0.0, 0.0
    for _ in range(trials):
        f = StepFunction(W.cuts, tuple(float(v) for v in rng.uniform(-1, 1, W.n)))
        phi = EdgeStepFunction(W.cuts, rng.uniform(-1, 1, (W.n, W.n)))
        df = apply_d(W, f)
        lhs = inner_e(W, df, phi)
        rhs = inner_v(W, f, apply_dstar(W, phi))
        fv, pe = float(inner_v(W, f, f)) ** 0.5, float(inner_e(W, phi, phi)) ** 0.5
        worst_gap = max(worst_gap, abs(float(lhs - rhs)) / (1 + fv * pe))
        if fv > 0:
            worst_ratio = max(worst_ratio, float(inner_e(W, df, df)) ** 0.5 / fv)
    return {"max_adjoint_gap": worst_gap, "max_norm_ratio": worst_ratio, "trials": trials,
            "adjoint_ok": worst_gap <= 1e-12, "norm_ok": worst_ratio <= 2 + 1e-12,
            "method": "random-triples", "certified": True}


def cmd_verify(args) -> dict:
    kind, obj = _load_source(args)
    W = _as_graphon(kind, obj)
    if args.which == "sandwich":
        out = sp.verify_sandwich(W, seed=args.seed, starts=args.starts).to_json()
        ok = out["buser_ok"] and out["cheeger_ok"] and out["buser_sym_ok"]
    elif args.which == "adjoint":
        out = _adjoint_report(W, args.trials, args.seed)
        ok = out["adjoint_ok"] and out["norm_ok"]
    else:
        out, ok = _coarea_payload(W, args.function, args.trials, args.seed)
    if not ok:
        raise CheckFailed(out)
    return out


def _coarea_payload(W: StepGraphon, text: Optional[str], trials: int = 0, seed: int = 0):
    if text is None:
        if trials <= 0:
            raise InputError("--function is required for the co-area check")
        # random rational block values: every gap must vanish exactly
        rng = np.random.default_rng(seed)
        worst = Fraction(0)
        for _ in range(trials):
            vals = tuple(Fraction(int(p), int(q)) for p, q in zip(rng.integers(-8, 9, W.n), rng.integers(1, 5, W.n)))
            worst = max(worst, co.coarea_graphon(W, StepFunction(W.cuts, vals)).max_abs_gap)
        return ({"max_abs_gap": float(worst), "trials": trials, "exact": True,
                 "method": "threshold-decomposition", "certified": True}, worst <= 1e-12)
    f = co.parse_function(text, W.cuts)
    rep = co.coarea_graphon(W, f)
    out = rep.to_json()
    out.update(method="threshold-decomposition", certified=True)
    return out, float(rep.max_abs_gap) <= 1e-12


def cmd_coarea(args) -> dict:
    kind, obj = _load_source(args)
    out, ok = _coarea_payload(_as_graphon(kind, obj), args.function)
    if not ok:
        raise CheckFailed(out)
    return out


def _parse_range(text: str) -> List[int]:
    try:
        if ":" in text:
            lo, hi = text.split(":", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(text)]
    except ValueError:
        raise InputError(f"bad range {text!r}; expected N or LO:HI")


def cmd_gallery(args) -> dict:
    if args.sweep is not None:
        if not args.name.lower().startswith("wn"):
            raise InputError("--sweep is only defined for the wn family")
        K2 = gal.k2()
        rows = []
        for n in _parse_range(args.sweep):
            Wn = gal.counterexample_wn(n)
            h = ch.graphon_cheeger(Wn, seed=args.seed, starts=args.starts)
            rows.append({"n": n, "h_A": float(ch.ratio_h_graphon(Wn, gal.wn_central_set(n))),
                         "h": h.value, "certified": h.certified,
                         "l1_to_k2": float(l1_distance(Wn, K2))})
        return {"rows": rows, "method": "dinkelbach", "certified": all(r["certified"] for r in rows),
                "h_k2": ch.graphon_cheeger(K2).value}
    if args.doubling is not None:
        W = gal.step_from_name(args.name, args.level)
        seq = ch.doubling_demo(W, nmax=args.doubling)
        return {"rows": [{"n": n, "ratio": float(r)} for n, r in seq], "method": "exact", "certified": True}
    W = gal.step_from_name(args.name, args.level)
    out = {"name": args.name, "blocks": W.n, "connected": is_connected(W),
           "exact": W.exact, "total_volume": float(W.cell_masses(W.cuts).sum())}
    if args.cheeger:
        rep = ch.graphon_cheeger(W, seed=args.seed, starts=args.starts)
        out.update(h=rep.value, method=rep.method, certified=rep.certified)
    return out


def cmd_graphing(args) -> dict:
    if args.kind == "rotation":
        if args.alpha is None:
            raise InputError("--alpha is required")
        alpha = float(eval_alpha(args.alpha))
        G = gr.rotation_graphing(alpha)
        out = {"alpha": alpha, "rational_warning": G.rational_warning, "method": "exact-intervals",
               "certified": True}
        if args.cut is not None:
            rows = []
            for N in _parse_range(args.cut):
                rc = gr.rotation_cut(alpha, N)
                row = rc.to_json()
                row["N"] = N
                row["bound"] = 2 / (N + 1)
                rows.append(row)
            out["rows"] = rows
            if not all(r["valid"] and r["ratio"] <= r["bound"] for r in rows):
                raise CheckFailed(out)
        if args.lambda_k is not None:
            out["lambda_upper"] = gr.rotation_lambda_upper(alpha, args.lambda_k)
        if args.audit:
            out["symmetry_violation"] = gr.symmetry_audit(G, args.audit, args.seed)
            if out["symmetry_violation"] > 1e-12:
                raise CheckFailed(out)
        return out
    if args.kind == "from-graph":
        if args.path is None:
            raise InputError("a graph file is required")
        G = gr.graphing_from_graph(load_graph_text(args.path))
        out = {"atoms": G.n_atoms, "edges": len(G.atom_edges), "max_degree": G.max_degree()}
        if args.verify == "sandwich":
            rep = gr.sandwich_atomic(G)
            out.update(rep)
            if not (rep["cheeger_ok"] and rep["buser_ok"]):
                raise CheckFailed(out)
        else:
            rep = gr.cheeger_atomic(G, seed=args.seed, starts=args.starts)
            out.update(h=rep.value, method=rep.method, certified=rep.certified)
        return out
    # a graphing JSON file
    if args.path is None:
        raise InputError("a graphing JSON file is required")
    G = gr.graphing_from_json(_read_json(args.path))
    out = {"atomic": G.atomic, "max_degree": G.max_degree(), "method": "exact", "certified": True,
           "symmetry_violation": gr.symmetry_audit(G, args.audit or 50, args.seed)}
    if out["symmetry_violation"] > 1e-12:
        raise CheckFailed(out)
    return out


def eval_alpha(text: str) -> float:
    """Accept a number or one of ``golden``, ``sqrt2-1``."""
    named = {"golden": gr.GOLDEN, "sqrt2-1": 2 ** 0.5 - 1}
    if text in named:
        return named[text]
    try:
        return float(text)
    except ValueError:
        raise InputError(f"bad --alpha {text!r}")


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})")


def compare_graph_graphon(G: WeightedGraph, eps_grid: Sequence[float] = ch.EPS_GRID, *,
                          seed: int = 0, starts: int = ch.DEFAULT_STARTS) -> dict:
    """Integral vs fractional Cheeger constant and the comparison bounds."""
    if not G.is_connected():
        raise InputError("graph is disconnected")
    hG = ch.integral_cheeger(G, seed=seed, starts=starts)
    hW = ch.fractional_cheeger(G, seed=seed, starts=starts)
    gamma = G.gamma
    eps, bound = max(((e, ch.ratio_lower_bound(G.n, gamma, e)) for e in eps_grid), key=lambda t: t[1])
    out = {
        "h_G": hG.value, "h_W": hW.value, "ratio": hW.value / hG.value,
        "gamma": gamma, "best_bound": bound, "best_eps": eps,
        "lambda_G": sp.lambda_graph(G), "lambda_W": sp.lambda_graphon(from_graph(G)),
        "convention_note": sp.CONVENTION_NOTE,
        "method": f"{hG.method}/{hW.method}", "certified": hG.certified and hW.certified,
    }
    regular = len(set(float(v) for v in G.vols)) == 1
    if regular and G.loopless:
        e2, az = max(((e, ch.azuma_lower_bound(G.n, e)) for e in eps_grid), key=lambda t: t[1])
        out.update(azuma_bound=az, azuma_eps=e2)
    return out


def cmd_compare(args) -> dict:
    G = load_graph_text(args.graph)
    grid = ch.EPS_GRID
    if args.eps_grid:
        try:
            grid = tuple(float(x) for x in args.eps_grid.split(","))
        except ValueError:
            raise InputError("bad --eps-grid")
    out = compare_graph_graphon(G, grid, seed=args.seed, starts=args.starts)
    if out["ratio"] < out["best_bound"] - 1e-9 or out["ratio"] < out.get("azuma_bound", -1) - 1e-9:
        raise CheckFailed(out)
    return out


# --- output -----------------------------------------------------------------------


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return _num(obj)


def render(payload: dict, fmt: str, instance: str) -> str:
    payload = _clean(payload)
    if fmt == "json":
        return json.dumps(payload, sort_keys=True) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["instance", "quantity", "value"])
    rows = payload.pop("rows", None)
    for key in sorted(payload):
        w.writerow([instance, key, json.dumps(payload[key], sort_keys=True) if isinstance(payload[key], (dict, list)) else payload[key]])
    for k, row in enumerate(rows or []):
        label = f"{instance}[{row.get('n', row.get('N', k))}]"
        for key in sorted(row):
            w.writerow([label, key, row[key]])
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="limit-cheeger", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp_, source=True):
        if source:
            sp_.add_argument("--graph", help="weighted graph text file")
            sp_.add_argument("--graphon", help="step graphon JSON file")
            sp_.add_argument("--gallery", help="gallery name, e.g. k2, wn:8, vanishing:6")
            sp_.add_argument("--level", type=int, help="dyadic level for analytic gallery graphons")
        sp_.add_argument("--seed", type=int, default=None)
        sp_.add_argument("--starts", type=int, default=ch.DEFAULT_STARTS)
        sp_.add_argument("--format", choices=("json", "csv"), default="json")

    c = sub.add_parser("cheeger", help="Cheeger constants")
    common(c)
    m = c.add_mutually_exclusive_group()
    m.add_argument("--fractional", dest="mode", action="store_const", const="fractional")
    m.add_argument("--integral", dest="mode", action="store_const", const="integral")
    m.add_argument("--symmetric", dest="mode", action="store_const", const="symmetric")
    c.add_argument("--certify", action="store_true", help="cross-check with the grid oracle (n <= 4)")
    c.set_defaults(func=cmd_cheeger)

    lam = sub.add_parser("lambda", help="bottom of the spectrum")
    common(lam)
    lam.set_defaults(func=cmd_lambda)

    v = sub.add_parser("verify", help="check an inequality or identity")
    common(v)
    v.add_argument("--which", choices=("sandwich", "adjoint", "coarea"), required=True)
    v.add_argument("--function", help="block values v1,v2,... for the co-area check")
    v.add_argument("--trials", type=int, default=100)
    v.set_defaults(func=cmd_verify)

    ca = sub.add_parser("coarea", help="co-area identity for a step function")
    common(ca)
    ca.add_argument("--function", required=True)
    ca.set_defaults(func=cmd_coarea)

    g = sub.add_parser("gallery", help="example graphons")
    g.add_argument("name")
    common(g, source=False)
    g.add_argument("--level", type=int)
    g.add_argument("--cheeger", action="store_true")
    g.add_argument("--doubling", type=int, metavar="NMAX")
    g.add_argument("--sweep", metavar="LO:HI", help="wn family: n range")
    g.set_defaults(func=cmd_gallery)

    gg = sub.add_parser("graphing", help="graphings")
    gg.add_argument("kind", choices=("rotation", "from-graph", "file"))
    gg.add_argument("path", nargs="?")
    common(gg, source=False)
    gg.add_argument("--alpha")
    gg.add_argument("--cut", metavar="N|LO:HI")
    gg.add_argument("--lambda-k", type=int, dest="lambda_k")
    gg.add_argument("--audit", type=int, default=0, metavar="TRIALS")
    gg.add_argument("--verify", choices=("sandwich",))
    gg.set_defaults(func=cmd_graphing)

    cp = sub.add_parser("compare", help="graph vs its step graphon")
    cp.add_argument("--graph", required=True)
    common(cp, source=False)
    cp.add_argument("--eps-grid", dest="eps_grid")
    cp.set_defaults(func=cmd_compare)
    return p


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    instance = args.command
    try:
        if args.seed is None:
            args.seed = _default_seed()
        payload = args.func(args)
        code = 0
    except CheckFailed as exc:
        payload, code = exc.payload, 1
        print("check failed", file=stderr)
    except (InputError, OSError, CapabilityError, ResourceError, ch.DegenerateCutError,
            sp.DegenerateDegreeError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    stdout.write(render(payload, args.format, instance))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
