"""Cheeger-type constants of weighted graphs and step graphons.

For a step graphon, ``e_W`` and ``vol_W`` depend on a set ``A`` only through
the fractions ``x_i = |A ∩ block_i| / l_i``.  The graphon Cheeger constant is
therefore the fractional Cheeger constant of the weighted graph
``w_ij = M_ij l_i l_j`` and every optimization here runs over ``[0,1]^n``.

Writing ``q(x) = x'wx`` and ``D(x) = vol . x`` (so the cut mass is
``D - q``), on the branch ``D <= vol(G)/2`` the Cheeger ratio equals
``1 - q/D``.  Both the Cheeger and the symmetric Cheeger problems are solved
by Dinkelbach iterations whose parametric subproblem is a box-constrained
quadratic program; up to :data:`EXACT_FRACTIONAL_LIMIT` variables that
subproblem is solved globally, beyond it by multi-start projected gradient.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from . import _boxqp
from .graphon import (
    StepGraphon,
    WeightedGraph,
    components,
    ew,
    induced_weights,
    is_connected,
    vol,
)
from .intervals import InputError, IntervalSet, Number, doubling_preimage, normalize

EXACT_INTEGRAL_LIMIT = 24
EXACT_FRACTIONAL_LIMIT = 10
GRID_ORACLE_LIMIT = 4
DEFAULT_STARTS = 64


class DegenerateCutError(ValueError):
    """A ratio was requested for a cut with a zero-volume side."""


@dataclass(frozen=True)
class FractionalPartition:
    """``rho`` in ``[0,1]^n``; the other side is ``eta = 1 - rho``."""

    rho: Tuple[Number, ...]

    def __post_init__(self):
        rho = tuple(self.rho)
        if any(not (0 <= r <= 1) for r in rho):
            raise InputError("fractional partition entries must lie in [0, 1]")
        object.__setattr__(self, "rho", rho)

    @property
    def eta(self) -> Tuple[Number, ...]:
        return tuple(1 - r for r in self.rho)

    def norms(self, G: WeightedGraph):
        vols = G.vols
        rho_norm = sum(r * v for r, v in zip(self.rho, vols))
        eta_norm = sum((1 - r) * v for r, v in zip(self.rho, vols))
        return rho_norm, eta_norm

    def to_json(self) -> list:
        return [float(r) for r in self.rho]


@dataclass
class CheegerReport:
    value: float
    witness: Union[FractionalPartition, IntervalSet, None]
    method: str
    certified: bool
    kind: str = "fractional"
    interval_witness: Optional[IntervalSet] = None
    disconnected: bool = False
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "value": float(self.value),
            "kind": self.kind,
            "method": self.method,
            "certified": self.certified,
            "witness": self.witness.to_json() if self.witness is not None else None,
        }
        if self.interval_witness is not None:
            out["witness_set"] = self.interval_witness.to_text()
        if self.disconnected:
            out["disconnected"] = True
        if not self.certified:
            out["note"] = "upper bound on the true constant"
        out.update(self.details)
        return out


# --- ratio evaluators ---------------------------------------------------------


def _as_graph(G: WeightedGraph) -> Tuple[np.ndarray, np.ndarray, float]:
    w = G.float_w()
    v = w.sum(axis=1)
    return w, v, float(v.sum())


def _exact_inputs(G: WeightedGraph, rho) -> bool:
    return G.exact and all(isinstance(r, (Fraction, int)) for r in rho)


def ratio_fractional(G: WeightedGraph, p: Union[FractionalPartition, Sequence[Number]]) -> Number:
    """``sum rho_u eta_v w_uv / min(||rho||, ||eta||)``."""
    if not isinstance(p, FractionalPartition):
        p = FractionalPartition(tuple(p))
    if len(p.rho) != G.n:
        raise InputError(f"partition has {len(p.rho)} entries, graph has {G.n} vertices")
    rho = p.rho
    if _exact_inputs(G, rho):
        rho = [Fraction(r) for r in rho]
        eta = [1 - r for r in rho]
        num = Fraction(0)
        for u in range(G.n):
            if rho[u]:
                num += rho[u] * sum((eta[v] * G.w[u, v] for v in range(G.n) if G.w[u, v]), Fraction(0))
        vols = G.vols
        rn = sum((r * vv for r, vv in zip(rho, vols)), Fraction(0))
        en = sum((e * vv for e, vv in zip(eta, vols)), Fraction(0))
    else:
        w, vols, _ = _as_graph(G)
        r = np.array([float(x) for x in rho])
        e = 1.0 - r
        num = float(r @ w @ e)
        rn, en = float(r @ vols), float(e @ vols)
    if rn == 0 or en == 0:
        side = "rho" if rn == 0 else "eta"
        raise DegenerateCutError(f"degenerate fractional partition: ||{side}|| = 0")
    return num / min(rn, en)


def ratio_symmetric_fractional(G: WeightedGraph, p) -> Number:
    """Cut mass over the product ``||rho|| ||eta||``."""
    if not isinstance(p, FractionalPartition):
        p = FractionalPartition(tuple(p))
    w, vols, _ = _as_graph(G)
    if _exact_inputs(G, p.rho):
        rho = [Fraction(r) for r in p.rho]
        num = sum((rho[u] * (1 - rho[v]) * G.w[u, v] for u in range(G.n) for v in range(G.n)), Fraction(0))
        rn = sum((r * vv for r, vv in zip(rho, G.vols)), Fraction(0))
        en = G.volume - rn
    else:
        r = np.array([float(x) for x in p.rho])
        num = float(r @ w @ (1 - r))
        rn = float(r @ vols)
        en = float((1 - r) @ vols)
    if rn == 0 or en == 0:
        side = "rho" if rn == 0 else "eta"
        raise DegenerateCutError(f"degenerate fractional partition: ||{side}|| = 0")
    return num / (rn * en)


def block_fractions(W: StepGraphon, A: IntervalSet) -> Tuple[Number, ...]:
    ell = W.lengths
    return tuple(m / ell[i] for i, m in enumerate(A.block_masses(W.cuts)))


def ratio_h_graphon(W: StepGraphon, A: IntervalSet) -> Number:
    """``h_W(A) = e_W(A, A^c) / min(vol A, vol A^c)``."""
    Ac = A.complement()
    va, vc = vol(W, A), vol(W, Ac)
    if va == 0 or vc == 0:
        side = "A" if va == 0 else "A^c"
        raise DegenerateCutError(f"degenerate cut: vol({side}) = 0")
    return ew(W, A, Ac) / min(va, vc)


def ratio_g_graphon(W: StepGraphon, A: IntervalSet) -> Number:
    Ac = A.complement()
    va, vc = vol(W, A), vol(W, Ac)
    if va == 0 or vc == 0:
        side = "A" if va == 0 else "A^c"
        raise DegenerateCutError(f"degenerate cut: vol({side}) = 0")
    return ew(W, A, Ac) / (va * vc)


def packed_set(W: StepGraphon, rho: Sequence[Number]) -> IntervalSet:
    """Realize block fractions by left-packed subintervals of each block."""
    raw = []
    for i, r in enumerate(rho):
        lo = W.cuts[i]
        raw.append((lo, lo + r * (W.cuts[i + 1] - lo)))
    return normalize(raw)


# --- integral Cheeger ---------------------------------------------------------


def _disconnected_report(G: WeightedGraph, kind: str) -> CheegerReport:
    comps = components(G.n, lambda i, j: G.w[i, j] > 0)
    side = comps[-1]
    rho = FractionalPartition(tuple(Fraction(1) if i in side else Fraction(0) for i in range(G.n)))
    return CheegerReport(0.0, rho, "exact-enumeration", True, kind=kind, disconnected=True)


def _lex_key(rho) -> tuple:
    return tuple(float(r) for r in rho)


def integral_cheeger(G: WeightedGraph, *, seed: int = 0, starts: int = DEFAULT_STARTS) -> CheegerReport:
    """Minimum cut ratio over proper vertex subsets.

    Exhaustive for ``n <= 24``; otherwise sweep cuts plus single-vertex
    local search (``certified=False``).
    """
    if G.n < 2:
        raise InputError("integral Cheeger constant needs at least two vertices")
    if not G.is_connected():
        return _disconnected_report(G, "integral")
    if G.n > EXACT_INTEGRAL_LIMIT:
        return _integral_heuristic(G, seed, starts)
    w, vols, V = _as_graph(G)
    n = G.n
    # subsets not containing vertex 0: the lexicographically smaller side of each cut
    best_val, best_masks = np.inf, []
    bits = 1 << np.arange(1, n, dtype=np.int64)
    total = 1 << (n - 1)
    chunk = 1 << 15
    for start in range(1, total, chunk):
        ids = np.arange(start, min(start + chunk, total), dtype=np.int64)
        X = np.zeros((len(ids), n))
        X[:, 1:] = (ids[:, None] & (bits[None, :] >> 1)) != 0
        d = X @ vols
        cut = d - np.einsum("ij,ij->i", X @ w, X)
        r = cut / np.minimum(d, V - d)
        k = float(r.min())
        tol = 1e-12 * max(1.0, abs(k))
        if k < best_val - tol:
            best_val = k
            best_masks = ids[r <= k + tol].tolist()
        elif k <= best_val + tol:
            best_masks += ids[r <= best_val + tol].tolist()
    cands = []
    for m in best_masks:
        rho = (Fraction(0),) + tuple(Fraction((m >> (i - 1)) & 1) for i in range(1, n))
        cands.append(rho)
    rho = min(cands, key=_lex_key)
    p = FractionalPartition(rho)
    return CheegerReport(float(ratio_fractional(G, p)), p, "exact-enumeration", True, kind="integral")


def _sweep_candidates(order: np.ndarray, n: int):
    for k in range(1, n):
        x = np.zeros(n)
        x[order[:k]] = 1.0
        yield x


def _integral_ratio(w, vols, V, x) -> float:
    d = float(x @ vols)
    if d <= 0 or d >= V:
        return np.inf
    return float((d - x @ w @ x) / min(d, V - d))


def _local_flip(w, vols, V, x) -> Tuple[np.ndarray, float]:
    cur = _integral_ratio(w, vols, V, x)
    improved = True
    while improved:
        improved = False
        for i in range(len(x)):
            x[i] = 1.0 - x[i]
            r = _integral_ratio(w, vols, V, x)
            if r < cur - 1e-15:
                cur, improved = r, True
            else:
                x[i] = 1.0 - x[i]
    return x, cur


def _integral_heuristic(G: WeightedGraph, seed: int, starts: int) -> CheegerReport:
    w, vols, V = _as_graph(G)
    n = G.n
    dinv = 1.0 / np.sqrt(vols)
    L = np.eye(n) - dinv[:, None] * w * dinv[None, :]
    _, vecs = np.linalg.eigh(L)
    rng = np.random.default_rng(seed)
    seeds = [dinv * vecs[:, k] for k in range(1, min(n, 6))]
    seeds += [rng.standard_normal(n) for _ in range(starts)]
    best_x, best = None, np.inf
    for vec in seeds:
        order = np.argsort(vec, kind="stable")
        sweep_best, sweep_x = np.inf, None
        for x in _sweep_candidates(order, n):
            r = _integral_ratio(w, vols, V, x)
            if r < sweep_best:
                sweep_best, sweep_x = r, x
        x, r = _local_flip(w, vols, V, sweep_x.copy())
        if r < best - 1e-15 or (abs(r - best) <= 1e-15 and _lex_key(_canon(x)) < _lex_key(_canon(best_x))):
            best, best_x = r, x.copy()
    rho = tuple(Fraction(int(v)) for v in _canon(best_x))
    p = FractionalPartition(rho)
    return CheegerReport(float(ratio_fractional(G, p)), p, "sweep-local-search", False, kind="integral")


def _canon(x: np.ndarray) -> np.ndarray:
    return 1.0 - x if x[0] == 1.0 else x


# --- fractional Cheeger -------------------------------------------------------


def _frac_num(w, x) -> float:
    return float(x @ w @ (1.0 - x))


def _h_value(w, vols, V, x) -> float:
    d = float(x @ vols)
    if d <= 0 or d >= V:
        return np.inf
    return _frac_num(w, x) / min(d, V - d)


def _g_value(w, vols, V, x) -> float:
    d = float(x @ vols)
    if d <= 0 or d >= V:
        return np.inf
    return _frac_num(w, x) / (d * (V - d))


def _fold(x: np.ndarray, vols: np.ndarray, V: float) -> np.ndarray:
    """Reflect to the branch ``D(x) <= V/2`` (the ratio is invariant)."""
    return 1.0 - x if x @ vols > V / 2 else x


def _dinkelbach_h_exact(w, vols, V, x0) -> Tuple[np.ndarray, int]:
    """Maximize ``q/D`` on ``{box, D <= V/2}``; the inner QP is solved globally."""
    x = _fold(x0, vols, V)
    theta = float(x @ w @ x) / float(x @ vols)
    H = -2.0 * w
    iters = 0
    for iters in range(1, 100):
        y, val = _boxqp.box_qp_min(H, theta * vols, vols, V / 2)
        gain = -val
        d = float(y @ vols)
        if d <= 0 or gain <= 1e-14 * max(theta * V, 1e-300):
            break
        new_theta = float(y @ w @ y) / d
        if new_theta <= theta:
            break
        theta, x = new_theta, y
    return x, iters


def _dinkelbach_g_exact(w, vols, V, x0) -> Tuple[np.ndarray, int]:
    """Minimize ``cut/(D (V-D))`` over the box; the inner QP is solved globally."""
    x = x0
    theta = _g_value(w, vols, V, x)
    iters = 0
    for iters in range(1, 100):
        H = 2.0 * (theta * np.outer(vols, vols) - w)
        c = (1.0 - theta * V) * vols
        y, val = _boxqp.box_qp_min(H, c)
        if val >= -1e-14 * max(theta * V * V, 1e-300):
            break
        new_theta = _g_value(w, vols, V, y)
        if not new_theta < theta:
            break
        theta, x = new_theta, y
    return x, iters


def _project_slab(z: np.ndarray, vols: np.ndarray, cap: float) -> np.ndarray:
    """Euclidean projection onto ``{0 <= x <= 1, vols . x <= cap}``."""
    x = np.clip(z, 0.0, 1.0)
    if x @ vols <= cap:
        return x
    # phi(mu) = vols . clip(z - mu vols) is piecewise linear and non-increasing
    safe = np.maximum(vols, 1e-300)
    bps = np.concatenate(([0.0], z / safe, (z - 1.0) / safe))
    bps = np.unique(bps[bps >= 0.0])
    phi = (np.clip(z[None, :] - bps[:, None] * vols[None, :], 0.0, 1.0) * vols[None, :]).sum(axis=1)
    k = int(np.argmax(phi <= cap))
    lo, hi = bps[k - 1], bps[k]
    f_lo, f_hi = phi[k - 1], phi[k]
    mu = hi if f_lo == f_hi else lo + (f_lo - cap) * (hi - lo) / (f_lo - f_hi)
    return np.clip(z - mu * vols, 0.0, 1.0)


def _ascent_h(w, vols, V, x, theta, lip, steps=400) -> np.ndarray:
    """Projected gradient ascent on ``q(x) - theta D(x)`` over the slab."""
    for _ in range(steps):
        grad = 2.0 * (w @ x) - theta * vols
        y = _project_slab(x + grad / lip, vols, V / 2)
        if np.abs(y - x).max() <= 1e-13:
            return y
        x = y
    return x


def _pair_polish(w, vols, V, x) -> np.ndarray:
    """Exact line searches along coordinate pairs that keep ``D`` fixed."""
    n = len(x)
    cur = _h_value(w, vols, V, x)
    for _ in range(20):
        improved = False
        for i, j in itertools.combinations(range(n), 2):
            # x_i += t/vol_i, x_j -= t/vol_j
            di, dj = 1.0 / vols[i], 1.0 / vols[j]
            lo = max(-x[i] / di, (x[j] - 1.0) / dj)
            hi = min((1.0 - x[i]) / di, x[j] / dj)
            if hi - lo <= 1e-15:
                continue
            cands = [lo, hi]
            curv = w[i, i] * di * di + w[j, j] * dj * dj - 2.0 * w[i, j] * di * dj
            slope = 2.0 * ((w @ x)[i] * di - (w @ x)[j] * dj)
            if curv < 0:
                cands.append(min(max(-slope / (2.0 * curv), lo), hi))
            for t in cands:
                y = x.copy()
                y[i] += t * di
                y[j] -= t * dj
                y = np.clip(y, 0.0, 1.0)
                r = _h_value(w, vols, V, y)
                if r < cur - 1e-15:
                    cur, x, improved = r, y, True
        if not improved:
            break
    return x


def _fractional_heuristic(w, vols, V, incumbents, seed, starts, polish: int = 3) -> np.ndarray:
    rng = np.random.default_rng(seed)
    n = len(vols)
    lip = 2.0 * max(float(np.abs(np.linalg.eigvalsh(w)).max()), 1e-300)
    pool = [_fold(x, vols, V) for x in incumbents]
    pool.append(np.full(n, 0.5))
    for _ in range(starts):
        pool.append(_project_slab(rng.random(n), vols, V / 2))
    finished = []
    for x in pool:
        for _ in range(30):
            d = float(x @ vols)
            if d <= 0:
                break
            theta = float(x @ w @ x) / d
            y = _ascent_h(w, vols, V, x, theta, lip)
            if float(y @ vols) <= 0 or float(y @ w @ y) / float(y @ vols) <= theta + 1e-15:
                break
            x = y
        finished.append((_h_value(w, vols, V, x), len(finished), x))
    finished.sort(key=lambda t: (t[0], t[1]))
    best, _, best_x = finished[0]
    for _, _, x in finished[:polish]:
        x = _pair_polish(w, vols, V, x)
        r = _h_value(w, vols, V, x)
        if r < best - 1e-15:
            best, best_x = r, x
    return best_x


def grid_oracle(G: WeightedGraph, resolution: int, kind: str = "h") -> Tuple[float, np.ndarray]:
    """Brute-force minimum of the (symmetric) fractional ratio on the grid ``{k/resolution}^n``."""
    if G.n > GRID_ORACLE_LIMIT:
        raise InputError(f"grid oracle is limited to {GRID_ORACLE_LIMIT} vertices")
    w, vols, V = _as_graph(G)
    n = G.n
    g = np.arange(resolution + 1) / resolution
    best, best_x = np.inf, None
    rest = np.array(list(itertools.product(g, repeat=n - 1))) if n > 1 else np.zeros((1, 0))
    for x0 in g:
        X = np.hstack([np.full((rest.shape[0], 1), x0), rest])
        d = X @ vols
        num = np.einsum("ij,jk,ik->i", X, w, 1.0 - X)
        with np.errstate(divide="ignore", invalid="ignore"):
            den = np.minimum(d, V - d) if kind == "h" else d * (V - d)
            r = np.where(den > 1e-300, num / den, np.inf)
        k = int(np.argmin(r))
        if r[k] < best:
            best, best_x = float(r[k]), X[k].copy()
    return best, best_x


def _to_rho(x: np.ndarray) -> Tuple[Number, ...]:
    """Snap near-rational coordinates to Fractions, otherwise keep floats."""
    out = []
    for v in x:
        f = Fraction(float(v)).limit_denominator(1 << 20)
        out.append(f if abs(float(f) - v) <= 1e-15 else float(v))
    return tuple(out)


def _choose(G: WeightedGraph, cands: List[np.ndarray], ratio) -> Tuple[FractionalPartition, Number]:
    """Smallest ratio; near-ties go to the lexicographically smallest rho."""
    scored = []
    for x in cands:
        for y in (x, 1.0 - x):
            p = FractionalPartition(_to_rho(y))
            try:
                scored.append((float(ratio(G, p)), p))
            except DegenerateCutError:
                continue
    best = min(s for s, _ in scored)
    tol = 1e-12 * max(1.0, best)
    ties = [p for s, p in scored if s <= best + tol]
    p = min(ties, key=lambda q: _lex_key(q.rho))
    return p, ratio(G, p)


def fractional_cheeger(G: WeightedGraph, *, seed: int = 0, starts: int = DEFAULT_STARTS,
                       certify: bool = False, grid_resolution: int = 50) -> CheegerReport:
    """Fractional Cheeger constant ``min_rho`` of :func:`ratio_fractional`."""
    if not G.is_connected():
        return _disconnected_report(G, "fractional")
    w, vols, V = _as_graph(G)
    n = G.n
    cands = []
    details = {}
    if n >= 2:
        integral = integral_cheeger(G, seed=seed, starts=starts)
        cands.append(np.array([float(r) for r in integral.witness.rho]))
    if n <= EXACT_FRACTIONAL_LIMIT:
        x0 = cands[0] if cands else np.full(n, 0.5)
        x, iters = _dinkelbach_h_exact(w, vols, V, x0)
        cands += [x, np.full(n, 0.5)]
        method, certified = "dinkelbach", True
        details["inner_solver"] = "exact-face-enumeration"
        details["iterations"] = iters
    else:
        x = _fractional_heuristic(w, vols, V, cands, seed, starts)
        cands += [x, np.full(n, 0.5)]
        method, certified = "dinkelbach", False
        details["inner_solver"] = "projected-gradient"
    p, value = _choose(G, cands, ratio_fractional)
    if certify and n <= GRID_ORACLE_LIMIT:
        gv, _ = grid_oracle(G, grid_resolution, "h")
        details["grid_value"] = gv
        details["grid_resolution"] = grid_resolution
        certified = certified and abs(gv - float(value)) <= 1e-3
    return CheegerReport(float(value), p, method, certified, kind="fractional", details=details)


def symmetric_fractional(G: WeightedGraph, *, seed: int = 0, starts: int = DEFAULT_STARTS,
                         certify: bool = False, grid_resolution: int = 50) -> CheegerReport:
    """Minimum of cut mass over ``||rho|| ||eta||``."""
    if not G.is_connected():
        return _disconnected_report(G, "symmetric")
    w, vols, V = _as_graph(G)
    n = G.n
    cands = [np.full(n, 0.5)]
    if n >= 2:
        cands.append(np.array([float(r) for r in integral_cheeger(G, seed=seed, starts=starts).witness.rho]))
    x0 = min(cands, key=lambda x: _g_value(w, vols, V, x))
    details = {}
    if n <= EXACT_FRACTIONAL_LIMIT:
        x, iters = _dinkelbach_g_exact(w, vols, V, x0)
        certified = True
        details["inner_solver"] = "exact-face-enumeration"
        details["iterations"] = iters
    else:
        x = _symmetric_heuristic(w, vols, V, cands, seed, starts)
        certified = False
        details["inner_solver"] = "projected-gradient"
    cands.append(x)
    p, value = _choose(G, cands, ratio_symmetric_fractional)
    if certify and n <= GRID_ORACLE_LIMIT:
        gv, _ = grid_oracle(G, grid_resolution, "g")
        details["grid_value"] = gv
        details["grid_resolution"] = grid_resolution
        certified = certified and abs(gv - float(value)) <= 1e-3
    return CheegerReport(float(value), p, "dinkelbach", certified, kind="symmetric", details=details)


def _symmetric_heuristic(w, vols, V, incumbents, seed, starts) -> np.ndarray:
    rng = np.random.default_rng(seed)
    n = len(vols)
    pool = list(incumbents) + [rng.random(n) for _ in range(starts)]
    L = 2.0 * (float(np.abs(np.linalg.eigvalsh(w)).max()) + float(vols @ vols) * 4.0 / max(V * V, 1e-300))
    best_x = min(pool, key=lambda x: _g_value(w, vols, V, x))
    best = _g_value(w, vols, V, best_x)
    for x in pool:
        for _ in range(30):
            theta = _g_value(w, vols, V, x)
            if not np.isfinite(theta):
                break
            H = 2.0 * (theta * np.outer(vols, vols) - w)
            c = (1.0 - theta * V) * vols
            y = x
            for _ in range(400):
                z = np.clip(y - (H @ y + c) / (L * max(1.0, theta * V)), 0.0, 1.0)
                if np.abs(z - y).max() <= 1e-13:
                    break
                y = z
            if not _g_value(w, vols, V, y) < theta - 1e-15:
                break
            x = y
        r = _g_value(w, vols, V, x)
        if r < best:
            best, best_x = r, x
    return best_x


# --- graphon wrappers ---------------------------------------------------------


def induced_graph(W: StepGraphon) -> WeightedGraph:
    return WeightedGraph(induced_weights(W))


def _graphon_disconnected(W: StepGraphon, kind: str) -> CheegerReport:
    comps = components(W.n, lambda i, j: W.values[i, j] > 0)
    if W.n == 1:
        comps = [[0], []]
    side = comps[-1] if len(comps) > 1 else comps[0]
    rho = tuple(Fraction(1) if i in side else Fraction(0) for i in range(W.n))
    if W.n == 1:
        # a single zero block: any half of it is a zero-mass cut
        rho = (Fraction(1, 2),)
    return CheegerReport(0.0, FractionalPartition(rho), "exact-enumeration", True, kind=kind,
                         interval_witness=packed_set(W, rho), disconnected=True)


def graphon_cheeger(W: StepGraphon, **kw) -> CheegerReport:
    """``h_W`` of a step graphon via the fractional problem on block fractions."""
    if not is_connected(W):
        return _graphon_disconnected(W, "graphon")
    rep = fractional_cheeger(induced_graph(W), **kw)
    rep.kind = "graphon"
    rep.interval_witness = packed_set(W, rep.witness.rho)
    return rep


def symmetric_cheeger(W: StepGraphon, **kw) -> CheegerReport:
    """``g_W`` of a step graphon (product denominator)."""
    if not is_connected(W):
        return _graphon_disconnected(W, "symmetric")
    rep = symmetric_fractional(induced_graph(W), **kw)
    rep.interval_witness = packed_set(W, rep.witness.rho)
    return rep


# --- comparison bounds --------------------------------------------------------

EPS_GRID = tuple(k / 100 for k in range(1, 100))


def ratio_lower_bound(n: int, gamma: float, eps: float) -> float:
    """Lower bound ``(1 - 2 gamma/(eps^2 n)) (1 - eps)`` on ``h_W / h_G``."""
    if not 0 < eps < 1:
        raise InputError("eps must lie in (0, 1)")
    if gamma < 1:
        raise InputError("gamma must be at least 1")
    return (1.0 - 2.0 * gamma / (eps * eps * n)) * (1.0 - eps)


def azuma_lower_bound(n: int, eps: float) -> float:
    """Regular loopless graphs: ``(1 - 2 exp(-n eps^2/8)) (1 - eps)``."""
    if not 0 < eps < 1:
        raise InputError("eps must lie in (0, 1)")
    return (1.0 - 2.0 * math.exp(-n * eps * eps / 8.0)) * (1.0 - eps)


def best_ratio_lower_bound(n: int, gamma: float, grid: Sequence[float] = EPS_GRID) -> Tuple[float, float]:
    """``(eps, value)`` maximizing :func:`ratio_lower_bound` over ``grid``."""
    return max(((e, ratio_lower_bound(n, gamma, e)) for e in grid), key=lambda t: t[1])


def best_azuma_lower_bound(n: int, grid: Sequence[float] = EPS_GRID) -> Tuple[float, float]:
    return max(((e, azuma_lower_bound(n, e)) for e in grid), key=lambda t: t[1])


# --- doubling-map demonstration -----------------------------------------------


def _is_dyadic(x) -> bool:
    if isinstance(x, float):
        x = Fraction(x)
    d = x.denominator
    return d & (d - 1) == 0


def doubling_demo(W: StepGraphon, A0: Optional[IntervalSet] = None, nmax: int = 8) -> List[Tuple[int, Number]]:
    """``h_W(S^-n(A0))`` for ``n = 0..nmax`` with ``S(x) = 2x mod 1``."""
    if not all(_is_dyadic(c) for c in W.cuts):
        raise InputError("doubling_demo needs dyadic block cuts")
    if A0 is None:
        A0 = IntervalSet.interval(0, Fraction(1, 2))
    out = []
    A = A0
    for n in range(nmax + 1):
        out.append((n, ratio_h_graphon(W, A)))
        A = doubling_preimage(A, 1)
    return out
