"""Difference operators, Rayleigh quotients and the bottom of the spectrum.

Edge functions live on ordered block pairs ``i < j`` (the region
``block_i x block_j`` above the diagonal); diagonal blocks carry zero.  The
edge inner product integrates over the half square ``{y > x}`` only, so for
a step function ``f`` the Dirichlet form ``||df||_e^2`` equals
``sum_{i<j} (f_j - f_i)^2 w_ij`` with ``w_ij = M_ij l_i l_j``: exactly the
quadratic form of the normalized Laplacian of the induced weighted graph.

Functions with zero mean inside every block are killed by ``T_W`` and have
Rayleigh quotient exactly 1 under this convention, which is why
:func:`lambda_graphon` caps the block eigenvalue at 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from .graphon import StepGraphon, WeightedGraph, induced_weights, is_connected
from .intervals import InputError, Number, StepFunction, common_refinement

CONVENTION_NOTE = (
    "edge inner product over the half square {y > x}: lambda_W = min(lambda_G, 1); "
    "integrating over the full square instead would give lambda_W = lambda_G"
)
TOL = 1e-9


class DegenerateDegreeError(ValueError):
    """An operator needed ``1/d_W`` on a block where the degree vanishes."""


@dataclass(frozen=True)
class EdgeStepFunction:
    """Values ``phi[(i, j)]`` on the oriented block pairs ``i < j``."""

    cuts: Tuple[Number, ...]
    phi: np.ndarray

    def __post_init__(self):
        phi = np.array(self.phi, dtype=object if _exactish(self.phi) else float)
        n = len(self.cuts) - 1
        if phi.shape != (n, n):
            raise InputError(f"edge function must be {n}x{n}")
        for i in range(n):
            for j in range(i + 1):
                phi[i, j] = Fraction(0) if phi.dtype == object else 0.0
        phi.setflags(write=False)
        object.__setattr__(self, "phi", phi)

    @property
    def n(self) -> int:
        return len(self.cuts) - 1


def _exactish(a) -> bool:
    arr = np.asarray(a, dtype=object)
    return all(isinstance(v, (Fraction, int)) and not isinstance(v, bool) for v in arr.flat)


def _align(W: StepGraphon, *fs: StepFunction):
    """Put ``W`` and the functions on their common refinement."""
    cuts = common_refinement(W.cuts, *(f.cuts for f in fs))
    if tuple(cuts) != tuple(W.cuts):
        W = W.refine(cuts)
    return (W,) + tuple(f if tuple(f.cuts) == tuple(cuts) else f.refine(cuts) for f in fs)


def _degrees(W: StepGraphon):
    ell = W.lengths
    return [sum((W.values[i, j] * ell[j] for j in range(W.n)), Fraction(0) if W.exact else 0.0)
            for i in range(W.n)]


def apply_T(W: StepGraphon, f: StepFunction) -> StepFunction:
    """``(T f)_i = sum_j M_ij l_j f_j``."""
    W, f = _align(W, f)
    ell = W.lengths
    out = tuple(sum((W.values[i, j] * ell[j] * f.values[j] for j in range(W.n)), Fraction(0))
                for i in range(W.n))
    return StepFunction(W.cuts, out)


def apply_laplacian(W: StepGraphon, f: StepFunction) -> StepFunction:
    """``Delta f = f - T f / d_W``."""
    W, f = _align(W, f)
    d = _degrees(W)
    for i, di in enumerate(d):
        if di == 0:
            raise DegenerateDegreeError(f"degenerate degree: d_W = 0 on block {i + 1}")
    Tf = apply_T(W, f)
    return StepFunction(W.cuts, tuple(fi - ti / di for fi, ti, di in zip(f.values, Tf.values, d)))


def apply_d(W: StepGraphon, f: StepFunction) -> EdgeStepFunction:
    """``(df)(x, y) = f(y) - f(x)`` on the oriented block pairs."""
    W, f = _align(W, f)
    n = W.n
    phi = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            phi[i, j] = f.values[j] - f.values[i] if j > i else 0 * f.values[0]
    return EdgeStepFunction(W.cuts, phi)


def apply_dstar(W: StepGraphon, phi: EdgeStepFunction) -> StepFunction:
    """Adjoint of :func:`apply_d`; zero on blocks of zero degree."""
    if tuple(phi.cuts) != tuple(W.cuts):
        raise InputError("edge function and graphon use different partitions")
    ell = W.lengths
    d = _degrees(W)
    M = W.values
    out = []
    for i in range(W.n):
        if d[i] == 0:
            out.append(0 * d[i])
            continue
        s = sum((phi.phi[j, i] * M[i, j] * ell[j] for j in range(i)), 0 * d[i])
        s -= sum((phi.phi[i, j] * M[i, j] * ell[j] for j in range(i + 1, W.n)), 0 * d[i])
        out.append(s / d[i])
    return StepFunction(W.cuts, tuple(out))


def inner_v(W: StepGraphon, f: StepFunction, g: StepFunction):
    """``<f, g>_v = sum_i f_i g_i d_i l_i``."""
    W, f, g = _align(W, f, g)
    ell = W.lengths
    d = _degrees(W)
    return sum((f.values[i] * g.values[i] * d[i] * ell[i] for i in range(W.n)), 0 * d[0])


def inner_e(W: StepGraphon, phi: EdgeStepFunction, psi: EdgeStepFunction):
    """``<phi, psi>_e = sum_{i<j} phi_ij psi_ij M_ij l_i l_j``."""
    ell = W.lengths
    zero = 0 * ell[0]
    return sum((phi.phi[i, j] * psi.phi[i, j] * W.values[i, j] * ell[i] * ell[j]
                for i in range(W.n) for j in range(i + 1, W.n)), zero)


def inner_products(W: StepGraphon, f: StepFunction, g: StepFunction,
                   phi: EdgeStepFunction, psi: EdgeStepFunction):
    return inner_v(W, f, g), inner_e(W, phi, psi)


def project_mean_zero(W: StepGraphon, f: StepFunction) -> StepFunction:
    """``P f = f - <f, 1>_v / vol(I)``."""
    W, f = _align(W, f)
    one = StepFunction(W.cuts, tuple(1 for _ in range(W.n)))
    total = inner_v(W, one, one)
    if total == 0:
        raise InputError("graphon has zero total volume")
    c = inner_v(W, f, one) / total
    return StepFunction(W.cuts, tuple(v - c for v in f.values))


def rayleigh(W: StepGraphon, f: StepFunction):
    """``||d Pf||_e^2 / ||Pf||_v^2``."""
    W, f = _align(W, f)
    p = project_mean_zero(W, f)
    den = inner_v(W, p, p)
    if den == 0:
        raise InputError("constant input: the projected function vanishes")
    dp = apply_d(W, p)
    return inner_e(W, dp, dp) / den


def _normalized_laplacian(w: np.ndarray) -> np.ndarray:
    vols = w.sum(axis=1)
    s = 1.0 / np.sqrt(vols)
    return np.eye(len(vols)) - s[:, None] * w * s[None, :]


def laplacian_spectrum(G: WeightedGraph) -> np.ndarray:
    w = G.float_w()
    if np.any(w.sum(axis=1) <= 0):
        raise InputError("graph has a vertex of zero volume")
    return np.linalg.eigvalsh(_normalized_laplacian(w))


def lambda_graph(G: WeightedGraph) -> float:
    """Smallest nonzero eigenvalue of ``I - D^-1/2 w D^-1/2`` (connected ``G``)."""
    if G.n < 2:
        raise InputError("lambda_graph needs at least two vertices")
    if not G.is_connected():
        ev = laplacian_spectrum(G) if np.all(G.float_w().sum(axis=1) > 0) else None
        mult = int(np.sum(np.abs(ev) < 1e-9)) if ev is not None else None
        raise InputError(f"graph is disconnected (zero-eigenvalue multiplicity {mult})")
    return float(laplacian_spectrum(G)[1])


def lambda_graphon(W: StepGraphon) -> float:
    """Bottom of the spectrum: ``min(lambda_2(induced graph), 1)``."""
    if not is_connected(W):
        raise InputError("graphon is disconnected")
    if W.n == 1:
        return 1.0
    lam = lambda_graph(WeightedGraph(induced_weights(W)))
    return min(lam, 1.0)


def block_eigenfunction(W: StepGraphon) -> Optional[StepFunction]:
    """Block-constant eigenfunction of the second eigenvalue (``None`` for one block)."""
    if W.n == 1:
        return None
    w = np.array(induced_weights(W), dtype=float)
    vols = w.sum(axis=1)
    _, vecs = np.linalg.eigh(_normalized_laplacian(w))
    g = vecs[:, 1] / np.sqrt(vols)
    return StepFunction(W.cuts, tuple(float(v) for v in g))


@dataclass
class SpectralReport:
    lam: float
    h: float
    g: float
    h_certified: bool
    g_certified: bool
    buser_ok: bool
    cheeger_ok: bool
    buser_sym_ok: bool
    slack: dict = field(default_factory=dict)
    convention_note: str = CONVENTION_NOTE

    @property
    def ok(self) -> bool:
        return self.buser_ok and self.cheeger_ok and self.buser_sym_ok

    def to_json(self) -> dict:
        return {
            "lambda": self.lam,
            "h": self.h,
            "g": self.g,
            "certified": self.h_certified and self.g_certified,
            "method": "eigh+dinkelbach",
            "buser_ok": self.buser_ok,
            "cheeger_ok": self.cheeger_ok,
            "buser_sym_ok": self.buser_sym_ok,
            "slack": self.slack,
            "convention_note": self.convention_note,
        }


def sandwich_flags(lam: float, h_upper: float, h_lower: float, g_upper: float, tol: float = TOL) -> dict:
    """Check ``h^2/8 <= lambda <= 2h`` and ``lambda <= g``.

    ``h^2/8 <= lambda`` is checked with an upper bound on ``h`` (conservative);
    ``lambda <= 2h`` needs a lower bound.  ``lambda <= g`` uses the reported
    ``g``, which must be certified for the check to be meaningful.
    """
    return {
        "cheeger_ok": h_upper * h_upper / 8 <= lam + tol,
        "buser_ok": lam <= 2 * h_lower + tol,
        "buser_sym_ok": lam <= g_upper + tol,
        "slack": {
            "lambda_minus_h2_over_8": lam - h_upper * h_upper / 8,
            "two_h_minus_lambda": 2 * h_lower - lam,
            "g_minus_lambda": g_upper - lam,
        },
    }


def verify_sandwich(W: StepGraphon, *, seed: int = 0, starts: int = 64) -> SpectralReport:
    from .cheeger import graphon_cheeger, grid_oracle, induced_graph, symmetric_cheeger

    lam = lambda_graphon(W)
    hr = graphon_cheeger(W, seed=seed, starts=starts)
    gr = symmetric_cheeger(W, seed=seed, starts=starts)
    h_lower = hr.value
    if not hr.certified:
        # without a certificate only the grid bracket is available, and only for tiny n
        G = induced_graph(W)
        h_lower = grid_oracle(G, 50)[0] - 1e-3 if G.n <= 4 else 0.0
    flags = sandwich_flags(lam, hr.value, h_lower, gr.value)
    return SpectralReport(lam, hr.value, gr.value, hr.certified, gr.certified,
                          flags["buser_ok"], flags["cheeger_ok"], flags["buser_sym_ok"], flags["slack"])
