"""Global minimization of a small quadratic over the unit box.

Minimizes ``0.5 x'Hx + c'x`` over ``[0,1]^n``, optionally with one extra
constraint ``a'x <= b``.  A global minimizer lies in the relative interior
of some face of the feasible polytope and is a local minimizer of the
quadratic restricted to that face, so it suffices to visit every face
(coordinates fixed at 0 or 1, the rest free, the extra constraint active or
not) whose restricted Hessian is positive definite and solve the
stationarity system there.  Faces with a singular or indefinite restricted
Hessian are skipped: any minimizer in their interior is matched by one on a
smaller face.  Work is ``O(3^n)`` candidates, batched per free set.
"""
from __future__ import annotations

from typing import Optional, Tuple

import numpy as np

MAX_EXACT_DIM = 12


def _free_sets(n: int):
    for mask in range(1 << n):
        free = [i for i in range(n) if mask >> i & 1]
        fixed = [i for i in range(n) if not mask >> i & 1]
        yield free, fixed


def _patterns(k: int) -> np.ndarray:
    if k == 0:
        return np.zeros((1, 0))
    ids = np.arange(1 << k)
    return ((ids[:, None] >> np.arange(k)[None, :]) & 1).astype(float)


def box_qp_min(H: np.ndarray, c: np.ndarray, a: Optional[np.ndarray] = None,
               b: Optional[float] = None, tol: float = 1e-12) -> Tuple[np.ndarray, float]:
    """Return ``(x, value)`` of a global minimizer."""
    H = np.asarray(H, dtype=float)
    c = np.asarray(c, dtype=float)
    n = len(c)
    if n > MAX_EXACT_DIM:
        raise ValueError(f"box_qp_min is exact only up to {MAX_EXACT_DIM} variables")
    has_cut = a is not None
    if has_cut:
        a = np.asarray(a, dtype=float)
    scale = max(float(np.abs(H).max()), 1e-300)
    feas_tol = 1e-11
    best_x, best_val = None, np.inf

    def consider(X: np.ndarray):
        nonlocal best_x, best_val
        if X.shape[0] == 0:
            return
        ok = np.all((X >= -feas_tol) & (X <= 1 + feas_tol), axis=1)
        X = np.clip(X[ok], 0.0, 1.0)
        if has_cut and X.shape[0]:
            X = X[X @ a <= b + feas_tol * max(1.0, abs(b))]
        if X.shape[0] == 0:
            return
        vals = 0.5 * np.einsum("ij,jk,ik->i", X, H, X) + X @ c
        k = int(np.argmin(vals))
        if best_x is None or vals[k] < best_val - 1e-15 * max(1.0, abs(best_val)):
            best_val, best_x = float(vals[k]), X[k].copy()

    for free, fixed in _free_sets(n):
        P = _patterns(len(fixed))
        X = np.zeros((P.shape[0], n))
        X[:, fixed] = P
        if not free:
            consider(X)
            continue
        Hff = H[np.ix_(free, free)]
        rhs = -(c[free][None, :] + P @ H[np.ix_(fixed, free)]) if fixed else -np.tile(c[free], (P.shape[0], 1))
        # interior of the face
        if np.linalg.eigvalsh(Hff).min() > tol * scale:
            Y = X.copy()
            Y[:, free] = np.linalg.solve(Hff, rhs.T).T
            consider(Y)
        # face intersected with the hyperplane a'x = b
        if has_cut:
            af = a[free]
            if np.abs(af).max() <= 1e-300:
                continue
            if len(free) > 1:
                # basis of the null space of af
                _, _, vt = np.linalg.svd(af[None, :])
                N = vt[1:].T
                if np.linalg.eigvalsh(N.T @ Hff @ N).min() <= tol * scale:
                    continue
            k = len(free)
            K = np.zeros((k + 1, k + 1))
            K[:k, :k] = Hff
            K[:k, k] = af
            K[k, :k] = af
            r = np.zeros((P.shape[0], k + 1))
            r[:, :k] = rhs
            r[:, k] = b - (P @ a[fixed] if fixed else 0.0)
            try:
                sol = np.linalg.solve(K, r.T).T
            except np.linalg.LinAlgError:
                continue
            Y = X.copy()
            Y[:, free] = sol[:, :k]
            consider(Y)
    return best_x, best_val
