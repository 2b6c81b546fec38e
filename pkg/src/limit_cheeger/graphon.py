"""Step graphons, step kernels and finite weighted graphs.

A step graphon is stored as block breakpoints plus a symmetric block-value
matrix.  When every entry is a :class:`~fractions.Fraction` the matrix is a
numpy ``object`` array and the set functionals (``ew``, ``vol``, ...) are
exact; otherwise it is ``float64``.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence, Tuple

import numpy as np

from .intervals import (
    InputError,
    IntervalSet,
    Number,
    StepFunction,
    as_number,
    common_refinement,
)

CUT_NORM_EXACT_LIMIT = 24
CONDITIONAL_STEP_MAX_LEVEL = 12


class CapabilityError(RuntimeError):
    """Problem size beyond what an exact routine supports."""


class ResourceError(RuntimeError):
    """Requested output would exceed the configured size cap."""


def to_matrix(values) -> np.ndarray:
    """Square matrix as ``float64``, or ``object`` if any entry is a Fraction."""
    if isinstance(values, np.ndarray) and values.dtype != object:
        arr = np.array(values, dtype=float)
    else:
        rows = [[as_number(v) if not isinstance(v, (float, np.floating)) else float(v) for v in row]
                for row in values]
        if any(isinstance(v, float) for row in rows for v in row):
            arr = np.array([[float(v) for v in row] for row in rows], dtype=float)
        else:
            arr = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
            for i, row in enumerate(rows):
                for j, v in enumerate(row):
                    arr[i, j] = v
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InputError(f"matrix must be square, got shape {arr.shape}")
    return arr


def _vector(values, exact: bool) -> np.ndarray:
    if exact:
        out = np.empty(len(values), dtype=object)
        for i, v in enumerate(values):
            out[i] = v
        return out
    return np.array([float(v) for v in values], dtype=float)


def _is_exact(arr: np.ndarray) -> bool:
    return arr.dtype == object


def _scalar(x):
    if isinstance(x, np.floating):
        return float(x)
    return x


@dataclass(frozen=True, eq=False)
class StepKernel:
    """Symmetric step function on [0,1]^2 with values in [-1, 1]."""

    cuts: Tuple[Number, ...]
    values: np.ndarray
    _lo = -1
    _hi = 1

    def __post_init__(self):
        cuts = tuple(as_number(c) for c in self.cuts)
        if len(cuts) < 2 or cuts[0] != 0 or cuts[-1] != 1:
            raise InputError("cuts must start at 0 and end at 1")
        if any(cuts[k] >= cuts[k + 1] for k in range(len(cuts) - 1)):
            raise InputError("cuts must be strictly increasing")
        M = to_matrix(self.values)
        if M.shape[0] != len(cuts) - 1:
            raise InputError(f"matrix is {M.shape[0]}x{M.shape[0]} but there are {len(cuts) - 1} blocks")
        for i in range(M.shape[0]):
            for j in range(i, M.shape[0]):
                if M[i, j] != M[j, i]:
                    raise InputError(f"matrix not symmetric at ({i}, {j})")
                if not (self._lo <= M[i, j] <= self._hi):
                    raise InputError(f"entry ({i}, {j}) = {M[i, j]} outside [{self._lo}, {self._hi}]")
        M.setflags(write=False)
        object.__setattr__(self, "cuts", cuts)
        object.__setattr__(self, "values", M)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def exact(self) -> bool:
        return _is_exact(self.values) and all(isinstance(c, Fraction) for c in self.cuts)

    @property
    def lengths(self) -> np.ndarray:
        ls = [self.cuts[k + 1] - self.cuts[k] for k in range(self.n)]
        return _vector(ls, _is_exact(self.values))

    def float_values(self) -> np.ndarray:
        return np.array(self.values, dtype=float)

    def float_lengths(self) -> np.ndarray:
        return np.array([float(c) for c in self.lengths], dtype=float)

    def refine(self, cuts: Sequence[Number]) -> "StepKernel":
        """Same kernel on a finer partition (must contain every current cut)."""
        cuts = tuple(as_number(c) for c in cuts)
        if set(self.cuts) - set(cuts):
            raise InputError("new partition does not refine the current one")
        idx = []
        k = 0
        for j in range(len(cuts) - 1):
            while cuts[j] >= self.cuts[k + 1]:
                k += 1
            idx.append(k)
        M = self.values[np.ix_(idx, idx)]
        return type(self)(cuts, M)

    def block_of(self, x) -> int:
        for k in range(self.n):
            if x < self.cuts[k + 1]:
                return k
        return self.n - 1

    def rectangle_mass(self, x0, x1, y0, y1):
        """Exact integral over ``[x0, x1] x [y0, y1]``."""
        a = IntervalSet.interval(x0, x1).block_masses(self.cuts)
        b = IntervalSet.interval(y0, y1).block_masses(self.cuts)
        return bilinear(self.values, a, b)

    def cell_masses(self, cuts: Sequence[Number]) -> np.ndarray:
        cuts = tuple(as_number(c) for c in cuts)
        m = len(cuts) - 1
        out = np.empty((m, m), dtype=object if self.exact else float)
        rows = [IntervalSet.interval(cuts[i], cuts[i + 1]).block_masses(self.cuts) for i in range(m)]
        for i in range(m):
            for j in range(i, m):
                out[i, j] = out[j, i] = bilinear(self.values, rows[i], rows[j])
        return out

    def __neg__(self) -> "StepKernel":
        return StepKernel(self.cuts, -self.values)

    def __sub__(self, other: "StepKernel") -> "StepKernel":
        cuts = common_refinement(self.cuts, other.cuts)
        a, b = self.refine(cuts), other.refine(cuts)
        return StepKernel(cuts, _sub(a.values, b.values))

    def to_json(self) -> dict:
        return {
            "cuts": [float(c) for c in self.cuts],
            "matrix": [[float(v) for v in row] for row in self.values],
        }


def _sub(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if _is_exact(A) and _is_exact(B):
        return A - B
    return np.array(A, dtype=float) - np.array(B, dtype=float)


class StepGraphon(StepKernel):
    """Step graphon: values in [0, 1].  Block ``k`` is ``[cuts[k], cuts[k+1])``."""

    _lo = 0
    _hi = 1

    @classmethod
    def uniform(cls, matrix) -> "StepGraphon":
        M = to_matrix(matrix)
        n = M.shape[0]
        return cls(tuple(Fraction(k, n) for k in range(n + 1)), M)

    @classmethod
    def constant(cls, p) -> "StepGraphon":
        return cls((Fraction(0), Fraction(1)), [[as_number(p)]])


def bilinear(M: np.ndarray, a, b):
    """``sum_ij a_i M_ij b_j`` with exact arithmetic when everything is rational."""
    exact = _is_exact(M) and all(isinstance(v, Fraction) for v in list(a) + list(b))
    if exact:
        total = Fraction(0)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            row = M[i]
            total += ai * sum((row[j] * bj for j, bj in enumerate(b) if bj != 0), Fraction(0))
        return total
    av = np.array([float(v) for v in a])
    bv = np.array([float(v) for v in b])
    return float(av @ np.array(M, dtype=float) @ bv)


# --- graphon functionals ---------------------------------------------------


def degree_function(W: StepGraphon) -> StepFunction:
    """``d_W`` as a step function: value ``sum_j M_ij l_j`` on block ``i``."""
    ell = W.lengths
    d = [_scalar(sum(W.values[i, j] * ell[j] for j in range(W.n))) for i in range(W.n)]
    return StepFunction(W.cuts, tuple(d))


def ew(W: StepGraphon, A: IntervalSet, B: IntervalSet):
    """Edge mass ``e_W(A, B)``, the integral of W over ``A x B``."""
    return bilinear(W.values, A.block_masses(W.cuts), B.block_masses(W.cuts))


def vol(W: StepGraphon, A: IntervalSet):
    return ew(W, A, IntervalSet.full())


def total_volume(W: StepGraphon):
    return vol(W, IntervalSet.full())


def is_connected(W: StepKernel) -> bool:
    """Connectivity of the block graph; self-loops only matter for a single block."""
    n = W.n
    if n == 1:
        return W.values[0, 0] > 0
    return _bfs_connected(n, lambda i, j: W.values[i, j] > 0)


def _bfs_connected(n: int, adjacent) -> bool:
    seen = {0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in range(n):
            if j != i and j not in seen and adjacent(i, j):
                seen.add(j)
                queue.append(j)
    return len(seen) == n


def components(n: int, adjacent) -> list:
    """Connected components (sorted lists of indices) of an abstract graph."""
    left = set(range(n))
    comps = []
    while left:
        start = min(left)
        comp = {start}
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(n):
                if j != i and j not in comp and adjacent(i, j):
                    comp.add(j)
                    queue.append(j)
        left -= comp
        comps.append(sorted(comp))
    return comps


def induced_weights(W: StepGraphon) -> np.ndarray:
    """Weighted graph ``w_ij = M_ij l_i l_j`` whose fractional cuts are W's cuts."""
    ell = W.lengths
    if W.exact:
        return W.values * np.outer(ell, ell)
    ell = W.float_lengths()
    return W.float_values() * np.outer(ell, ell)


@dataclass(frozen=True)
class CutNormResult:
    value: float
    rows: Tuple[int, ...]
    cols: Tuple[int, ...]
    exact: bool

    def to_json(self) -> dict:
        return {"value": self.value, "rows": list(self.rows), "cols": list(self.cols),
                "exact": self.exact, "lower_bound": not self.exact}


def cut_norm(K: StepKernel, *, exact_limit: int = CUT_NORM_EXACT_LIMIT,
             fallback: bool = True, seed: int = 0) -> CutNormResult:
    """``sup_{A,B} |int_{A x B} K|``; optimal sets are unions of blocks.

    Up to ``exact_limit`` blocks every row subset is enumerated and the
    column set is chosen in closed form (all columns with positive, resp.
    negative, partial sum).  Larger kernels use alternating maximization and
    the result is only a lower bound (``exact=False``); with
    ``fallback=False`` they raise :class:`CapabilityError` instead.
    """
    ell = K.float_lengths()
    U = K.float_values() * np.outer(ell, ell)
    n = K.n
    if n > exact_limit:
        if not fallback:
            raise CapabilityError(f"cut_norm exact mode supports at most {exact_limit} blocks, got {n}")
        return _cut_norm_alternating(U, seed)

    best = (-1.0, 0, 1)
    bits = 1 << np.arange(n, dtype=np.int64)
    chunk = 1 << 14
    total = 1 << n
    for start in range(0, total, chunk):
        ids = np.arange(start, min(start + chunk, total), dtype=np.int64)
        ind = ((ids[:, None] & bits[None, :]) != 0).astype(float)
        s = ind @ U
        pos = np.where(s > 0, s, 0.0).sum(axis=1)
        neg = -np.where(s < 0, s, 0.0).sum(axis=1)
        for vals, sign in ((pos, 1), (neg, -1)):
            k = int(np.argmax(vals))
            if vals[k] > best[0] + 1e-15:
                best = (float(vals[k]), int(ids[k]), sign)
    value, mask, sign = best
    rows = tuple(i for i in range(n) if mask >> i & 1)
    s = U[list(rows)].sum(axis=0) if rows else np.zeros(n)
    cols = tuple(j for j in range(n) if (s[j] > 0 if sign > 0 else s[j] < 0))
    return CutNormResult(value, rows, cols, True)


def _cut_norm_alternating(U: np.ndarray, seed: int, starts: int = 32) -> CutNormResult:
    rng = np.random.default_rng(seed)
    n = U.shape[0]
    best = CutNormResult(0.0, (), (), False)
    for s in range(starts):
        for sign in (1.0, -1.0):
            rows = rng.random(n) < 0.5 if s else np.ones(n, dtype=bool)
            prev = -1.0
            for _ in range(100):
                cols = sign * (U[rows].sum(axis=0)) > 0
                rows = sign * (U[:, cols].sum(axis=1)) > 0
                val = float(sign * U[np.ix_(rows, cols)].sum())
                if val <= prev + 1e-15:
                    break
                prev = val
            if prev > best.value:
                best = CutNormResult(prev, tuple(np.flatnonzero(rows).tolist()),
                                     tuple(np.flatnonzero(cols).tolist()), False)
    return best


def l1_mass(K: StepKernel):
    ell = K.lengths
    total = 0
    for i in range(K.n):
        for j in range(K.n):
            total += abs(K.values[i, j]) * ell[i] * ell[j]
    return _scalar(total)


def l1_distance(W1: StepKernel, W2: StepKernel):
    """``||W1 - W2||_1`` computed on the common refinement."""
    return l1_mass(W1 - W2)


# --- weighted graphs ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Symmetric weights in [0, 1] on vertices ``0..n-1``."""

    w: np.ndarray
    labels: Optional[Tuple[str, ...]] = field(default=None)

    def __post_init__(self):
        w = to_matrix(self.w)
        n = w.shape[0]
        if n < 1:
            raise InputError("graph needs at least one vertex")
        for i in range(n):
            for j in range(i, n):
                if w[i, j] != w[j, i]:
                    raise InputError(f"weights not symmetric at ({i + 1}, {j + 1})")
                if not (0 <= w[i, j] <= 1):
                    raise InputError(f"weight ({i + 1}, {j + 1}) = {w[i, j]} outside [0, 1]")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)

    @property
    def n(self) -> int:
        return self.w.shape[0]

    @property
    def loopless(self) -> bool:
        return all(self.w[i, i] == 0 for i in range(self.n))

    @property
    def exact(self) -> bool:
        return _is_exact(self.w)

    @property
    def vols(self) -> np.ndarray:
        return self.w.sum(axis=1)

    @property
    def volume(self):
        return _scalar(self.vols.sum())

    @property
    def gamma(self) -> float:
        v = np.array(self.vols, dtype=float)
        return float(v.max() / v.min())

    def float_w(self) -> np.ndarray:
        return np.array(self.w, dtype=float)

    def is_connected(self) -> bool:
        if self.n == 1:
            return True
        return _bfs_connected(self.n, lambda i, j: self.w[i, j] > 0)

    def edges(self):
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n) if self.w[i, j] > 0]

    @classmethod
    def from_edges(cls, n: int, edges, weight=1) -> "WeightedGraph":
        w = [[Fraction(0)] * n for _ in range(n)]
        for u, v in edges:
            w[u][v] = w[v][u] = as_number(weight)
        return cls(w)

    @classmethod
    def complete(cls, n: int) -> "WeightedGraph":
        return cls.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])

    @classmethod
    def cycle(cls, n: int) -> "WeightedGraph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "WeightedGraph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def from_graph(G: WeightedGraph) -> StepGraphon:
    """The step graphon with ``n`` equal blocks and block values ``w``."""
    return StepGraphon.uniform(G.w)


def make_loopless(G: WeightedGraph) -> WeightedGraph:
    w = np.array(G.w, copy=True)
    for i in range(G.n):
        w[i, i] = Fraction(0) if _is_exact(w) else 0.0
    return WeightedGraph(w)


def conditional_step(source, n: int) -> StepGraphon:
    """Average of ``source`` over the dyadic grid of level ``n`` (``2^n`` blocks).

    ``source`` must answer exact rectangle-mass queries; gallery graphons and
    step graphons do.
    """
    if n < 0:
        raise InputError("level must be non-negative")
    if n > CONDITIONAL_STEP_MAX_LEVEL:
        raise ResourceError(f"level {n} exceeds cap {CONDITIONAL_STEP_MAX_LEVEL}")
    m = 1 << n
    cuts = tuple(Fraction(k, m) for k in range(m + 1))
    if hasattr(source, "cell_masses"):
        masses = source.cell_masses(cuts)
    else:
        masses = np.empty((m, m), dtype=object)
        for i in range(m):
            for j in range(i, m):
                masses[i, j] = masses[j, i] = source.rectangle_mass(cuts[i], cuts[i + 1], cuts[j], cuts[j + 1])
    area = Fraction(1, m * m)
    if masses.dtype == object and all(isinstance(v, Fraction) for v in masses.flat):
        vals = masses / area
    else:
        vals = np.clip(np.array(masses, dtype=float) * (m * m), 0.0, 1.0)
        vals = (vals + vals.T) / 2
    return StepGraphon(cuts, vals)


# --- file formats ------------------------------------------------------------


def load_graphon_json(path) -> StepGraphon:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON: {exc}") from exc
    return graphon_from_json(data)


def graphon_from_json(data) -> StepGraphon:
    if not isinstance(data, dict) or "cuts" not in data or "matrix" not in data:
        raise InputError('graphon JSON needs "cuts" and "matrix"')
    cuts = [_json_number(c) for c in data["cuts"]]
    matrix = [[_json_number(v) for v in row] for row in data["matrix"]]
    return StepGraphon(tuple(cuts), matrix)


def _json_number(x):
    # JSON numbers are read as exact decimals so "0.5" stays rational
    if isinstance(x, bool):
        raise InputError(f"not a number: {x!r}")
    if isinstance(x, (int, float)):
        return Fraction(str(x)) if isinstance(x, float) else Fraction(x)
    return as_number(x)


def load_graph_text(path) -> WeightedGraph:
    """Read ``n`` then lines ``u v w`` (1-based); the symmetric closure is applied."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return parse_graph_text(text)


def parse_graph_text(text: str) -> WeightedGraph:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise InputError("empty graph file")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise InputError(f"first line must be the vertex count, got {lines[0]!r}") from exc
    if n < 1:
        raise InputError("vertex count must be positive")
    w = [[Fraction(0)] * n for _ in range(n)]
    seen = set()
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) not in (2, 3):
            raise InputError(f"bad edge line {ln!r}; expected 'u v w'")
        try:
            u, v = int(parts[0]) - 1, int(parts[1]) - 1
        except ValueError as exc:
            raise InputError(f"bad vertex index in {ln!r}") from exc
        if not (0 <= u < n and 0 <= v < n):
            raise InputError(f"vertex out of range in {ln!r}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InputError(f"duplicate edge {u + 1} {v + 1}")
        seen.add(key)
        weight = as_number(parts[2]) if len(parts) == 3 else Fraction(1)
        w[u][v] = w[v][u] = weight
    return WeightedGraph(w)


def graph_to_text(G: WeightedGraph) -> str:
    lines = [str(G.n)]
    for i in range(G.n):
        for j in range(i, G.n):
            if G.w[i, j] != 0:
                lines.append(f"{i + 1} {j + 1} {G.w[i, j]}")
    return "\n".join(lines) + "\n"
