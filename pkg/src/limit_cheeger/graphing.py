"""Graphings: atomic ones from finite graphs, continuous ones from translations.

A continuous graphing is a list of maps ``x -> x + offset (mod 1)`` on
interval domains; each map contributes itself and its inverse, so the edge
set is symmetric and Lebesgue measure is preserved.  Offsets are stored as
``Fraction`` so every edge mass below is computed exactly.

``e(A, B)`` is the literal ``integral over A of deg_B``: ordered, so
``e(A, A)`` counts each edge inside ``A`` from both ends.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import FrozenSet, List, Optional, Tuple, Union

import numpy as np

from .cheeger import CheegerReport, DegenerateCutError, integral_cheeger
from .coarea import CoareaReport, coarea_from_pieces
from .graphon import WeightedGraph
from .intervals import (
    InputError,
    IntervalSet,
    Number,
    StepFunction,
    as_number,
    normalize,
    parse_interval_set,
    translate_mod1,
)
from .spectral import lambda_graph

AtomSet = FrozenSet[int]
GraphingSet = Union[IntervalSet, AtomSet]


@dataclass(frozen=True)
class TranslationMap:
    domain: IntervalSet
    offset: Fraction
    image: Optional[IntervalSet] = None

    def __post_init__(self):
        if self.image is None:
            object.__setattr__(self, "image", translate_mod1(self.domain, self.offset))


@dataclass(frozen=True)
class Graphing:
    atoms: Tuple[Tuple[Number, Number], ...] = ()
    atom_edges: Tuple[Tuple[int, int], ...] = ()
    maps: Tuple[TranslationMap, ...] = ()
    degree_bound: Optional[int] = None
    rational_warning: bool = False
    validate: bool = field(default=True, compare=False)

    def __post_init__(self):
        atoms = tuple((as_number(x), as_number(m)) for x, m in self.atoms)
        edges = set()
        for i, j in self.atom_edges:
            if not (0 <= i < len(atoms) and 0 <= j < len(atoms)):
                raise InputError(f"atom edge ({i}, {j}) refers to a missing atom")
            if i == j:
                raise InputError("atom loops are not supported")
            edges.add((min(i, j), max(i, j)))
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "atom_edges", tuple(sorted(edges)))
        if atoms and self.maps:
            raise InputError("a graphing is either purely atomic or purely continuous")
        if not atoms and not self.maps:
            raise InputError("graphing has neither atoms nor maps")
        if atoms:
            if any(m <= 0 for _, m in atoms):
                raise InputError("atom masses must be positive")
            if any(not 0 <= x <= 1 for x, _ in atoms):
                raise InputError("atom positions must lie in [0, 1]")
            if len({x for x, _ in atoms}) != len(atoms):
                raise InputError("atom positions must be distinct")
            if abs(sum(m for _, m in atoms) - 1) > 1e-12:
                raise InputError("atom masses must sum to 1")
        if self.validate:
            for k, mp in enumerate(self.maps):
                if mp.image != translate_mod1(mp.domain, mp.offset):
                    raise InputError(f"map {k + 1}: image is not the translate of its domain")
        deg = self.max_degree()
        if self.degree_bound is None:
            object.__setattr__(self, "degree_bound", deg)
        elif deg > self.degree_bound:
            raise InputError(f"degree {deg} exceeds the bound {self.degree_bound}")

    @property
    def atomic(self) -> bool:
        return bool(self.atoms)

    @property
    def n_atoms(self) -> int:
        return len(self.atoms)

    def neighbors(self) -> List[List[int]]:
        adj = [[] for _ in self.atoms]
        for i, j in self.atom_edges:
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def max_degree(self) -> int:
        if self.atomic:
            return max((len(a) for a in self.neighbors()), default=0)
        # overlap count of all domains and images, evaluated on every elementary piece
        pts = {Fraction(0), Fraction(1)}
        for mp in self.maps:
            for s in (mp.domain, mp.image):
                for lo, hi in s.parts:
                    pts.update((lo, hi))
        pts = sorted(pts)
        best = 0
        for lo, hi in zip(pts, pts[1:]):
            mid = (lo + hi) / 2
            best = max(best, sum((mid in mp.domain) + (mid in mp.image) for mp in self.maps))
        return best

    def to_json(self) -> dict:
        if self.atomic:
            return {"atoms": [[float(x), float(m)] for x, m in self.atoms],
                    "atom_edges": [list(e) for e in self.atom_edges]}
        return {"maps": [{"domain": mp.domain.to_text(), "offset": float(mp.offset)} for mp in self.maps]}


# --- construction ----------------------------------------------------------------


def graphing_from_graph(F: WeightedGraph) -> Graphing:
    """Atoms at ``(2i-1)/2n`` with mass ``1/n``; edges of the simple graph ``F``."""
    if not F.loopless:
        raise InputError("graphing_from_graph needs a loopless graph")
    if any(F.w[i, j] not in (0, 1) for i in range(F.n) for j in range(F.n)):
        raise InputError("graphing_from_graph needs 0/1 weights")
    n = F.n
    atoms = tuple((Fraction(2 * i + 1, 2 * n), Fraction(1, n)) for i in range(n))
    return Graphing(atoms=atoms, atom_edges=tuple(F.edges()))


def _offset(a) -> Tuple[Fraction, bool]:
    """Exact offset and whether ``a`` looked rational (small denominator)."""
    if isinstance(a, str):
        a = as_number(a)
    if isinstance(a, (Fraction, int)):
        t = Fraction(a)
        return t, True
    t = Fraction(float(a))
    return t, Fraction(float(a)).limit_denominator(10 ** 6) == t


def rotation_graphing(a) -> Graphing:
    """The circle rotation by ``a`` with its inverse: degree 2 everywhere."""
    t, rational = _offset(a)
    if not 0 < t < 1:
        raise InputError("rotation offset must lie in (0, 1)")
    return Graphing(maps=(TranslationMap(IntervalSet.full(), t),), rational_warning=rational)


def graphing_from_json(data) -> Graphing:
    try:
        if "atoms" in data:
            return Graphing(atoms=tuple((x, m) for x, m in data["atoms"]),
                            atom_edges=tuple((int(i), int(j)) for i, j in data.get("atom_edges", [])))
        if "maps" in data:
            maps = []
            for mp in data["maps"]:
                t, _ = _offset(mp["offset"])
                maps.append(TranslationMap(parse_interval_set(str(mp["domain"])), t - math.floor(t)))
            return Graphing(maps=tuple(maps))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed graphing JSON: {exc}") from exc
    raise InputError("graphing JSON needs 'atoms' or 'maps'")


# --- measures ----------------------------------------------------------------------


def _as_atoms(G: Graphing, A) -> AtomSet:
    if isinstance(A, IntervalSet):
        return frozenset(i for i, (x, _) in enumerate(G.atoms) if x in A)
    return frozenset(A)


def _check_set(G: Graphing, A) -> GraphingSet:
    if G.atomic:
        return _as_atoms(G, A)
    if not isinstance(A, IntervalSet):
        raise InputError("a continuous graphing needs interval-set arguments")
    return A


def full_set(G: Graphing) -> GraphingSet:
    return frozenset(range(G.n_atoms)) if G.atomic else IntervalSet.full()


def complement_set(G: Graphing, A: GraphingSet) -> GraphingSet:
    return full_set(G) - A if G.atomic else A.complement()


def measure(G: Graphing, A: GraphingSet) -> Number:
    if G.atomic:
        return sum((G.atoms[i][1] for i in A), Fraction(0))
    return A.measure


def e_graphing(G: Graphing, A, B) -> Number:
    """``integral over A of deg_B``."""
    A, B = _check_set(G, A), _check_set(G, B)
    if G.atomic:
        total = Fraction(0)
        for i, j in G.atom_edges:
            if i in A and j in B:
                total += G.atoms[i][1]
            if j in A and i in B:
                total += G.atoms[j][1]
        return total
    total = Fraction(0)
    for mp in G.maps:
        # forward: x in A and domain, x + t in B
        total += A.intersection(mp.domain).intersection(translate_mod1(B, -mp.offset)).measure
        # inverse: x in A and image, x - t in B
        total += A.intersection(mp.image).intersection(translate_mod1(B, mp.offset)).measure
    return total


def vol_graphing(G: Graphing, A) -> Number:
    return e_graphing(G, A, full_set(G))


def ratio_h_graphing(G: Graphing, A) -> Number:
    A = _check_set(G, A)
    Ac = complement_set(G, A)
    mu = measure(G, A)
    if not 0 < mu < 1:
        raise DegenerateCutError("degenerate cut: the set must have measure strictly between 0 and 1")
    va, vc = vol_graphing(G, A), vol_graphing(G, Ac)
    if va == 0 or vc == 0:
        raise DegenerateCutError(f"degenerate cut: vol({'A' if va == 0 else 'A^c'}) = 0")
    return e_graphing(G, A, Ac) / min(va, vc)


# --- atomic reductions ------------------------------------------------------------


def underlying_graph(G: Graphing) -> WeightedGraph:
    """Weighted graph with ``w_uv`` proportional to ``m_u`` (scale-free quantities only)."""
    if not G.atomic:
        raise InputError("only atomic graphings have an underlying finite graph")
    top = max(m for _, m in G.atoms)
    n = G.n_atoms
    w = [[Fraction(0)] * n for _ in range(n)]
    for i, j in G.atom_edges:
        if G.atoms[i][1] != G.atoms[j][1]:
            raise InputError(f"atoms {i} and {j} are joined but have different masses")
        w[i][j] = w[j][i] = Fraction(G.atoms[i][1]) / Fraction(top)
    return WeightedGraph(w)


def cheeger_atomic(G: Graphing, **kw) -> CheegerReport:
    rep = integral_cheeger(underlying_graph(G), **kw)
    rep.kind = "graphing"
    return rep


def lambda_atomic(G: Graphing) -> float:
    return lambda_graph(underlying_graph(G))


# --- rotation constructions -------------------------------------------------------

GOLDEN = (math.sqrt(5) - 1) / 2


@dataclass
class RotationCut:
    A: IntervalSet
    ratio: Optional[Number]
    valid: bool
    ell: Fraction

    def to_json(self) -> dict:
        return {"set": self.A.to_text(), "ratio": None if self.ratio is None else float(self.ratio), "valid": self.valid,
                "x_length": float(self.ell), "intervals": len(self.A)}


def _orbit_gap(t: Fraction, count: int) -> Fraction:
    pts = sorted((i * t) % 1 for i in range(count))
    gaps = [b - a for a, b in zip(pts, pts[1:])]
    gaps.append(1 - pts[-1] + pts[0])
    return min(gaps)


def rotation_cut(a, N: int) -> RotationCut:
    """``A = X + {0, a, ..., N a}`` with ``X = [0, l)`` short enough to keep the translates disjoint."""
    if N < 1:
        raise InputError("N must be at least 1")
    t, _ = _offset(a)
    ell = min(_orbit_gap(t, N + 2) / 2, Fraction(1, 2 * (N + 1)))
    X = IntervalSet.interval(0, ell)
    A = normalize(p for i in range(N + 1) for p in translate_mod1(X, (i * t) % 1).parts)
    G = rotation_graphing(t)
    disjoint = A.measure == (N + 1) * ell
    valid = bool(ell > 0 and disjoint and A.measure <= Fraction(1, 2))
    if ell == 0:
        # periodic orbit (rational a): no room for disjoint translates
        return RotationCut(A, None, False, ell)
    return RotationCut(A, ratio_h_graphing(G, A), valid, ell)


def rotation_lambda_upper(a, K: int) -> float:
    """``min_{1<=k<=K} 1 - cos(2 pi k a)``: Rayleigh quotients of ``cos 2 pi k x``."""
    if K < 1:
        raise InputError("K must be at least 1")
    k = np.arange(1, K + 1, dtype=float)
    frac = np.mod(k * float(a), 1.0)
    # 1 - cos(2 pi s) = 2 sin^2(pi s), accurate near integers
    return float(np.min(2.0 * np.sin(np.pi * frac) ** 2))


# --- co-area ------------------------------------------------------------------------


def graphing_pieces(G: Graphing, f) -> Tuple[list, list]:
    if G.atomic:
        vals = [as_number(v) for v in f]
        if len(vals) != G.n_atoms:
            raise InputError(f"need {G.n_atoms} atom values, got {len(vals)}")
        pieces = []
        for i, j in G.atom_edges:
            pieces.append((vals[i], vals[j], G.atoms[i][1]))
            pieces.append((vals[j], vals[i], G.atoms[j][1]))
        return pieces, vals
    if not isinstance(f, StepFunction):
        raise InputError("a continuous graphing needs a step function")
    pieces = []
    for mp in G.maps:
        pts = set()
        for lo, hi in mp.domain.parts:
            pts.update((lo, hi))
        for c in f.cuts:
            pts.add(c)
            pts.add((c - mp.offset) % 1)
        pts = sorted(p for p in pts if 0 <= p <= 1)
        for lo, hi in zip(pts, pts[1:]):
            mid = (lo + hi) / 2
            if mid not in mp.domain:
                continue
            fx, fy = f(mid), f((mid + mp.offset) % 1)
            pieces.append((fx, fy, hi - lo))
            pieces.append((fy, fx, hi - lo))
    return pieces, list(f.values)


def coarea_graphing(G: Graphing, f) -> CoareaReport:
    pieces, vals = graphing_pieces(G, f)
    return coarea_from_pieces(pieces, vals)


# --- audits -------------------------------------------------------------------------


def _random_set(G: Graphing, rng: np.random.Generator) -> GraphingSet:
    if G.atomic:
        return frozenset(int(i) for i in np.flatnonzero(rng.random(G.n_atoms) < 0.5))
    k = int(rng.integers(1, 6))
    pts = sorted(Fraction(int(v), 1 << 20) for v in rng.integers(0, 1 << 20, size=2 * k))
    return normalize(zip(pts[0::2], pts[1::2]))


def symmetry_audit(G: Graphing, trials: int = 200, seed: int = 0) -> float:
    """Largest ``|e(A, B) - e(B, A)|`` over random pairs."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(trials):
        A, B = _random_set(G, rng), _random_set(G, rng)
        worst = max(worst, float(abs(e_graphing(G, A, B) - e_graphing(G, B, A))))
    return worst


def sandwich_atomic(G: Graphing, tol: float = 1e-9) -> dict:
    from .spectral import sandwich_flags

    rep = cheeger_atomic(G)
    lam = lambda_atomic(G)
    flags = sandwich_flags(lam, rep.value, rep.value if rep.certified else 0.0, float("inf"), tol)
    return {"h": rep.value, "lambda": lam, "certified": rep.certified, "method": rep.method,
            "cheeger_ok": flags["cheeger_ok"], "buser_ok": flags["buser_ok"],
            "slack": {k: v for k, v in flags["slack"].items() if k != "g_minus_lambda"}}
