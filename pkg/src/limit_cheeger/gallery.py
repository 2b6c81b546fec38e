"""Closed-form example graphons.

Each constructor returns something that answers exact rectangle-mass
queries: a :class:`StepGraphon` when the example is piecewise constant on
rectangles, otherwise an :class:`AnalyticGraphon`.
"""
from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from .graphon import StepGraphon, conditional_step
from .intervals import InputError, IntervalSet, Number, as_number

Point = Tuple[Number, Number]


class AnalyticGraphon:
    """A {0,1}- or [0,1]-valued graphon known through its rectangle masses."""

    kind = "analytic"

    def rectangle_mass(self, x0, x1, y0, y1):
        raise NotImplementedError

    def cell_masses(self, cuts: Sequence[Number]) -> np.ndarray:
        m = len(cuts) - 1
        out = np.empty((m, m), dtype=object)
        for i in range(m):
            for j in range(i, m):
                out[i, j] = out[j, i] = self.rectangle_mass(cuts[i], cuts[i + 1], cuts[j], cuts[j + 1])
        return out

    def step(self, level: int) -> StepGraphon:
        return conditional_step(self, level)

    def total_mass(self):
        return self.rectangle_mass(0, 1, 0, 1)


def constant(p) -> StepGraphon:
    p = as_number(p)
    if not 0 <= p <= 1:
        raise InputError("constant graphon value must lie in [0, 1]")
    return StepGraphon.constant(p)


def k2() -> StepGraphon:
    """Graphon of the complete graph on two vertices."""
    return StepGraphon.uniform([[0, 1], [1, 0]])


# --- the W_n sequence ------------------------------------------------------------


def wn_cuts(n: int) -> Tuple[float, float, float, float]:
    small = math.exp(-n)
    return (0.5 - 1 / n - small, 0.5 - 1 / n, 0.5 + 1 / n, 0.5 + 1 / n + small)


def counterexample_wn(n: int) -> StepGraphon:
    """Five-block graphon that is L1-close to K2 but has tiny Cheeger constant.

    Value 1 on (blocks 1,2) x (blocks 4,5), its transpose, and on the central
    square (blocks 2,3,4)^2; zero elsewhere.
    """
    if not isinstance(n, int) or n < 3:
        raise InputError("counterexample_wn needs an integer n >= 3")
    a, b, c, d = wn_cuts(n)
    M = [
        [0, 0, 0, 1, 1],
        [0, 1, 1, 1, 1],
        [0, 1, 1, 1, 0],
        [1, 1, 1, 1, 0],
        [1, 1, 0, 0, 0],
    ]
    return StepGraphon((Fraction(0), a, b, c, d, Fraction(1)), [[Fraction(v) for v in row] for row in M])


def wn_central_set(n: int) -> IntervalSet:
    a, _, _, d = wn_cuts(n)
    return IntervalSet.interval(a, d)


# --- the square-root leaf --------------------------------------------------------


def _leaf_strip(a, b, y):
    """Area of ``{(x, t): a <= x <= b, x <= t <= min(y, sqrt x)}``."""
    a, b, y = (np.asarray(v, dtype=float) for v in (a, b, y))

    def P(x):
        return (2.0 / 3.0) * x ** 1.5 - 0.5 * x * x

    y2 = y * y
    hi1 = np.minimum(b, y2)
    part1 = np.where(hi1 > a, P(np.maximum(hi1, a)) - P(a), 0.0)
    lo2 = np.maximum(a, y2)
    hi2 = np.minimum(b, y)
    part2 = np.where(hi2 > lo2, y * (hi2 - lo2) - 0.5 * (hi2 * hi2 - lo2 * lo2), 0.0)
    return part1 + part2


class SqrtLeaf(AnalyticGraphon):
    """Indicator of ``{x <= y <= sqrt x}`` and its mirror image."""

    kind = "sqrt-leaf"

    def rectangle_mass(self, x0, x1, y0, y1) -> float:
        x0, x1, y0, y1 = (float(v) for v in (x0, x1, y0, y1))
        upper = _leaf_strip(x0, x1, y1) - _leaf_strip(x0, x1, y0)
        lower = _leaf_strip(y0, y1, x1) - _leaf_strip(y0, y1, x0)
        return float(upper + lower)

    def cell_masses(self, cuts: Sequence[Number]) -> np.ndarray:
        c = np.array([float(v) for v in cuts])
        H = _leaf_strip(c[:-1, None], c[1:, None], c[None, :])
        upper = H[:, 1:] - H[:, :-1]
        return upper + upper.T

    @staticmethod
    def degree(x: float) -> float:
        return math.sqrt(x) - x * x


def sqrt_neighborhood() -> SqrtLeaf:
    return SqrtLeaf()


# --- the vanishing-Cheeger graphon -----------------------------------------------


def _shoelace(poly: List[Point]):
    if len(poly) < 3:
        return Fraction(0)
    s = 0
    for k in range(len(poly)):
        x1, y1 = poly[k]
        x2, y2 = poly[(k + 1) % len(poly)]
        s += x1 * y2 - x2 * y1
    return abs(s) / 2


def _clip(poly: List[Point], x0, x1, y0, y1) -> List[Point]:
    """Sutherland-Hodgman clip of a convex polygon to an axis-aligned box."""
    edges = (
        (lambda p: p[0] >= x0, lambda p, q: _cross_x(p, q, x0)),
        (lambda p: p[0] <= x1, lambda p, q: _cross_x(p, q, x1)),
        (lambda p: p[1] >= y0, lambda p, q: _cross_y(p, q, y0)),
        (lambda p: p[1] <= y1, lambda p, q: _cross_y(p, q, y1)),
    )
    out = poly
    for inside, cross in edges:
        if not out:
            break
        src, out = out, []
        for k in range(len(src)):
            cur, prev = src[k], src[k - 1]
            if inside(cur):
                if not inside(prev):
                    out.append(cross(prev, cur))
                out.append(cur)
            elif inside(prev):
                out.append(cross(prev, cur))
    return out


def _cross_x(p: Point, q: Point, x) -> Point:
    t = (x - p[0]) / (q[0] - p[0])
    return (x, p[1] + t * (q[1] - p[1]))


def _cross_y(p: Point, q: Point, y) -> Point:
    t = (y - p[1]) / (q[1] - p[1])
    return (p[0] + t * (q[0] - p[0]), y)


class VanishingCheeger(AnalyticGraphon):
    """Diagonal chain of black squares joined by thin gray triangles.

    Black squares ``[2^-k, 2^-k+1]^2`` for ``k = 1..D`` plus the tail square
    ``[0, 2^-D]^2``.  For ``k = 1..D`` the triangle with vertices
    ``(2^-k - 2^-(2k+1), 2^-k)``, ``(2^-k, 2^-k)``, ``(2^-k, 2^-k+1)`` and its
    mirror image join the square below ``2^-k`` to the one above it; its area
    ``2^-(3k+2)`` is the whole edge mass across ``x = 2^-k``.
    """

    kind = "vanishing"

    def __init__(self, depth: int):
        if not isinstance(depth, int) or depth < 2:
            raise InputError("vanishing_cheeger needs an integer depth D >= 2")
        self.depth = depth
        half = Fraction(1, 2)
        self.squares = [(half ** k, half ** (k - 1)) for k in range(1, depth + 1)]
        self.tail = (Fraction(0), half ** depth)
        self.triangles: List[List[Point]] = []
        for k in range(1, depth + 1):
            s = half ** k
            leg = half ** (2 * k + 1)
            tri = [(s - leg, s), (s, s), (s, 2 * s)]
            self.triangles.append(tri)
            self.triangles.append([(y, x) for x, y in tri])

    @property
    def black_squares(self):
        return self.squares + [self.tail]

    def black_mass_series(self) -> Fraction:
        """``V_D = sum_{k=1..D} 4^-k``, the mass of the squares ``S_1..S_D``."""
        return sum((Fraction(1, 4 ** k) for k in range(1, self.depth + 1)), Fraction(0))

    def cut_set(self, k: int) -> IntervalSet:
        return IntervalSet.interval(0, Fraction(1, 2 ** k))

    def rectangle_mass(self, x0, x1, y0, y1):
        x0, x1, y0, y1 = (as_number(v) for v in (x0, x1, y0, y1))
        total = Fraction(0)
        for lo, hi in self.black_squares:
            w = min(x1, hi) - max(x0, lo)
            h = min(y1, hi) - max(y0, lo)
            if w > 0 and h > 0:
                total += w * h
        for tri in self.triangles:
            total += self._triangle_mass(tri, x0, x1, y0, y1)
        return total

    @staticmethod
    def _triangle_mass(tri, x0, x1, y0, y1):
        xs = [p[0] for p in tri]
        ys = [p[1] for p in tri]
        if min(xs) >= x1 or max(xs) <= x0 or min(ys) >= y1 or max(ys) <= y0:
            return Fraction(0)
        if x0 <= min(xs) and max(xs) <= x1 and y0 <= min(ys) and max(ys) <= y1:
            return _shoelace(tri)
        return _shoelace(_clip(tri, x0, x1, y0, y1))

    def cell_masses(self, cuts: Sequence[Number]) -> np.ndarray:
        cuts = [as_number(c) for c in cuts]
        m = len(cuts) - 1
        out = np.empty((m, m), dtype=object)
        out.fill(Fraction(0))

        def span(lo, hi):
            return max(bisect_right(cuts, lo) - 1, 0), min(bisect_left(cuts, hi), m)

        for lo, hi in self.black_squares:
            i0, i1 = span(lo, hi)
            for i in range(i0, i1):
                w = min(cuts[i + 1], hi) - max(cuts[i], lo)
                if w <= 0:
                    continue
                for j in range(i0, i1):
                    h = min(cuts[j + 1], hi) - max(cuts[j], lo)
                    if h > 0:
                        out[i, j] += w * h
        for tri in self.triangles:
            xs = [p[0] for p in tri]
            ys = [p[1] for p in tri]
            i0, i1 = span(min(xs), max(xs))
            j0, j1 = span(min(ys), max(ys))
            for i in range(i0, i1):
                for j in range(j0, j1):
                    out[i, j] += self._triangle_mass(tri, cuts[i], cuts[i + 1], cuts[j], cuts[j + 1])
        return out


def vanishing_cheeger(depth: int) -> VanishingCheeger:
    return VanishingCheeger(depth)


def rectangle_mass(W, x0, x1, y0, y1):
    return W.rectangle_mass(x0, x1, y0, y1)


# --- name parsing ----------------------------------------------------------------

DEFAULT_STEP_LEVEL = {"sqrt-leaf": 6, "vanishing": 8}


def from_name(name: str):
    """Parse ``constant:p``, ``k2``, ``wn:n``, ``sqrt-leaf`` or ``vanishing:D``."""
    head, _, arg = name.partition(":")
    head = head.strip().lower()
    try:
        if head == "constant":
            return constant(arg or "1")
        if head == "k2" and not arg:
            return k2()
        if head == "wn":
            return counterexample_wn(int(arg))
        if head in ("sqrt-leaf", "sqrt_leaf") and not arg:
            return sqrt_neighborhood()
        if head == "vanishing":
            return vanishing_cheeger(int(arg))
    except ValueError as exc:
        raise InputError(f"bad gallery parameter in {name!r}") from exc
    raise InputError(f"unknown gallery graphon {name!r}")


def step_from_name(name: str, level: int = None) -> StepGraphon:
    """Gallery graphon as a step graphon (analytic ones via dyadic averaging)."""
    W = from_name(name)
    if isinstance(W, StepGraphon):
        return W
    if level is None:
        level = DEFAULT_STEP_LEVEL[W.kind]
    return W.step(level)
