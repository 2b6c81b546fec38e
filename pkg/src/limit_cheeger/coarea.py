"""Both sides of the co-area formulas, evaluated exactly on step data.

Everything reduces to a finite list of oriented *edge pieces*
``(f(x), f(y), mass)``: for a graphon the ordered block pairs with mass
``M_ij l_i l_j``, for a graphing the atom edges or the sub-intervals of each
translation map on which ``f`` is constant at both ends.  The left-hand
sides sum over pieces with ``f(y) > f(x)``; the right-hand sides integrate
``e(S_t^c, S_t)`` over ``t``, which is constant between consecutive distinct
values of the relevant function.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, List, Tuple

from .graphon import StepGraphon
from .intervals import InputError, IntervalSet, Number, StepFunction, common_refinement, normalize

Piece = Tuple[Number, Number, Number]


@dataclass
class CoareaReport:
    lhs_plus: Number
    rhs_plus: Number
    lhs_minus: Number
    rhs_minus: Number
    lhs_simple: Number
    rhs_simple: Number

    @property
    def max_abs_gap(self) -> Number:
        return max(abs(self.lhs_plus - self.rhs_plus),
                   abs(self.lhs_minus - self.rhs_minus),
                   abs(self.lhs_simple - self.rhs_simple))

    def to_json(self) -> dict:
        out = {k: float(getattr(self, k)) for k in
               ("lhs_plus", "rhs_plus", "lhs_minus", "rhs_minus", "lhs_simple", "rhs_simple")}
        out["max_abs_gap"] = float(self.max_abs_gap)
        out["exact"] = all(isinstance(getattr(self, k), Fraction) for k in
                           ("lhs_plus", "rhs_plus", "lhs_minus", "rhs_minus", "lhs_simple", "rhs_simple"))
        return out


def superlevel(f: StepFunction, t) -> IntervalSet:
    """``{f > t}`` as a union of blocks."""
    return normalize((f.cuts[k], f.cuts[k + 1]) for k, v in enumerate(f.values) if v > t)


def _plus(v):
    return v if v > 0 else 0 * v


def _minus(v):
    return -v if v < 0 else 0 * v


def _lhs(pieces: List[Piece], g: Callable, power: int):
    zero = 0 * pieces[0][2] if pieces else Fraction(0)
    total = zero
    for fx, fy, m in pieces:
        if fy > fx:
            total += abs(g(fy) ** power - g(fx) ** power) * m
    return total


def _rhs(pieces: List[Piece], g: Callable, power: int, values: Iterable[Number]):
    gvals = sorted(set(g(v) for v in values))
    zero = 0 * pieces[0][2] if pieces else Fraction(0)
    total = zero
    for lo, hi in zip(gvals, gvals[1:]):
        # for t in [lo, hi): S_t = {g > lo}
        cut = zero
        for fx, fy, m in pieces:
            if g(fx) <= lo < g(fy):
                cut += m
        total += (hi ** power - lo ** power) * cut
    return total


def coarea_from_pieces(pieces: List[Piece], values: Iterable[Number]) -> CoareaReport:
    values = list(values)
    ident = lambda v: v  # noqa: E731
    return CoareaReport(
        _lhs(pieces, _plus, 2), _rhs(pieces, _plus, 2, values),
        _lhs(pieces, _minus, 2), _rhs(pieces, _minus, 2, values),
        _lhs(pieces, ident, 1), _rhs(pieces, ident, 1, values),
    )


def graphon_pieces(W: StepGraphon, f: StepFunction) -> List[Piece]:
    ell = W.lengths
    return [(f.values[i], f.values[j], W.values[i, j] * ell[i] * ell[j])
            for i in range(W.n) for j in range(W.n) if i != j and W.values[i, j] != 0]


def coarea_graphon(W: StepGraphon, f: StepFunction) -> CoareaReport:
    """Exact co-area check for a step function on a step graphon."""
    cuts = common_refinement(W.cuts, f.cuts)
    if tuple(cuts) != tuple(W.cuts):
        W = W.refine(cuts)
    if tuple(cuts) != tuple(f.cuts):
        f = f.refine(cuts)
    return coarea_from_pieces(graphon_pieces(W, f), f.values)


def parse_function(text: str, cuts) -> StepFunction:
    """``"v1,v2,..."`` on the given block cuts."""
    from .intervals import as_number

    vals = tuple(as_number(v) for v in text.split(",") if v.strip())
    if len(vals) != len(cuts) - 1:
        raise InputError(f"function has {len(vals)} values, graphon has {len(cuts) - 1} blocks")
    return StepFunction(tuple(cuts), vals)
