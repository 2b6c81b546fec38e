"""Finite unions of half-open intervals in [0, 1] and step functions.

Endpoints may be :class:`fractions.Fraction` (exact) or ``float``.  Every
operation uses plain Python arithmetic, so rational inputs stay rational.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Iterable, Sequence, Tuple, Union

Number = Union[Fraction, float, int]


class InputError(ValueError):
    """Malformed user input (bad interval, bad partition, bad file)."""


def as_number(x) -> Number:
    """Coerce ints and numeric strings to Fraction; leave floats alone."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError(f"not a number: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a number: {x!r}") from exc
    if isinstance(x, Real):
        return float(x)
    raise InputError(f"not a number: {x!r}")


@dataclass(frozen=True)
class IntervalSet:
    """Disjoint, sorted union of half-open intervals ``[lo, hi)`` in [0, 1].

    Build instances with :func:`normalize`; the constructor trusts its input.
    """

    parts: Tuple[Tuple[Number, Number], ...] = ()

    @classmethod
    def empty(cls) -> "IntervalSet":
        return cls(())

    @classmethod
    def full(cls) -> "IntervalSet":
        return cls(((Fraction(0), Fraction(1)),))

    @classmethod
    def interval(cls, lo, hi) -> "IntervalSet":
        return normalize([(lo, hi)])

    @property
    def measure(self) -> Number:
        return sum((hi - lo for lo, hi in self.parts), Fraction(0))

    def is_empty(self) -> bool:
        return not self.parts

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __contains__(self, x) -> bool:
        return any(lo <= x < hi for lo, hi in self.parts)

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return normalize(self.parts + other.parts)

    def intersection(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        i = j = 0
        a, b = self.parts, other.parts
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo < hi:
                out.append((lo, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return IntervalSet(tuple(out))

    def complement(self) -> "IntervalSet":
        out = []
        prev: Number = Fraction(0)
        for lo, hi in self.parts:
            if prev < lo:
                out.append((prev, lo))
            prev = hi
        if prev < 1:
            out.append((prev, Fraction(1)))
        return IntervalSet(tuple(out))

    def difference(self, other: "IntervalSet") -> "IntervalSet":
        return self.intersection(other.complement())

    def measure_in(self, lo, hi) -> Number:
        """Measure of ``self ∩ [lo, hi)``."""
        total: Number = Fraction(0)
        for a, b in self.parts:
            if b <= lo:
                continue
            if a >= hi:
                break
            total += min(b, hi) - max(a, lo)
        return total

    def block_masses(self, cuts: Sequence[Number]) -> list:
        """Measures of the intersection with each block ``[c_{k-1}, c_k)``."""
        return [self.measure_in(cuts[k - 1], cuts[k]) for k in range(1, len(cuts))]

    def to_text(self) -> str:
        return ",".join(f"{_fmt(lo)}:{_fmt(hi)}" for lo, hi in self.parts)

    def to_json(self) -> list:
        return [[_json_num(lo), _json_num(hi)] for lo, hi in self.parts]


def _fmt(x: Number) -> str:
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else str(x.numerator)
    return repr(float(x))


def _json_num(x: Number) -> float:
    return float(x)


def normalize(raw: Iterable[Tuple[Real, Real]]) -> IntervalSet:
    """Sort and merge ``(lo, hi)`` pairs into an :class:`IntervalSet`.

    Degenerate pairs (``lo == hi``) are dropped; overlapping or touching
    pairs are merged.
    """
    pairs = []
    for item in raw:
        try:
            lo, hi = item
        except (TypeError, ValueError) as exc:
            raise InputError(f"expected (lo, hi), got {item!r}") from exc
        lo, hi = as_number(lo), as_number(hi)
        if not (0 <= lo <= 1 and 0 <= hi <= 1):
            raise InputError(f"interval ({lo}, {hi}) not inside [0, 1]")
        if lo > hi:
            raise InputError(f"interval ({lo}, {hi}) has lo > hi")
        if lo < hi:
            pairs.append((lo, hi))
    pairs.sort(key=lambda p: (p[0], p[1]))
    merged: list = []
    for lo, hi in pairs:
        if merged and lo <= merged[-1][1]:
            if hi > merged[-1][1]:
                merged[-1] = (merged[-1][0], hi)
        else:
            merged.append((lo, hi))
    return IntervalSet(tuple(merged))


def parse_interval_set(text: str) -> IntervalSet:
    """Parse the CLI form ``"0:0.25,0.5:0.75"``."""
    text = text.strip()
    if not text:
        return IntervalSet.empty()
    raw = []
    for chunk in text.split(","):
        if ":" not in chunk:
            raise InputError(f"bad interval {chunk!r}; expected lo:hi")
        lo, hi = chunk.split(":", 1)
        raw.append((as_number(lo), as_number(hi)))
    return normalize(raw)


def union(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return a.union(b)


def intersection(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return a.intersection(b)


def complement(a: IntervalSet) -> IntervalSet:
    return a.complement()


def set_algebra(a: IntervalSet, b: IntervalSet) -> dict:
    return {
        "union": a.union(b),
        "intersection": a.intersection(b),
        "complement": a.complement(),
        "measure": a.measure,
    }


def _frac_part(t: Number) -> Number:
    return t - math.floor(t)


def translate_mod1(a: IntervalSet, t: Number) -> IntervalSet:
    """The rotated set ``a + t (mod 1)``; wrapping parts are split in two."""
    t = _frac_part(as_number(t))
    if t == 0:
        return a
    raw = []
    for lo, hi in a.parts:
        lo2, hi2 = lo + t, hi + t
        if hi2 <= 1:
            raw.append((lo2, hi2))
        elif lo2 >= 1:
            raw.append((lo2 - 1, hi2 - 1))
        else:
            raw.append((lo2, 1))
            raw.append((0, hi2 - 1))
    return _normalize_clamped(raw)


def _normalize_clamped(raw) -> IntervalSet:
    # float rounding can push an endpoint a hair outside [0, 1]
    fixed = []
    for lo, hi in raw:
        lo = min(max(lo, 0), 1)
        hi = min(max(hi, 0), 1)
        fixed.append((lo, hi))
    return normalize(fixed)


def doubling_preimage(a: IntervalSet, n: int) -> IntervalSet:
    """``S^{-n}(a)`` for the doubling map ``S(x) = 2x mod 1``."""
    if n < 0:
        raise InputError("n must be non-negative")
    cur = a
    for _ in range(n):
        raw = []
        for lo, hi in cur.parts:
            raw.append((lo / 2, hi / 2))
            raw.append(((lo + 1) / 2, (hi + 1) / 2))
        cur = normalize(raw)
    return cur


@dataclass(frozen=True)
class StepFunction:
    """Piecewise-constant function: ``values[k]`` on ``[cuts[k], cuts[k+1])``."""

    cuts: Tuple[Number, ...]
    values: Tuple[Number, ...]

    def __post_init__(self):
        cuts = tuple(as_number(c) for c in self.cuts)
        values = tuple(as_number(v) for v in self.values)
        if len(cuts) < 2 or cuts[0] != 0 or cuts[-1] != 1:
            raise InputError("cuts must start at 0 and end at 1")
        if any(cuts[k] >= cuts[k + 1] for k in range(len(cuts) - 1)):
            raise InputError("cuts must be strictly increasing")
        if len(values) != len(cuts) - 1:
            raise InputError(f"expected {len(cuts) - 1} values, got {len(values)}")
        object.__setattr__(self, "cuts", cuts)
        object.__setattr__(self, "values", values)

    @classmethod
    def uniform(cls, values: Sequence) -> "StepFunction":
        m = len(values)
        return cls(tuple(Fraction(k, m) for k in range(m + 1)), tuple(values))

    @property
    def lengths(self) -> Tuple[Number, ...]:
        return tuple(self.cuts[k + 1] - self.cuts[k] for k in range(len(self.values)))

    def __call__(self, x) -> Number:
        for k in range(len(self.values)):
            if x < self.cuts[k + 1]:
                return self.values[k]
        return self.values[-1]

    def refine(self, cuts: Sequence[Number]) -> "StepFunction":
        """Re-express on a finer partition that contains all of ``self.cuts``."""
        cuts = tuple(as_number(c) for c in cuts)
        missing = set(self.cuts) - set(cuts)
        if missing:
            raise InputError(f"partition does not refine the function's cuts (missing {sorted(missing)[:3]})")
        vals = []
        k = 0
        for j in range(len(cuts) - 1):
            while cuts[j] >= self.cuts[k + 1]:
                k += 1
            vals.append(self.values[k])
        return StepFunction(cuts, tuple(vals))

    def map(self, fn) -> "StepFunction":
        return StepFunction(self.cuts, tuple(fn(v) for v in self.values))


def common_refinement(*cut_lists: Sequence[Number]) -> Tuple[Number, ...]:
    return tuple(sorted(set().union(*[set(as_number(c) for c in cl) for cl in cut_lists])))
