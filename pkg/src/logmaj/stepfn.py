"""Exact arithmetic on non-increasing step functions on [0, 1).

A StepFunction models a generalized singular-value function: piecewise
constant, non-increasing, with right-evaluation realizing the
right-continuous variant mu_t and left-evaluation the left-continuous
variant mu_t^l.  All integration is done piecewise and exactly (up to
float rounding of the endpoint arithmetic); log of a zero piece meeting
the integration set yields -inf instead of raising.
"""

from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .errors import (
    BadIntervalSet,
    MeasureMismatch,
    NegativeValues,
    NotInvertible,
    NotMonotone,
    NotPartition,
    OutOfDomain,
)

NEG_INFINITY = float("-inf")


@dataclass(frozen=True)
class StepFunction:
    """Non-increasing step function on [0, 1).

    breakpoints: 0 = t_0 < t_1 < ... < t_m = 1 (exact floats, never merged
    by epsilon); values: v_1 > v_2 > ... > v_m, value v_i taken on piece i.
    Canonical form merges adjacent pieces with exactly equal values, so the
    strict decrease above holds by construction.
    """

    breakpoints: tuple
    values: tuple

    @property
    def npieces(self) -> int:
        return len(self.values)

    def pieces(self) -> Iterator[tuple]:
        """Yield (a, b, v) for each piece [a, b) with value v."""
        for i, v in enumerate(self.values):
            yield self.breakpoints[i], self.breakpoints[i + 1], v

    def to_jsonable(self) -> dict:
        return {"breakpoints": list(self.breakpoints), "values": list(self.values)}

    def __str__(self) -> str:
        return "; ".join(
            f"{v:.12g} on [{a:.12g}, {b:.12g})" for a, b, v in self.pieces()
        )


def make_step(breaks: Sequence[float], vals: Sequence[float]) -> StepFunction:
    """Build a canonical StepFunction, validating partition and monotonicity.

    Validation is exact (tolerance 0); adjacent pieces with equal values are
    merged so the canonical form has strictly decreasing values.
    """
    breaks = [float(b) for b in breaks]
    vals = [float(v) for v in vals]
    if len(breaks) < 2 or len(vals) != len(breaks) - 1:
        raise NotPartition(f"need m+1 breakpoints for m values, got {len(breaks)}/{len(vals)}")
    if breaks[0] != 0.0 or breaks[-1] != 1.0:
        raise NotPartition(f"breakpoints must span [0, 1], got [{breaks[0]}, {breaks[-1]}]")
    for a, b in zip(breaks, breaks[1:]):
        if not a < b:
            raise NotPartition(f"breakpoints not strictly increasing at {a}, {b}")
    for u, w in zip(vals, vals[1:]):
        if u < w:
            raise NotMonotone(f"values increase from {u} to {w}")
    out_breaks = [breaks[0]]
    out_vals = []
    for i, v in enumerate(vals):
        if out_vals and v == out_vals[-1]:
            continue
        if out_vals:
            out_breaks.append(breaks[i])
        out_vals.append(v)
    out_breaks.append(1.0)
    return StepFunction(tuple(out_breaks), tuple(out_vals))


def constant(c: float) -> StepFunction:
    return make_step([0.0, 1.0], [c])


def eval_right(f: StepFunction, t: float) -> float:
    """Value of the piece containing t under the [t_{i-1}, t_i) convention."""
    if not 0.0 <= t < 1.0:
        raise OutOfDomain(f"right evaluation needs 0 <= t < 1, got {t}")
    i = bisect_right(f.breakpoints, t) - 1
    return f.values[i]


def eval_left(f: StepFunction, t: float) -> float:
    """Value of the piece containing t under the (t_{i-1}, t_i] convention."""
    if not 0.0 < t <= 1.0:
        raise OutOfDomain(f"left evaluation needs 0 < t <= 1, got {t}")
    i = bisect_left(f.breakpoints, t) - 1
    return f.values[i]


def reflect_neg_general(f: StepFunction) -> StepFunction:
    """s -> -eval_left(f, 1-s) for any non-increasing step function."""
    breaks = [1.0 - b for b in reversed(f.breakpoints)]
    breaks[0], breaks[-1] = 0.0, 1.0
    vals = [-v + 0.0 for v in reversed(f.values)]  # +0.0 normalizes -0.0
    return make_step(breaks, vals)


def reflect_neg(f: StepFunction) -> StepFunction:
    """Step function of the negation: s -> -eval_left(f, 1-s), canonicalized.

    Requires values >= 0 (f plays the role of a singular-value function of
    a positive element); reflect_neg_general drops that contract, which makes
    the reflection an involution.
    """
    if f.values[-1] < 0.0:
        raise NegativeValues(f"reflect_neg needs values >= 0, min is {f.values[-1]}")
    return reflect_neg_general(f)


def invert_flip(f: StepFunction) -> StepFunction:
    """Step function g with eval_left(g, t) == 1 / eval_right(f, 1-t).

    Realizes inversion composed with the measure-reversing flip; requires
    strictly positive values.
    """
    if f.values[-1] <= 0.0:
        raise NotInvertible(f"invert_flip needs values > 0, min is {f.values[-1]}")
    breaks = [1.0 - b for b in reversed(f.breakpoints)]
    breaks[0], breaks[-1] = 0.0, 1.0
    vals = [1.0 / v for v in reversed(f.values)]
    return make_step(breaks, vals)


def rearrange(pieces: Iterable[tuple]) -> StepFunction:
    """Decreasing rearrangement of (value, measure) pieces into a StepFunction.

    Measures must sum to 1 (within 1e-12 of float accumulation; the final
    breakpoint is pinned to exactly 1.0).  Zero-measure pieces are dropped.
    """
    pieces = [(float(v), float(m)) for v, m in pieces]
    if any(m < 0.0 for _, m in pieces):
        raise MeasureMismatch("piece measures must be >= 0")
    total = math.fsum(m for _, m in pieces)
    if abs(total - 1.0) > 1e-12:
        raise MeasureMismatch(f"piece measures sum to {total!r}, expected 1")
    pieces = [(v, m) for v, m in pieces if m > 0.0]
    pieces.sort(key=lambda p: -p[0])
    breaks = [0.0]
    vals = []
    acc = 0.0
    for v, m in pieces:
        acc += m
        breaks.append(acc)
        vals.append(v)
    breaks[-1] = 1.0
    return make_step(breaks, vals)


def scale_shift(f: StepFunction, scale: float = 1.0, shift: float = 0.0) -> StepFunction:
    """The step function scale*f + shift; scale must be > 0 to keep monotonicity."""
    if scale <= 0.0:
        raise NotMonotone(f"scale must be positive, got {scale}")
    return make_step(f.breakpoints, [scale * v + shift for v in f.values])


# -- interval sets ------------------------------------------------------------


@dataclass(frozen=True)
class IntervalSet:
    """Finite union of disjoint half-open subintervals [a_k, b_k) of [0, 1]."""

    intervals: tuple

    @property
    def measure(self) -> float:
        return math.fsum(b - a for a, b in self.intervals)

    def reflect(self) -> "IntervalSet":
        """The set {1 - s : s in K}, again as sorted half-open intervals."""
        pairs = [(1.0 - b, 1.0 - a) for a, b in reversed(self.intervals)]
        pairs = [(max(0.0, a), min(1.0, b)) for a, b in pairs]
        return IntervalSet(tuple(pairs))

    def to_jsonable(self) -> list:
        return [[a, b] for a, b in self.intervals]

    def __str__(self) -> str:
        return " u ".join(f"[{a:.12g}, {b:.12g})" for a, b in self.intervals)


def make_interval_set(pairs: Iterable[tuple]) -> IntervalSet:
    pairs = [(float(a), float(b)) for a, b in pairs]
    for a, b in pairs:
        if not (0.0 <= a < b <= 1.0):
            raise BadIntervalSet(f"bad interval [{a}, {b})")
    for (_, b1), (a2, _) in zip(pairs, pairs[1:]):
        if b1 > a2:
            raise BadIntervalSet("intervals overlap or are unsorted")
    return IntervalSet(tuple(pairs))


def full_interval() -> IntervalSet:
    return make_interval_set([(0.0, 1.0)])


def prefix_interval(t: float) -> IntervalSet:
    """The interval [0, t); t = 0 gives the empty set."""
    if t == 0.0:
        return IntervalSet(())
    return make_interval_set([(0.0, t)])


# -- integration ---------------------------------------------------------------


def integrate_log(f: StepFunction, K: IntervalSet) -> float:
    """Exact sum over pieces of m(piece ∩ K) * log(value).

    Returns -inf when a zero-valued piece meets K with positive measure.
    Values must be >= 0.
    """
    return integrate_log_mapped(f, K)


def integrate_log_mapped(
    f: StepFunction, K: IntervalSet, fn: Callable[[float], float] | None = None
) -> float:
    """Exact value of the integral of log(fn(f(s))) over K.

    fn defaults to the identity; it is applied to each piece value before the
    log, so transformed integrands like log(1 + f) or log((1+f)/(1-f)) stay
    exact piecewise sums.  A transformed value of 0 on a piece meeting K
    gives -inf; a negative transformed value indicates a violated
    precondition upstream and raises.
    """
    if f.values[-1] < 0.0 and fn is None:
        raise NegativeValues("integrate_log needs values >= 0")
    terms = []
    has_neg_inf = False
    for a, b, v in f.pieces():
        overlap = _overlap_measure(a, b, K)
        if overlap <= 0.0:
            continue
        w = fn(v) if fn is not None else v
        if w < 0.0:
            raise NegativeValues(f"log integrand negative ({w}) on piece [{a}, {b})")
        if w == 0.0:
            has_neg_inf = True
            continue
        terms.append(overlap * math.log(w))
    if has_neg_inf:
        return NEG_INFINITY
    return math.fsum(terms)


def _overlap_measure(a: float, b: float, K: IntervalSet) -> float:
    total = 0.0
    for ka, kb in K.intervals:
        lo = a if a > ka else ka
        hi = b if b < kb else kb
        if hi > lo:
            total += hi - lo
    return total


# -- comparison helpers ---------------------------------------------------------


def merged_pieces(f: StepFunction, g: StepFunction) -> Iterator[tuple]:
    """Yield (a, b, vf, vg) over the union partition of both break sets."""
    breaks = sorted(set(f.breakpoints) | set(g.breakpoints))
    for a, b in zip(breaks, breaks[1:]):
        yield a, b, eval_right(f, a), eval_right(g, a)


def step_max_abs_diff(f: StepFunction, g: StepFunction, min_width: float = 1e-12) -> float:
    """Max |f - g| over the merged partition.

    Pieces narrower than min_width are ignored: they arise only from 1-ulp
    breakpoint mismatches under reflection of non-dyadic grids and carry no
    integral weight.
    """
    worst = 0.0
    for a, b, vf, vg in merged_pieces(f, g):
        if b - a < min_width:
            continue
        d = abs(vf - vg)
        if d > worst:
            worst = d
    return worst


def cumulative_at(
    f: StepFunction, ts: Sequence[float], fn: Callable[[float], float]
) -> list:
    """Values of t -> integral_0^t fn(f(s)) ds at each t of the sorted ts.

    fn is applied to piece values; fn results may be -inf (log conventions),
    in which case every later cumulative value is -inf as well.
    """
    out = []
    acc = 0.0
    idx = 0
    prev = 0.0
    breaks = f.breakpoints
    vals = [fn(v) for v in f.values]
    for t in ts:
        if t < prev:
            raise OutOfDomain("ts must be sorted ascending")
        while idx < len(vals) and breaks[idx + 1] <= t:
            acc = _acc_add(acc, breaks[idx + 1] - prev, vals[idx])
            prev = breaks[idx + 1]
            idx += 1
        if t > prev:
            acc_t = _acc_add(acc, t - prev, vals[idx])
        else:
            acc_t = acc
        out.append(acc_t)
        if t > prev:
            acc = acc_t
            prev = t
    return out


def _acc_add(acc: float, width: float, val: float) -> float:
    # width 0 contributes nothing even against a -inf integrand
    if width <= 0.0:
        return acc
    if acc == NEG_INFINITY or val == NEG_INFINITY:
        return NEG_INFINITY
    return acc + width * val
