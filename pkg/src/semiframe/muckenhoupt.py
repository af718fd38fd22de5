"""Muckenhoupt-style interval diagnostics for weights on (0, 1).

The product of an interval average of a weight with the interval average of
its reciprocal is at least 1, and a weight belongs to the A2 class when that
product is uniformly bounded over subintervals. Piecewise-constant weights
with rational breakpoints are handled in exact Fraction arithmetic, because
the interesting plateaus here are far narrower than any floating-point
sampling grid can see.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

DYADIC_DEPTH = 14
MIN_PLATEAUS = 2
MAX_PLATEAUS = 12
GROWTH_FACTOR = 10.0            # candidate-ladder ratio growth for a NotInA2 call
IN_A2 = "InA2"
NOT_IN_A2 = "NotInA2"
UNDECIDED_A2 = "Inconclusive"


class ConstantWeight:
    """omega(x) = c."""

    def __init__(self, c):
        if c <= 0:
            raise ValueError("weight values must be positive")
        self.c = Fraction(c) if not isinstance(c, float) else c
        self.descriptor = {"kind": "constant", "value": float(c)}

    def average_power(self, q: int, a, b):
        return self.c ** q

    def sample(self, x):
        return np.full(np.shape(np.asarray(x)), float(self.c))

    def ess_bounds(self):
        return float(self.c), float(self.c)


class PowerWeight:
    """omega(x) = x^alpha on (0, 1); closed-form interval averages.

    Averages of omega^q over (a, b) with a = 0 are finite only for
    q * alpha > -1; otherwise math.inf is returned. The A2 ratio anchored at
    zero is scale-free, which the closed form preserves exactly by never
    forming b^alpha on its own.
    """

    def __init__(self, alpha: float):
        self.alpha = float(alpha)
        self.descriptor = {"kind": "power", "alpha": self.alpha}

    def average_power(self, q: int, a, b):
        p = q * self.alpha
        a, b = float(a), float(b)
        if a == 0.0:
            if p <= -1.0:
                return math.inf
            return b ** p / (p + 1.0)
        if p == -1.0:
            return math.log(b / a) / (b - a)
        return (b ** (p + 1) - a ** (p + 1)) / ((p + 1) * (b - a))

    def a2_ratio_anchored(self, q: int = 1):
        """A2 ratio of omega^q on (0, h), any h: the h-powers cancel."""
        p = q * self.alpha
        if abs(p) >= 1.0:
            return math.inf
        return 1.0 / ((1.0 + p) * (1.0 - p))

    def sample(self, x):
        return np.asarray(x, dtype=float) ** self.alpha

    def ess_bounds(self):
        if self.alpha > 0:
            return 0.0, 1.0
        if self.alpha < 0:
            return 1.0, math.inf
        return 1.0, 1.0


class PiecewiseWeight:
    """Piecewise-constant weight from rational breakpoints and values.

    pieces: list of (left, right, value) with exact endpoints covering (0, 1).
    All averaging is exact Fraction arithmetic.
    """

    def __init__(self, pieces, descriptor=None):
        self.pieces = [(Fraction(a), Fraction(b), Fraction(v)) for a, b, v in pieces]
        if self.pieces[0][0] != 0 or self.pieces[-1][1] != 1:
            raise ValueError("pieces must cover (0, 1)")
        for (a0, b0, _), (a1, b1, _) in zip(self.pieces, self.pieces[1:]):
            if b0 != a1 or a0 >= b0:
                raise ValueError("pieces must be increasing and contiguous")
        if any(v <= 0 for _, _, v in self.pieces):
            raise ValueError("weight values must be positive")
        self.descriptor = descriptor or {"kind": "piecewise",
                                         "pieces": len(self.pieces)}

    def average_power(self, q: int, a, b) -> Fraction:
        a, b = Fraction(a), Fraction(b)
        if not (0 <= a < b <= 1):
            raise ValueError("need 0 <= a < b <= 1")
        total = Fraction(0)
        for lo, hi, v in self.pieces:
            left, right = max(lo, a), min(hi, b)
            if left < right:
                total += (v ** q) * (right - left)
        return total / (b - a)

    def essential_sup(self, a=0, b=1) -> Fraction:
        a, b = Fraction(a), Fraction(b)
        return max(v for lo, hi, v in self.pieces
                   if max(lo, a) < min(hi, b))

    def sample(self, x):
        """Float evaluation with half-open pieces [left, right).

        Plateaus narrower than float resolution around a query point are
        invisible here by construction; exact work goes through
        average_power instead.
        """
        x = np.asarray(x, dtype=float)
        edges = np.array([float(b) for _, b, _ in self.pieces])
        vals = np.array([float(v) for _, _, v in self.pieces])
        idx = np.clip(np.searchsorted(edges, x, side="right"), 0, vals.size - 1)
        return vals[idx]

    def ess_bounds(self):
        vals = [v for _, _, v in self.pieces]
        return float(min(vals)), float(max(vals))

    def value_ladder(self) -> list:
        """(label, value) per piece, the exact supremum ladder by piece."""
        return [(i, float(v)) for i, (_, _, v) in enumerate(self.pieces, start=1)]


class SampledWeight:
    """Positive samples on the uniform cell partition of (0, 1).

    Cell i covers (i/M, (i+1)/M) with the sampled value held constant, so
    interval averages reduce to prefix sums with fractional end cells.
    """

    def __init__(self, values, descriptor=None):
        v = np.asarray(values, dtype=float)
        if v.ndim != 1 or v.size == 0 or np.any(v <= 0):
            raise ValueError("need a 1-d array of positive samples")
        self.values = v
        self.m = v.size
        self._prefix = {}
        self.descriptor = descriptor or {"kind": "sampled", "cells": self.m}

    def _prefix_for(self, q: int) -> np.ndarray:
        if q not in self._prefix:
            self._prefix[q] = np.concatenate([[0.0], np.cumsum(self.values ** q)])
        return self._prefix[q]

    def average_power(self, q: int, a, b) -> float:
        a, b = float(a), float(b)
        if not (0.0 <= a < b <= 1.0):
            raise ValueError("need 0 <= a < b <= 1")
        pre = self._prefix_for(q)
        xa, xb = a * self.m, b * self.m
        ia, ib = int(math.floor(xa)), int(math.ceil(xb))
        total = pre[ib] - pre[ia]
        total -= (xa - ia) * self.values[ia] ** q
        if ib > xb:
            total -= (ib - xb) * self.values[ib - 1] ** q
        return total / (xb - xa)

    def sample(self, x):
        x = np.asarray(x, dtype=float)
        idx = np.clip((x * self.m).astype(int), 0, self.m - 1)
        return self.values[idx]

    def ess_bounds(self):
        return float(self.values.min()), float(self.values.max())


class ScaledWeight:
    """omega(x) = base(x / scale): delegates to the base on the unscaled
    interval, so anchored ratios are exactly scale invariant."""

    def __init__(self, base, scale):
        if float(scale) <= 0:
            raise ValueError("scale must be positive")
        self.base = base
        self.scale = scale
        self.descriptor = {"kind": "scaled", "scale": float(scale),
                           "base": getattr(base, "descriptor", None)}

    def average_power(self, q: int, a, b):
        s = self.scale
        return self.base.average_power(q, a / s, b / s)

    def sample(self, x):
        return self.base.sample(np.asarray(x, dtype=float) / float(self.scale))


def a2_ratio(weight, a, b, q: int = 1):
    """Interval A2 ratio of omega^q: avg(omega^q) * avg(omega^-q) on (a, b).

    Exact when the weight averages exactly; always >= 1 by the mean
    inequality, with equality only for constant weights.
    """
    mean = weight.average_power(q, a, b)
    mean_rec = weight.average_power(-q, a, b)
    if mean == math.inf or mean_rec == math.inf:
        return math.inf
    return mean * mean_rec


# ---------------------------------------------------------------------------
# the plateau weight


def plateau_breakpoints(k_max: int) -> list:
    """s_k = sum_{j=2}^{k} j^{-3j}, exact."""
    points, acc = [Fraction(0)], Fraction(0)
    for j in range(2, k_max + 1):
        acc += Fraction(1, j ** (3 * j))
        points.append(acc)
    return points


def plateau_weight(k_max: int, power: int = 1) -> PiecewiseWeight:
    """Stepped weight with value k^(power*k) on the k-th plateau.

    Plateau k (k = 2..k_max) spans (s_{k-1}, s_k) with s_k the partial sums
    of j^{-3j}; the remaining (s_{k_max}, 1) holds value 1. Plateau widths
    shrink super-exponentially, so interval ratios across consecutive
    plateaus grow without bound while any uniform sampling grid sees almost
    none of them.
    """
    if not MIN_PLATEAUS <= k_max <= MAX_PLATEAUS:
        raise ValueError(f"k_max must lie in [{MIN_PLATEAUS}, {MAX_PLATEAUS}]")
    pts = plateau_breakpoints(k_max)
    pieces = [(pts[k - 2], pts[k - 1], Fraction(k ** (power * k)))
              for k in range(2, k_max + 1)]
    pieces.append((pts[-1], Fraction(1), Fraction(1)))
    return PiecewiseWeight(pieces, descriptor={
        "kind": "plateau", "k_max": k_max, "power": power})


def plateau_candidates(k_max: int) -> list:
    """Intervals straddling each plateau boundary.

    I_k is centered at s_k with half-width (k+1)^{-3(k+1)} / 2, which puts
    its left half inside plateau k and its right half inside plateau k+1
    (or the trailing region when k = k_max). Returns (k, a, b) triples.
    """
    pts = plateau_breakpoints(k_max)
    out = []
    for k in range(2, k_max + 1):
        eps = Fraction(1, 2 * (k + 1) ** (3 * (k + 1)))
        out.append((k, pts[k - 1] - eps, pts[k - 1] + eps))
    return out


def plateau_ratio_closed_form(k: int, power: int = 1) -> Fraction:
    """Exact ratio on the straddling interval I_k for consecutive plateaus.

    With r = (k+1)^(p(k+1)) / k^(pk) the two half-averages multiply out to
    (2 + r + 1/r) / 4, which already exceeds (k+1)^(2p) / 4.
    """
    r = Fraction((k + 1) ** (power * (k + 1)), k ** (power * k))
    return (2 + r + 1 / r) / 4


# ---------------------------------------------------------------------------
# estimation


@dataclass
class A2Report:
    verdict: str
    constant_estimate: float
    witnesses: list = field(default_factory=list)   # (label, a, b, ratio) strings
    detail: str = ""

    def __bool__(self):
        return self.verdict == IN_A2


def _interval_label(a, b) -> str:
    af, bf = float(a), float(b)
    return f"({af:.6e}, {bf:.6e})"


def a2_estimate(weight, candidates=None, depth: int = DYADIC_DEPTH,
                q: int = 1, bound: float = 1e6) -> A2Report:
    """Estimate the A2 constant of omega^q and classify the weight.

    Scans all dyadic subintervals of (0, 1) down to the given depth, plus
    any caller-supplied candidate intervals (k, a, b). A candidate ladder
    whose ratios keep growing forces NotInA2 with the witnesses recorded;
    otherwise a supremum that has stopped moving between the two deepest
    dyadic generations is reported as the constant.
    """
    witnesses = []
    if candidates:
        ladder = []
        for k, a, b in candidates:
            r = a2_ratio(weight, a, b, q=q)
            ladder.append(float(r))
            witnesses.append((f"candidate-{k}", _interval_label(a, b), float(r)))
        if len(ladder) >= 3:
            grew = all(u < v for u, v in zip(ladder, ladder[1:]))
            if (grew and ladder[-1] > GROWTH_FACTOR * ladder[0]) \
                    or ladder[-1] > bound:
                return A2Report(NOT_IN_A2, math.inf, witnesses,
                                "candidate interval ratios grow without sign of a cap")

    sup_by_level = []
    best = (1.0, None)
    for level in range(depth + 1):
        step = Fraction(1, 2 ** level)
        sup = 1.0
        for j in range(2 ** level):
            a, b = j * step, (j + 1) * step
            r = float(a2_ratio(weight, a, b, q=q))
            if r > sup:
                sup = r
                if r > best[0]:
                    best = (r, (a, b))
        sup_by_level.append(sup)
        if sup > bound:
            witnesses.append((f"dyadic-L{level}", _interval_label(*best[1]), sup))
            return A2Report(NOT_IN_A2, math.inf, witnesses,
                            "dyadic ratio exceeded the declared bound")
    if best[1] is not None:
        witnesses.append(("dyadic-sup", _interval_label(*best[1]), best[0]))
    tail_move = abs(sup_by_level[-1] - sup_by_level[-2]) / sup_by_level[-1]
    if tail_move < 0.05:
        return A2Report(IN_A2, sup_by_level[-1], witnesses,
                        f"dyadic suprema settled at depth {depth}")
    return A2Report(UNDECIDED_A2, sup_by_level[-1], witnesses,
                    "dyadic suprema still moving at the deepest level")
