"""Weighted exponential systems g(x) exp(2 pi i n b x) on the unit interval.

The weight enters only through |g|^2: with density b <= 1 the frame-type
operator is multiplication by |g|^2 / b, so frame bounds are the essential
bounds of the weight, reconstruction divides the weight back out, and basis
behavior beyond the frame inequalities is an interval-average (A2) question
about |g|^2. Sampling happens on midpoint nodes (i + 1/2) / M, which keeps
DFT phases exact for b = 1 after a half-node twist.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import VectorFamily, tail_diagnostic
from .muckenhoupt import (
    IN_A2, NOT_IN_A2, A2Report, a2_estimate, plateau_candidates,
)

DEFAULT_CELLS = 2 ** 12
YES, NO, UNDECIDED = "Yes", "No", "Undecided"


def frequency_of(member_index: int) -> int:
    """Canonical order 1, 2, 3, 4, 5, ... <-> frequencies 0, 1, -1, 2, -2, ..."""
    if member_index < 1:
        raise ValueError("members are numbered from 1")
    return member_index // 2 if member_index % 2 == 0 else -(member_index // 2)


def member_of(freq: int) -> int:
    if freq == 0:
        return 1
    return 2 * freq if freq > 0 else 2 * (-freq) + 1


def defer_negatives_ordering(n_count: int) -> np.ndarray:
    """Adversarial enumeration: 0, +1..+K first, then -K..-1.

    The negative block arrives in ascending frequency, so for probes with
    1/|n| coefficient decay the largest deferred coefficients land last and
    the partial sums cannot settle early. Needs an odd member count so the
    frequency window is symmetric.
    """
    if n_count % 2 == 0:
        raise ValueError("use an odd member count (symmetric frequency window)")
    k = (n_count - 1) // 2
    rows = [0] + [2 * f - 1 for f in range(1, k + 1)] \
        + [2 * f for f in range(k, 0, -1)]
    return np.array(rows)


@dataclass
class ExponentialSystem:
    """Exponentials at frequencies b*Z under a fixed weight.

    weight models |g|^2 through sample/average_power/ess_bounds; the
    generator g is its positive square root. m is the midpoint-grid cell
    count (a power of two keeps FFTs fast, any even count works).
    """

    weight: object
    b: float = 1.0
    m: int = DEFAULT_CELLS
    name: str = ""

    def __post_init__(self):
        if self.b <= 0:
            raise ValueError("density must be positive")
        if self.m < 4 or self.m % 2:
            raise ValueError("need an even grid with at least 4 cells")
        if not self.name:
            kind = getattr(self.weight, "descriptor", {}).get("kind", "weight")
            self.name = f"exponentials-{kind}-b{self.b:g}"

    def grid(self) -> np.ndarray:
        return (np.arange(self.m) + 0.5) / self.m

    def g_values(self) -> np.ndarray:
        return np.sqrt(np.asarray(self.weight.sample(self.grid()), dtype=float))


def family_on_grid(system: ExponentialSystem) -> VectorFamily:
    """The system as a vector family on its own grid (dimension = cells).

    Rows are normalized by sqrt(M) so finite-dimensional inner products
    approximate integrals over (0, 1).
    """
    g = system.g_values()
    x = system.grid()
    m = system.m

    def gen(idx, d):
        if d != m:
            raise ValueError("grid families live at dimension = cell count")
        f = frequency_of(idx)
        return g * np.exp(2j * np.pi * f * system.b * x) / np.sqrt(m)

    return VectorFamily(
        name=system.name, generator=gen, start_index=1,
        min_dim=lambda n: m, sparse=None, perp_directions=None,
        descriptor={"kind": "weighted-exponentials", "b": system.b,
                    "cells": m,
                    **getattr(system.weight, "descriptor", {})})


# ---------------------------------------------------------------------------
# analysis / synthesis at full window, b = 1


@dataclass
class ExponentialCoefficients:
    """Signed-frequency accessor over the DFT residue ring."""

    values: np.ndarray          # raw twisted-DFT output, index = freq mod M

    @property
    def size(self) -> int:
        return self.values.size

    def frequency(self, n: int) -> complex:
        if abs(n) > self.size // 2:
            raise ValueError("frequency outside the resolved band")
        return complex(self.values[n % self.size])


def analysis_exponentials(system: ExponentialSystem, f_values: np.ndarray
                          ) -> ExponentialCoefficients:
    """Coefficients (1/M) sum f conj(g) exp(-2 pi i n x_i) for all M
    frequencies, via one FFT plus the midpoint twist. b = 1 only."""
    if system.b != 1.0:
        raise ValueError("full-window FFT analysis needs b = 1")
    m = system.m
    h = np.asarray(f_values, dtype=complex) * np.conj(system.g_values())
    raw = np.fft.fft(h) / m
    # twist for n = 0..M-1 interpreted as signed frequencies mod M:
    # exp(-i pi n_signed / M) = exp(-i pi n / M) * (-1 adjustments) handled
    # by evaluating the twist on the signed representative directly.
    n = np.arange(m)
    signed = np.where(n <= m // 2, n, n - m)
    twist = np.exp(-1j * np.pi * signed / m)
    return ExponentialCoefficients(twist * raw)


def synthesis_exponentials(system: ExponentialSystem,
                           coeffs: ExponentialCoefficients,
                           weight_values: np.ndarray) -> np.ndarray:
    """sum_n c_n weight_values(x) exp(2 pi i n x) over the full window."""
    if system.b != 1.0:
        raise ValueError("full-window FFT synthesis needs b = 1")
    m = system.m
    n = np.arange(m)
    signed = np.where(n <= m // 2, n, n - m)
    untwisted = coeffs.values * np.exp(1j * np.pi * signed / m)
    series = np.fft.ifft(untwisted) * m
    return np.asarray(weight_values, dtype=complex) * series


def canonical_dual_values(system: ExponentialSystem) -> np.ndarray:
    """Grid values of the dual generator b / conj(g); refuses weights that
    come arbitrarily close to zero."""
    inf, _ = system.weight.ess_bounds()
    if inf <= 0:
        raise ValueError("dual generator unbounded: weight reaches zero")
    return system.b / np.conj(system.g_values())


def reconstruct_exponentials(system: ExponentialSystem,
                             f_values: np.ndarray) -> float:
    """Relative error of analysis -> dual synthesis at full window, b = 1.

    Exact on the grid up to roundoff: the full DFT window inverts the
    twisted transform, and the dual weight cancels the analysis weight.
    """
    coeffs = analysis_exponentials(system, f_values)
    rec = synthesis_exponentials(system, coeffs, canonical_dual_values(system))
    f = np.asarray(f_values, dtype=complex)
    return float(np.linalg.norm(rec - f) / np.linalg.norm(f))


def biorthogonality_gap(system: ExponentialSystem, n_max: int) -> float:
    """max |<dual_j, member_k> - delta_jk| over |j|, |k| <= n_max; b = 1 only.

    The pairing integrates (b/conj(g)) * conj(g) * exponentials, so the
    weight cancels exactly and midpoint sums of integer frequencies vanish.
    """
    if system.b != 1.0:
        raise ValueError("biorthogonality holds at critical density b = 1 only")
    x = system.grid()
    g = system.g_values()
    dual = canonical_dual_values(system)
    ns = np.arange(-n_max, n_max + 1)
    exps = np.exp(2j * np.pi * np.outer(ns, x))        # rows: freq j
    dual_rows = dual * exps
    member_rows = g * exps
    gram = (dual_rows @ member_rows.conj().T) / system.m
    return float(np.abs(gram - np.eye(ns.size)).max())


# ---------------------------------------------------------------------------
# frame-type operator


def t_mult(system: ExponentialSystem, f_values: np.ndarray) -> np.ndarray:
    """Multiplication form |g|^2 / b of the frame-type operator, b <= 1."""
    if system.b > 1.0:
        raise ValueError("multiplication form needs b <= 1")
    w = np.asarray(system.weight.sample(system.grid()), dtype=float)
    return (w / system.b) * np.asarray(f_values, dtype=complex)


def t_general(system: ExponentialSystem, f_values: np.ndarray) -> np.ndarray:
    """Folded form valid at any density: (g / b) sum_k (conj(g) f)(x - k/b)
    with zero extension outside (0, 1).

    For b <= 1 only the k = 0 term survives and this reduces to t_mult.
    The fold step M / b must be an integer so shifted copies land on nodes.
    """
    m = system.m
    shift = m / system.b
    if abs(shift - round(shift)) > 1e-9 * shift:
        raise ValueError("cell count must be divisible by the fold step M/b")
    shift = int(round(shift))
    g = system.g_values()
    h = np.conj(g) * np.asarray(f_values, dtype=complex)
    out = np.zeros(m, dtype=complex)
    k_max = int(math.ceil(system.b))
    for k in range(-k_max, k_max + 1):
        lo, hi = max(0, k * shift), min(m, m + k * shift)
        if lo < hi:
            out[lo:hi] += h[lo - k * shift:hi - k * shift]
    return (g / system.b) * out


# ---------------------------------------------------------------------------
# classification


@dataclass
class ExponentialClassification:
    name: str
    scope: str
    properties: dict
    ess_inf: float
    ess_sup: float

    def verdict(self, prop: str) -> str:
        return self.properties[prop][0]


def _weight_ladder(weight):
    ladder = getattr(weight, "value_ladder", None)
    return ladder() if ladder is not None else None


def _weight_candidates(weight):
    desc = getattr(weight, "descriptor", {})
    if desc.get("kind") == "plateau":
        return plateau_candidates(desc["k_max"])
    return None


def classify_exponentials(system: ExponentialSystem) -> ExponentialClassification:
    """Read the frame-type inequalities off the weight's essential bounds.

    With b <= 1 the operator is diagonal multiplication, so bounds are
    exact weight statements rather than grid estimates: the lower inequality
    holds with inf |g|^2 / b, the Bessel inequality with sup |g|^2 / b when
    finite. Stepped weights carry their exact per-piece value ladder; its
    growth certifies an unbounded supremum that sampling cannot exhibit.
    The basis question beyond the inequalities is delegated to the interval
    average test on |g|^2 and reported as the conditional-basis flag.
    """
    if system.b > 1.0:
        raise ValueError("classification assumes density b <= 1")
    inf_w, sup_w = system.weight.ess_bounds()
    props = {}
    scope = "whole-space" if inf_w > 0 else "closed-span"

    ladder = _weight_ladder(system.weight)
    if ladder is not None and len(ladder) >= 4:
        # drop the trailing plateau: value ladders end on the filler piece
        sizes = [i for i, _ in ladder[:-1]]
        vals = [v for _, v in ladder[:-1]]
        v = tail_diagnostic(vals, sizes, rel_tol=1e-9, r2_threshold=0.9)
        if v.kind == "Divergent":
            props["bessel"] = (NO, {"value_ladder_exponent": v.growth_exponent})
        elif math.isfinite(sup_w):
            props["bessel"] = (YES, {"bound": sup_w / system.b})
        else:
            props["bessel"] = (UNDECIDED, {"detail": v.detail})
    elif math.isfinite(sup_w):
        props["bessel"] = (YES, {"bound": sup_w / system.b})
    else:
        props["bessel"] = (NO, {"bound": math.inf})

    if inf_w > 0:
        props["lower_bound"] = (YES, {"bound": inf_w / system.b})
    else:
        props["lower_bound"] = (NO, {"bound": 0.0})

    bessel_yes = props["bessel"][0] == YES
    lower_yes = props["lower_bound"][0] == YES
    props["frame"] = (
        YES if bessel_yes and lower_yes
        else NO if props["bessel"][0] == NO or props["lower_bound"][0] == NO
        else UNDECIDED,
        {"from": ("bessel", "lower_bound")})

    if system.b == 1.0:
        a2 = a2_estimate(system.weight, candidates=_weight_candidates(system.weight))
        flag = YES if a2.verdict == IN_A2 else NO if a2.verdict == NOT_IN_A2 \
            else UNDECIDED
        props["conditional_basis"] = (flag, {"a2": a2.verdict,
                                             "constant": a2.constant_estimate})
        props["unconditional_basis"] = (props["frame"][0],
                                        {"same_as": "frame, at b = 1"})
    return ExponentialClassification(system.name, scope, props, inf_w, sup_w)


def schauder_flag(system: ExponentialSystem) -> tuple:
    """(A2Report, Yes/No/Undecided) for the basis-with-ordering question."""
    a2 = a2_estimate(system.weight, candidates=_weight_candidates(system.weight))
    flag = YES if a2.verdict == IN_A2 else NO if a2.verdict == NOT_IN_A2 \
        else UNDECIDED
    return a2, flag
