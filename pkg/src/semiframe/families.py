"""Concrete vector families used by the scenario registry and the tests.

Index conventions: members are numbered from each family's start index and
live against the standard basis e_1, e_2, ... (1-based labels, 0-based
storage). Sparse constructors are provided so large truncations never
materialize dense rows unless asked to.
"""

from __future__ import annotations

import numpy as np

from .core import VectorFamily

# e_1 coefficient of every long-enough prefix of the interleaved family
INTERLEAVED_HEAD = 2.0 - 2.0 ** 1.2 + 2.0 ** 3.2

DIFFERENCE_POWER = 1.6          # 8/5, scale of the difference stream
DIAGONAL_POWER = 0.5            # scale of the diagonal stream
TARGET_POWER = -2.0             # decay of the probe vector h_n = n^-2


def orthonormal_family() -> VectorFamily:
    def gen(idx, d):
        v = np.zeros(d, dtype=complex)
        v[idx - 1] = 1.0
        return v

    def sparse(idx):
        return np.array([idx - 1]), np.array([1.0 + 0j])

    return VectorFamily(
        name="orthonormal", generator=gen, start_index=1,
        min_dim=lambda n: n, sparse=sparse, perp_directions=None,
        lower_bound_hint=1.0,
        descriptor={"kind": "orthonormal-basis"})


def shared_direction_family(power: float = 0.0, name: str | None = None) -> VectorFamily:
    """Members n^power (e_1 + e_n) for n >= 2.

    Every member leans on e_1, so e_1 itself is orthogonal to no member and
    the analysis domain closure misses it. power 0 keeps unit-size links;
    positive power makes the family unbounded while the expansion dual
    {e_n / n^power} stays Bessel.
    """

    def gen(idx, d):
        v = np.zeros(d, dtype=complex)
        w = float(idx) ** power
        v[0] += w
        v[idx - 1] += w
        return v

    def sparse(idx):
        w = float(idx) ** power
        return np.array([0, idx - 1]), np.array([w, w], dtype=complex)

    def perp(d):
        u = np.zeros((1, d), dtype=complex)
        u[0, 0] = 1.0
        return u

    return VectorFamily(
        name=name or f"shared-direction-p{power:g}", generator=gen,
        start_index=2, min_dim=lambda n: n + 1, sparse=sparse,
        perp_directions=perp,
        lower_bound_hint=1.0 if power == 0 else 2.0 ** (2 * power),
        descriptor={"kind": "shared-direction", "power": power})


def scaled_basis_family(power: float) -> VectorFamily:
    """Members n^power e_n; diagonal, so every diagnostic has a closed form."""

    def gen(idx, d):
        v = np.zeros(d, dtype=complex)
        v[idx - 1] = float(idx) ** power
        return v

    def sparse(idx):
        return np.array([idx - 1]), np.array([float(idx) ** power + 0j])

    return VectorFamily(
        name=f"scaled-basis-p{power:g}", generator=gen, start_index=1,
        min_dim=lambda n: n, sparse=sparse, perp_directions=None,
        lower_bound_hint=1.0 if power >= 0 else None,
        descriptor={"kind": "scaled-basis", "power": power})


def seeded_dense_family(seed: int) -> VectorFamily:
    """Dense complex Gaussian members, deterministic in (seed, index, d)."""

    def gen(idx, d):
        rng = np.random.default_rng([seed, idx, d])
        v = rng.normal(size=d) + 1j * rng.normal(size=d)
        return v / np.sqrt(2 * d)

    return VectorFamily(
        name=f"seeded-dense-{seed}", generator=gen, start_index=1,
        min_dim=lambda n: max(4, n // 2), sparse=None, perp_directions=None,
        descriptor={"kind": "seeded-dense", "seed": seed})


# ---------------------------------------------------------------------------
# interleaved difference family and its closed forms


def _telescoped(n):
    """n^{16/5} (n^-2 - (n-1)^-2) in cancellation-free form, n >= 2."""
    n = np.asarray(n, dtype=float)
    return -(2 * n - 1) * n ** 1.2 / (n - 1) ** 2


def interleaved_coefficients(k_lo: int, k_hi: int):
    """Per-coordinate prefix coefficients against the probe h_n = n^-2.

    After both streams pass coordinate n, its coefficient settles at
    alpha_n; mid-round the active coordinate k carries beta_k after the
    diagonal member and gamma_k after the difference member. All three are
    evaluated in telescoped form so no significance is lost to cancellation.
    Returns (alpha, beta, gamma) for indices k_lo..k_hi inclusive, k_lo >= 2.
    """
    if k_lo < 2:
        raise ValueError("coefficients start at index 2")
    k = np.arange(k_lo, k_hi + 1, dtype=float)
    u_k = _telescoped(k)
    u_next = _telescoped(k + 1)
    alpha = u_k - u_next + 1.0 / k
    beta = u_k + 1.0 / k
    gamma = u_k
    return alpha, beta, gamma


def interleaved_prefix_norms(m_max: int) -> np.ndarray:
    """Norms of the first m partial sums of the frame-operator series at h.

    Closed form: the e_1 coefficient freezes at INTERLEAVED_HEAD once the
    third member lands, interior coordinates freeze at alpha_n, and the live
    coordinate alternates between gamma_k and beta_k. Valid for every m, so
    the strong-sum growth is measurable far beyond dense truncations.
    """
    if m_max < 1:
        raise ValueError("need at least one prefix")
    norms_sq = np.empty(m_max)
    norms_sq[0] = 1.0
    if m_max >= 2:
        norms_sq[1] = 4.0
    if m_max >= 3:
        k_top = (m_max + 1) // 2
        alpha, beta, gamma = interleaved_coefficients(2, k_top + 1)
        head = INTERLEAVED_HEAD ** 2
        # settled[j] = sum of alpha_n^2 for n = 2..(j+1); settled[-1] -> empty
        settled = np.concatenate([[0.0], np.cumsum(alpha ** 2)])
        for m in range(3, m_max + 1):
            k = (m + 1) // 2
            live = gamma[k - 2] if m % 2 == 1 else beta[k - 2]
            norms_sq[m - 1] = head + settled[k - 2] + live ** 2
    return np.sqrt(norms_sq)


def interleaved_difference_family() -> VectorFamily:
    """Two interleaved streams: difference members n^{8/5}(e_n - e_{n-1})
    led by e_1, and diagonal members sqrt(n) e_n.

    The diagonal stream keeps coefficient pairings summable for polynomially
    decaying probes while the difference stream makes the pointwise operator
    sums grow, so the quadratic-form domain strictly exceeds the strong one.
    """

    def member(idx):
        if idx % 2 == 1:
            k = (idx + 1) // 2
            if k == 1:
                return np.array([0]), np.array([1.0 + 0j])
            w = float(k) ** DIFFERENCE_POWER
            return np.array([k - 2, k - 1]), np.array([-w, w], dtype=complex)
        k = idx // 2
        return np.array([k - 1]), np.array([np.sqrt(float(k)) + 0j])

    def gen(idx, d):
        v = np.zeros(d, dtype=complex)
        pos, val = member(idx)
        v[pos] = val
        return v

    def sparse(idx):
        return member(idx)

    return VectorFamily(
        name="interleaved-difference", generator=gen, start_index=1,
        min_dim=lambda n: (n + 1) // 2, sparse=sparse, perp_directions=None,
        prefix_norm_rule=lambda ms: interleaved_prefix_norms(int(np.max(ms)))[
            np.asarray(ms, dtype=int) - 1],
        descriptor={"kind": "interleaved-difference",
                    "difference_power": DIFFERENCE_POWER,
                    "diagonal_power": DIAGONAL_POWER})


def decaying_probe(d: int, power: float = TARGET_POWER) -> np.ndarray:
    """The probe vector with entries n^power, default n^-2."""
    n = np.arange(1, d + 1, dtype=float)
    return (n ** power).astype(complex)
