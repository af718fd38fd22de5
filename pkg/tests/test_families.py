import numpy as np
import pytest

from semiframe.core import instantiate
from semiframe.families import (
    INTERLEAVED_HEAD, decaying_probe, interleaved_coefficients,
    interleaved_difference_family, interleaved_prefix_norms,
    orthonormal_family, scaled_basis_family, seeded_dense_family,
    shared_direction_family,
)

DENSE_MEMBERS = 119            # covers coordinate indices up to 60
DENSE_DIM = 64


def test_orthonormal_members():
    x = instantiate(orthonormal_family(), (5, 5))
    assert np.array_equal(x, np.eye(5, dtype=complex))


def test_shared_direction_sparse_matches_dense():
    fam = shared_direction_family(1.0)
    x = instantiate(fam, (6, 5))
    rows = [fam.generator(idx, 6) for idx in fam.indices(5)]
    assert np.array_equal(x, np.vstack(rows))
    # member n is n at coordinates 1 and n
    assert x[0, 0] == 2 and x[0, 1] == 2
    assert x[3, 0] == 5 and x[3, 4] == 5


def test_min_dim_enforced():
    fam = shared_direction_family(0.0)
    with pytest.raises(ValueError):
        instantiate(fam, (5, 5))


def test_scaled_basis_family():
    x = instantiate(scaled_basis_family(-0.5), (4, 4))
    assert np.allclose(np.diag(x), [1.0, 2 ** -0.5, 3 ** -0.5, 0.5])
    assert np.count_nonzero(x - np.diag(np.diag(x))) == 0


def test_seeded_dense_is_deterministic():
    a = instantiate(seeded_dense_family(3), (8, 12))
    b = instantiate(seeded_dense_family(3), (8, 12))
    c = instantiate(seeded_dense_family(4), (8, 12))
    assert np.array_equal(a, b)
    assert np.abs(a - c).max() > 1e-3


def test_decaying_probe_values():
    h = decaying_probe(4)
    assert np.allclose(h, [1.0, 0.25, 1.0 / 9, 1.0 / 16])
    assert np.allclose(decaying_probe(3, power=-1.0), [1.0, 0.5, 1.0 / 3])


def test_interleaved_member_layout():
    fam = interleaved_difference_family()
    x = instantiate(fam, (8, 9))
    assert np.array_equal(x[0], np.eye(8)[0])                 # first member e_1
    assert np.array_equal(x[1], np.eye(8)[0])                 # sqrt(1) e_1
    w = 2.0 ** 1.6
    assert x[2, 0] == -w and x[2, 1] == w                     # difference at k=2
    assert x[3, 1] == np.sqrt(2.0)                            # diagonal at k=2
    assert x[5, 2] == np.sqrt(3.0)                            # diagonal at k=3
    w3 = 3.0 ** 1.6
    assert x[4, 1] == -w3 and x[4, 2] == w3                   # difference at k=3


def test_interleaved_coefficients_match_direct_formula():
    # direct evaluation of n^{16/5} (n^-2 - (n-1)^-2); cancellation is mild
    # below n ~ 1e3, so both routes must agree there
    n = np.arange(2, 1001, dtype=float)
    u_direct = n ** 3.2 * (n ** -2.0 - (n - 1.0) ** -2.0)
    alpha, beta, gamma = interleaved_coefficients(2, 1000)
    assert np.allclose(gamma, u_direct, rtol=1e-8)
    assert np.allclose(beta, u_direct + 1.0 / n, rtol=1e-8)
    u_next = (n + 1) ** 3.2 * ((n + 1) ** -2.0 - n ** -2.0)
    assert np.allclose(alpha, u_direct - u_next + 1.0 / n, rtol=1e-6)
    with pytest.raises(ValueError):
        interleaved_coefficients(1, 5)


def test_interleaved_head_constant():
    assert INTERLEAVED_HEAD == 2.0 - 2.0 ** 1.2 + 2.0 ** 3.2


def test_prefix_norms_match_dense_partial_sums():
    """The closed-form prefix norms must reproduce a dense accumulation of
    the frame-operator series at the probe, member by member."""
    fam = interleaved_difference_family()
    x = instantiate(fam, (DENSE_DIM, DENSE_MEMBERS))
    h = decaying_probe(DENSE_DIM)
    coeffs = np.conj(x) @ h
    running = np.zeros(DENSE_DIM, dtype=complex)
    dense_norms = np.empty(DENSE_MEMBERS)
    for m in range(DENSE_MEMBERS):
        running += coeffs[m] * x[m]
        dense_norms[m] = np.linalg.norm(running)
    closed = interleaved_prefix_norms(DENSE_MEMBERS)
    assert np.max(np.abs(closed - dense_norms) / dense_norms) < 1e-10


def test_prefix_norm_rule_indexing():
    fam = interleaved_difference_family()
    ms = np.array([1, 2, 7, 50])
    rule = fam.prefix_norm_rule(ms)
    full = interleaved_prefix_norms(50)
    assert np.array_equal(rule, full[ms - 1])
    assert full[0] == 1.0 and full[1] == 2.0
    with pytest.raises(ValueError):
        interleaved_prefix_norms(0)


def test_prefix_norms_head_freezes_after_third_member():
    # e_1 coefficient after three members is the frozen head value
    fam = interleaved_difference_family()
    x = instantiate(fam, (4, 3))
    h = decaying_probe(4)
    coeffs = np.conj(x) @ h
    partial = (coeffs[:, None] * x).sum(axis=0)
    assert abs(partial[0] - INTERLEAVED_HEAD) < 1e-12


def test_settled_coefficient_scaling_trends_to_limit():
    # alpha_n * n**0.8 sits above 0.4 and walks down toward it; the gap
    # shrinks by the n**-0.2 factor per decade
    vals = []
    for n in (10 ** 2, 10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6):
        a, _, _ = interleaved_coefficients(n, n)
        vals.append(float(a[0] * n ** 0.8))
    gaps = [v - 0.4 for v in vals]
    assert all(g > 0 for g in gaps)
    assert all(g1 > g2 for g1, g2 in zip(gaps, gaps[1:]))
    assert abs(gaps[-1] / gaps[-2] - 10 ** -0.2) < 0.05
