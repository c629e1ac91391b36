import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oel.errors import InvalidInput, InvalidWeight
from oel.means import (
    OperatorPair,
    arithmetic_mean,
    dump_pair,
    generalized_entropy,
    geometric_mean,
    harmonic_mean,
    load_pair,
    mean_from_representing_function,
    natural_power_mean,
    quadrature_tsallis,
    relative_operator_entropy,
    tsallis_entropy,
)
from oel.sampler import SamplerConfig, commuting_spectra, sandwich_pair
from oel.scalars import harm_rep, power_log, tsallis_log
from oel.spd_core import SpdMatrix, symmetrize


def pair_from_seed(seed: int, n: int, sandwich=(0.25, 4.0)) -> OperatorPair:
    return sandwich_pair(SamplerConfig(seed=seed, n=n, sandwich=sandwich))


def test_pair_rejects_dimension_mismatch():
    with pytest.raises(InvalidInput):
        OperatorPair(np.eye(2), np.eye(3))


def test_pair_contraction_extremes_bound_b():
    pair = pair_from_seed(0, 4)
    w = np.linalg.eigvalsh(
        np.linalg.inv(np.linalg.cholesky(pair.A.mat)) @ pair.B.mat
        @ np.linalg.inv(np.linalg.cholesky(pair.A.mat)).T
    )
    assert pair.u == pytest.approx(w[0], rel=1e-10)
    assert pair.v == pytest.approx(w[-1], rel=1e-10)
    # u A <= B <= v A with the stated extremes
    assert np.linalg.eigvalsh(pair.B.mat - pair.u * pair.A.mat)[0] >= -1e-10
    assert np.linalg.eigvalsh(pair.v * pair.A.mat - pair.B.mat)[0] >= -1e-10


def test_with_second_reuses_roots():
    pair = pair_from_seed(1, 3)
    other = pair.with_second(2.0 * pair.B.mat)
    assert other.sqrt_a is pair.sqrt_a
    assert other.inv_sqrt_a is pair.inv_sqrt_a


def test_weight_gates():
    pair = pair_from_seed(2, 2)
    with pytest.raises(InvalidWeight):
        arithmetic_mean(pair, -0.1)
    with pytest.raises(InvalidWeight):
        harmonic_mean(pair, 1.1)
    with pytest.raises(InvalidWeight):
        geometric_mean(pair, 2.0)
    with pytest.raises(InvalidWeight):
        tsallis_entropy(pair, 1.5)
    with pytest.raises(InvalidWeight):
        quadrature_tsallis(pair, 0.0)


def test_quadrature_node_validation():
    pair = pair_from_seed(3, 2)
    with pytest.raises(InvalidInput):
        quadrature_tsallis(pair, 0.5, nodes=1)
    with pytest.raises(InvalidInput):
        quadrature_tsallis(pair, 0.5, nodes=2.5)


def test_harmonic_known_value():
    pair = OperatorPair(np.array([[1.0]]), np.array([[3.0]]))
    got = harmonic_mean(pair, 0.5)
    assert got.mat[0, 0] == pytest.approx(1.5, abs=1e-14)


def test_power_mean_endpoints_are_the_operands():
    pair = pair_from_seed(4, 3)
    assert natural_power_mean(pair, 0.0) is pair.A
    assert natural_power_mean(pair, 1.0) is pair.B


def test_tsallis_endpoint_formulas():
    pair = pair_from_seed(5, 4)
    a, b = pair.A.mat, pair.B.mat
    np.testing.assert_allclose(tsallis_entropy(pair, 1.0), b - a, atol=1e-12)
    lower = a - a @ np.linalg.solve(b, a)
    np.testing.assert_allclose(tsallis_entropy(pair, -1.0), symmetrize(lower), atol=1e-11)


def test_tsallis_zero_weight_is_relative_entropy():
    pair = pair_from_seed(6, 3)
    np.testing.assert_array_equal(tsallis_entropy(pair, 0.0), relative_operator_entropy(pair))


def test_tsallis_approaches_relative_entropy():
    pair = pair_from_seed(7, 4)
    s = relative_operator_entropy(pair)
    t = tsallis_entropy(pair, 1e-8)
    assert np.linalg.norm(t - s, 2) < 1e-7


def test_geometric_mean_matches_direct_construction():
    pair = pair_from_seed(8, 4)
    p = 0.37
    w, q = np.linalg.eigh(pair.A.mat)
    root = (q * np.sqrt(w)) @ q.T
    inv_root = (q / np.sqrt(w)) @ q.T
    c = inv_root @ pair.B.mat @ inv_root
    wc, qc = np.linalg.eigh(symmetrize(c))
    want = root @ ((qc * wc**p) @ qc.T) @ root
    np.testing.assert_allclose(geometric_mean(pair, p).mat, symmetrize(want), atol=1e-11)


def test_representing_function_reproduces_harmonic():
    pair = pair_from_seed(9, 3)
    p = 0.42
    lifted = mean_from_representing_function(lambda t: harm_rep(t, p), pair)
    np.testing.assert_allclose(lifted, harmonic_mean(pair, p).mat, atol=1e-11)


def test_commuting_pair_matches_eigenwise_formula():
    cfg = SamplerConfig(seed=10, n=5, sandwich=(0.5, 2.0))
    q, lam, mu = commuting_spectra(cfg)
    pair = OperatorPair(
        SpdMatrix(symmetrize((q * lam) @ q.T)), SpdMatrix(symmetrize((q * mu) @ q.T))
    )
    p = -0.6
    got = np.diag(q.T @ tsallis_entropy(pair, p) @ q)
    want = lam * tsallis_log(mu / lam, p)
    np.testing.assert_allclose(got, want, atol=1e-12)
    got_s = np.diag(q.T @ generalized_entropy(pair, p) @ q)
    np.testing.assert_allclose(got_s, lam * power_log(mu / lam, p), atol=1e-12)


@given(c=st.floats(min_value=0.1, max_value=10.0), p=st.floats(min_value=-1.0, max_value=1.0))
def test_entropies_are_positively_homogeneous(c, p):
    pair = pair_from_seed(11, 3)
    scaled = OperatorPair(c * pair.A.mat, c * pair.B.mat)
    np.testing.assert_allclose(
        tsallis_entropy(scaled, p), c * tsallis_entropy(pair, p), rtol=1e-9, atol=1e-11
    )


@given(p=st.floats(min_value=0.0, max_value=1.0))
def test_means_are_congruence_invariant(p):
    pair = pair_from_seed(12, 3)
    x = np.array([[1.0, 0.3, 0.0], [0.0, 0.8, -0.2], [0.1, 0.0, 1.2]])
    moved = OperatorPair(
        symmetrize(x @ pair.A.mat @ x.T), symmetrize(x @ pair.B.mat @ x.T)
    )
    want = x @ geometric_mean(pair, p).mat @ x.T
    np.testing.assert_allclose(geometric_mean(moved, p).mat, symmetrize(want), atol=1e-9)


def test_quadrature_identity_scalar_case():
    pair = OperatorPair(np.array([[1.0]]), np.array([[3.0]]))
    got = quadrature_tsallis(pair, 1.0)
    assert got[0, 0] == pytest.approx(2.0, abs=1e-12)


def test_quadrature_exact_when_operands_equal():
    a = pair_from_seed(13, 3).A
    pair = OperatorPair(a, a.mat.copy())
    resid = np.linalg.norm(quadrature_tsallis(pair, 0.5) - tsallis_entropy(pair, 0.5), 2)
    assert resid < 1e-14


def test_quadrature_converges_with_node_count():
    pair = pair_from_seed(14, 4, sandwich=(0.05, 20.0))
    closed = tsallis_entropy(pair, 1.0)
    r2 = np.linalg.norm(quadrature_tsallis(pair, 1.0, nodes=2) - closed, 2)
    r32 = np.linalg.norm(quadrature_tsallis(pair, 1.0, nodes=32) - closed, 2)
    assert r32 < r2
    assert r32 < 1e-10


def test_quadrature_matches_closed_form_across_weights():
    pair = pair_from_seed(15, 4)
    for p in (0.1, -0.1, 0.5, -0.5, 1.0, -1.0):
        resid = np.linalg.norm(quadrature_tsallis(pair, p) - tsallis_entropy(pair, p), 2)
        assert resid < 1e-12


def test_pair_io_roundtrip():
    pair = pair_from_seed(16, 3)
    back = load_pair(dump_pair(pair))
    np.testing.assert_array_equal(back.A.mat, pair.A.mat)
    np.testing.assert_array_equal(back.B.mat, pair.B.mat)


def test_load_pair_rejects_truncated_text():
    pair = pair_from_seed(17, 2)
    text = dump_pair(pair)
    with pytest.raises(InvalidInput):
        load_pair(text[: text.rfind("\n", 0, len(text) - 5)])
