import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from blockfunc.errors import DimensionError, NormError
from blockfunc.linalg import (
    complete_to_unitary,
    dilate_to_unitary,
    eig_hermitian,
    is_hermitian,
    is_unitary,
    jacobi_eigh,
    mul,
    num_qubits,
    spectral_norm,
    sqrt_psd,
    unitarity_defect,
)

from conftest import random_matrix

finite = st.floats(-3, 3, allow_nan=False, allow_infinity=False)


def complex_matrices(dim):
    return st.builds(
        lambda re, im: re + 1j * im,
        arrays(np.float64, (dim, dim), elements=finite),
        arrays(np.float64, (dim, dim), elements=finite),
    )


def triple_loop(a, b):
    out = np.zeros((a.shape[0], b.shape[1]), dtype=complex)
    for i in range(a.shape[0]):
        for j in range(b.shape[1]):
            for k in range(a.shape[1]):
                out[i, j] += a[i, k] * b[k, j]
    return out


def power_iteration_norm(a, iters=2000):
    v = np.ones(a.shape[1], dtype=complex)
    g = a.conj().T @ a
    for _ in range(iters):
        w = g @ v
        nrm = np.linalg.norm(w)
        if nrm == 0:
            return 0.0
        v = w / nrm
    return float(np.sqrt(np.real(v.conj() @ g @ v)))


def test_mul_matches_triple_loop(rng):
    a, b = random_matrix(rng, 4), random_matrix(rng, 4)
    np.testing.assert_allclose(mul(a, b), triple_loop(a, b), atol=1e-13)


def test_mul_rejects_mismatch():
    with pytest.raises(DimensionError):
        mul(np.eye(2), np.eye(4))


@pytest.mark.parametrize("dim", [1, 2, 4, 8, 16])
def test_num_qubits(dim):
    assert 2 ** num_qubits(dim) == dim


def test_num_qubits_rejects_non_power():
    with pytest.raises(DimensionError):
        num_qubits(6)


@given(complex_matrices(4))
def test_jacobi_agrees_with_lapack(g):
    h = g + g.conj().T
    lam_j, v_j = jacobi_eigh(h)
    lam_l, _ = eig_hermitian(h)
    scale = max(1.0, np.abs(lam_l).max())
    np.testing.assert_allclose(lam_j, lam_l, atol=1e-12 * scale)
    np.testing.assert_allclose(v_j @ np.diag(lam_j) @ v_j.conj().T, h, atol=1e-11 * scale)
    assert unitarity_defect(v_j) < 1e-12


def test_eig_backends_reconstruct(rng):
    g = random_matrix(rng, 16)
    h = g + g.conj().T
    for method in ("lapack", "jacobi"):
        lam, v = eig_hermitian(h, method=method)
        assert np.all(np.diff(lam) >= 0)
        np.testing.assert_allclose((v * lam) @ v.conj().T, h, atol=1e-12)


def test_spectral_norm_of_diagonal():
    assert spectral_norm(np.diag([0.5, -3.0, 2j])) == pytest.approx(3.0, rel=1e-14)


@given(complex_matrices(4))
def test_spectral_norm_against_power_iteration(a):
    assert spectral_norm(a) == pytest.approx(power_iteration_norm(a), rel=1e-6, abs=1e-12)


def test_spectral_norm_rectangular(rng):
    a = rng.normal(size=(2, 8))
    assert spectral_norm(a) == pytest.approx(np.linalg.svd(a, compute_uv=False)[0], rel=1e-13)


def test_sqrt_psd_squares_back(rng):
    g = random_matrix(rng, 8)
    p = g @ g.conj().T
    s = sqrt_psd(p)
    assert is_hermitian(s)
    np.testing.assert_allclose(s @ s, p, atol=1e-12)


@given(complex_matrices(4), st.floats(0.01, 1.0))
def test_dilation_is_unitary_with_block_on_top(g, scale):
    nrm = spectral_norm(g)
    b = g * (scale / nrm) if nrm > 0 else g
    u = dilate_to_unitary(b)
    assert is_unitary(u)
    np.testing.assert_allclose(u[:4, :4], b, atol=1e-14)


def test_dilation_of_unitary_and_zero(rng):
    q, _ = np.linalg.qr(random_matrix(rng, 4))
    assert is_unitary(dilate_to_unitary(q))
    u = dilate_to_unitary(np.zeros((2, 2)))
    np.testing.assert_allclose(u, np.array([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]), atol=1e-15)


def test_dilation_rejects_expansive():
    with pytest.raises(NormError):
        dilate_to_unitary(1.01 * np.eye(2))


@given(arrays(np.float64, 8, elements=finite), arrays(np.float64, 8, elements=finite))
def test_complete_to_unitary_first_column(re, im):
    v = re + 1j * im
    if np.linalg.norm(v) < 1e-3:
        return
    v = v / np.linalg.norm(v)
    u = complete_to_unitary(v)
    assert is_unitary(u)
    np.testing.assert_allclose(u[:, 0], v, atol=1e-14)
