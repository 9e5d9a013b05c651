import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from blockfunc.circuits import (
    RegisterLayout,
    check_cap,
    controlled,
    multiplexer,
    permute_qubits,
    phase_R_gates,
    qubit_permutation,
    rotation_y,
    rotation_z,
    swap_block,
    swap_pair,
    swap_product,
)
from blockfunc.errors import CapacityError, DimensionError
from blockfunc.linalg import PAULI_X, PAULI_Y, PAULI_Z, identity, is_unitary, zero_ket

from conftest import random_matrix, random_state


def basis_permutation_oracle(order):
    """Brute force: |x_1 .. x_n> -> |x_order[0] .. x_order[n-1]> over all bitstrings."""
    n = len(order)
    p = np.zeros((2**n, 2**n))
    for bits in itertools.product((0, 1), repeat=n):
        src = int("".join(map(str, bits)), 2)
        dst = int("".join(str(bits[k - 1]) for k in order), 2)
        p[dst, src] = 1
    return p


@pytest.mark.parametrize("order", list(itertools.permutations([1, 2, 3])) + [(2, 4, 1, 3), (4, 3, 2, 1)])
def test_permutation_matches_brute_force(order):
    np.testing.assert_array_equal(qubit_permutation(order), basis_permutation_oracle(order))


def test_permute_qubits_conjugates(rng):
    u = random_matrix(rng, 8)
    order = (3, 1, 2)
    p = basis_permutation_oracle(order)
    np.testing.assert_allclose(permute_qubits(u, order), p @ u @ p.T, atol=1e-14)


def test_swap_pair_two_qubits():
    want = np.eye(4)[[0, 2, 1, 3]]
    np.testing.assert_array_equal(swap_pair(1, 2, 2), want)


@pytest.mark.parametrize("a,b", [(a, b) for a in range(0, 4) for b in range(0, 4)])
def test_swap_block_moves_zero_register(a, b, rng):
    x = random_state(rng, 2**b)
    lhs = swap_block(a, b) @ np.kron(zero_ket(a).ravel(), x)
    np.testing.assert_allclose(lhs, np.kron(x, zero_ket(a).ravel()), atol=1e-12)


@pytest.mark.parametrize("a,b", [(1, 1), (2, 1), (2, 2), (3, 1), (3, 3)])
def test_swap_product_agrees_when_b_divides_a(a, b):
    np.testing.assert_array_equal(swap_product(a, b), swap_block(a, b))


def test_swap_product_differs_when_b_does_not_divide_a(rng):
    x = random_state(rng, 4)
    lhs = swap_product(1, 2) @ np.kron(zero_ket(1).ravel(), x)
    assert not np.allclose(lhs, np.kron(x, zero_ket(1).ravel()))


def test_swap_block_rejects_overflow():
    with pytest.raises(DimensionError):
        swap_block(2, 2, total=3)


@given(st.floats(-10, 10), st.floats(-10, 10))
def test_rotations_are_exponentials(phi, varphi):
    from scipy.linalg import expm

    np.testing.assert_allclose(rotation_y(phi), expm(0.5j * phi * PAULI_Y), atol=1e-12)
    np.testing.assert_allclose(rotation_z(varphi), expm(0.5j * varphi * PAULI_Z), atol=1e-12)


def test_phase_R_gates_diagonal():
    for m in range(1, 4):
        M = 2**m
        want = np.exp(2j * np.pi * np.arange(M) / M)
        np.testing.assert_allclose(np.diag(phase_R_gates(m)), want, atol=1e-14)
        off = phase_R_gates(m) - np.diag(np.diag(phase_R_gates(m)))
        assert not off.any()


def test_controlled_acts_on_pattern_only():
    cx = controlled("1", PAULI_X)
    np.testing.assert_array_equal(cx, np.eye(4)[[0, 1, 3, 2]])
    c01 = controlled("01", PAULI_X)
    assert is_unitary(c01)
    np.testing.assert_array_equal(c01[2:4, 2:4], PAULI_X)
    np.testing.assert_array_equal(c01[4:, 4:], np.eye(4))


def test_controlled_layout_checks():
    layout = RegisterLayout((("sel", 2), ("t", 1)))
    controlled("10", PAULI_X, layout)
    with pytest.raises(DimensionError):
        controlled("1", PAULI_X, layout)
    with pytest.raises(DimensionError):
        controlled("2", PAULI_X)


def test_multiplexer_blocks(rng):
    us = [np.linalg.qr(random_matrix(rng, 2))[0] for _ in range(4)]
    mux = multiplexer(us)
    assert is_unitary(mux)
    for j, u in enumerate(us):
        np.testing.assert_allclose(mux[2 * j:2 * j + 2, 2 * j:2 * j + 2], u)


def test_register_layout():
    lay = RegisterLayout((("sel", 2), ("anc", 3), ("sys", 1)))
    assert lay.total == 6
    assert lay.size("anc") == 3
    assert lay.offset("sys") == 5
    with pytest.raises(CapacityError):
        RegisterLayout((("big", 15),))


def test_check_cap():
    check_cap(14)
    with pytest.raises(CapacityError):
        check_cap(15)
    assert identity(0).shape == (1, 1)
