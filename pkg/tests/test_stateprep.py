import numpy as np
import pytest
from hypothesis import given, strategies as st

from blockfunc.errors import DimensionError, PreconditionError
from blockfunc.stateprep import build_sqrt_pair, verify_pair, with_contract

complex_entries = st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False)


def test_uniform_vector():
    p = build_sqrt_pair([1, 1, 1, 1])
    assert p.mu == 4
    np.testing.assert_allclose(p.c, 0.5 * np.ones(4), atol=1e-15)
    np.testing.assert_allclose(p.d, 0.5 * np.ones(4), atol=1e-15)


def test_negative_entry_on_principal_branch():
    p = build_sqrt_pair([1, -1])
    assert p.mu == 2
    assert p.c[1] == pytest.approx(-1j / np.sqrt(2))
    assert p.d[1] == pytest.approx(1j / np.sqrt(2))
    assert p.mu * np.conj(p.c[1]) * p.d[1] == pytest.approx(-1)


@given(st.lists(complex_entries, min_size=1, max_size=8))
def test_pair_recombines_its_vector(v):
    v = np.array(v)
    if np.sum(np.abs(v)) < 1e-6:
        return
    p = build_sqrt_pair(v)
    assert verify_pair(p, v) <= 1e-12 * max(1.0, p.mu)
    assert p.mu == pytest.approx(np.sum(np.abs(v)))


def test_padding_is_inert():
    p = build_sqrt_pair([1.0, 2.0, 3.0])
    assert p.t == 3 and p.m == 2
    assert abs(np.conj(p.c[3]) * p.d[3]) == 0


def test_mismatched_vector_hand_computation():
    p = build_sqrt_pair([1.0, 1.0])
    # mu c^* d = (1, 1); against (1, 0.5) the l1 gap is 0.5
    assert verify_pair(p, [1.0, 0.5]) == pytest.approx(0.5, abs=1e-14)


def test_doubled_mu_error_equals_l1_norm():
    v = np.array([0.3, -0.2j, 0.5])
    p = with_contract(build_sqrt_pair(v), mu=2 * np.sum(np.abs(v)), delta=0.0)
    assert verify_pair(p, v) == pytest.approx(np.sum(np.abs(v)), rel=1e-12)


def test_errors():
    with pytest.raises(PreconditionError):
        build_sqrt_pair([0, 0])
    with pytest.raises(DimensionError):
        build_sqrt_pair([1, 2, 3], m=1)
    with pytest.raises(DimensionError):
        verify_pair(build_sqrt_pair([1, 2]), [1, 2, 3])
