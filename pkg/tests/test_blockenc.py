import numpy as np
import pytest

from blockfunc.blockenc import (
    BlockEncoding,
    NormAssumptionWarning,
    embed,
    encoded_block,
    from_matrix,
    rescale,
    trivial,
    verify,
)
from blockfunc.errors import CapacityError, DimensionError, NotUnitaryError, PreconditionError
from blockfunc.linalg import PAULI_X, PAULI_Z, dilate_to_unitary

from conftest import random_matrix


def test_trivial_encodings_are_exact(rng):
    assert verify(trivial(np.eye(2)), np.eye(2)) == 0
    assert verify(trivial(PAULI_Z), PAULI_Z) == 0
    q, _ = np.linalg.qr(random_matrix(rng, 4))
    assert verify(trivial(q), q) <= 1e-12


def test_dilation_encoding_of_half_identity():
    be = BlockEncoding(dilate_to_unitary(0.5 * np.eye(2)), n=1, a=1, alpha=1.0)
    np.testing.assert_allclose(encoded_block(be), 0.5 * np.eye(2), atol=1e-15)


def test_verify_distance_between_paulis():
    assert verify(trivial(PAULI_X), PAULI_Z) == pytest.approx(np.sqrt(2), rel=1e-12)


def test_verify_warns_when_target_exceeds_alpha():
    with pytest.warns(NormAssumptionWarning):
        verify(trivial(PAULI_X), 3 * PAULI_Z)


def test_rescale_scales_error(rng):
    a = random_matrix(rng, 2, 0.7)
    be = from_matrix(a + 1e-3 * random_matrix(rng, 2), alpha=1.0, epsilon=1e-3)
    base = verify(be, a)
    assert verify(rescale(be, 3.0), 3 * a) == pytest.approx(3 * base, rel=1e-12)
    assert rescale(rescale(be, 2), 2).equivalent(rescale(be, 4))
    np.testing.assert_allclose(encoded_block(rescale(trivial(np.eye(2)), 2)), 2 * np.eye(2))


def test_embed_keeps_block(rng):
    a = random_matrix(rng, 4, 0.9)
    be = from_matrix(a, alpha=1.0)
    assert embed(be, 0) is be
    e2 = embed(be, 2)
    assert e2.a == 3 and e2.n == 2
    assert abs(verify(e2, a) - verify(be, a)) <= 1e-12
    assert verify(embed(trivial(PAULI_X), 1), PAULI_X) == 0


def test_from_matrix_default_alpha(rng):
    a = random_matrix(rng, 2, 2.5)
    be = from_matrix(a)
    assert be.alpha == pytest.approx(2.5)
    assert verify(be, a) <= 1e-12


def test_construction_errors():
    with pytest.raises(NotUnitaryError):
        BlockEncoding(np.ones((2, 2)), n=1, a=0, alpha=1)
    with pytest.raises(DimensionError):
        BlockEncoding(np.eye(4), n=1, a=0, alpha=1)
    with pytest.raises(PreconditionError):
        BlockEncoding(np.eye(2), n=1, a=0, alpha=0)
    with pytest.raises(PreconditionError):
        BlockEncoding(np.eye(2), n=1, a=0, alpha=1, epsilon=-1)
    with pytest.raises(CapacityError):
        embed(trivial(np.eye(2)), 20)


def test_unitary_is_read_only():
    be = trivial(np.eye(2))
    with pytest.raises(ValueError):
        be.unitary[0, 0] = 2
