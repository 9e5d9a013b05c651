"""Constructors that compose block-encodings into new block-encodings.

Each constructor returns a :class:`BlockEncoding` whose ``epsilon`` is the
analytic bound for the composite. Registers are assembled in the fixed order
selector, ancillas, system; wherever wires of different roles must be
interleaved, an explicit qubit permutation moves whole registers.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .blockenc import BlockEncoding, embed, trivial
from .circuits import DEFAULT_MAX_QUBITS, check_cap, permute_qubits, rotation_y, rotation_z, swap_block
from .errors import DimensionError, PreconditionError
from .linalg import PAULI_X, as_cvector, identity, num_qubits
from .stateprep import StatePreparationPair, verify_pair

PAIR_MATCH_TOL = 1e-9


def _register_exchange(u: np.ndarray, before: int, first: int, second: int, after: int) -> np.ndarray:
    """Conjugate ``u`` so that the ``first`` and ``second`` registers trade places.

    The registers sit after ``before`` qubits and ahead of ``after`` qubits.
    Returns ``S u S^dag`` with ``S`` mapping ``(.., x_first, y_second, ..)`` to
    ``(.., y_second, x_first, ..)``.
    """
    total = before + first + second + after
    order = (
        list(range(1, before + 1))
        + list(range(before + first + 1, before + first + second + 1))
        + list(range(before + 1, before + first + 1))
        + list(range(before + first + second + 1, total + 1))
    )
    return permute_qubits(u, order)


def product(beA: BlockEncoding, beB: BlockEncoding, cap: int = DEFAULT_MAX_QUBITS) -> BlockEncoding:
    """``(I_b (x) U_A)(SWAP_{a,b} (x) I_n)(I_a (x) U_B)``, an encoding of ``A B``."""
    if beA.n != beB.n:
        raise DimensionError(f"system sizes differ: {beA.n} vs {beB.n}")
    a, b, n = beA.a, beB.a, beA.n
    check_cap(a + b + n, cap)
    right = np.kron(identity(a), beB.unitary)
    swap = np.kron(swap_block(a, b), identity(n))
    left = np.kron(identity(b), beA.unitary)
    u = left @ swap @ right
    return BlockEncoding(
        u, n=n, a=a + b,
        alpha=beA.alpha * beB.alpha,
        epsilon=beA.alpha * beB.epsilon + beB.alpha * beA.epsilon,
    )


def tensor(beA: BlockEncoding, beB: BlockEncoding, cap: int = DEFAULT_MAX_QUBITS) -> BlockEncoding:
    """Encoding of ``A (x) B`` on registers (a, b, n_A, n_B)."""
    a, n, b, m = beA.a, beA.n, beB.a, beB.n
    check_cap(a + b + n + m, cap)
    # U_A (x) U_B acts on (a, n, b, m); exchange the middle registers on both sides.
    inner = np.kron(beA.unitary, beB.unitary)
    u = _register_exchange(inner, a, n, b, m)
    return BlockEncoding(
        u, n=n + m, a=a + b,
        alpha=beA.alpha * beB.alpha,
        epsilon=beA.alpha * beB.epsilon + beB.alpha * beA.epsilon,
        check=False,
    )


def _check_pair(pair: StatePreparationPair, expected: np.ndarray) -> float:
    if pair.t != expected.shape[0]:
        raise DimensionError(f"pair active length {pair.t} != number of terms {expected.shape[0]}")
    mismatch = verify_pair(pair, expected)
    if mismatch > pair.delta + PAIR_MATCH_TOL * max(1.0, pair.mu):
        raise PreconditionError(
            f"state-preparation pair does not match the coefficients (mismatch {mismatch:.3e})"
        )
    return mismatch


def linear_combination(
    bes: Sequence[BlockEncoding],
    y,
    pair: StatePreparationPair,
    padding: Sequence[np.ndarray] | None = None,
    cap: int = DEFAULT_MAX_QUBITS,
) -> BlockEncoding:
    """LCU encoding of ``sum_j y_j A_j`` with claimed scale ``pair.mu``.

    ``pair`` must prepare ``(y_j alpha_j)_j``. Encodings with fewer ancillas are
    padded with identities on their most significant ancillas. Selector states
    ``j >= len(bes)`` apply identity unless ``padding`` supplies other unitaries
    (they never reach the encoded block).
    """
    bes = list(bes)
    y = as_cvector(y, "y")
    if not bes or len(bes) != y.shape[0]:
        raise DimensionError(f"{len(bes)} encodings but {y.shape[0]} coefficients")
    n = bes[0].n
    if any(be.n != n for be in bes):
        raise DimensionError("all encodings in a linear combination must share n")
    a = max(be.a for be in bes)
    m = pair.m
    check_cap(m + a + n, cap)
    _check_pair(pair, y * np.array([be.alpha for be in bes]))
    blocks = [embed(be, a - be.a, cap).unitary for be in bes]
    n_pad = 2**m - len(bes)
    if padding is None:
        blocks += [identity(a + n)] * n_pad
    else:
        if len(padding) != n_pad:
            raise DimensionError(f"expected {n_pad} padding unitaries, got {len(padding)}")
        blocks += [np.asarray(p, dtype=np.complex128) for p in padding]
    d = 2 ** (a + n)
    select = np.zeros((2**m * d, 2**m * d), dtype=np.complex128)
    for j, blk in enumerate(blocks):
        select[j * d:(j + 1) * d, j * d:(j + 1) * d] = blk
    sys_eye = identity(a + n)
    u = np.kron(pair.left.conj().T, sys_eye) @ select @ np.kron(pair.right, sys_eye)
    eps = float(np.sum(np.abs(y) * np.array([be.epsilon for be in bes]))) + pair.delta
    return BlockEncoding(u, n=n, a=a + m, alpha=pair.mu, epsilon=eps)


def linear_combination_tensor(
    besA: Sequence[BlockEncoding],
    besB: Sequence[BlockEncoding],
    y,
    pair: StatePreparationPair,
    cap: int = DEFAULT_MAX_QUBITS,
) -> BlockEncoding:
    """Encoding of ``sum_j y_j (A_j (x) B_j)``; ``pair`` prepares ``(y_j alpha_j beta_j)_j``.

    Registers: selector, A-ancillas, B-ancillas, A-system, B-system.
    """
    besA, besB = list(besA), list(besB)
    if len(besA) != len(besB):
        raise DimensionError(f"{len(besA)} left factors but {len(besB)} right factors")
    a = max(be.a for be in besA)
    b = max(be.a for be in besB)
    terms = [
        tensor(embed(ua, a - ua.a, cap), embed(vb, b - vb.a, cap), cap)
        for ua, vb in zip(besA, besB)
    ]
    return linear_combination(terms, y, pair, cap=cap)


def diagonal(d) -> BlockEncoding:
    """(d_max, 1, 0)-encoding ``sum_k (R_z(varphi_k) R_y(phi_k)) (x) |k><k|``.

    ``cos(phi_k / 2) = |d_k| / d_max`` and ``varphi_k = 2 arg(d_k)``; a zero
    entry gets ``phi_k = pi`` and ``varphi_k = 0``.
    """
    d = as_cvector(d, "d")
    m = num_qubits(d.shape[0])
    dmax = float(np.max(np.abs(d)))
    if dmax == 0.0:
        raise PreconditionError("diagonal() needs at least one nonzero entry")
    M = d.shape[0]
    u = np.zeros((2 * M, 2 * M), dtype=np.complex128)
    for k, dk in enumerate(d):
        phi = 2.0 * np.arccos(np.clip(abs(dk) / dmax, 0.0, 1.0))
        varphi = 2.0 * np.angle(dk) if dk != 0 else 0.0
        g = rotation_z(varphi) @ rotation_y(phi)
        # ancilla qubit is most significant: entry (s, s') of g lands at (s M + k, s' M + k)
        u[np.ix_([k, M + k], [k, M + k])] = g
    return BlockEncoding(u, n=m, a=1, alpha=dmax, epsilon=0.0)


def extended_matrix(a) -> np.ndarray:
    """``A (x) |0><1| + A^dag (x) |1><0|``."""
    a = np.asarray(a, dtype=np.complex128)
    e01 = np.array([[0, 1], [0, 0]], dtype=np.complex128)
    return np.kron(a, e01) + np.kron(a.conj().T, e01.T)


def extend(be: BlockEncoding, cap: int = DEFAULT_MAX_QUBITS) -> BlockEncoding:
    """(alpha, a, 2 epsilon)-encoding of the Hermitian extension on n + 1 qubits."""
    check_cap(be.qubits + 1, cap)
    p0 = np.diag([1.0, 0.0]).astype(np.complex128)
    p1 = np.diag([0.0, 1.0]).astype(np.complex128)
    u = be.unitary
    ctrl = np.kron(u, p0) + np.kron(u.conj().T, p1)
    u_ext = ctrl @ np.kron(identity(be.qubits), PAULI_X)
    return BlockEncoding(u_ext, n=be.n + 1, a=be.a, alpha=be.alpha, epsilon=2.0 * be.epsilon, check=False)


def unextend_inverse(be_ext_inv: BlockEncoding) -> BlockEncoding:
    """Recover an encoding of ``A^-1`` from one of the extension's inverse.

    The extension qubit (last system qubit) gets an X and is moved to the front
    of the system register, where it becomes an extra ancilla.
    """
    if be_ext_inv.n < 1:
        raise DimensionError("input must act on at least one system qubit")
    a, n = be_ext_inv.a, be_ext_inv.n - 1
    flipped = np.kron(identity(a + n), PAULI_X) @ be_ext_inv.unitary
    # registers (a, n, e) -> (a, e, n)
    u = _register_exchange(flipped, a, n, 1, 0)
    return BlockEncoding(u, n=n, a=a + 1, alpha=be_ext_inv.alpha, epsilon=be_ext_inv.epsilon, check=False)


def identity_encoding(n: int) -> BlockEncoding:
    return trivial(identity(n))
