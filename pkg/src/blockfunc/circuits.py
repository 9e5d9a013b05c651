"""Registers and explicit gate matrices.

Qubits are numbered from 1 and big-endian: qubit 1 is the most significant
bit of the basis index, so ``|q1 q2 ... qn>`` has index ``sum q_i 2^(n-i)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import CapacityError, ConfigError, DimensionError
from .linalg import as_cmatrix, identity, num_qubits

DEFAULT_MAX_QUBITS = 14


@dataclass(frozen=True)
class RegisterLayout:
    """Ordered named registers, most significant first."""

    registers: tuple[tuple[str, int], ...]
    max_qubits: int = DEFAULT_MAX_QUBITS

    def __post_init__(self):
        labels = [label for label, _ in self.registers]
        if len(set(labels)) != len(labels):
            raise ConfigError(f"duplicate register labels in {labels}")
        if any(size < 0 for _, size in self.registers):
            raise ConfigError("register sizes must be non-negative")
        if self.total > self.max_qubits:
            raise CapacityError(f"{self.total} qubits exceeds the cap of {self.max_qubits}")

    @property
    def total(self) -> int:
        return sum(size for _, size in self.registers)

    def size(self, label: str) -> int:
        return dict(self.registers)[label]

    def offset(self, label: str) -> int:
        """Number of qubits preceding ``label``."""
        acc = 0
        for name, size in self.registers:
            if name == label:
                return acc
            acc += size
        raise KeyError(label)


def check_cap(qubits: int, cap: int = DEFAULT_MAX_QUBITS) -> None:
    if qubits > cap:
        raise CapacityError(f"{qubits} qubits exceeds the simulation cap of {cap}")


def projector(j: int, m: int) -> np.ndarray:
    if not 0 <= j < 2**m:
        raise DimensionError(f"basis index {j} out of range for {m} qubits")
    p = np.zeros((2**m, 2**m), dtype=np.complex128)
    p[j, j] = 1.0
    return p


def qubit_permutation(order: Sequence[int]) -> np.ndarray:
    """Permutation matrix P with ``P|x_1 ... x_n> = |x_order[0] ... x_order[n-1]>``.

    ``order`` lists, for each output position, which input qubit (1-based)
    lands there.
    """
    n = len(order)
    if sorted(order) != list(range(1, n + 1)):
        raise DimensionError(f"{list(order)} is not a permutation of 1..{n}")
    dim = 2**n
    if n == 0:
        return np.ones((1, 1), dtype=np.complex128)
    idx = np.arange(dim)
    bits = (idx[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1
    out_bits = bits[:, np.asarray(order) - 1]
    out = (out_bits << (n - 1 - np.arange(n))[None, :]).sum(axis=1)
    p = np.zeros((dim, dim), dtype=np.complex128)
    p[out, idx] = 1.0
    return p


def permute_qubits(u: np.ndarray, order: Sequence[int]) -> np.ndarray:
    """``P u P^dag`` for ``P = qubit_permutation(order)`` without forming P."""
    n = len(order)
    t = u.reshape((2,) * (2 * n))
    axes = [o - 1 for o in order] + [n + o - 1 for o in order]
    return t.transpose(axes).reshape(2**n, 2**n)


def swap_pair(i: int, j: int, total: int) -> np.ndarray:
    """SWAP of qubits ``i`` and ``j`` (1-based) in a ``total``-qubit register."""
    if not (1 <= i <= total and 1 <= j <= total):
        raise DimensionError(f"qubits ({i}, {j}) out of range for {total} qubits")
    order = list(range(1, total + 1))
    order[i - 1], order[j - 1] = order[j - 1], order[i - 1]
    return qubit_permutation(order)


def swap_block(a: int, b: int, total: int | None = None) -> np.ndarray:
    """Exchange of the leading ``a``-qubit register with the next ``b`` qubits.

    Maps ``|x>_a |y>_b |z> -> |y>_b |x>_a |z>``, hence
    ``swap_block(a, b) (|0^a> (x) x) = x (x) |0^a>`` for every b-qubit state x.
    Coincides with the product ``SWAP^1_{b+1} ... SWAP^a_{b+a}`` (rightmost
    factor first) whenever ``b`` divides ``a``.
    """
    if total is None:
        total = a + b
    if a < 0 or b < 0 or a + b > total:
        raise DimensionError(f"swap_block({a}, {b}) does not fit in {total} qubits")
    order = list(range(a + 1, a + b + 1)) + list(range(1, a + 1)) + list(range(a + b + 1, total + 1))
    return qubit_permutation(order)


def swap_product(a: int, b: int, total: int | None = None) -> np.ndarray:
    """Literal product of pair swaps ``prod_{i=1}^a SWAP^i_{b+i}``, factor ``i = a`` applied first."""
    if total is None:
        total = a + b
    out = identity(total)
    for i in range(1, a + 1):
        out = out @ swap_pair(i, b + i, total)
    return out


def rotation_y(phi: float) -> np.ndarray:
    """``exp(+i phi/2 sigma_y)``."""
    c, s = np.cos(phi / 2), np.sin(phi / 2)
    return np.array([[c, s], [-s, c]], dtype=np.complex128)


def rotation_z(phi: float) -> np.ndarray:
    """``exp(+i phi/2 sigma_z)``."""
    return np.diag([np.exp(0.5j * phi), np.exp(-0.5j * phi)])


def phase_gate(j: int) -> np.ndarray:
    # Exponent 2^(j+1): j = 0 sits on the most significant qubit and carries e^{i pi}.
    return np.diag([1.0, np.exp(2j * np.pi / 2 ** (j + 1))])


def phase_R_gates(m: int) -> np.ndarray:
    """``diag(e^{2 pi i k / 2^m})_k`` assembled as ``R_0 (x) R_1 (x) ... (x) R_{m-1}``."""
    if m < 1:
        raise DimensionError("phase_R_gates needs m >= 1")
    out = np.ones((1, 1), dtype=np.complex128)
    for j in range(m):
        out = np.kron(out, phase_gate(j))
    return out


def controlled(selector_pattern: str, u, layout: RegisterLayout | None = None) -> np.ndarray:
    """Apply ``u`` to the targets when the selector qubits read ``selector_pattern``.

    The selector register comes first. ``layout``, when given, must consist of
    a selector register of ``len(selector_pattern)`` qubits followed by target
    registers matching ``u``.
    """
    if any(ch not in "01" for ch in selector_pattern):
        raise DimensionError(f"selector pattern {selector_pattern!r} is not a bitstring")
    u = as_cmatrix(u)
    k = len(selector_pattern)
    targets = num_qubits(u.shape[0])
    if layout is not None:
        sel_size = layout.registers[0][1]
        if sel_size != k or layout.total - sel_size != targets:
            raise DimensionError("layout does not match the selector pattern and target gate")
    j = int(selector_pattern, 2) if k else 0
    out = np.kron(identity(k), identity(targets))
    lo, hi = j * u.shape[0], (j + 1) * u.shape[0]
    out[lo:hi, lo:hi] = u
    return out


def multiplexer(unitaries: Sequence[np.ndarray]) -> np.ndarray:
    """``sum_j |j><j| (x) U_j`` with the selector register first."""
    blocks = [as_cmatrix(u) for u in unitaries]
    k = num_qubits(len(blocks))
    d = blocks[0].shape[0]
    if any(b.shape != (d, d) for b in blocks):
        raise DimensionError("multiplexed gates must share one shape")
    out = np.zeros((2**k * d, 2**k * d), dtype=np.complex128)
    for j, b in enumerate(blocks):
        out[j * d:(j + 1) * d, j * d:(j + 1) * d] = b
    return out
