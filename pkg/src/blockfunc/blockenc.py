"""The block-encoding value type and its numerical verifier."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .circuits import DEFAULT_MAX_QUBITS, check_cap
from .errors import DimensionError, NotUnitaryError, PreconditionError
from .linalg import UNITARY_TOL, as_cmatrix, dilate_to_unitary, num_qubits, spectral_norm, unitarity_defect

NORM_SLACK = 1e-9


class NormAssumptionWarning(UserWarning):
    """The target's norm exceeds the encoding's scale factor."""


@dataclass(frozen=True, eq=False)
class BlockEncoding:
    """An (alpha, a, epsilon)-block-encoding held as an explicit unitary.

    Register order is ancillas first (most significant), then the n system
    qubits, so the encoded block is the top-left ``2^n x 2^n`` corner of
    ``unitary`` scaled by ``alpha``. ``epsilon`` is the *claimed* error bound;
    :func:`verify` measures the actual one.
    """

    unitary: np.ndarray = field(repr=False)
    n: int
    a: int
    alpha: float
    epsilon: float = 0.0
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        u = as_cmatrix(self.unitary, "unitary")
        if self.n < 0 or self.a < 0:
            raise DimensionError("qubit counts must be non-negative")
        dim = 2 ** (self.n + self.a)
        if u.shape != (dim, dim):
            raise DimensionError(f"unitary has shape {u.shape}, expected {(dim, dim)}")
        if not self.alpha > 0:
            raise PreconditionError(f"alpha must be positive, got {self.alpha!r}")
        if not self.epsilon >= 0:
            raise PreconditionError(f"epsilon must be non-negative, got {self.epsilon!r}")
        if self.check:
            defect = unitarity_defect(u)
            if defect > UNITARY_TOL:
                raise NotUnitaryError(f"matrix is not unitary (defect {defect:.3e})")
        u.setflags(write=False)
        object.__setattr__(self, "unitary", u)
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "epsilon", float(self.epsilon))

    @property
    def qubits(self) -> int:
        return self.n + self.a

    @property
    def contract(self) -> tuple[float, int, float]:
        return (self.alpha, self.a, self.epsilon)

    def equivalent(self, other: "BlockEncoding", tol: float = 1e-12) -> bool:
        return (
            self.n == other.n
            and self.a == other.a
            and abs(self.alpha - other.alpha) <= tol * max(1.0, self.alpha)
            and abs(self.epsilon - other.epsilon) <= tol * max(1.0, self.epsilon)
            and self.unitary.shape == other.unitary.shape
            and np.allclose(self.unitary, other.unitary, atol=tol, rtol=0)
        )


def top_left(u: np.ndarray, n: int) -> np.ndarray:
    d = 2**n
    return u[:d, :d]


def encoded_block(be: BlockEncoding) -> np.ndarray:
    """``alpha (<0^a| (x) I) U (|0^a> (x) I)``."""
    return be.alpha * np.array(top_left(be.unitary, be.n))


def verify(be: BlockEncoding, target) -> float:
    """Spectral-norm distance between ``target`` and the encoded block.

    Warns with :class:`NormAssumptionWarning` when ``||target|| > alpha``.
    """
    target = as_cmatrix(target, "target")
    d = 2**be.n
    if target.shape != (d, d):
        raise DimensionError(f"target has shape {target.shape}, encoding acts on {(d, d)}")
    tnorm = spectral_norm(target)
    if tnorm > be.alpha * (1 + NORM_SLACK) + NORM_SLACK:
        warnings.warn(
            f"||target|| = {tnorm:.6g} exceeds alpha = {be.alpha:.6g}",
            NormAssumptionWarning,
            stacklevel=2,
        )
    return spectral_norm(target - encoded_block(be))


def trivial(u) -> BlockEncoding:
    """(1, 0, 0)-block-encoding of a unitary."""
    u = as_cmatrix(u)
    return BlockEncoding(u, n=num_qubits(u.shape[0]), a=0, alpha=1.0, epsilon=0.0)


def rescale(be: BlockEncoding, c: float) -> BlockEncoding:
    """Same circuit read as a (c alpha, a, c epsilon)-encoding of ``c A``."""
    if not c > 0:
        raise PreconditionError(f"rescale factor must be positive, got {c!r}")
    return BlockEncoding(be.unitary, be.n, be.a, be.alpha * c, be.epsilon * c, check=False)


def embed(be: BlockEncoding, b: int, cap: int = DEFAULT_MAX_QUBITS) -> BlockEncoding:
    """``I_b (x) U`` as an (alpha, a + b, epsilon)-encoding."""
    if b < 0:
        raise DimensionError("embed needs b >= 0")
    if b == 0:
        return be
    check_cap(be.qubits + b, cap)
    u = np.kron(np.eye(2**b), be.unitary)
    return BlockEncoding(u, be.n, be.a + b, be.alpha, be.epsilon, check=False)


def from_matrix(block, alpha: float | None = None, epsilon: float = 0.0, cap: int = DEFAULT_MAX_QUBITS) -> BlockEncoding:
    """One-ancilla encoding of ``block`` by unitary dilation of ``block / alpha``.

    ``alpha`` defaults to ``||block||`` (1 for the zero matrix). Pass a
    perturbed ``block`` together with a positive ``epsilon`` to model an
    inexact encoding of some other target.
    """
    block = as_cmatrix(block, "block")
    n = num_qubits(block.shape[0])
    check_cap(n + 1, cap)
    if alpha is None:
        alpha = spectral_norm(block) or 1.0
    return BlockEncoding(dilate_to_unitary(block / alpha), n=n, a=1, alpha=alpha, epsilon=epsilon)
