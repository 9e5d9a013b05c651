"""State-preparation pairs for LCU coefficient vectors."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, NotUnitaryError, PreconditionError
from .linalg import UNITARY_TOL, as_cvector, complete_to_unitary, unitarity_defect

TAIL_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class StatePreparationPair:
    """Unitaries (V_L, V_R) on m qubits with ``mu c_j^* d_j ~ v_j`` for ``j < t``.

    ``c`` and ``d`` are the first columns of ``left`` and ``right``. ``delta``
    is the claimed l1 recombination error.
    """

    m: int
    mu: float
    delta: float
    left: np.ndarray = field(repr=False)
    right: np.ndarray = field(repr=False)
    t: int

    def __post_init__(self):
        dim = 2**self.m
        for name in ("left", "right"):
            u = np.array(getattr(self, name), dtype=np.complex128)
            if u.shape != (dim, dim):
                raise DimensionError(f"{name} has shape {u.shape}, expected {(dim, dim)}")
            if unitarity_defect(u) > UNITARY_TOL:
                raise NotUnitaryError(f"{name} is not unitary")
            u.setflags(write=False)
            object.__setattr__(self, name, u)
        if not 0 < self.t <= dim:
            raise DimensionError(f"active length {self.t} out of range for m = {self.m}")
        if not self.mu > 0 or not self.delta >= 0:
            raise PreconditionError("need mu > 0 and delta >= 0")
        tail = np.abs(self.c[self.t:].conj() * self.d[self.t:])
        if tail.size and tail.max() > TAIL_TOL:
            raise PreconditionError(f"padding amplitudes do not cancel (max {tail.max():.3e})")

    @property
    def c(self) -> np.ndarray:
        return self.left[:, 0]

    @property
    def d(self) -> np.ndarray:
        return self.right[:, 0]

    def effective_vector(self) -> np.ndarray:
        """``mu c_j^* d_j`` over the active length."""
        return self.mu * (self.c.conj() * self.d)[: self.t]


def qubits_for(length: int) -> int:
    return max(1, (int(length) - 1).bit_length())


def sqrt_amplitudes(v) -> tuple[np.ndarray, np.ndarray, float]:
    """Amplitudes ``(conj(sqrt v), sqrt v) / sqrt(||v||_1)`` on the principal branch.

    Conjugating after the square root keeps ``c_j^* d_j = v_j / ||v||_1`` exact
    on the negative real axis, where ``sqrt(conj w) != conj(sqrt w)``.
    """
    v = as_cvector(v)
    l1 = float(np.sum(np.abs(v)))
    if l1 == 0.0:
        raise PreconditionError("cannot build a state-preparation pair for the zero vector")
    root = np.sqrt(v)
    return root.conj() / np.sqrt(l1), root / np.sqrt(l1), l1


def build_sqrt_pair(v, m: int | None = None) -> StatePreparationPair:
    """(||v||_1, m, 0)-pair for ``v`` with zero-padded amplitudes."""
    v = as_cvector(v)
    if m is None:
        m = qubits_for(v.shape[0])
    dim = 2**m
    if v.shape[0] > dim:
        raise DimensionError(f"vector of length {v.shape[0]} does not fit in {m} qubits")
    c, d, l1 = sqrt_amplitudes(v)
    cpad = np.zeros(dim, dtype=np.complex128)
    dpad = np.zeros(dim, dtype=np.complex128)
    cpad[: v.shape[0]] = c
    dpad[: v.shape[0]] = d
    # Renormalise away the last ulp so the Householder completion accepts the vector.
    cpad /= np.linalg.norm(cpad)
    dpad /= np.linalg.norm(dpad)
    return StatePreparationPair(
        m=m,
        mu=l1,
        delta=0.0,
        left=complete_to_unitary(cpad),
        right=complete_to_unitary(dpad),
        t=v.shape[0],
    )


def verify_pair(p: StatePreparationPair, v) -> float:
    """Measured ``sum_j |mu c_j^* d_j - v_j|`` plus the largest padded-tail product."""
    v = as_cvector(v)
    if v.shape[0] != p.t:
        raise DimensionError(f"vector length {v.shape[0]} != pair active length {p.t}")
    prod = p.c.conj() * p.d
    err = float(np.sum(np.abs(p.mu * prod[: p.t] - v)))
    tail = np.abs(prod[p.t:])
    return err + (float(tail.max()) if tail.size else 0.0)


def with_contract(p: StatePreparationPair, mu: float, delta: float) -> StatePreparationPair:
    """Same unitaries, re-labelled with a different (mu, delta) claim."""
    return StatePreparationPair(m=p.m, mu=mu, delta=delta, left=p.left, right=p.right, t=p.t)
