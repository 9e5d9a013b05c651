"""Dense complex linear algebra primitives.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; vectors are 1-D
arrays. Every constructor in the package funnels its inputs through
:func:`as_cmatrix` / :func:`as_cvector` so NaN/Inf never propagate silently.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, NormError, NotHermitianError, PreconditionError

UNITARY_TOL = 1e-9
HERMITIAN_TOL = 1e-10
PSD_FLOOR = 1e-12
DILATION_NORM_TOL = 1e-10

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def as_cmatrix(a, name: str = "matrix") -> np.ndarray:
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise PreconditionError(f"{name} has non-finite entries")
    return m


def as_cvector(v, name: str = "vector") -> np.ndarray:
    x = np.array(v, dtype=np.complex128)
    if x.ndim != 1:
        raise DimensionError(f"{name} must be 1-D, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise PreconditionError(f"{name} has non-finite entries")
    return x


def identity(qubits: int) -> np.ndarray:
    return np.eye(2**qubits, dtype=np.complex128)


def zero_ket(qubits: int) -> np.ndarray:
    """Column ``|0^qubits>`` as a ``(2**qubits, 1)`` matrix."""
    k = np.zeros((2**qubits, 1), dtype=np.complex128)
    k[0, 0] = 1.0
    return k


def num_qubits(dim: int) -> int:
    q = int(dim).bit_length() - 1
    if dim < 1 or 2**q != dim:
        raise DimensionError(f"dimension {dim} is not a power of two")
    return q


def mul(a, b) -> np.ndarray:
    a, b = as_cmatrix(a), as_cmatrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def kron(a, b) -> np.ndarray:
    return np.kron(as_cmatrix(a), as_cmatrix(b))


def adjoint(a) -> np.ndarray:
    return as_cmatrix(a).conj().T


def hermitian_defect(h: np.ndarray) -> float:
    return float(np.linalg.norm(h - h.conj().T))


def is_hermitian(h, tol: float = HERMITIAN_TOL) -> bool:
    h = as_cmatrix(h)
    if h.shape[0] != h.shape[1]:
        return False
    return hermitian_defect(h) <= tol * max(1.0, float(np.linalg.norm(h)))


def unitarity_defect(u: np.ndarray) -> float:
    """Frobenius norm of ``U^dag U - I``; an upper bound on the spectral defect."""
    n = u.shape[0]
    return float(np.linalg.norm(u.conj().T @ u - np.eye(n)))


def is_unitary(u, tol: float = UNITARY_TOL) -> bool:
    u = as_cmatrix(u)
    if u.shape[0] != u.shape[1]:
        return False
    return unitarity_defect(u) <= tol


def eig_hermitian(h, method: str = "lapack") -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition ``h = V diag(lam) V^dag`` with ascending ``lam``.

    ``method="lapack"`` calls ``numpy.linalg.eigh``; ``method="jacobi"`` runs
    the cyclic Jacobi sweep in :func:`jacobi_eigh`. The two are independent
    and the test-suite checks one against the other.
    """
    h = as_cmatrix(h)
    if h.shape[0] != h.shape[1]:
        raise DimensionError(f"eig_hermitian needs a square matrix, got {h.shape}")
    if not is_hermitian(h):
        raise NotHermitianError(f"matrix is not Hermitian (defect {hermitian_defect(h):.3e})")
    h = 0.5 * (h + h.conj().T)
    if method == "lapack":
        lam, vecs = np.linalg.eigh(h)
    elif method == "jacobi":
        lam, vecs = jacobi_eigh(h)
    else:
        raise ValueError(f"unknown method {method!r}")
    return lam, vecs


def jacobi_eigh(h: np.ndarray, tol: float = 1e-15, max_sweeps: int = 60) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi eigensolver for a complex Hermitian matrix.

    Each (p, q) rotation first removes the phase of ``h[p, q]`` and then applies
    the real symmetric Jacobi rotation with the small-angle root, so the
    iteration converges quadratically once the off-diagonal mass is small.
    """
    a = np.array(h, dtype=np.complex128)
    n = a.shape[0]
    vecs = np.eye(n, dtype=np.complex128)
    scale = max(float(np.linalg.norm(a)), np.finfo(float).tiny)
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                b = abs(apq)
                if b <= 1e-300:
                    continue
                phase = apq / b
                app, aqq = a[p, p].real, a[q, q].real
                zeta = (aqq - app) / (2.0 * b)
                t = (1.0 if zeta >= 0 else -1.0) / (abs(zeta) + np.hypot(1.0, zeta))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                # V = diag(1, conj(phase)) @ [[c, s], [-s, c]] on the (p, q) plane
                v = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ v
                a[idx, :] = v.conj().T @ a[idx, :]
                a[q, p] = 0.0
                a[p, q] = 0.0
                vecs[:, idx] = vecs[:, idx] @ v
    lam = np.diag(a).real.copy()
    order = np.argsort(lam, kind="stable")
    return lam[order], vecs[:, order]


def spectral_norm(a) -> float:
    """Largest singular value, via the top eigenvalue of the smaller Gram matrix."""
    a = as_cmatrix(a)
    if a.size == 0:
        return 0.0
    gram = a.conj().T @ a if a.shape[1] <= a.shape[0] else a @ a.conj().T
    lam, _ = eig_hermitian(0.5 * (gram + gram.conj().T))
    return float(np.sqrt(max(lam[-1], 0.0)))


def sqrt_psd(h) -> np.ndarray:
    """Hermitian PSD square root; eigenvalues in ``[-1e-12, 0)`` are clamped to 0."""
    lam, vecs = eig_hermitian(as_cmatrix(h))
    bound = PSD_FLOOR * max(1.0, float(np.max(np.abs(lam))))
    if lam[0] < -bound:
        raise PreconditionError(f"matrix has negative eigenvalue {lam[0]:.3e}")
    root = np.sqrt(np.clip(lam, 0.0, None))
    return (vecs * root) @ vecs.conj().T


def dilate_to_unitary(b) -> np.ndarray:
    """Unitary ``[[B, sqrt(I - B B^dag)], [sqrt(I - B^dag B), -B^dag]]`` of a contraction."""
    b = as_cmatrix(b, "b")
    n = b.shape[0]
    if b.shape != (n, n):
        raise DimensionError(f"dilation needs a square matrix, got {b.shape}")
    norm = spectral_norm(b)
    if norm > 1.0 + DILATION_NORM_TOL:
        raise NormError(f"cannot dilate: spectral norm {norm!r} exceeds 1")
    # Both defect blocks come from one SVD, B = W S V^dag, so that
    # B sqrt(I - B^dag B) = sqrt(I - B B^dag) B holds to rounding even when
    # singular values sit at 1 (separate square roots lose ~sqrt(ulp) there).
    w, sv, vh = np.linalg.svd(b)
    c = np.sqrt(np.clip(1.0 - sv**2, 0.0, None))
    top = (w * c) @ w.conj().T
    bottom = (vh.conj().T * c) @ vh
    return np.block([[b, top], [bottom, -b.conj().T]])


def complete_to_unitary(v) -> np.ndarray:
    """Unitary whose first column is the unit vector ``v`` (Householder completion)."""
    v = as_cvector(v)
    nrm = float(np.linalg.norm(v))
    if abs(nrm - 1.0) > 1e-10:
        raise NormError(f"vector must be normalised, got norm {nrm!r}")
    dim = v.shape[0]
    phase = v[0] / abs(v[0]) if abs(v[0]) > 0 else 1.0 + 0j
    e0 = np.zeros(dim, dtype=np.complex128)
    e0[0] = phase
    u = v - e0
    unrm2 = float(np.vdot(u, u).real)
    fix = np.eye(dim, dtype=np.complex128)
    fix[0, 0] = phase
    if unrm2 < 1e-30:
        return fix
    house = np.eye(dim, dtype=np.complex128) - 2.0 * np.outer(u, u.conj()) / unrm2
    return house @ fix
