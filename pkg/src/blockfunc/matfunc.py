"""Block-encodings of quadrature approximations to contour-integral matrix functions.

Two pipelines are provided:

* the M-point trapezoidal rule on a circle ``|z - z0| = r``,
  ``f_M(A) = r sum_k w_k ((z0 + r e^{i theta_k}) I - A)^-1`` (:func:`build_fM_encoding`);
* a general node set ``F_M(A) = r sum_k w_k (y_k I + z_k A)^-1``
  (:func:`build_FM_encoding`).

Both assemble the block-diagonal matrix ``diag(A_0, ..., A_{M-1})`` as a
linear combination of tensor products and hand it to
:func:`blockfunc.inversion.lincomb_of_inverses`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .blockenc import BlockEncoding, encoded_block, trivial
from .circuits import DEFAULT_MAX_QUBITS, phase_R_gates
from .combinators import diagonal, linear_combination_tensor
from .errors import (
    BranchCutError,
    ConfigError,
    DimensionError,
    PreconditionError,
    SingularMatrixError,
    SpectrumEnclosureError,
)
from .inversion import VerificationReport, lincomb_of_inverses
from .linalg import as_cmatrix, as_cvector, eig_hermitian, identity, num_qubits, spectral_norm
from .stateprep import StatePreparationPair, build_sqrt_pair, verify_pair, with_contract

SUP_SAMPLES = 4096
SINGULAR_TOL = 1e-12

__all__ = [
    "CircleContour",
    "QuadratureScheme",
    "ScalarFunction",
    "VerificationReport",
    "block_diag_circle",
    "block_diag_general",
    "build_FM_encoding",
    "build_fM_encoding",
    "circle_norm_bounds",
    "exact_matrix_function",
    "exp_function",
    "from_coefficients",
    "inv_sqrt_function",
    "log_function",
    "f_M_dense",
    "F_M_dense",
    "get_function",
    "quadrature_from_circle",
    "shift_inverse_bound",
    "stateprep_truncated",
    "trapezoid_error_bound",
    "trapezoid_weights",
]


# --------------------------------------------------------------------------
# scalar functions


@dataclass(frozen=True)
class ScalarFunction:
    """An analytic scalar function with Taylor data about any admissible centre.

    ``taylor(z0, L)`` returns the first ``L`` coefficients of the expansion about
    ``z0``. Functions with ``branch_cut=True`` are analytic off ``(-inf, 0]``
    only, so every disk they are used on must avoid that ray.
    """

    name: str
    evaluate: Callable[[np.ndarray], np.ndarray] = field(repr=False)
    taylor: Callable[[complex, int], np.ndarray] = field(repr=False)
    branch_cut: bool = False

    def __call__(self, z):
        return self.evaluate(np.asarray(z, dtype=np.complex128))

    def check_disk(self, z0: complex, R: float) -> None:
        if not self.branch_cut:
            return
        z0 = complex(z0)
        dist = abs(z0) if z0.real >= 0 else abs(z0.imag)
        if dist <= R:
            raise BranchCutError(
                f"{self.name}: disk |z - {z0}| <= {R} meets the branch cut (-inf, 0]"
            )

    def coefficients(self, z0: complex, L: int) -> np.ndarray:
        self.check_disk(z0, 0.0)
        return np.asarray(self.taylor(complex(z0), int(L)), dtype=np.complex128)

    def sup_norm(self, z0: complex, R: float, samples: int = SUP_SAMPLES) -> float:
        """max |f| on the closed disk, taken on the boundary circle."""
        self.check_disk(z0, R)
        theta = 2 * np.pi * np.arange(samples) / samples
        return float(np.max(np.abs(self(complex(z0) + R * np.exp(1j * theta)))))


def _exp_taylor(z0: complex, L: int) -> np.ndarray:
    return np.array([cmath.exp(z0) / math.factorial(k) for k in range(L)], dtype=np.complex128)


def _log_taylor(z0: complex, L: int) -> np.ndarray:
    out = np.zeros(L, dtype=np.complex128)
    if L > 0:
        out[0] = cmath.log(z0)
    for k in range(1, L):
        out[k] = (-1) ** (k + 1) / (k * z0**k)
    return out


def _inv_sqrt_taylor(z0: complex, L: int) -> np.ndarray:
    # z^{-1/2} = z0^{-1/2} sum_k binom(-1/2, k) (u / z0)^k
    out = np.zeros(L, dtype=np.complex128)
    coef = 1.0
    for k in range(L):
        out[k] = coef / z0**k
        coef *= (-0.5 - k) / (k + 1)
    return out / cmath.sqrt(z0)


def exp_function() -> ScalarFunction:
    return ScalarFunction("exp", np.exp, _exp_taylor)


def log_function() -> ScalarFunction:
    return ScalarFunction("log", np.log, _log_taylor, branch_cut=True)


def inv_sqrt_function() -> ScalarFunction:
    return ScalarFunction("inv_sqrt", lambda z: 1.0 / np.sqrt(z), _inv_sqrt_taylor, branch_cut=True)


def from_coefficients(coeffs, center: complex = 0.0, name: str = "poly") -> ScalarFunction:
    """Polynomial ``sum_l a_l (z - center)^l`` given by its coefficients."""
    a = as_cvector(coeffs, "coefficients")
    base = np.polynomial.Polynomial(a)
    center = complex(center)

    def evaluate(z):
        return base(np.asarray(z) - center)

    def taylor(z0: complex, L: int) -> np.ndarray:
        shifted = base(np.polynomial.Polynomial([z0 - center, 1.0]))
        c = np.zeros(L, dtype=np.complex128)
        k = min(L, shifted.coef.shape[0])
        c[:k] = shifted.coef[:k]
        return c

    return ScalarFunction(name, evaluate, taylor)


FUNCTIONS: dict[str, Callable[[], ScalarFunction]] = {
    "exp": exp_function,
    "log": log_function,
    "inv_sqrt": inv_sqrt_function,
}


def get_function(desc) -> ScalarFunction:
    """Resolve ``"exp" | "log" | "inv_sqrt"`` or ``{"coefficients": [[re, im], ...], "center": [re, im]}``."""
    if isinstance(desc, ScalarFunction):
        return desc
    if isinstance(desc, str):
        try:
            return FUNCTIONS[desc]()
        except KeyError:
            raise ConfigError(f"unknown function {desc!r}; choose from {sorted(FUNCTIONS)}") from None
    if isinstance(desc, dict) and "coefficients" in desc:
        coeffs = [complex(re, im) for re, im in desc["coefficients"]]
        center = complex(*desc.get("center", [0.0, 0.0]))
        return from_coefficients(coeffs, center)
    raise ConfigError(f"cannot interpret function description {desc!r}")


def exact_matrix_function(a, f: ScalarFunction, max_cond: float = 1e8) -> np.ndarray:
    """``V diag(f(lambda)) V^-1`` from a general eigendecomposition (the dense oracle)."""
    a = as_cmatrix(a)
    lam, vecs = np.linalg.eig(a)
    if np.linalg.cond(vecs) > max_cond:
        raise PreconditionError("matrix is too close to defective for the eigenvector oracle")
    return (vecs * f(lam)) @ np.linalg.inv(vecs)


# --------------------------------------------------------------------------
# contours and quadrature schemes


@dataclass(frozen=True)
class CircleContour:
    """Trapezoidal rule with ``M = 2^m`` nodes on ``|z - z0| = r``; f analytic for ``|z - z0| <= R``."""

    z0: complex
    r: float
    R: float
    M: int
    L: int = 20

    def __post_init__(self):
        object.__setattr__(self, "z0", complex(self.z0))
        if not 0 < self.r < self.R:
            raise ConfigError(f"need 0 < r < R, got r={self.r}, R={self.R}")
        if self.M < 2 or self.M & (self.M - 1):
            raise ConfigError(f"M must be a power of two >= 2, got {self.M}")
        if self.L < 1:
            raise ConfigError(f"L must be at least 1, got {self.L}")

    @property
    def m(self) -> int:
        return num_qubits(self.M)

    @property
    def thetas(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.M) / self.M

    @property
    def nodes(self) -> np.ndarray:
        return self.z0 + self.r * np.exp(1j * self.thetas)


@dataclass(frozen=True, eq=False)
class QuadratureScheme:
    """Weights and shifts of ``F_M(A) = r sum_k w_k (y_k I + z_k A)^-1``."""

    w: np.ndarray = field(repr=False)
    y: np.ndarray = field(repr=False)
    z: np.ndarray = field(repr=False)
    r: float

    def __post_init__(self):
        arrs = {k: as_cvector(getattr(self, k), k) for k in ("w", "y", "z")}
        lengths = {v.shape[0] for v in arrs.values()}
        if len(lengths) != 1:
            raise ConfigError("w, y and z must have equal length")
        M = lengths.pop()
        if M < 2 or M & (M - 1):
            raise ConfigError(f"node count must be a power of two >= 2, got {M}")
        if not self.r > 0:
            raise ConfigError(f"r must be positive, got {self.r}")
        for k, v in arrs.items():
            v.setflags(write=False)
            object.__setattr__(self, k, v)

    @property
    def M(self) -> int:
        return self.w.shape[0]

    @property
    def m(self) -> int:
        return num_qubits(self.M)

    def shifted(self, a: np.ndarray) -> list[np.ndarray]:
        eye = np.eye(a.shape[0])
        return [yk * eye + zk * a for yk, zk in zip(self.y, self.z)]


def quadrature_from_circle(f: ScalarFunction, c: CircleContour) -> QuadratureScheme:
    """The circle rule in general form: ``y_k = z0 + r e^{i theta_k}``, ``z_k = -1``."""
    w, _, _ = trapezoid_weights(f, c, truncated=False)
    return QuadratureScheme(w=w, y=c.nodes, z=-np.ones(c.M), r=c.r)


# --------------------------------------------------------------------------
# dense reference values


def _shift_norm(a: np.ndarray, z0: complex) -> float:
    return spectral_norm(a - z0 * np.eye(a.shape[0]))


def f_M_dense(a, f: ScalarFunction, c: CircleContour) -> np.ndarray:
    """Dense ``(1/M) sum_k f(z_k) r e^{i theta_k} (z_k I - A)^-1``."""
    a = as_cmatrix(a)
    f.check_disk(c.z0, c.R)
    s = _shift_norm(a, c.z0)
    if s >= c.r:
        raise SpectrumEnclosureError(f"||A - z0 I|| = {s:.6g} is not below r = {c.r}")
    eye = np.eye(a.shape[0])
    out = np.zeros_like(a)
    for zk, th in zip(c.nodes, c.thetas):
        out += f(zk) * c.r * np.exp(1j * th) * np.linalg.solve(zk * eye - a, eye)
    return out / c.M


def F_M_dense(a, q: QuadratureScheme) -> np.ndarray:
    a = as_cmatrix(a)
    eye = np.eye(a.shape[0])
    out = np.zeros_like(a)
    for wk, ak in zip(q.w, q.shifted(a)):
        _check_invertible(ak)
        out += wk * np.linalg.solve(ak, eye)
    return q.r * out


def _smallest_singular(a: np.ndarray) -> float:
    lam, _ = eig_hermitian(a.conj().T @ a)
    return float(np.sqrt(max(lam[0], 0.0)))


def _check_invertible(ak: np.ndarray) -> float:
    smin = _smallest_singular(ak)
    if smin <= SINGULAR_TOL * max(1.0, spectral_norm(ak)):
        raise SingularMatrixError(f"shifted matrix is singular (smallest singular value {smin:.3e})")
    return smin


# --------------------------------------------------------------------------
# trapezoidal rule on a circle


def truncation_delta(c: CircleContour) -> float:
    q = c.r / c.R
    return q**c.L / (1.0 - q)


def trapezoid_weights(f: ScalarFunction, c: CircleContour, truncated: bool = True):
    """Exact weights ``w``, Taylor-truncated weights ``w~`` and ``delta_L``.

    ``w_k = f(z0 + r e^{i theta_k}) e^{i theta_k} / M``; ``w~`` replaces f by
    its first ``L`` Taylor terms about ``z0``. Guarantee:
    ``||w - w~||_1 <= ||f||_inf delta_L``.
    """
    f.check_disk(c.z0, c.R)
    phases = np.exp(1j * c.thetas)
    w = f(c.nodes) * phases / c.M
    if not truncated:
        return w, None, None
    coeffs = f.coefficients(c.z0, c.L)
    powers = (c.r * phases)[:, None] ** np.arange(c.L)[None, :]
    w_tilde = (powers @ coeffs) * phases / c.M
    return w, w_tilde, truncation_delta(c)


def circle_norm_bounds(c: CircleContour, normA: float, normAshift: float) -> tuple[float, float]:
    """``(r + |z0| + ||A||, 1 / (r - ||A - z0 I||))``: bounds on ``||diag(A_k)||`` and its inverse."""
    if normAshift >= c.r:
        raise SpectrumEnclosureError(f"||A - z0 I|| = {normAshift:.6g} is not below r = {c.r}")
    return c.r + abs(c.z0) + normA, 1.0 / (c.r - normAshift)


def stateprep_truncated(f: ScalarFunction, c: CircleContour) -> StatePreparationPair:
    """Square-root pair built from ``w~``, claimed as a (||w||_1, m, 2 ||f||_inf delta_L)-pair for ``w``."""
    w, w_tilde, delta_L = trapezoid_weights(f, c)
    if not np.any(w_tilde):
        raise PreconditionError("truncated weight vector is zero")
    pair = build_sqrt_pair(w_tilde, c.m)
    return with_contract(pair, mu=float(np.sum(np.abs(w))), delta=2.0 * f.sup_norm(c.z0, c.R) * delta_L)


def trapezoid_error_bound(c: CircleContour, f: ScalarFunction, normAshift: float) -> float:
    """Upper bound ``eps_M`` on ``||f(A) - f_M(A)||`` for ``||A - z0 I|| = normAshift``."""
    if not 0 <= normAshift < c.r < c.R:
        raise SpectrumEnclosureError(
            f"need ||A - z0 I|| < r < R, got {normAshift:.6g}, {c.r}, {c.R}"
        )
    inner = (normAshift / c.r) ** c.M
    outer = (c.r / c.R) ** c.M
    pref = f.sup_norm(c.z0, c.R) / (1.0 - normAshift / c.R)
    return pref * (inner / (1.0 - inner) + outer / (1.0 - outer))


def block_diag_circle(beA: BlockEncoding, c: CircleContour, cap: int = DEFAULT_MAX_QUBITS) -> BlockEncoding:
    """(r + |z0| + alpha, a + 2, eps_A)-encoding of ``diag((z0 + r e^{i theta_k}) I - A)``.

    Decomposition ``z0 I + r R (x) I - I (x) A`` with ``R = diag(e^{i theta_k})``,
    registers (selector[2], a, m, n).
    """
    m, n = c.m, beA.n
    eye_m = trivial(identity(m))
    left = [eye_m, trivial(phase_R_gates(m)), eye_m]
    right = [trivial(identity(n)), trivial(identity(n)), beA]
    y = np.array([c.z0, c.r, -1.0], dtype=np.complex128)
    pair = build_sqrt_pair(np.array([c.z0, c.r, -beA.alpha]), m=2)
    return linear_combination_tensor(left, right, y, pair, cap)


def _with_report_contract(be: BlockEncoding, tau: float, eta: float) -> BlockEncoding:
    return BlockEncoding(be.unitary, n=be.n, a=be.a, alpha=tau, epsilon=eta, check=False)


def build_fM_encoding(
    beA: BlockEncoding,
    f,
    c: CircleContour,
    delta: float,
    *,
    target=None,
    cap: int = DEFAULT_MAX_QUBITS,
) -> tuple[BlockEncoding, VerificationReport]:
    """(tau, a + m + 5, eta)-encoding of ``f_M(A)`` with a verification report.

    ``target`` is the matrix ``A`` that ``beA`` encodes; it defaults to the
    encoded block. The report carries the measured error against the dense
    ``f_M(A)`` and against ``f(A)`` itself.
    """
    f = get_function(f)
    f.check_disk(c.z0, c.R)
    a_mat = encoded_block(beA) if target is None else as_cmatrix(target, "target")
    s = _shift_norm(a_mat, c.z0)
    alpha_p, beta_p = circle_norm_bounds(c, beA.alpha, s)

    be_blk = block_diag_circle(beA, c, cap)
    pair = stateprep_truncated(f, c)
    w, _, delta_L = trapezoid_weights(f, c)
    eye = np.eye(a_mat.shape[0])
    blocks = [zk * eye - a_mat for zk in c.nodes]
    be_f, rep = lincomb_of_inverses(be_blk, pair, beta_p, c.r, delta, weights=w, blocks=blocks, cap=cap)

    sup = f.sup_norm(c.z0, c.R)
    shrink = 1.0 - s / c.r
    tau = 16.0 / 3.0 * float(np.sum(np.abs(w))) / shrink
    eta = sup / shrink * (
        2.0 * delta_L + 16.0 / 3.0 * (4.0 * rep.degree * math.sqrt(2.0 * beA.epsilon / alpha_p) + delta)
    )
    be_f = _with_report_contract(be_f, tau, eta)

    block = encoded_block(be_f)
    fm = f_M_dense(a_mat, f, c)
    report = replace(
        rep,
        tau=tau,
        eta=eta,
        measured_error=spectral_norm(fm - block),
        alpha_prime=alpha_p,
        beta_prime=beta_p,
        eps_M=trapezoid_error_bound(c, f, s),
        delta_L=delta_L,
        measured_error_vs_f=spectral_norm(exact_matrix_function(a_mat, f) - block),
    )
    return be_f, report


# --------------------------------------------------------------------------
# general quadrature form


def shift_inverse_bound(a, q: QuadratureScheme) -> float:
    """``max_k ||(y_k I + z_k A)^-1||``; raises on a singular shift."""
    a = as_cmatrix(a)
    return max(1.0 / _check_invertible(ak) for ak in q.shifted(a))


def block_diag_general(beA: BlockEncoding, q: QuadratureScheme, cap: int = DEFAULT_MAX_QUBITS) -> BlockEncoding:
    """(y_max + z_max alpha, a + 2, z_max eps_A)-encoding of ``diag(y_k I + z_k A) = Y (x) I + Z (x) A``.

    A vanishing ``y`` or ``z`` vector contributes an inert identity term with a
    zero coefficient, so the register layout is the same in every case.
    """
    m, n = q.m, beA.n
    ymax = float(np.max(np.abs(q.y)))
    zmax = float(np.max(np.abs(q.z)))
    if ymax == 0 and zmax == 0:
        raise SingularMatrixError("y and z are both zero: every shifted matrix vanishes")
    placeholder = BlockEncoding(np.kron(identity(1), identity(m)), n=m, a=1, alpha=1.0)
    u_y = diagonal(q.y) if ymax > 0 else placeholder
    u_z = diagonal(q.z) if zmax > 0 else placeholder
    coef = np.array([1.0 if ymax > 0 else 0.0, 1.0 if zmax > 0 else 0.0], dtype=np.complex128)
    pair = build_sqrt_pair(np.array([ymax, zmax * beA.alpha]), m=1)
    return linear_combination_tensor([u_y, u_z], [trivial(identity(n)), beA], coef, pair, cap)


def build_FM_encoding(
    beA: BlockEncoding,
    q: QuadratureScheme,
    pair: StatePreparationPair,
    beta_prime: float,
    delta: float,
    *,
    target=None,
    function=None,
    cap: int = DEFAULT_MAX_QUBITS,
) -> tuple[BlockEncoding, VerificationReport]:
    """(tau, a + m + 5, eta)-encoding of ``r sum_k w_k (y_k I + z_k A)^-1``.

    ``beta_prime`` must bound every ``||(y_k I + z_k A)^-1||``. When
    ``function`` is given, the report also measures the error against the
    exact ``f(A)``.
    """
    a_mat = encoded_block(beA) if target is None else as_cmatrix(target, "target")
    blocks = q.shifted(a_mat)
    worst = shift_inverse_bound(a_mat, q)
    if worst > beta_prime * (1 + 1e-9):
        raise PreconditionError(f"beta' = {beta_prime:.6g} is below max ||A_k^-1|| = {worst:.6g}")
    if pair.m != q.m or pair.t != q.M:
        raise DimensionError(f"pair (m={pair.m}, t={pair.t}) does not match {q.M} nodes")
    mismatch = verify_pair(pair, q.w)
    if mismatch > pair.delta + 1e-9 * max(1.0, pair.mu):
        raise PreconditionError(f"pair does not prepare the weights (mismatch {mismatch:.3e})")

    be_blk = block_diag_general(beA, q, cap)
    be_f, rep = lincomb_of_inverses(be_blk, pair, beta_prime, q.r, delta, weights=q.w, blocks=blocks, cap=cap)

    ymax = float(np.max(np.abs(q.y)))
    zmax = float(np.max(np.abs(q.z)))
    mu = pair.mu
    tau = 16.0 / 3.0 * q.r * beta_prime * mu
    root = math.sqrt(2.0 * zmax * beA.epsilon / (ymax + zmax * beA.alpha))
    eta = q.r * beta_prime * (pair.delta + 16.0 / 3.0 * mu * (4.0 * rep.degree * root + delta))
    be_f = _with_report_contract(be_f, tau, eta)

    block = encoded_block(be_f)
    vs_f = None
    if function is not None:
        vs_f = spectral_norm(exact_matrix_function(a_mat, get_function(function)) - block)
    report = replace(
        rep,
        tau=tau,
        eta=eta,
        measured_error=spectral_norm(F_M_dense(a_mat, q) - block),
        alpha_prime=be_blk.alpha,
        beta_prime=beta_prime,
        measured_error_vs_f=vs_f,
    )
    return be_f, report
