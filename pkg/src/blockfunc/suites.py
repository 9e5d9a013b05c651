"""Seeded randomized contract suites: measured block error against the claimed bound."""

from __future__ import annotations

import zlib
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .blockenc import BlockEncoding, embed, encoded_block, from_matrix
from .circuits import DEFAULT_MAX_QUBITS
from .combinators import (
    diagonal,
    extend,
    extended_matrix,
    linear_combination,
    linear_combination_tensor,
    product,
    tensor,
    unextend_inverse,
)
from .inversion import invert_hermitian
from .linalg import spectral_norm
from .matfunc import CircleContour, QuadratureScheme, build_FM_encoding, build_fM_encoding
from .stateprep import build_sqrt_pair

CONTRACT_SLACK = 1e-8


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    trials: int
    max_measured_over_claimed: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "trials": self.trials,
            "max_measured_over_claimed": self.max_measured_over_claimed,
            "pass": self.passed,
        }


# --------------------------------------------------------------------------
# random instances


def random_matrix(rng: np.random.Generator, dim: int, norm: float = 1.0) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return norm * g / spectral_norm(g)


def random_hermitian(rng: np.random.Generator, dim: int, norm: float = 1.0) -> np.ndarray:
    g = random_matrix(rng, dim)
    h = g + g.conj().T
    return norm * h / spectral_norm(h)


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_encoding(
    rng: np.random.Generator,
    n: int,
    a: int,
    *,
    target: np.ndarray | None = None,
    error: float | None = None,
    hermitian: bool = False,
) -> tuple[BlockEncoding, np.ndarray]:
    """An (alpha, a, eps)-encoding of ``target`` built by dilating a perturbed copy.

    The perturbation has spectral norm ``error`` (random in [0, 1e-3] when not
    given) and the claimed epsilon is that norm.
    """
    dim = 2**n
    if target is None:
        gen = random_hermitian if hermitian else random_matrix
        target = gen(rng, dim, rng.uniform(0.2, 1.0))
    if error is None:
        error = float(rng.choice([0.0, rng.uniform(0.0, 1e-3)]))
    pert = np.zeros((dim, dim), dtype=np.complex128)
    if error > 0:
        pert = (random_hermitian if hermitian else random_matrix)(rng, dim, error)
    block = target + pert
    alpha = spectral_norm(block) * rng.uniform(1.0, 2.0) + 1e-12
    be = from_matrix(block, alpha=alpha, epsilon=spectral_norm(pert))
    return embed(be, max(a, 1) - 1), target


def _ratio(measured: float, claimed: float) -> float:
    return measured / (claimed + CONTRACT_SLACK)


# --------------------------------------------------------------------------
# one trial per suite: each returns measured / (claimed + slack)


def _shape(rng, n_max=2, a_max=4):
    return int(rng.integers(1, n_max + 1)), int(rng.integers(1, a_max + 1))


def trial_product(rng, cap):
    n, a = _shape(rng, a_max=2)
    b = int(rng.integers(1, 3))
    beA, A = random_encoding(rng, n, a)
    beB, B = random_encoding(rng, n, b)
    be = product(beA, beB, cap)
    return _ratio(spectral_norm(A @ B - encoded_block(be)), be.epsilon)


def trial_tensor(rng, cap):
    n, m = int(rng.integers(1, 3)), int(rng.integers(1, 3))
    a, b = int(rng.integers(1, 3)), int(rng.integers(1, 3))
    beA, A = random_encoding(rng, n, a)
    beB, B = random_encoding(rng, m, b)
    be = tensor(beA, beB, cap)
    return _ratio(spectral_norm(np.kron(A, B) - encoded_block(be)), be.epsilon)


def trial_linear_combination(rng, cap):
    n = int(rng.integers(1, 3))
    t = int(rng.integers(1, 5))
    bes, targets = zip(*(random_encoding(rng, n, int(rng.integers(1, 3))) for _ in range(t)))
    y = rng.normal(size=t) + 1j * rng.normal(size=t)
    pair = build_sqrt_pair(y * np.array([be.alpha for be in bes]))
    be = linear_combination(bes, y, pair, cap=cap)
    want = sum(yj * tj for yj, tj in zip(y, targets))
    return _ratio(spectral_norm(want - encoded_block(be)), be.epsilon)


def trial_linear_combination_tensor(rng, cap):
    t = int(rng.integers(1, 4))
    left, right, want = [], [], 0
    y = rng.normal(size=t) + 1j * rng.normal(size=t)
    for j in range(t):
        beA, A = random_encoding(rng, 1, 1)
        beB, B = random_encoding(rng, 1, int(rng.integers(1, 3)))
        left.append(beA)
        right.append(beB)
        want = want + y[j] * np.kron(A, B)
    pair = build_sqrt_pair(y * np.array([u.alpha * v.alpha for u, v in zip(left, right)]))
    be = linear_combination_tensor(left, right, y, pair, cap)
    return _ratio(spectral_norm(want - encoded_block(be)), be.epsilon)


def trial_diagonal(rng, cap):
    M = 2 ** int(rng.integers(1, 3))
    d = rng.normal(size=M) + 1j * rng.normal(size=M)
    d[rng.random(M) < 0.2] = 0.0
    if not np.any(d):
        d[0] = 1.0
    be = diagonal(d)
    return _ratio(spectral_norm(np.diag(d) - encoded_block(be)), be.epsilon)


def trial_extend(rng, cap):
    n, a = _shape(rng, n_max=2, a_max=3)
    beA, A = random_encoding(rng, n, a)
    be = extend(beA, cap)
    return _ratio(spectral_norm(extended_matrix(A) - encoded_block(be)), be.epsilon)


def trial_unextend_inverse(rng, cap):
    n, a = _shape(rng, n_max=2, a_max=3)
    A = random_matrix(rng, 2**n) + 1.5 * np.eye(2**n)
    inv = np.linalg.inv(A)
    be_ext, _ = random_encoding(rng, n + 1, a, target=np.linalg.inv(extended_matrix(A)))
    be = unextend_inverse(be_ext)
    return _ratio(spectral_norm(inv - encoded_block(be)), be.epsilon)


def trial_invert_hermitian(rng, cap):
    n = int(rng.integers(1, 3))
    beta = float(rng.choice([1.0, 2.0, 4.0]))
    dim = 2**n
    mags = rng.uniform(1.0 / beta, 1.0, size=dim)
    signs = rng.choice([-1.0, 1.0], size=dim)
    q = random_unitary(rng, dim)
    A = (q * (signs * mags)) @ q.conj().T
    be, _ = random_encoding(rng, n, 1, target=A, error=float(rng.choice([0.0, 1e-9])), hermitian=True)
    inv, _ = invert_hermitian(be, beta, float(rng.uniform(1e-3, 0.1)), cap)
    return _ratio(spectral_norm(np.linalg.inv(A) - encoded_block(inv)), inv.epsilon)


def trial_fM(rng, cap):
    A = random_matrix(rng, 2, rng.uniform(0.05, 0.5))
    be = from_matrix(A, alpha=1.0)
    c = CircleContour(z0=0.0, r=1.0, R=2.0, M=int(rng.choice([2, 4])), L=16)
    _, rep = build_fM_encoding(be, "exp", c, float(rng.uniform(1e-3, 1e-2)), target=A, cap=cap)
    return _ratio(rep.measured_error, rep.eta)


def trial_FM(rng, cap):
    A = random_hermitian(rng, 2, rng.uniform(0.1, 0.5))
    be = from_matrix(A, alpha=1.0)
    y = rng.uniform(1.0, 2.0, size=2) * rng.choice([-1.0, 1.0], size=2)
    z = rng.uniform(0.2, 1.0, size=2)
    w = rng.normal(size=2) + 1j * rng.normal(size=2)
    q = QuadratureScheme(w=w, y=y, z=z, r=float(rng.uniform(0.5, 2.0)))
    beta_prime = max(spectral_norm(np.linalg.inv(ak)) for ak in q.shifted(A))
    pair = build_sqrt_pair(w)
    _, rep = build_FM_encoding(be, q, pair, beta_prime, float(rng.uniform(1e-3, 1e-2)), target=A, cap=cap)
    return _ratio(rep.measured_error, rep.eta)


COMBINATOR_SUITES: dict[str, Callable] = {
    "product": trial_product,
    "tensor": trial_tensor,
    "linear_combination": trial_linear_combination,
    "linear_combination_tensor": trial_linear_combination_tensor,
    "diagonal": trial_diagonal,
    "extend": trial_extend,
    "unextend_inverse": trial_unextend_inverse,
}

PIPELINE_SUITES: dict[str, Callable] = {
    "invert_hermitian": trial_invert_hermitian,
    "fM_circle": trial_fM,
    "FM_general": trial_FM,
}

SUITES = {**COMBINATOR_SUITES, **PIPELINE_SUITES}


def suite_rng(seed: int, name: str) -> np.random.Generator:
    """Independent stream per (seed, suite), stable across runs and suite order."""
    return np.random.default_rng([int(seed), zlib.crc32(name.encode())])


def run_suite(name: str, seed: int, trials: int, cap: int = DEFAULT_MAX_QUBITS) -> SuiteResult:
    rng = suite_rng(seed, name)
    fn = SUITES[name]
    worst = max(fn(rng, cap) for _ in range(trials))
    return SuiteResult(name, trials, float(worst), bool(worst <= 1.0))


def run_all(seed: int, trials: int, cap: int = DEFAULT_MAX_QUBITS, names=None) -> list[SuiteResult]:
    return [run_suite(name, seed, trials, cap) for name in (names or SUITES)]
