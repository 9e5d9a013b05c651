"""JSON formats for matrices, quadrature schemes and experiment configs."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .linalg import num_qubits
from .matfunc import CircleContour, QuadratureScheme


def _pair(x) -> list[float]:
    x = complex(x)
    return [x.real, x.imag]


def _complex(v, what: str) -> complex:
    try:
        re, im = v
        return complex(float(re), float(im))
    except (TypeError, ValueError):
        raise ConfigError(f"{what}: expected [re, im], got {v!r}") from None


def _read_json(path) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path} is not valid JSON: {exc}") from None


def matrix_to_json(a: np.ndarray) -> dict:
    a = np.asarray(a, dtype=np.complex128)
    return {"n": num_qubits(a.shape[0]), "entries": [_pair(x) for x in a.reshape(-1)]}


def matrix_from_json(obj: dict) -> np.ndarray:
    try:
        n = int(obj["n"])
        entries = obj["entries"]
    except (KeyError, TypeError, ValueError):
        raise ConfigError('matrix JSON needs "n" and "entries"') from None
    d = 2**n
    if len(entries) != d * d:
        raise ConfigError(f"matrix with n = {n} needs {d * d} entries, got {len(entries)}")
    flat = np.array([_complex(e, "matrix entry") for e in entries], dtype=np.complex128)
    return flat.reshape(d, d)


def save_matrix(path, a: np.ndarray) -> None:
    Path(path).write_text(json.dumps(matrix_to_json(a)))


def load_matrix(path) -> np.ndarray:
    return matrix_from_json(_read_json(path))


def quadrature_to_json(q: QuadratureScheme) -> dict:
    nodes = [{"w": _pair(w), "y": _pair(y), "z": _pair(z)} for w, y, z in zip(q.w, q.y, q.z)]
    return {"r": float(q.r), "nodes": nodes}


def quadrature_from_json(obj: dict) -> QuadratureScheme:
    try:
        r = float(obj["r"])
        nodes = obj["nodes"]
        w = [_complex(nd["w"], "w") for nd in nodes]
        y = [_complex(nd["y"], "y") for nd in nodes]
        z = [_complex(nd["z"], "z") for nd in nodes]
    except (KeyError, TypeError):
        raise ConfigError('quadrature JSON needs "r" and "nodes" with w, y, z') from None
    return QuadratureScheme(w=np.array(w), y=np.array(y), z=np.array(z), r=r)


def save_quadrature(path, q: QuadratureScheme) -> None:
    Path(path).write_text(json.dumps(quadrature_to_json(q)))


def load_quadrature(path) -> QuadratureScheme:
    return quadrature_from_json(_read_json(path))


@dataclass(frozen=True)
class ExperimentConfig:
    """One matrix-function run.

    Exactly one of ``contour`` and ``quadrature`` is set. ``alpha`` is the
    scale of the input encoding (defaults to ``||A||``, at least 1e-12), and
    ``beta_prime`` is only read in quadrature mode.
    """

    matrix: np.ndarray
    function: object
    delta: float
    contour: CircleContour | None = None
    quadrature: QuadratureScheme | None = None
    alpha: float | None = None
    epsilon: float = 0.0
    beta_prime: float | None = None
    seed: int = 0
    out: str | None = None

    def __post_init__(self):
        if (self.contour is None) == (self.quadrature is None):
            raise ConfigError("config needs exactly one of 'contour' and 'quadrature'")


def load_config(path) -> ExperimentConfig:
    """Parse a config file; relative paths inside it resolve against its directory."""
    path = Path(path)
    raw = _read_json(path)
    base = path.parent

    def resolve(p):
        p = Path(p)
        return p if p.is_absolute() else base / p

    if not isinstance(raw, dict) or "matrix" not in raw:
        raise ConfigError("config needs a 'matrix' entry")
    matrix = raw["matrix"]
    a = matrix_from_json(matrix) if isinstance(matrix, dict) else load_matrix(resolve(matrix))

    contour = None
    if "contour" in raw:
        c = raw["contour"]
        try:
            contour = CircleContour(
                z0=_complex(c.get("z0", [0.0, 0.0]), "z0"),
                r=float(c["r"]),
                R=float(c["R"]),
                M=int(c["M"]),
                L=int(c.get("L", 20)),
            )
        except (KeyError, TypeError, AttributeError):
            raise ConfigError("contour needs r, R and M") from None
    quad = None
    if "quadrature" in raw:
        q = raw["quadrature"]
        quad = quadrature_from_json(q) if isinstance(q, dict) else load_quadrature(resolve(q))

    try:
        return ExperimentConfig(
            matrix=a,
            function=raw.get("function", "exp"),
            delta=float(raw.get("delta", 1e-3)),
            contour=contour,
            quadrature=quad,
            alpha=None if raw.get("alpha") is None else float(raw["alpha"]),
            epsilon=float(raw.get("epsilon", 0.0)),
            beta_prime=None if raw.get("beta_prime") is None else float(raw["beta_prime"]),
            seed=int(raw.get("seed", 0)),
            out=None if raw.get("out") is None else str(resolve(raw["out"])),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad config value: {exc}") from None
