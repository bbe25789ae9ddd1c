"""Measurement schemes, the non-selective channel, and transition matrices.

A scheme is a list of measurement (Kraus) operators ``M_k``. Local schemes on
the spin pair are built as all products ``P_i^A (x) P_j^B`` of eigenprojectors
of a spin component on each side. Side descriptors are ``"x"``, ``"y"``,
``"z"``, ``"theta=<rad>,phi=<rad>"`` or, on side A of a spin-1/2, ``"sic"``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .linalg import DimensionMismatchError, SpectralDecomposition, as_matrix
from .medium import WorkingMedium
from .spin import SpinValue, eigenprojectors_of, spin_direction_operator

COMPLETENESS_TOL = 1e-10

AXES = {
    "x": (math.pi / 2, 0.0),
    "y": (math.pi / 2, math.pi / 2),
    "z": (0.0, 0.0),
}


class IncompleteSchemeError(ValueError):
    """Raised when ``sum_k M_k^dag M_k`` is not the identity."""


@dataclass(frozen=True)
class MeasurementScheme:
    operators: tuple[np.ndarray, ...]
    label: str = ""

    def __post_init__(self):
        ops = tuple(as_matrix(m) for m in self.operators)
        if not ops:
            raise ValueError("a scheme needs at least one operator")
        shape = ops[0].shape
        if shape[0] != shape[1] or any(m.shape != shape for m in ops):
            raise DimensionMismatchError("measurement operators must be square and equal-sized")
        object.__setattr__(self, "operators", ops)

    @property
    def dimension(self) -> int:
        return self.operators[0].shape[0]

    @cached_property
    def stack(self) -> np.ndarray:
        s = np.stack(self.operators)
        s.setflags(write=False)
        return s

    def completeness_error(self) -> float:
        m = self.stack
        total = (m.conj().transpose(0, 2, 1) @ m).sum(axis=0)
        return float(np.max(np.abs(total - np.eye(self.dimension))))

    @cached_property
    def is_complete(self) -> bool:
        return self.completeness_error() < COMPLETENESS_TOL

    @cached_property
    def is_projective(self) -> bool:
        """Hermitian, idempotent and mutually orthogonal operators."""
        m = self.stack
        if np.max(np.abs(m - m.conj().transpose(0, 2, 1))) > 1e-10:
            return False
        prod = m[:, None] @ m[None, :]
        for a in range(len(m)):
            for b in range(len(m)):
                want = m[a] if a == b else 0.0
                if np.max(np.abs(prod[a, b] - want)) > 1e-10:
                    return False
        return True


@dataclass(frozen=True)
class SideMeasurement:
    """One side of a local scheme: a spin direction or the qubit SIC-POVM."""

    kind: str  # "axis", "angles" or "sic"
    theta: float = 0.0
    phi: float = 0.0
    axis: str = ""

    @classmethod
    def parse(cls, text: str) -> "SideMeasurement":
        text = str(text).strip().lower()
        if text in AXES:
            theta, phi = AXES[text]
            return cls("axis", theta, phi, text)
        if text == "sic":
            return cls("sic")
        fields = {}
        for part in text.split(","):
            key, sep, value = part.partition("=")
            if not sep:
                raise ValueError(f"bad measurement descriptor {text!r}")
            fields[key.strip()] = float(value)
        if set(fields) != {"theta", "phi"}:
            raise ValueError(f"bad measurement descriptor {text!r}: need theta=..,phi=..")
        if not all(math.isfinite(v) for v in fields.values()):
            raise ValueError("measurement angles must be finite")
        return cls("angles", fields["theta"], fields["phi"])

    def __str__(self) -> str:
        if self.kind == "axis":
            return self.axis
        if self.kind == "sic":
            return "sic"
        return f"theta={self.theta!r},phi={self.phi!r}"

    @property
    def direction(self) -> tuple[float, float] | None:
        return None if self.kind == "sic" else (self.theta, self.phi)


@lru_cache(maxsize=256)
def _direction_projectors(twice_s: int, theta: float, phi: float) -> tuple[np.ndarray, ...]:
    op = spin_direction_operator(SpinValue(twice_s), theta, phi)
    # highest spin component first, matching M_1 = |+><+| (x) ...
    return tuple(p for _, p in reversed(eigenprojectors_of(op)))


def _side_operators(spin: SpinValue, side) -> tuple[np.ndarray, ...]:
    if isinstance(side, str):
        side = SideMeasurement.parse(side)
    if isinstance(side, SideMeasurement):
        if side.kind == "sic":
            if spin.twice_s != 1:
                raise ValueError("the SIC-POVM is only defined here for a spin-1/2 side")
            return qubit_sic_scheme().operators
        side = (side.theta, side.phi)
    theta, phi = side
    return _direction_projectors(spin.twice_s, float(theta), float(phi))


def product_scheme(ops_a, ops_b, label: str = "") -> MeasurementScheme:
    return MeasurementScheme(tuple(np.kron(a, b) for a in ops_a for b in ops_b), label)


def local_projective_scheme(medium: WorkingMedium, dir_a, dir_b) -> MeasurementScheme:
    """Products of spin-component eigenprojectors along ``dir_a`` on A and ``dir_b`` on B.

    Directions are ``(theta, phi)`` pairs, axis letters, or descriptor strings.
    """
    label = f"{_describe(dir_a)}|{_describe(dir_b)}"
    return product_scheme(
        _side_operators(medium.spin_a, dir_a), _side_operators(medium.spin_b, dir_b), label
    )


def _describe(side) -> str:
    if isinstance(side, (str, SideMeasurement)):
        return str(SideMeasurement.parse(str(side)))
    theta, phi = side
    return f"theta={float(theta)!r},phi={float(phi)!r}"


def scheme_from_labels(medium: WorkingMedium, meas_a: str, meas_b: str) -> MeasurementScheme:
    """Scheme from CLI-style descriptors; ``"sic"`` is accepted on side A only."""
    if SideMeasurement.parse(meas_b).kind == "sic":
        raise ValueError("'sic' is only supported on side A")
    return local_projective_scheme(medium, meas_a, meas_b)


@lru_cache(maxsize=1)
def qubit_sic_scheme() -> MeasurementScheme:
    """Tetrahedral SIC-POVM on one qubit, with ``M_k = sqrt(G_k)``."""
    bloch = [
        (0.0, 0.0, 1.0),
        (2 * math.sqrt(2) / 3, 0.0, -1 / 3),
        (-math.sqrt(2) / 3, math.sqrt(2 / 3), -1 / 3),
        (-math.sqrt(2) / 3, -math.sqrt(2 / 3), -1 / 3),
    ]
    pauli = (
        np.array([[0, 1], [1, 0]], dtype=complex),
        np.array([[0, -1j], [1j, 0]], dtype=complex),
        np.array([[1, 0], [0, -1]], dtype=complex),
    )
    ops = []
    for n in bloch:
        pure = 0.5 * (np.eye(2) + sum(c * s for c, s in zip(n, pauli)))
        # G_k = pure / 2 is a scaled rank-1 projector, so its square root is pure / sqrt(2)
        ops.append(pure / math.sqrt(2))
    return MeasurementScheme(tuple(ops), "sic")


def _check_dims(scheme: MeasurementScheme, a: np.ndarray) -> None:
    if a.shape != (scheme.dimension, scheme.dimension):
        raise DimensionMismatchError(
            f"operator shape {a.shape} does not match scheme dimension {scheme.dimension}"
        )


def apply_nonselective(scheme: MeasurementScheme, rho) -> np.ndarray:
    """Post-measurement state ``sum_k M_k rho M_k^dag`` with outcomes discarded."""
    rho = as_matrix(rho)
    _check_dims(scheme, rho)
    if not scheme.is_complete:
        raise IncompleteSchemeError(
            f"sum of M^dag M deviates from identity by {scheme.completeness_error():.3e}"
        )
    m = scheme.stack
    return (m @ rho @ m.conj().transpose(0, 2, 1)).sum(axis=0)


def heisenberg_dual(scheme: MeasurementScheme, h) -> np.ndarray:
    """``sum_k M_k^dag h M_k``, the dual map acting on observables."""
    h = as_matrix(h)
    _check_dims(scheme, h)
    m = scheme.stack
    return (m.conj().transpose(0, 2, 1) @ h @ m).sum(axis=0)


@dataclass(frozen=True)
class TransitionMatrix:
    """``T[m, n] = sum_k |<psi_m| M_k |psi_n>|^2`` in a fixed eigenbasis."""

    entries: np.ndarray
    basis: SpectralDecomposition

    def symmetry_error(self) -> float:
        return float(np.max(np.abs(self.entries - self.entries.T)))

    def stochasticity_error(self) -> float:
        t = self.entries
        return float(max(np.max(np.abs(t.sum(axis=0) - 1)), np.max(np.abs(t.sum(axis=1) - 1))))


def transition_matrix(scheme: MeasurementScheme, basis: SpectralDecomposition) -> TransitionMatrix:
    v = basis.eigenvectors
    if v.shape[0] != scheme.dimension:
        raise DimensionMismatchError(
            f"basis dimension {v.shape[0]} does not match scheme dimension {scheme.dimension}"
        )
    amplitudes = v.conj().T @ scheme.stack @ v
    return TransitionMatrix(np.sum(np.abs(amplitudes) ** 2, axis=0), basis)
