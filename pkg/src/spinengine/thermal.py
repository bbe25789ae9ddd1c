"""Gibbs states with Boltzmann weights ``exp(-beta E)`` (k_B = 1)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    DimensionMismatchError,
    SpectralDecomposition,
    check_hermitian,
    hermitian_eigendecompose,
)


class InvalidBetaError(ValueError):
    pass


@dataclass(frozen=True)
class ThermalState:
    density: np.ndarray
    beta: float
    partition_z: float
    spectrum: SpectralDecomposition
    # log Z, kept because Z itself overflows for large beta * |E_min|
    log_z: float

    @property
    def probabilities(self) -> np.ndarray:
        """Occupations of the Hamiltonian's eigenvectors, ascending in energy."""
        w = self.spectrum.eigenvalues
        p = np.exp(-self.beta * (w - w[0]))
        return p / p.sum()

    def energy(self) -> float:
        return float(np.dot(self.probabilities, self.spectrum.eigenvalues))


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not np.isfinite(beta) or beta <= 0.0:
        raise InvalidBetaError(f"beta must be positive and finite, got {beta}")
    return beta


def gibbs_from_spectrum(sd: SpectralDecomposition, beta: float) -> ThermalState:
    beta = _check_beta(beta)
    w, v = sd.eigenvalues, sd.eigenvectors
    weights = np.exp(-beta * (w - w[0]))
    total = weights.sum()
    p = weights / total
    density = (v * p) @ v.conj().T
    log_z = float(np.log(total) - beta * w[0])
    z = float(np.exp(log_z)) if log_z < 700 else float("inf")
    return ThermalState(density, beta, z, sd, log_z)


def gibbs_state(h, beta: float = 1.0) -> ThermalState:
    """``exp(-beta h) / Z`` built from the spectral decomposition of ``h``.

    Weights are shifted by the ground energy before exponentiation, so large
    ``beta`` never overflows.
    """
    beta = _check_beta(beta)
    return gibbs_from_spectrum(hermitian_eigendecompose(check_hermitian(h)), beta)


def occupation_probabilities(ts: ThermalState, sd: SpectralDecomposition) -> np.ndarray:
    """``<psi_n| rho |psi_n>`` for each eigenvector of ``sd``."""
    v = sd.eigenvectors
    if v.shape[0] != ts.density.shape[0]:
        raise DimensionMismatchError(
            f"state dimension {ts.density.shape[0]} does not match basis dimension {v.shape[0]}"
        )
    p = np.real(np.einsum("in,ij,jn->n", v.conj(), ts.density, v))
    return np.clip(p, 0.0, 1.0)


def thermal_energy(sd: SpectralDecomposition, temperature: float) -> float:
    """Mean energy of the Gibbs state at ``temperature`` for a fixed spectrum."""
    w = sd.eigenvalues
    p = np.exp(-(w - w[0]) / temperature)
    return float(np.dot(p, w) / p.sum())
