"""Four-stroke measurement-driven engine cycle.

Strokes, starting from the Gibbs state ``rho0`` of ``H(B1)``:

1. quasi-static field change ``B1 -> B2`` with the state frozen,
2. non-selective measurement at fixed ``H(B2)``,
3. quasi-static field change ``B2 -> B1``,
4. re-thermalization back to ``rho0`` at fixed ``H(B1)``.

All energetics are trace expressions, so they do not depend on how an
eigenbasis is chosen inside degenerate levels. The eigenbasis sums in
:func:`symmetrized_energetics` and :func:`work_decomposition` exist as
cross-checks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import trace_product
from .measurement import (
    MeasurementScheme,
    TransitionMatrix,
    apply_nonselective,
    transition_matrix,
)
from .medium import WorkingMedium, build_hamiltonian, spectrum
from .thermal import ThermalState, gibbs_from_spectrum

QM_FLOOR = 1e-12


class EfficiencyUndefinedError(ArithmeticError):
    """Raised when the measurement stroke deposits no energy (``Q_M <= 1e-12``)."""


@dataclass(frozen=True)
class CyclePoint:
    medium: WorkingMedium
    b1: float
    b2: float
    scheme: MeasurementScheme
    beta: float = 1.0

    def __post_init__(self):
        for name in ("b1", "b2", "beta"):
            value = float(getattr(self, name))
            if not np.isfinite(value):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, value)
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        if self.scheme.dimension != self.medium.dimension:
            raise ValueError(
                f"scheme acts on dimension {self.scheme.dimension}, "
                f"medium has dimension {self.medium.dimension}"
            )

    @property
    def temperature(self) -> float:
        return 1.0 / self.beta


@dataclass(frozen=True)
class CycleResult:
    w1: float
    w2: float
    wt: float
    qm: float
    qt: float
    eta: float | None
    transition: TransitionMatrix
    post_probs: np.ndarray
    initial_state: ThermalState
    measured_state: np.ndarray

    @property
    def eta_defined(self) -> bool:
        return self.eta is not None

    @property
    def work(self) -> float:
        """Net work done on the medium, ``W1 + W2 = -wt``."""
        return self.w1 + self.w2

    def first_law_residual(self) -> float:
        return abs(self.w1 + self.w2 + self.qm + self.qt)

    def efficiency(self) -> float:
        if self.eta is None:
            raise EfficiencyUndefinedError(f"Q_M = {self.qm:.3e} is not positive")
        return self.eta


def run_cycle(p: CyclePoint) -> CycleResult:
    """Energetics of one cycle.

    ``eta`` is ``wt / qm`` when ``qm > 1e-12`` and ``None`` otherwise.
    """
    h1 = build_hamiltonian(p.medium, p.b1)
    h2 = build_hamiltonian(p.medium, p.b2)
    rho0 = gibbs_from_spectrum(spectrum(p.medium, p.b1), p.beta)
    rho_m = apply_nonselective(p.scheme, rho0.density)

    w1 = trace_product(rho0.density, h2 - h1).real
    qm = trace_product(rho_m - rho0.density, h2).real
    w2 = trace_product(rho_m, h1 - h2).real
    qt = trace_product(rho0.density - rho_m, h1).real
    wt = -(w1 + w2)
    eta = wt / qm if qm > QM_FLOOR else None

    basis = spectrum(p.medium, p.b2)
    trans = transition_matrix(p.scheme, basis)
    v = basis.eigenvectors
    post = np.real(np.einsum("in,ij,jn->n", v.conj(), rho_m, v))
    return CycleResult(w1, w2, wt, qm, qt, eta, trans, post, rho0, rho_m)


@dataclass(frozen=True)
class EigenbasisView:
    """Cycle data expressed in the eigenbasis of ``H(B2)``."""

    energies_initial: np.ndarray
    energies_final: np.ndarray
    probabilities: np.ndarray
    transition: np.ndarray
    basis_error: float


def eigenbasis_view(p: CyclePoint) -> EigenbasisView:
    """Energies at both fields, initial occupations and ``T`` in one shared basis.

    The field only enters through ``S_A^z + S_B^z``, which commutes with the
    exchange term, so the eigenvectors of ``H(B2)`` also diagonalize ``H(B1)``
    and ``rho0``; ``basis_error`` records how far that holds numerically.
    """
    basis = spectrum(p.medium, p.b2)
    v = basis.eigenvectors
    h1 = v.conj().T @ build_hamiltonian(p.medium, p.b1) @ v
    rho0 = v.conj().T @ gibbs_from_spectrum(spectrum(p.medium, p.b1), p.beta).density @ v
    off = max(
        float(np.max(np.abs(h1 - np.diag(np.diag(h1))))),
        float(np.max(np.abs(rho0 - np.diag(np.diag(rho0))))),
    )
    trans = transition_matrix(p.scheme, basis).entries
    return EigenbasisView(
        np.real(np.diag(h1)), basis.eigenvalues.copy(), np.real(np.diag(rho0)), trans, off
    )


@dataclass(frozen=True)
class WorkDecomposition:
    terms: np.ndarray
    delta_i: np.ndarray
    delta_f: np.ndarray

    @property
    def total(self) -> float:
        return float(self.terms.sum())


def _gaps(e: np.ndarray) -> np.ndarray:
    return e[:, None] - e[None, :]


def work_decomposition(p: CyclePoint) -> WorkDecomposition:
    """Pairwise terms ``W_mn = (Df_mn - Di_mn) T_mn (P_m - P_n) / 2``.

    Indices follow the ascending eigenbasis of ``H(B2)``; the terms sum to
    ``W1 + W2``.
    """
    view = eigenbasis_view(p)
    d_i = _gaps(view.energies_initial)
    d_f = _gaps(view.energies_final)
    terms = 0.5 * (d_f - d_i) * view.transition * _gaps(view.probabilities)
    return WorkDecomposition(terms, d_i, d_f)


def symmetrized_energetics(p: CyclePoint) -> tuple[float, float, float]:
    """``(Q_M, Q_T, W)`` from the symmetric double sums over eigenstates.

    Both energy slots of the ``Q_M`` sum use ``E(B2)``, both slots of the
    ``Q_T`` sum use ``E(B1)``.
    """
    view = eigenbasis_view(p)
    t = view.transition
    dp = _gaps(view.probabilities)  # P_m - P_n
    e_f, e_i = view.energies_final, view.energies_initial
    qm = 0.5 * np.sum(-_gaps(e_f) * t * dp)
    qt = 0.5 * np.sum(_gaps(e_i) * t * dp)
    w = 0.5 * np.sum((_gaps(e_f) - _gaps(e_i)) * t * dp)
    return float(qm), float(qt), float(w)
