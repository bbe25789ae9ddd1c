"""Two-spin Heisenberg working medium ``H = 8J S_A.S_B + 2B (S_A^z + S_B^z)``."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .linalg import SpectralDecomposition, hermitian_eigendecompose
from .spin import SpinValue, spin_operators
from .tables import TABLES, SpectrumTable

TABLE_TOL = 1e-10


class UnsupportedPairError(ValueError):
    """Raised when no tabulated spectrum exists for a spin pair."""


@dataclass(frozen=True)
class WorkingMedium:
    spin_a: SpinValue
    spin_b: SpinValue
    coupling_j: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "spin_a", SpinValue.parse(self.spin_a))
        object.__setattr__(self, "spin_b", SpinValue.parse(self.spin_b))
        object.__setattr__(self, "coupling_j", float(self.coupling_j))
        if not np.isfinite(self.coupling_j):
            raise ValueError("coupling_j must be finite")

    @property
    def dims(self) -> tuple[int, int]:
        return self.spin_a.dimension, self.spin_b.dimension

    @property
    def dimension(self) -> int:
        return self.spin_a.dimension * self.spin_b.dimension

    @property
    def symmetric(self) -> bool:
        return self.spin_a == self.spin_b

    def with_coupling(self, j: float) -> "WorkingMedium":
        return WorkingMedium(self.spin_a, self.spin_b, j)


@lru_cache(maxsize=None)
def _pair_operators(twice_a: int, twice_b: int) -> tuple[np.ndarray, np.ndarray]:
    """``S_A.S_B`` and ``S_A^z + S_B^z`` on the product space."""
    ops_a = spin_operators(SpinValue(twice_a))
    ops_b = spin_operators(SpinValue(twice_b))
    eye_a = np.eye(twice_a + 1)
    eye_b = np.eye(twice_b + 1)
    exchange = sum(np.kron(a, b) for a, b in zip(ops_a, ops_b))
    zeeman = np.kron(ops_a.sz, eye_b) + np.kron(eye_a, ops_b.sz)
    exchange.setflags(write=False)
    zeeman.setflags(write=False)
    return exchange, zeeman


def total_sz(medium: WorkingMedium) -> np.ndarray:
    return _pair_operators(medium.spin_a.twice_s, medium.spin_b.twice_s)[1]


def build_hamiltonian(medium: WorkingMedium, b: float) -> np.ndarray:
    """Heisenberg pair Hamiltonian at field ``b``."""
    if not np.isfinite(b):
        raise ValueError("field must be finite")
    exchange, zeeman = _pair_operators(medium.spin_a.twice_s, medium.spin_b.twice_s)
    return 8.0 * medium.coupling_j * exchange + 2.0 * b * zeeman


def spectrum(medium: WorkingMedium, b: float) -> SpectralDecomposition:
    """Eigen-decomposition of ``H(b)``; cached, with read-only arrays."""
    if not np.isfinite(b):
        raise ValueError("field must be finite")
    return _cached_spectrum(
        medium.spin_a.twice_s, medium.spin_b.twice_s, medium.coupling_j, float(b)
    )


@lru_cache(maxsize=4096)
def _cached_spectrum(twice_a: int, twice_b: int, j: float, b: float) -> SpectralDecomposition:
    medium = WorkingMedium(SpinValue(twice_a), SpinValue(twice_b), j)
    sd = hermitian_eigendecompose(build_hamiltonian(medium, b))
    sd.eigenvalues.setflags(write=False)
    sd.eigenvectors.setflags(write=False)
    return sd


@dataclass
class LevelCheck:
    label: str
    expected: float
    state_checked: bool
    subspace_distance: float | None
    note: str = ""


@dataclass
class TableReport:
    """Comparison of the numerical spectrum against a tabulated one."""

    table: int
    j: float
    b: float
    tolerance: float
    eigenvalue_deviations: np.ndarray
    levels: list[LevelCheck] = field(default_factory=list)

    @property
    def max_eigenvalue_deviation(self) -> float:
        return float(np.max(self.eigenvalue_deviations))

    @property
    def max_subspace_distance(self) -> float:
        dists = [lv.subspace_distance for lv in self.levels if lv.state_checked]
        return max(dists, default=0.0)

    @property
    def passed(self) -> bool:
        return (
            self.max_eigenvalue_deviation < self.tolerance
            and self.max_subspace_distance < self.tolerance
        )


def table_for(medium: WorkingMedium) -> SpectrumTable:
    key = (medium.spin_a.twice_s, medium.spin_b.twice_s)
    if key not in TABLES:
        raise UnsupportedPairError(
            f"no tabulated spectrum for spins ({medium.spin_a}, {medium.spin_b})"
        )
    return TABLES[key]


def validate_against_table(
    medium: WorkingMedium, b: float, tolerance: float = TABLE_TOL
) -> TableReport:
    """Check eigenvalues and eigenstates of ``H(b)`` against the tabulated formulas.

    Eigenvalues are compared as sorted multisets, so level crossings do not
    matter. For each printed eigenstate that is marked reliable, the
    subspace distance is ``||(1 - P) v||`` with ``P`` the numerical
    eigenprojector onto all levels within ``1e-8`` of the tabulated energy;
    at degenerate points this compares against the whole eigenspace.
    """
    table = table_for(medium)
    j = medium.coupling_j
    sd = spectrum(medium, b)
    expected = np.array([lv.energy(j, b) for lv in table.levels])
    deviations = np.abs(np.sort(expected) - sd.eigenvalues)

    dim_b = medium.spin_b.dimension
    report = TableReport(table.number, j, b, tolerance, deviations)
    for lv in table.levels:
        energy = lv.energy(j, b)
        dist = None
        if lv.state_reliable:
            v = lv.vector(dim_b, medium.dimension)
            cols = sd.eigenvectors[:, np.abs(sd.eigenvalues - energy) < 1e-8]
            dist = float(np.linalg.norm(v - cols @ (cols.conj().T @ v)))
        report.levels.append(LevelCheck(lv.label(), energy, lv.state_reliable, dist, lv.note))
    return report
