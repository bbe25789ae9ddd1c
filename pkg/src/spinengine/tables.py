"""Tabulated spectra of the two-spin Heisenberg Hamiltonian.

Each level is ``b_coef * B + j_coef * J`` with a printed eigenstate written
as ``(amplitude, (index_a, index_b))`` terms, where index 0 is the highest
``m`` on each side. A handful of printed states are not usable as
eigenvectors (unnormalized amplitudes, a ket label that breaks the level's
magnetization, or amplitudes that are not orthogonal to a neighbouring
level); those carry ``state_reliable=False`` and are checked by eigenvalue
only.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np


@dataclass(frozen=True)
class TableLevel:
    b_coef: float
    j_coef: float
    state: tuple[tuple[float, tuple[int, int]], ...]
    state_reliable: bool = True
    note: str = ""

    def energy(self, j: float, b: float) -> float:
        return self.b_coef * b + self.j_coef * j

    def label(self) -> str:
        parts = []
        for coef, sym in ((self.b_coef, "B"), (self.j_coef, "J")):
            if coef:
                parts.append(f"{coef:+g}{sym}")
        return "".join(parts).lstrip("+") or "0"

    def vector(self, dim_b: int, dim: int) -> np.ndarray:
        v = np.zeros(dim, dtype=complex)
        for amp, (ia, ib) in self.state:
            v[ia * dim_b + ib] += amp
        return v


@dataclass(frozen=True)
class SpectrumTable:
    number: int
    twice_a: int
    twice_b: int
    levels: tuple[TableLevel, ...]


def _lv(b, j, *state, reliable=True, note=""):
    return TableLevel(float(b), float(j), tuple(state), reliable, note)


_UNNORMALIZED = "printed amplitudes are not normalized"

TABLES: dict[tuple[int, int], SpectrumTable] = {
    (1, 1): SpectrumTable(1, 1, 1, (
        _lv(2, 2, (1.0, (0, 0))),
        _lv(0, 2, (sqrt(1 / 2), (1, 0)), (sqrt(1 / 2), (0, 1))),
        _lv(-2, 2, (1.0, (1, 1))),
        _lv(0, -6, (sqrt(1 / 2), (1, 0)), (-sqrt(1 / 2), (0, 1))),
    )),
    (1, 2): SpectrumTable(2, 1, 2, (
        _lv(-1, -8, (-sqrt(2 / 3), (0, 2)), (sqrt(1 / 3), (1, 1))),
        _lv(1, -8, (-sqrt(1 / 3), (0, 1)), (sqrt(2 / 3), (1, 0))),
        _lv(-3, 4, (1.0, (1, 2))),
        _lv(-1, 4, (sqrt(1 / 3), (0, 2)), (sqrt(2 / 3), (1, 1))),
        _lv(1, 4, (sqrt(2 / 3), (0, 1)), (sqrt(1 / 3), (1, 0))),
        _lv(3, 4, (1.0, (0, 0))),
    )),
    (1, 3): SpectrumTable(3, 1, 3, (
        _lv(-2, -10, (-sqrt(3 / 2), (0, 3)), (1 / 2, (1, 2)), reliable=False, note=_UNNORMALIZED),
        _lv(2, -10, (-1 / 2, (0, 1)), (sqrt(3 / 2), (1, 0)), reliable=False, note=_UNNORMALIZED),
        _lv(0, -10, (-sqrt(1 / 2), (0, 2)), (sqrt(1 / 2), (1, 1))),
        _lv(0, 6, (sqrt(1 / 2), (0, 2)), (sqrt(1 / 2), (1, 1))),
        _lv(-4, 6, (1.0, (1, 3))),
        _lv(-2, 6, (1 / 2, (0, 3)), (sqrt(3 / 2), (1, 2)), reliable=False, note=_UNNORMALIZED),
        _lv(2, 6, (sqrt(3 / 2), (0, 1)), (1 / 2, (1, 0)), reliable=False, note=_UNNORMALIZED),
        _lv(4, 6, (1.0, (0, 0))),
    )),
    (2, 2): SpectrumTable(4, 2, 2, (
        _lv(-2, -8, (-sqrt(1 / 2), (1, 2)), (1 / 2, (2, 1)), reliable=False, note=_UNNORMALIZED),
        _lv(2, -8, (-sqrt(1 / 2), (0, 1)), (sqrt(1 / 2), (1, 0))),
        _lv(-4, 8, (1.0, (2, 2))),
        _lv(0, -16, (sqrt(1 / 3), (0, 2)), (-sqrt(1 / 3), (1, 1)), (sqrt(1 / 3), (2, 0))),
        _lv(0, -8, (-sqrt(1 / 2), (0, 2)), (sqrt(1 / 2), (2, 0))),
        _lv(0, 8, (sqrt(1 / 6), (0, 2)), (sqrt(2 / 3), (1, 1)), (sqrt(1 / 6), (2, 0))),
        _lv(4, 8, (1.0, (0, 0))),
        _lv(-2, 8, (sqrt(1 / 2), (1, 2)), (sqrt(1 / 2), (2, 1))),
        _lv(2, 8, (sqrt(1 / 2), (0, 1)), (sqrt(1 / 2), (1, 0))),
    )),
    (2, 3): SpectrumTable(5, 2, 3, (
        _lv(-1, -20, (sqrt(1 / 2), (0, 3)), (-sqrt(1 / 3), (1, 2)), (sqrt(1 / 6), (2, 1))),
        _lv(1, -20, (sqrt(1 / 6), (0, 2)), (-sqrt(1 / 3), (1, 1)), (sqrt(1 / 2), (2, 0))),
        _lv(-3, -8, (-sqrt(3 / 5), (1, 3)), (sqrt(2 / 5), (2, 2))),
        _lv(-1, -8, (-sqrt(2 / 5), (0, 3)), (-sqrt(1 / 15), (1, 2)), (sqrt(8 / 15), (2, 1))),
        _lv(1, -8, (-sqrt(8 / 15), (0, 2)), (sqrt(1 / 15), (1, 1)), (sqrt(2 / 5), (2, 0))),
        _lv(3, -8, (-2 / 5, (0, 1)), (sqrt(3 / 5), (1, 0)), reliable=False, note=_UNNORMALIZED),
        _lv(-3, 12, (sqrt(2 / 5), (1, 3)), (3 / 5, (2, 2)), reliable=False, note=_UNNORMALIZED),
        _lv(3, 12, (sqrt(3 / 5), (0, 1)), (sqrt(2 / 5), (1, 0))),
        _lv(-5, 12, (1.0, (2, 3))),
        _lv(-1, 12, (sqrt(1 / 10), (0, 3)), (sqrt(3 / 5), (1, 2)), (sqrt(3 / 10), (2, 1))),
        _lv(1, 12, (sqrt(3 / 10), (0, 2)), (sqrt(3 / 5), (1, 1)), (sqrt(1 / 10), (2, 1)),
            reliable=False, note="ket |2_A 1_B> has the wrong magnetization for this level"),
        _lv(5, 12, (1.0, (0, 0))),
    )),
    (3, 3): SpectrumTable(6, 3, 3, (
        _lv(-2, -22, (sqrt(3 / 10), (1, 3)), (-sqrt(2 / 5), (2, 2)), (sqrt(3 / 10), (3, 1))),
        _lv(2, -22, (sqrt(3 / 10), (0, 2)), (-sqrt(2 / 5), (1, 1)), (sqrt(3 / 10), (2, 0))),
        _lv(-4, -6, (-sqrt(1 / 2), (2, 3)), (sqrt(1 / 2), (3, 2))),
        _lv(-2, -6, (-sqrt(1 / 2), (1, 3)), (sqrt(1 / 2), (3, 1))),
        _lv(-6, 18, (1.0, (3, 3))),
        _lv(2, -6, (-sqrt(1 / 2), (0, 2)), (sqrt(1 / 2), (2, 0))),
        _lv(4, -6, (-sqrt(1 / 2), (0, 1)), (sqrt(1 / 2), (1, 0))),
        _lv(0, -30, (-1 / 2, (0, 3)), (1 / 2, (1, 2)), (-1 / 2, (2, 1)), (1 / 2, (3, 0))),
        _lv(0, -22, (3 / sqrt(20), (0, 3)), (-1 / sqrt(20), (1, 2)), (-1 / sqrt(20), (2, 1)),
            (3 / sqrt(20), (3, 0))),
        _lv(0, -6, (-1 / 2, (0, 3)), (-1 / 2, (1, 2)), (1 / 2, (2, 1)), (1 / 2, (3, 0))),
        _lv(0, 18, (3 / sqrt(20), (0, 3)), (1 / sqrt(20), (1, 2)), (1 / sqrt(20), (2, 1)),
            (3 / sqrt(20), (3, 0)),
            reliable=False, note="printed state is not orthogonal to the -22J level"),
        _lv(6, 18, (1.0, (0, 0))),
        _lv(-4, 18, (sqrt(1 / 2), (2, 3)), (sqrt(1 / 2), (3, 2))),
        _lv(-2, 18, (sqrt(1 / 5), (1, 3)), (sqrt(3 / 5), (2, 2)), (sqrt(1 / 5), (3, 1))),
        _lv(2, 18, (sqrt(1 / 5), (0, 2)), (sqrt(3 / 5), (1, 1)), (sqrt(1 / 5), (2, 0))),
        _lv(4, 18, (sqrt(1 / 2), (0, 1)), (sqrt(1 / 2), (1, 0))),
    )),
}
