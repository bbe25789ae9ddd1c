"""Spin-s angular momentum matrices and eigenprojectors.

Basis ordering follows the usual canonical convention: index 0 is ``m = s``
and the last index is ``m = -s``, so ``sz = diag(s, s-1, ..., -s)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .linalg import check_hermitian, hermitian_eigendecompose

DEGENERACY_TOL = 1e-9


@dataclass(frozen=True)
class SpinValue:
    """Spin quantum number stored as ``twice_s`` so half-integers stay exact."""

    twice_s: int

    def __post_init__(self):
        if not isinstance(self.twice_s, (int, np.integer)) or self.twice_s < 1:
            raise ValueError(f"twice_s must be a positive integer, got {self.twice_s!r}")

    @property
    def s(self) -> float:
        return self.twice_s / 2

    @property
    def dimension(self) -> int:
        return self.twice_s + 1

    @classmethod
    def parse(cls, text) -> "SpinValue":
        """Accepts ``"1/2"``, ``"3/2"``, ``"1"``, ``"n/2"`` or a number."""
        if isinstance(text, SpinValue):
            return text
        try:
            value = Fraction(str(text).strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a spin value: {text!r}") from None
        twice = 2 * value
        if twice.denominator != 1 or twice < 1:
            raise ValueError(f"spin must be a positive multiple of 1/2, got {text!r}")
        return cls(int(twice))

    def __str__(self) -> str:
        return str(self.twice_s // 2) if self.twice_s % 2 == 0 else f"{self.twice_s}/2"


@dataclass(frozen=True)
class SpinOperators:
    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray

    def __iter__(self):
        return iter((self.sx, self.sy, self.sz))


@lru_cache(maxsize=None)
def _spin_operators(twice_s: int) -> SpinOperators:
    s = twice_s / 2
    m = s - np.arange(twice_s + 1)
    # <m+1| S+ |m> = sqrt(s(s+1) - m(m+1)), stored above the diagonal
    raising = np.diag(np.sqrt(s * (s + 1) - m[1:] * (m[1:] + 1)), k=1).astype(complex)
    lowering = raising.conj().T
    ops = SpinOperators(
        sx=(raising + lowering) / 2,
        sy=(raising - lowering) / 2j,
        sz=np.diag(m).astype(complex),
    )
    for op in ops:
        op.setflags(write=False)
    return ops


def spin_operators(spin: SpinValue) -> SpinOperators:
    """Standard irreducible representation of su(2) for spin ``s`` (hbar = 1)."""
    return _spin_operators(SpinValue.parse(spin).twice_s)


def spin_direction_operator(spin: SpinValue, theta: float, phi: float) -> np.ndarray:
    """Spin component along the unit vector with polar angle ``theta`` and azimuth ``phi``."""
    if not (np.isfinite(theta) and np.isfinite(phi)):
        raise ValueError("angles must be finite")
    ops = spin_operators(spin)
    return (
        np.sin(theta) * np.cos(phi) * ops.sx
        + np.sin(theta) * np.sin(phi) * ops.sy
        + np.cos(theta) * ops.sz
    )


def eigenprojectors_of(a) -> list[tuple[float, np.ndarray]]:
    """Spectral projectors of a Hermitian matrix, ascending by eigenvalue.

    Eigenvalues closer than ``1e-9`` are grouped into one projector.
    """
    check_hermitian(a)
    sd = hermitian_eigendecompose(a)
    w, v = sd.eigenvalues, sd.eigenvectors
    out = []
    start = 0
    for stop in range(1, len(w) + 1):
        if stop == len(w) or w[stop] - w[start] > DEGENERACY_TOL:
            block = v[:, start:stop]
            out.append((float(np.mean(w[start:stop])), block @ block.conj().T))
            start = stop
    return out
