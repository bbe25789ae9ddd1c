"""Dense complex linear algebra for small operators.

Matrices are plain ``numpy`` complex arrays. The Hermitian eigensolver is a
cyclic Jacobi method with round-robin (parallel) pair ordering: each round
rotates a set of disjoint index pairs at once, so one sweep costs ``n - 1``
small matrix products instead of ``n(n-1)/2`` scalar updates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITIAN_TOL = 1e-12
OFFDIAG_RTOL = 1e-13
MAX_SWEEPS = 100
PHASE_TOL = 1e-8


class NonHermitianError(ValueError):
    """Raised when a matrix fails the Hermitian symmetry check."""


class NoConvergenceError(RuntimeError):
    """Raised when Jacobi sweeps do not reduce the off-diagonal norm."""


class DimensionMismatchError(ValueError):
    """Raised when operand shapes are incompatible."""


@dataclass(frozen=True)
class SpectralDecomposition:
    """Ascending eigenvalues with unit-norm eigenvectors stored as columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dimension(self) -> int:
        return len(self.eigenvalues)

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T

    def projector(self, index: int) -> np.ndarray:
        v = self.eigenvectors[:, index]
        return np.outer(v, v.conj())


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.size == 0:
        raise DimensionMismatchError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def hermiticity_error(a: np.ndarray) -> float:
    """Largest ``|a_ij - conj(a_ji)|``."""
    return float(np.max(np.abs(a - a.conj().T)))


def check_hermitian(a, tol: float = HERMITIAN_TOL) -> np.ndarray:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"matrix is not square: {m.shape}")
    err = hermiticity_error(m)
    if err > tol:
        raise NonHermitianError(f"matrix is not Hermitian (max asymmetry {err:.3e})")
    return m


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Disjoint pair sets whose union over all rounds covers every pair once."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        p, q = [], []
        for k in range(m // 2):
            i, j = players[k], players[m - 1 - k]
            if i < n and j < n:
                p.append(min(i, j))
                q.append(max(i, j))
        order = np.argsort(p)
        rounds.append((np.asarray(p)[order], np.asarray(q)[order]))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


_ROUNDS: dict[int, list[tuple[np.ndarray, np.ndarray]]] = {}


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def _jacobi(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = a.shape[0]
    a = 0.5 * (a + a.conj().T)
    v = np.eye(n, dtype=complex)
    scale = float(np.linalg.norm(a))
    if n == 1 or scale == 0.0:
        return np.real(np.diag(a)).copy(), v
    target = OFFDIAG_RTOL * scale
    if n not in _ROUNDS:
        _ROUNDS[n] = _round_robin(n)
    rounds = _ROUNDS[n]
    for _ in range(MAX_SWEEPS):
        if _offdiag_norm(a) < target:
            return np.real(np.diag(a)).copy(), v
        for p, q in rounds:
            apq = a[p, q]
            mag = np.abs(apq)
            live = mag > 1e-300
            if not np.any(live):
                continue
            p, q, apq, mag = p[live], q[live], apq[live], mag[live]
            phase = apq / mag
            tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
            t = np.where(tau >= 0.0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            g = np.eye(n, dtype=complex)
            g[p, p] = c
            g[q, q] = c
            g[p, q] = s * phase
            g[q, p] = -s * phase.conj()
            a = g.conj().T @ a @ g
            a[p, q] = 0.0
            a[q, p] = 0.0
            v = v @ g
    if _offdiag_norm(a) < target:
        return np.real(np.diag(a)).copy(), v
    raise NoConvergenceError(
        f"off-diagonal norm {_offdiag_norm(a):.3e} above {target:.3e} after {MAX_SWEEPS} sweeps"
    )


def _fix_phase(v: np.ndarray) -> np.ndarray:
    out = v.copy()
    for k in range(out.shape[1]):
        col = out[:, k]
        col /= np.linalg.norm(col)
        big = np.nonzero(np.abs(col) > PHASE_TOL)[0]
        if len(big):
            lead = col[big[0]]
            col *= abs(lead) / lead
            col[big[0]] = abs(lead)
        out[:, k] = col
    return out


def _lex_key(col: np.ndarray) -> tuple:
    return tuple(x for z in np.round(col, 10) for x in (z.real, z.imag))


def hermitian_eigendecompose(a) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.

    Eigenvalues come back ascending. Each eigenvector's first component with
    magnitude above ``1e-8`` is made real and positive, and eigenvectors that
    share an (exactly) degenerate eigenvalue are ordered lexicographically, so
    the output is a deterministic function of the input.

    Raises:
        NonHermitianError: if ``a`` is not Hermitian within ``1e-12``.
        NoConvergenceError: if 100 sweeps do not bring the off-diagonal
            Frobenius norm below ``1e-13 * ||a||``.
    """
    m = check_hermitian(a)
    w, v = _jacobi(m)
    v = _fix_phase(v)
    order = np.argsort(w, kind="stable")
    w, v = w[order], v[:, order]

    tol = 1e-11 * max(1.0, float(np.max(np.abs(w))))
    start = 0
    for stop in range(1, len(w) + 1):
        if stop == len(w) or w[stop] - w[stop - 1] > tol:
            if stop - start > 1:
                block = list(range(start, stop))
                block.sort(key=lambda k: _lex_key(v[:, k]))
                v[:, start:stop] = v[:, block]
                w[start:stop] = w[block]
            start = stop
    return SpectralDecomposition(eigenvalues=w, eigenvectors=v)


def kron(a, b) -> np.ndarray:
    """Tensor product; entry ``(i*p + k, j*q + l)`` is ``a[i, j] * b[k, l]``."""
    return np.kron(as_matrix(a), as_matrix(b))


def trace_product(a, b) -> complex:
    """``Tr[a @ b]`` without forming the product."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[0] != a.shape[1] or a.shape != b.shape:
        raise DimensionMismatchError(f"cannot pair shapes {a.shape} and {b.shape}")
    return complex(np.sum(a * b.T))


def partial_trace(a, dim_a: int, dim_b: int, keep: str) -> np.ndarray:
    """Reduced matrix of a bipartite operator; ``keep`` is ``"A"`` or ``"B"``."""
    a = as_matrix(a)
    if a.shape != (dim_a * dim_b, dim_a * dim_b):
        raise DimensionMismatchError(
            f"shape {a.shape} does not match subsystem dimensions {dim_a}x{dim_b}"
        )
    t = a.reshape(dim_a, dim_b, dim_a, dim_b)
    if keep == "A":
        return np.einsum("ijkj->ik", t)
    if keep == "B":
        return np.einsum("ijil->jl", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")
