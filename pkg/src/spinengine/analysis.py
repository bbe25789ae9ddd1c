"""Subsystem works and the refrigerator reading of negative-work cycles."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cycle import CyclePoint, CycleResult, run_cycle
from .linalg import partial_trace, trace_product
from .medium import spectrum
from .spin import spin_operators
from .thermal import thermal_energy

T2_FLOOR = 1e-9
T2_MAX_ITER = 200
COP_FLOOR = 1e-12


@dataclass(frozen=True)
class LocalWorkResult:
    q_a1: float
    q_a2: float
    q_b1: float
    q_b2: float
    w_a: float
    w_b: float
    w_total_local: float
    w_global: float


def local_hamiltonian(spin, b: float) -> np.ndarray:
    """Zeeman-only local Hamiltonian ``2B S^z``; the exchange term is not split."""
    return 2.0 * b * spin_operators(spin).sz


def local_works(p: CyclePoint, result: CycleResult | None = None) -> LocalWorkResult:
    """Local heats and works of each spin from the reduced states.

    ``q_i1`` is the energy change of spin ``i`` in the measurement stroke
    (local Hamiltonian at ``B2``), ``q_i2`` the change in re-thermalization
    (at ``B1``), and ``w_i = -(q_i1 + q_i2)``. ``w_global`` is the cycle's
    extracted work ``W_t``.
    """
    res = result if result is not None else run_cycle(p)
    dim_a, dim_b = p.medium.dims
    rho0, rho_m = res.initial_state.density, res.measured_state
    q = {}
    for side, spin in (("A", p.medium.spin_a), ("B", p.medium.spin_b)):
        r0 = partial_trace(rho0, dim_a, dim_b, side)
        rm = partial_trace(rho_m, dim_a, dim_b, side)
        q1 = trace_product(rm - r0, local_hamiltonian(spin, p.b2)).real
        q2 = trace_product(r0 - rm, local_hamiltonian(spin, p.b1)).real
        q[side] = (q1, q2)
    w_a = -(q["A"][0] + q["A"][1])
    w_b = -(q["B"][0] + q["B"][1])
    return LocalWorkResult(*q["A"], *q["B"], w_a, w_b, w_a + w_b, res.wt)


@dataclass(frozen=True)
class RefrigeratorResult:
    """Effective cold temperature ``t2`` and COP; ``None`` marks not-found / not-applicable."""

    t2: float | None
    cop: float | None
    qm: float
    residual: float | None

    @property
    def t2_found(self) -> bool:
        return self.t2 is not None


def coefficient_of_performance(r: CycleResult) -> float | None:
    """``Q_M / (-W_t)`` when work is consumed (``W_t < -1e-12``), else ``None``."""
    if r.wt < -COP_FLOOR:
        return r.qm / (-r.wt)
    return None


def effective_cold_temperature(
    p: CyclePoint, result: CycleResult | None = None
) -> RefrigeratorResult:
    """Solve ``Q_M = U(T) - U(T2)`` for ``T2`` at field ``B2`` by bisection.

    ``U(T')`` is the Gibbs energy of ``H(B2)`` at temperature ``T'``; it is
    nondecreasing in ``T'``, so a root in ``(1e-9, T]`` exists iff ``Q_M`` does
    not exceed the energy gap between ``U(T)`` and the low-temperature limit.
    """
    res = result if result is not None else run_cycle(p)
    cop = coefficient_of_performance(res)
    temp = p.temperature
    sd = spectrum(p.medium, p.b2)
    target = thermal_energy(sd, temp) - res.qm

    def excess(t: float) -> float:
        return thermal_energy(sd, t) - target

    if res.qm <= 0.0:
        return RefrigeratorResult(temp, cop, res.qm, abs(excess(temp)))
    lo, hi = T2_FLOOR, temp
    if excess(lo) > 0.0:
        return RefrigeratorResult(None, cop, res.qm, None)
    for _ in range(T2_MAX_ITER):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if excess(mid) > 0.0:
            hi = mid
        else:
            lo = mid
    # pick whichever end of the final bracket has the smaller residual
    t2 = lo if abs(excess(lo)) <= abs(excess(hi)) else hi
    return RefrigeratorResult(t2, cop, res.qm, abs(excess(t2)))
