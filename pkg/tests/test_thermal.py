import numpy as np
import pytest

from spinengine.medium import WorkingMedium, build_hamiltonian, spectrum
from spinengine.thermal import (
    InvalidBetaError,
    gibbs_state,
    occupation_probabilities,
    thermal_energy,
)


def test_zero_hamiltonian():
    ts = gibbs_state(np.zeros((4, 4)), 1.0)
    np.testing.assert_allclose(ts.density, np.eye(4) / 4)
    assert ts.partition_z == pytest.approx(4)


def test_spin_half_pair_boltzmann_weights():
    j, b = 0.5, 3.0
    h = build_hamiltonian(WorkingMedium("1/2", "1/2", j), b)
    ts = gibbs_state(h)
    energies = np.array([-6 * j, 2 * j - 2 * b, 2 * j, 2 * j + 2 * b])
    weights = np.exp(-energies)
    z = weights.sum()
    assert ts.partition_z == pytest.approx(z, rel=1e-12)
    sd = spectrum(WorkingMedium("1/2", "1/2", j), b)
    p = occupation_probabilities(ts, sd)
    np.testing.assert_allclose(p, np.sort(weights)[::-1] / z, atol=1e-12)
    # the singlet (-6J = -3) sits second from the bottom here, weight e^3 / Z
    assert p[1] == pytest.approx(np.exp(3) / z, rel=1e-12)


def test_density_invariants(rng):
    h = build_hamiltonian(WorkingMedium("1", "3/2", 0.4), 1.2)
    ts = gibbs_state(h, 0.7)
    rho = ts.density
    assert np.max(np.abs(rho - rho.conj().T)) < 1e-12
    assert abs(np.trace(rho) - 1) < 1e-12
    assert np.min(np.linalg.eigvalsh(rho)) > -1e-12
    assert np.max(np.abs(rho @ h - h @ rho)) < 1e-10


def test_large_beta_no_overflow():
    h = build_hamiltonian(WorkingMedium("1/2", "1/2", 1.0), 100.0)
    ts = gibbs_state(h, 50.0)
    p = occupation_probabilities(ts, spectrum(WorkingMedium("1/2", "1/2", 1.0), 100.0))
    assert p[0] == pytest.approx(1.0)
    assert np.isfinite(ts.log_z)


def test_probabilities_monotone():
    sd = spectrum(WorkingMedium("1/2", "1", 0.3), 2.0)
    ts = gibbs_state(build_hamiltonian(WorkingMedium("1/2", "1", 0.3), 2.0))
    p = occupation_probabilities(ts, sd)
    assert abs(p.sum() - 1) < 1e-12
    w = sd.eigenvalues
    for m in range(len(w) - 1):
        if w[m + 1] - w[m] > 1e-9:
            assert p[m] > p[m + 1]


def test_energy_nondecreasing_in_temperature():
    sd = spectrum(WorkingMedium("3/2", "3/2", 0.2), 1.5)
    energies = [thermal_energy(sd, t) for t in np.linspace(0.05, 10, 200)]
    assert np.all(np.diff(energies) >= -1e-12)


@pytest.mark.parametrize("beta", [0.0, -1.0, float("inf"), float("nan")])
def test_invalid_beta(beta):
    with pytest.raises(InvalidBetaError):
        gibbs_state(np.zeros((2, 2)), beta)
