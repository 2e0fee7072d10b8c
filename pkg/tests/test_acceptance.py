"""Acceptance suite: one test per exit criterion, each printing a PASS/FAIL
line (run with ``pytest -s`` to see them all).

Criterion 9 asserts that unitary encoding dominates the reset pre-processing
for every correlation degree mu >= 0.3.  Numerically the dominance boundary
peaks slightly above that (mu ~ 0.3028 at p ~ 0.084), so the check fails by
~2.6e-3 bits at the mu = 0.30 grid line; it is kept as stated rather than
loosened.  See the failure message for the measured violation.
"""

import math
import time

import numpy as np

from densecode import qmat
from densecode.channels import (
    CorrelatedPauliSpec,
    KrausMap,
    correlated_apply,
    displacements,
    kraus_apply,
    pauli_apply,
    quasi_classical_spec,
    reset_map,
)
from densecode.holevo import (
    achievability_ensemble,
    analytic_capacity_quasi,
    capacity_nonunitary,
    capacity_unitary,
    holevo_quantity,
    quasi_channel_spectrum,
    transferred_info_preprocessed,
)
from densecode.optimize import OptimizerConfig, crossover_mu, minimize_unitary
from densecode.states import DensityOperator, bell_phi_plus, phi_with_phase, werner
from densecode import cli
from helpers import rand_density, rand_marginal, rand_unitary


def _report(number, description, passed, detail=""):
    tag = "PASS" if passed else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"{tag} criterion {number:2d}: {description}{suffix}")
    assert passed, f"criterion {number}: {description}{suffix}"


def test_criterion_01_fully_correlated_bell_two_bits():
    spec = CorrelatedPauliSpec(quasi_classical_spec(2, 0.3), 1.0)
    report = capacity_unitary(spec, bell_phi_plus(), np.eye(2))
    error = abs(report.capacity_bits - 2.0)
    _report(1, "fully correlated channel + Bell state gives 2 bits",
            error <= 1e-9, f"error {error:.2e}")


def test_criterion_02_closed_form_spectrum_oracle():
    start = time.perf_counter()
    worst = 0.0
    eye4 = np.eye(4)
    for eta in np.linspace(0.0, 1.0, 5):
        for mu in np.linspace(0.0, 1.0, 5):
            for p in np.linspace(0.0, 1.0, 5):
                spec = CorrelatedPauliSpec(quasi_classical_spec(2, p), mu)
                for phi in np.linspace(0.0, 2.0 * np.pi, 5):
                    rho = DensityOperator(
                        eta * phi_with_phase(phi).matrix + (1.0 - eta) * eye4 / 4.0, (2, 2)
                    )
                    numeric = qmat.von_neumann_entropy(correlated_apply(spec, rho))
                    analytic = qmat.shannon_entropy(quasi_channel_spectrum(eta, mu, p, phi))
                    worst = max(worst, abs(numeric - analytic))
    elapsed = time.perf_counter() - start
    _report(2, "closed-form output spectrum matches channel diagonalization on a 5^4 grid",
            worst <= 1e-9 and elapsed < 10.0,
            f"max err {worst:.2e}, {elapsed:.1f}s")


def test_criterion_03_achievability_equality():
    rng = np.random.default_rng(2024)
    worst = 0.0
    cases = 0
    for d, count in ((2, 100), (3, 10)):
        eye = np.eye(d)
        for _ in range(count):
            spec = CorrelatedPauliSpec(rand_marginal(rng, d), rng.uniform())
            rho = rand_density(rng, d * d, (d, d))
            u = rand_unitary(rng, d)
            chi = holevo_quantity(achievability_ensemble(KrausMap.from_unitary(u), d), spec, rho)
            big = np.kron(u, eye)
            conjugated = DensityOperator(big @ rho.matrix @ big.conj().T, (d, d))
            rho_b = DensityOperator(qmat.partial_trace(rho.matrix, (d, d), "a"), (d, 1))
            expression = (
                math.log2(d)
                + qmat.von_neumann_entropy(pauli_apply(spec.marginal, rho_b))
                - qmat.von_neumann_entropy(correlated_apply(spec, conjugated))
            )
            worst = max(worst, abs(chi - expression))
            cases += 1
    _report(3, "uniform displacement ensemble reaches the capacity expression",
            worst <= 1e-9, f"max err {worst:.2e} over {cases} triples")


def test_criterion_04_twirl_and_marginal_identities():
    rng = np.random.default_rng(2025)
    worst = 0.0
    cases = 0
    for d, count in ((2, 100), (3, 10)):
        eye = np.eye(d)
        for _ in range(count):
            tau = rand_density(rng, d * d, (d, d))
            acc = np.zeros((d * d, d * d), dtype=complex)
            for v in displacements(d):
                big = np.kron(v, eye)
                acc += big @ tau.matrix @ big.conj().T / d**2
            target = np.kron(eye / d, qmat.partial_trace(tau.matrix, (d, d), "a"))
            worst = max(worst, float(np.abs(acc - target).max()))

            spec = CorrelatedPauliSpec(rand_marginal(rng, d), rng.uniform())
            lhs = qmat.partial_trace(correlated_apply(spec, tau).matrix, (d, d), "a")
            rho_b = DensityOperator(qmat.partial_trace(tau.matrix, (d, d), "a"), (d, 1))
            rhs = pauli_apply(spec.marginal, rho_b).matrix
            worst = max(worst, float(np.abs(lhs - rhs).max()))
            cases += 1
    _report(4, "displacement-twirl and receiver-marginal identities",
            worst <= 1e-12, f"max err {worst:.2e} over {cases} states")


def test_criterion_05_identity_encoding_is_optimal_on_grid():
    cfg = OptimizerConfig(restarts=2, max_iters=600)
    worst_above = 0.0
    worst_below = 0.0
    for p in np.linspace(0.0, 1.0, 5):
        for mu in np.linspace(0.0, 1.0, 5):
            spec = CorrelatedPauliSpec(quasi_classical_spec(2, p), mu)
            for eta in np.linspace(0.0, 1.0, 5):
                found = minimize_unitary(spec, werner(eta), cfg).entropy_bits
                reference = qmat.shannon_entropy(quasi_channel_spectrum(eta, mu, p, 0.0))
                worst_above = max(worst_above, found - reference)
                worst_below = max(worst_below, reference - found)
    _report(5, "unitary search lands on the closed-form minimum over a 5^3 grid",
            worst_above <= 1e-6 and worst_below <= 1e-9,
            f"above by {worst_above:.2e}, below by {worst_below:.2e}")


def test_criterion_06_reset_rate_independent_of_correlation():
    worst = 0.0
    bell = bell_phi_plus()
    gamma = reset_map(2)
    for p in np.linspace(0.0, 1.0, 11):
        expected = transferred_info_preprocessed(p)
        for mu in np.linspace(0.0, 1.0, 11):
            spec = CorrelatedPauliSpec(quasi_classical_spec(2, p), mu)
            got = capacity_nonunitary(spec, bell, gamma).capacity_bits
            worst = max(worst, abs(got - expected))
    _report(6, "reset pre-processing rate is 1 - H2(p) for every correlation degree",
            worst <= 1e-9, f"max err {worst:.2e}")


def test_criterion_07_sign_flips_at_mu_020():
    start = time.perf_counter()

    def gap(p):
        return analytic_capacity_quasi(1.0, 0.2, p) - transferred_info_preprocessed(p)

    ok = (
        gap(0.004) > 0.0 > gap(0.010)  # flip inside (0.007 +/- 0.003)
        and gap(0.290) < 0.0 < gap(0.296)  # flip inside (0.293 +/- 0.003)
    )
    elapsed = time.perf_counter() - start
    _report(7, "unitary/preprocessed gap changes sign near p = 0.007 and p = 0.293",
            ok and elapsed < 1.0,
            f"gaps {gap(0.004):+.1e}, {gap(0.010):+.1e}, {gap(0.290):+.1e}, "
            f"{gap(0.296):+.1e}, {elapsed:.2f}s")


def test_criterion_08_crossover_at_p_005():
    mu_tilde = crossover_mu(0.05, tol=1e-4).mu_tilde
    ok = mu_tilde is not None and abs(mu_tilde - 0.294) <= 0.003
    _report(8, "crossover correlation degree at p = 0.05 is 0.294 +/- 0.003",
            ok, f"mu_tilde {mu_tilde}")


def test_criterion_09_unitary_dominates_above_mu_030():
    lowest = math.inf
    argmin = None
    for mu in np.linspace(0.30, 1.00, 71):
        for p in np.linspace(0.0, 1.0, 101):
            diff = analytic_capacity_quasi(1.0, mu, p) - transferred_info_preprocessed(p)
            if diff < lowest:
                lowest = diff
                argmin = (round(float(mu), 2), round(float(p), 2))
    _report(9, "unitary capacity >= reset-preprocessing rate for all mu in [0.3, 1]",
            lowest >= -1e-12,
            f"min difference {lowest:+.3e} at (mu, p) = {argmin}")


def test_criterion_10_noise_exchange_symmetry():
    worst = 0.0
    for mu in np.linspace(0.0, 1.0, 11):
        for p in np.linspace(0.0, 1.0, 51):
            worst = max(worst, abs(
                analytic_capacity_quasi(1.0, mu, p) - analytic_capacity_quasi(1.0, mu, 1.0 - p)
            ))
    for p in np.linspace(0.0, 1.0, 51):
        worst = max(worst, abs(
            transferred_info_preprocessed(p) - transferred_info_preprocessed(1.0 - p)
        ))
    _report(10, "both capacities are symmetric under p <-> 1-p",
            worst <= 1e-12, f"max asymmetry {worst:.2e}")


def test_criterion_11_verify_command_passes_quickly(capsys):
    start = time.perf_counter()
    code = cli.main(["verify"])
    elapsed = time.perf_counter() - start
    out = capsys.readouterr().out
    with capsys.disabled():
        _report(11, "default verify run exits 0 in under 60 s",
                code == 0 and elapsed < 60.0,
                f"exit {code}, {elapsed:.1f}s, {out.count('PASS')} checks")
