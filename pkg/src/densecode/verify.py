"""Self-contained numerical identity suites behind the ``verify`` command.

Each suite checks one structural identity of the channel/capacity machinery
on seeded random inputs and reports its worst deviation against a fixed
tolerance.  ``tamper`` deliberately corrupts the channel tables used on one
side of the comparisons; it exists so that callers can confirm the suites
actually detect defects.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import qmat
from .channels import (
    CorrelatedPauliSpec,
    KrausMap,
    PauliChannelSpec,
    bob_marginal_apply,
    correlated_apply,
    displacements,
    pauli_apply,
    quasi_classical_spec,
)
from .holevo import (
    achievability_ensemble,
    capacity_unitary,
    holevo_quantity,
    quasi_channel_spectrum,
)
from .states import DensityOperator, phi_with_phase


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    max_error: float
    tolerance: float
    cases: int


def _random_density(rng: np.random.Generator, dim: int, dims: tuple[int, int]) -> DensityOperator:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    return DensityOperator(m / m.trace().real, dims)


def _random_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(g)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def _random_marginal(rng: np.random.Generator, d: int) -> PauliChannelSpec:
    q = rng.exponential(size=(d, d))
    return PauliChannelSpec(d, q / q.sum())


def _tampered(marginal: PauliChannelSpec, tamper: bool) -> PauliChannelSpec:
    if not tamper:
        return marginal
    q = marginal.q.copy()
    shift = 0.8 * q[0, 0]
    q[0, 0] -= shift
    q[-1, -1] += shift
    return PauliChannelSpec(marginal.d, q)


def check_displacement_twirl(grid_density: int, rng: np.random.Generator) -> CheckResult:
    """Averaging all displacements on leg A erases it:
    (1/d^2) sum_i (V_i (x) 1) tau (V_i^dag (x) 1) = 1/d (x) tr_a tau."""
    tol = 1e-12
    worst, cases = 0.0, 0
    for d in (2, 3):
        eye = np.eye(d, dtype=complex)
        for _ in range(grid_density**2):
            tau = _random_density(rng, d * d, (d, d)).matrix
            acc = np.zeros_like(tau)
            for v in displacements(d):
                big = np.kron(v, eye)
                acc += big @ tau @ big.conj().T / d**2
            target = np.kron(eye / d, qmat.partial_trace(tau, (d, d), traced="a"))
            worst = max(worst, float(np.abs(acc - target).max()))
            cases += 1
    return CheckResult("displacement-twirl", worst <= tol, worst, tol, cases)


def check_receiver_marginal(
    grid_density: int, rng: np.random.Generator, tamper: bool = False
) -> CheckResult:
    """Tracing out leg A of the two-leg output equals the single-leg channel
    applied to the receiver's marginal."""
    tol = 1e-12
    worst, cases = 0.0, 0
    for d in (2, 3):
        for _ in range(grid_density**2):
            marginal = _random_marginal(rng, d)
            spec = CorrelatedPauliSpec(_tampered(marginal, tamper), rng.uniform())
            rho = _random_density(rng, d * d, (d, d))
            lhs = qmat.partial_trace(correlated_apply(spec, rho).matrix, (d, d), traced="a")
            rho_b = DensityOperator(qmat.partial_trace(rho.matrix, (d, d), traced="a"), (d, 1))
            rhs = pauli_apply(marginal, rho_b).matrix
            worst = max(worst, float(np.abs(lhs - rhs).max()))
            cases += 1
    return CheckResult("receiver-marginal", worst <= tol, worst, tol, cases)


def check_phase_flip_invariance(
    grid_density: int, rng: np.random.Generator, tamper: bool = False
) -> CheckResult:
    """The correlated quasi-classical channel output is unchanged when the
    input is conjugated by sigma_z (x) sigma_z."""
    tol = 1e-10
    flip = np.kron(np.diag([1.0, -1.0]), np.diag([1.0, -1.0])).astype(complex)
    worst, cases = 0.0, 0
    for p in np.linspace(0.0, 1.0, grid_density):
        for mu in np.linspace(0.0, 1.0, grid_density):
            spec = CorrelatedPauliSpec(_tampered(quasi_classical_spec(2, p), tamper), mu)
            rho = _random_density(rng, 4, (2, 2))
            flipped = DensityOperator(flip @ rho.matrix @ flip, (2, 2))
            delta = correlated_apply(spec, rho).matrix - correlated_apply(spec, flipped).matrix
            worst = max(worst, float(np.abs(delta).max()))
            cases += 1
    return CheckResult("phase-flip-invariance", worst <= tol, worst, tol, cases)


def check_achievability_equality(grid_density: int, rng: np.random.Generator) -> CheckResult:
    """The uniform displacement ensemble built on any fixed unitary reaches
    the capacity expression evaluated at that unitary."""
    tol = 1e-9
    worst, cases = 0.0, 0
    for d, count in ((2, grid_density**2), (3, max(2, grid_density // 2))):
        for _ in range(count):
            spec = CorrelatedPauliSpec(_random_marginal(rng, d), rng.uniform())
            rho = _random_density(rng, d * d, (d, d))
            u = _random_unitary(rng, d)
            chi = holevo_quantity(achievability_ensemble(KrausMap.from_unitary(u), d), spec, rho)
            cap = capacity_unitary(spec, rho, u).capacity_bits
            worst = max(worst, abs(chi - cap))
            cases += 1
    return CheckResult("achievability-equality", worst <= tol, worst, tol, cases)


def check_closed_form_spectrum(grid_density: int, tamper: bool = False) -> CheckResult:
    """Closed-form output spectrum entropy agrees with diagonalizing the
    explicitly constructed channel output."""
    tol = 1e-9
    worst, cases = 0.0, 0
    eye4 = np.eye(4, dtype=complex)
    for eta in np.linspace(0.0, 1.0, grid_density):
        for mu in np.linspace(0.0, 1.0, grid_density):
            for p in np.linspace(0.0, 1.0, grid_density):
                spec = CorrelatedPauliSpec(_tampered(quasi_classical_spec(2, p), tamper), mu)
                for phi in np.linspace(0.0, 2.0 * np.pi, grid_density):
                    rho = DensityOperator(
                        eta * phi_with_phase(phi).matrix + (1.0 - eta) * eye4 / 4.0, (2, 2)
                    )
                    numeric = qmat.von_neumann_entropy(correlated_apply(spec, rho))
                    analytic = qmat.shannon_entropy(quasi_channel_spectrum(eta, mu, p, phi))
                    worst = max(worst, abs(numeric - analytic))
                    cases += 1
    return CheckResult("closed-form-spectrum", worst <= tol, worst, tol, cases)


def check_displacement_covariance(grid_density: int, rng: np.random.Generator) -> CheckResult:
    """Displacements on leg A commute with the two-leg channel action."""
    tol = 1e-10
    worst, cases = 0.0, 0
    for d in (2, 3):
        eye = np.eye(d, dtype=complex)
        for _ in range(max(2, grid_density)):
            spec = CorrelatedPauliSpec(_random_marginal(rng, d), rng.uniform())
            rho = _random_density(rng, d * d, (d, d))
            for v in displacements(d):
                big = np.kron(v, eye)
                lhs = big @ correlated_apply(spec, rho).matrix @ big.conj().T
                moved = DensityOperator(big @ rho.matrix @ big.conj().T, (d, d))
                rhs = correlated_apply(spec, moved).matrix
                worst = max(worst, float(np.abs(lhs - rhs).max()))
                cases += 1
    return CheckResult("displacement-covariance", worst <= tol, worst, tol, cases)


def run_all(grid_density: int = 5, seed: int = 0, tamper: bool = False) -> list[CheckResult]:
    """Run every suite with one seeded generator; order is fixed."""
    if grid_density < 2:
        raise ValueError(f"grid_density must be at least 2, got {grid_density}")
    rng = np.random.default_rng(seed)
    return [
        check_displacement_twirl(grid_density, rng),
        check_receiver_marginal(grid_density, rng, tamper),
        check_phase_flip_invariance(grid_density, rng, tamper),
        check_achievability_equality(grid_density, rng),
        check_closed_form_spectrum(grid_density, tamper),
        check_displacement_covariance(grid_density, rng),
    ]
