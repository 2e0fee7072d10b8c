"""Holevo quantity of encoded ensembles and capacity evaluation.

The capacity of dense coding over a two-leg Pauli channel reduces to

    C = log2 d + S(channel_b(rho_b)) - min_enc S(channel_ab(enc(rho)))

where the minimum runs over unitaries on the sender's leg (unitary encoding)
or over CPTP maps (pre-processing followed by displacement encoding).  The
functions here evaluate that expression for a *supplied* minimizing encoder;
searching for one lives in :mod:`densecode.optimize`.

For the correlated quasi-classical channel acting on Werner-type inputs the
output spectrum is known in closed form, which gives the fast paths
:func:`quasi_channel_spectrum` and :func:`analytic_capacity_quasi`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import qmat
from .channels import (
    CorrelatedPauliSpec,
    KrausMap,
    correlated_apply,
    displacements,
    kraus_apply,
    pauli_apply,
)
from .states import DensityOperator

PROB_TOL = 1e-12
UNITARY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class EncodingEnsemble:
    """Probabilistic mixture of encoders applied on the sender's leg."""

    items: tuple[tuple[float, KrausMap], ...]

    def __post_init__(self):
        if not self.items:
            raise ValueError("ensemble must not be empty")
        probs = np.array([p for p, _ in self.items], dtype=float)
        if float(probs.min()) < 0.0:
            raise ValueError(f"negative probability {probs.min():.3e}")
        if abs(float(probs.sum()) - 1.0) > PROB_TOL:
            raise ValueError(f"probabilities sum to {probs.sum():.15g}, expected 1")
        d = self.items[0][1].d_in
        for _, enc in self.items:
            if enc.d_in != d or enc.d_out != d:
                raise ValueError("all encoders must share one square dimension")

    @property
    def d(self) -> int:
        return self.items[0][1].d_in


@dataclass(frozen=True)
class CapacityReport:
    """Capacity together with the two entropy terms it is built from.

    capacity_bits == log2(d) + bob_term_bits - min_entropy_bits by
    construction.
    """

    capacity_bits: float
    bob_term_bits: float
    min_entropy_bits: float
    encoder_description: dict


def _matrix_record(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def _bob_term(channel: CorrelatedPauliSpec, rho: DensityOperator) -> float:
    rho_b = DensityOperator(
        qmat.partial_trace(rho.matrix, rho.dims, traced="a"), (rho.dims[1], 1)
    )
    return qmat.von_neumann_entropy(pauli_apply(channel.marginal, rho_b))


def holevo_quantity(
    ensemble: EncodingEnsemble, channel: CorrelatedPauliSpec, rho: DensityOperator
) -> float:
    """S(sum_i p_i out_i) - sum_i p_i S(out_i) for out_i = channel(enc_i(rho)).

    Non-negative (up to round-off) by concavity of the von Neumann entropy.
    """
    if rho.dims != (channel.d, channel.d):
        raise ValueError(f"state dims {rho.dims} do not match channel ({channel.d})")
    if ensemble.d != channel.d:
        raise ValueError("ensemble encoder dimension does not match the channel")
    average = np.zeros((rho.dim, rho.dim), dtype=complex)
    mixed_entropy = 0.0
    for p, enc in ensemble.items:
        out = correlated_apply(channel, kraus_apply(enc, rho)).matrix
        average += p * out
        if p > 0.0:
            mixed_entropy += p * qmat.von_neumann_entropy(out)
    return qmat.von_neumann_entropy(average) - mixed_entropy


def achievability_ensemble(encoder: KrausMap, d: int) -> EncodingEnsemble:
    """Uniform ensemble of the d^2 displacements composed after a fixed encoder.

    The Holevo quantity of this ensemble equals the capacity expression
    evaluated at the same encoder, for any encoder.
    """
    if encoder.d_in != d or encoder.d_out != d:
        raise ValueError(f"encoder must act on dimension {d}")
    weight = 1.0 / d**2
    items = tuple(
        (weight, KrausMap(d, d, tuple(v @ e for e in encoder.operators)))
        for v in displacements(d)
    )
    return EncodingEnsemble(items)


def capacity_unitary(
    channel: CorrelatedPauliSpec, rho: DensityOperator, u_min: np.ndarray
) -> CapacityReport:
    """Capacity for unitary encoding, with the entropy-minimizing unitary
    supplied by the caller (from optimization or analytic knowledge)."""
    d = channel.d
    u = np.asarray(u_min, dtype=complex)
    if u.shape != (d, d):
        raise ValueError(f"unitary shape {u.shape}, expected {(d, d)}")
    deviation = float(np.abs(u @ u.conj().T - np.eye(d)).max())
    if deviation > UNITARY_TOL:
        raise ValueError(f"encoder is not unitary: max |U U^dag - 1| = {deviation:.3e}")
    bob = _bob_term(channel, rho)
    encoded = kraus_apply(KrausMap.from_unitary(u), rho)
    lowest = qmat.von_neumann_entropy(correlated_apply(channel, encoded))
    return CapacityReport(
        capacity_bits=math.log2(d) + bob - lowest,
        bob_term_bits=bob,
        min_entropy_bits=lowest,
        encoder_description={"kind": "unitary", "matrix": _matrix_record(u)},
    )


def capacity_nonunitary(
    channel: CorrelatedPauliSpec, rho: DensityOperator, gamma_min: KrausMap
) -> CapacityReport:
    """Capacity for pre-processing encoding with a supplied CPTP map.

    The receiver term uses the marginal of the *original* state: encoding on
    the sender's leg never changes it.
    """
    d = channel.d
    if gamma_min.d_in != d or gamma_min.d_out != d:
        raise ValueError(f"pre-processing map must act on dimension {d}")
    bob = _bob_term(channel, rho)
    lowest = qmat.von_neumann_entropy(correlated_apply(channel, kraus_apply(gamma_min, rho)))
    return CapacityReport(
        capacity_bits=math.log2(d) + bob - lowest,
        bob_term_bits=bob,
        min_entropy_bits=lowest,
        encoder_description={
            "kind": "cptp",
            "kraus_operators": [_matrix_record(e) for e in gamma_min.operators],
        },
    )


def quasi_channel_spectrum(eta: float, mu: float, p: float, phi: float) -> np.ndarray:
    """Output eigenvalues (nu1, nu2, nu3, nu4) of the correlated
    quasi-classical channel on eta * phi_with_phase(phi) + (1 - eta)/4 * 1.

    nu1 = nu2 is independent of phi; the pair nu3/nu4 spreads maximally at
    phi = 0, which is where the output entropy is minimal.
    """
    for name, value in (("eta", eta), ("mu", mu), ("p", p)):
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"{name} must be in [0, 1], got {value}")
    pq = p * (1.0 - p)
    offset = (1.0 - eta) / 4.0
    nu12 = eta * (1.0 - mu) * pq + offset
    root = math.sqrt(mu * mu * (1.0 - 4.0 * pq * math.sin(phi) ** 2))
    body = 1.0 - 2.0 * (1.0 - mu) * pq
    nu3 = eta / 2.0 * (body + root) + offset
    nu4 = eta / 2.0 * (body - root) + offset
    return np.array([nu12, nu12, nu3, nu4])


def analytic_capacity_quasi(eta: float, mu: float, p: float) -> float:
    """Closed-form unitary-encoding capacity for a Werner resource state in
    a correlated quasi-classical channel: 2 - S(channel output) bits."""
    return 2.0 - qmat.shannon_entropy(quasi_channel_spectrum(eta, mu, p, 0.0))


def transferred_info_preprocessed(p: float) -> float:
    """Rate 1 + p log2 p + (1-p) log2(1-p) achieved on a Bell pair by the
    reset pre-processing; independent of the correlation degree and symmetric
    under p <-> 1-p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    if p in (0.0, 1.0):
        return 1.0
    return 1.0 + p * math.log2(p) + (1.0 - p) * math.log2(1.0 - p)
