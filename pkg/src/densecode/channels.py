"""Displacement operators, single-leg and correlated two-leg Pauli channels,
and Kraus-map application on the sender's leg.

A single-leg Pauli channel applies the displacement unitary V_mn with
probability q[m, n].  The two-leg correlated channel draws a pair of
displacements from the joint table

    q[m, n, mt, nt] = (1 - mu) q[m, n] q[mt, nt] + mu q[m, n] d_{m,mt} d_{n,nt}

so mu = 0 gives independent legs and mu = 1 applies identical displacements
to both legs.  Both legs share one marginal table: the correlation term only
defines a consistent pair distribution when the marginals coincide, so an
asymmetric pair is not representable here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .states import DensityOperator

PROB_TOL = 1e-12
COMPLETENESS_TOL = 1e-9


def displacement(d: int, m: int, n: int) -> np.ndarray:
    """Shift-and-phase unitary sum_k exp(2 pi i k n / d) |k><k+m mod d|.

    For d = 2 these are the identity and the Pauli operators (up to phase:
    (m, n) = (1, 1) gives i * sigma_y).
    """
    if d < 1:
        raise ValueError(f"d must be positive, got {d}")
    if not (0 <= m < d and 0 <= n < d):
        raise ValueError(f"indices (m={m}, n={n}) out of range for dimension {d}")
    v = np.zeros((d, d), dtype=complex)
    for k in range(d):
        v[k, (k + m) % d] = np.exp(2j * np.pi * k * n / d)
    return v


def displacements(d: int) -> list[np.ndarray]:
    """All d^2 displacement unitaries, row-major in (m, n)."""
    return [displacement(d, m, n) for m in range(d) for n in range(d)]


@dataclass(frozen=True, eq=False)
class PauliChannelSpec:
    """Single-leg Pauli channel: V_mn applied with probability q[m, n]."""

    d: int
    q: np.ndarray

    def __post_init__(self):
        q = np.array(self.q, dtype=float)
        if q.shape != (self.d, self.d):
            raise ValueError(f"q has shape {q.shape}, expected {(self.d, self.d)}")
        if float(q.min()) < -PROB_TOL:
            raise ValueError(f"negative probability {q.min():.3e} in table")
        total = float(q.sum())
        if abs(total - 1.0) > PROB_TOL:
            raise ValueError(f"probabilities sum to {total:.15g}, expected 1")
        q = np.clip(q, 0.0, None)
        q.flags.writeable = False
        object.__setattr__(self, "q", q)


@dataclass(frozen=True, eq=False)
class CorrelatedPauliSpec:
    """Two-leg Pauli channel with correlation degree mu in [0, 1]."""

    marginal: PauliChannelSpec
    mu: float

    def __post_init__(self):
        if not 0.0 <= self.mu <= 1.0:
            raise ValueError(f"mu must be in [0, 1], got {self.mu}")

    @property
    def d(self) -> int:
        return self.marginal.d

    def joint_table(self) -> np.ndarray:
        """Explicit d^4 joint probability table, indexed [m, n, mt, nt]."""
        q = self.marginal.q
        joint = (1.0 - self.mu) * np.einsum("mn,ab->mnab", q, q)
        d = self.d
        idx = np.arange(d)
        joint[idx[:, None], idx[None, :], idx[:, None], idx[None, :]] += self.mu * q
        return joint


@dataclass(frozen=True, eq=False)
class KrausMap:
    """CPTP map given by operators {E_k} with sum_k E_k^dag E_k = 1."""

    d_in: int
    d_out: int
    operators: tuple[np.ndarray, ...]

    def __post_init__(self):
        ops = tuple(np.array(e, dtype=complex) for e in self.operators)
        if not ops:
            raise ValueError("a Kraus map needs at least one operator")
        for e in ops:
            if e.shape != (self.d_out, self.d_in):
                raise ValueError(
                    f"operator shape {e.shape}, expected {(self.d_out, self.d_in)}"
                )
        completeness = sum(e.conj().T @ e for e in ops)
        deviation = float(np.abs(completeness - np.eye(self.d_in)).max())
        if deviation > COMPLETENESS_TOL:
            raise ValueError(
                f"completeness violation: max |sum E^dag E - 1| = {deviation:.3e}"
            )
        for e in ops:
            e.flags.writeable = False
        object.__setattr__(self, "operators", ops)

    @classmethod
    def from_unitary(cls, u: np.ndarray) -> "KrausMap":
        u = np.asarray(u, dtype=complex)
        return cls(u.shape[1], u.shape[0], (u,))

    @classmethod
    def identity(cls, d: int) -> "KrausMap":
        return cls(d, d, (np.eye(d, dtype=complex),))


def reset_map(d: int = 2) -> KrausMap:
    """Channel that resets the input to |0>: Kraus operators {|0><k|}_k.

    Applied on leg A of a shared state it erases that leg, e.g. it maps a
    two-qubit Bell state to |0><0| (x) 1/2.
    """
    ops = []
    for k in range(d):
        e = np.zeros((d, d), dtype=complex)
        e[0, k] = 1.0
        ops.append(e)
    return KrausMap(d, d, tuple(ops))


def quasi_classical_spec(d: int, p: float) -> PauliChannelSpec:
    """Single-parameter noise table: with probability 1-p no shift occurs
    (m = 0, any phase equally likely), with probability p the signal is
    displaced, uniformly over the remaining operators."""
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    q = np.empty((d, d))
    q[0, :] = (1.0 - p) / d
    q[1:, :] = p / (d * (d - 1))
    return PauliChannelSpec(d, q)


def correlated_operators(spec: CorrelatedPauliSpec) -> tuple[np.ndarray, np.ndarray]:
    """Joint conjugation unitaries V_mn (x) V_mt,nt with nonzero probability.

    Returns (ops, probs) with ops of shape (k, d^2, d^2); entries of zero
    probability are dropped (at mu = 1 only the d^2 diagonal pairs survive).
    """
    d = spec.d
    vs = displacements(d)
    table = spec.joint_table().reshape(d * d, d * d)
    ops, probs = [], []
    for i in range(d * d):
        for j in range(d * d):
            w = table[i, j]
            if w > 0.0:
                ops.append(np.kron(vs[i], vs[j]))
                probs.append(w)
    return np.stack(ops), np.array(probs)


def _mix_conjugations(ops: np.ndarray, probs: np.ndarray, mat: np.ndarray) -> np.ndarray:
    return np.einsum("k,kab,bc,kdc->ad", probs, ops, mat, ops.conj())


def pauli_apply(spec: PauliChannelSpec, rho: DensityOperator) -> DensityOperator:
    """Single-leg channel action sum q_mn V_mn rho V_mn^dag."""
    if rho.dim != spec.d:
        raise ValueError(f"state dimension {rho.dim} does not match channel d={spec.d}")
    vs = np.stack(displacements(spec.d))
    out = _mix_conjugations(vs, spec.q.reshape(-1), rho.matrix)
    return DensityOperator(out, rho.dims)


def correlated_apply(spec: CorrelatedPauliSpec, rho: DensityOperator) -> DensityOperator:
    """Two-leg channel action with the joint displacement table."""
    d = spec.d
    if rho.dims != (d, d):
        raise ValueError(f"state dims {rho.dims} do not match channel legs ({d}, {d})")
    ops, probs = correlated_operators(spec)
    return DensityOperator(_mix_conjugations(ops, probs, rho.matrix), (d, d))


def bob_marginal_apply(spec: CorrelatedPauliSpec, rho_b: DensityOperator) -> DensityOperator:
    """Effective channel on the receiver's leg alone.

    Marginalizing the joint table over the sender's displacement returns the
    shared marginal, independent of mu, so this is just the single-leg
    channel.
    """
    return pauli_apply(spec.marginal, rho_b)


def kraus_apply(kmap: KrausMap, rho: DensityOperator) -> DensityOperator:
    """Apply a Kraus map to leg A: sum_k (E_k (x) 1) rho (E_k^dag (x) 1)."""
    da, db = rho.dims
    if kmap.d_in != da:
        raise ValueError(f"map input dimension {kmap.d_in} does not match leg A ({da})")
    eye_b = np.eye(db, dtype=complex)
    out = np.zeros((kmap.d_out * db, kmap.d_out * db), dtype=complex)
    for e in kmap.operators:
        big = np.kron(e, eye_b)
        out += big @ rho.matrix @ big.conj().T
    return DensityOperator(out, (kmap.d_out, db))


def channel_to_json(spec: CorrelatedPauliSpec) -> dict:
    """JSON object for a correlated channel.

    Tables matching the quasi-classical pattern are emitted with their single
    noise parameter, anything else with the full table.
    """
    d = spec.d
    q = spec.marginal.q
    p = 1.0 - d * q[0, 0]
    reference = quasi_classical_spec(d, min(max(p, 0.0), 1.0)).q
    if np.abs(q - reference).max() <= PROB_TOL:
        return {"type": "quasi-classical", "d": d, "p": float(min(max(p, 0.0), 1.0)), "mu": float(spec.mu)}
    return {"type": "pauli", "d": d, "q": q.tolist(), "mu": float(spec.mu)}


def channel_from_json(obj: dict) -> CorrelatedPauliSpec:
    """Inverse of :func:`channel_to_json`."""
    kind = obj["type"]
    d = int(obj["d"])
    mu = float(obj["mu"])
    if kind == "quasi-classical":
        marginal = quasi_classical_spec(d, float(obj["p"]))
    elif kind == "pauli":
        marginal = PauliChannelSpec(d, np.array(obj["q"], dtype=float))
    else:
        raise ValueError(f"unknown channel type {kind!r}")
    return CorrelatedPauliSpec(marginal, mu)
