"""Resource states shared between sender and receiver."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITICITY_TOL = 1e-9
TRACE_TOL = 1e-9
PSD_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Validated density matrix with a (d_a, d_b) dimension split.

    Single-party states use d_b = 1.  The matrix is copied and frozen on
    construction, so instances are safe to share across threads.
    """

    matrix: np.ndarray
    dims: tuple[int, int]

    def __post_init__(self):
        da, db = (int(self.dims[0]), int(self.dims[1]))
        if da < 1 or db < 1:
            raise ValueError(f"dims must be positive, got {self.dims}")
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (da * db, da * db):
            raise ValueError(f"matrix shape {m.shape} does not match dims {(da, db)}")
        herm = float(np.abs(m - m.conj().T).max())
        if herm > HERMITICITY_TOL:
            raise ValueError(f"not Hermitian: max |rho - rho^dag| = {herm:.3e}")
        trace = complex(m.trace())
        if abs(trace - 1.0) > TRACE_TOL:
            raise ValueError(f"trace is {trace:.12g}, expected 1")
        lowest = float(np.linalg.eigvalsh((m + m.conj().T) / 2.0).min())
        if lowest < -PSD_TOL:
            raise ValueError(f"not positive semidefinite: min eigenvalue {lowest:.3e}")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", (da, db))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def bell_phi_plus() -> DensityOperator:
    """Projector onto (|00> + |11>)/sqrt(2)."""
    return phi_with_phase(0.0)


def phi_with_phase(phi: float) -> DensityOperator:
    """Projector onto (|00> + exp(i phi)|11>)/sqrt(2)."""
    v = np.zeros(4, dtype=complex)
    v[0] = 1.0 / np.sqrt(2.0)
    v[3] = np.exp(1j * phi) / np.sqrt(2.0)
    return DensityOperator(np.outer(v, v.conj()), (2, 2))


def werner(eta: float) -> DensityOperator:
    """Mixture eta |Phi+><Phi+| + (1 - eta)/4 * 1 on two qubits.

    eta is restricted to [0, 1], the range swept everywhere in this package
    (the state stays positive down to eta = -1/3, but that region is not
    accepted).
    """
    if not 0.0 <= eta <= 1.0:
        raise ValueError(f"eta must be in [0, 1], got {eta}")
    m = eta * bell_phi_plus().matrix + (1.0 - eta) * np.eye(4) / 4.0
    return DensityOperator(m, (2, 2))


def max_entangled(d: int) -> DensityOperator:
    """Projector onto (1/sqrt(d)) sum_k |kk> for d >= 2."""
    if d < 2:
        raise ValueError(f"d must be at least 2, got {d}")
    v = np.zeros(d * d, dtype=complex)
    v[:: d + 1] = 1.0 / np.sqrt(d)
    return DensityOperator(np.outer(v, v.conj()), (d, d))
