"""Dense complex matrix core: tensor products, partial traces, Hermitian
eigendecomposition and the entropy functionals built on them.

Index convention, fixed once for the whole package: composite systems are
row-major and A-major, i.e. the joint index of ``tensor(A, B)`` is
``i_A * dim_B + i_B`` (numpy ``kron`` order).  Two-leg channel outputs depend
on this convention.

All entropies are in bits (log base 2).
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

HERMITICITY_TOL = 1e-8
EIG_CLIP = 1e-10
SUPPORT_TOL = 1e-12


class EigenDecomposition(NamedTuple):
    """Spectral factorization H = V diag(w) V^dag, eigenvalues ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _as_matrix(op) -> np.ndarray:
    """Accept a bare ndarray or anything carrying a ``.matrix`` attribute."""
    return np.asarray(getattr(op, "matrix", op), dtype=complex)


def herm_eig(h) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    The input is hermitized by averaging with its adjoint before
    factorization; a deviation ``max|H - H^dag|`` beyond ``HERMITICITY_TOL``
    is rejected.
    """
    m = _as_matrix(h)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    deviation = float(np.abs(m - m.conj().T).max())
    if deviation > HERMITICITY_TOL:
        raise ValueError(
            f"matrix is not Hermitian: max |H - H^dag| = {deviation:.3e} "
            f"exceeds {HERMITICITY_TOL:g}"
        )
    w, v = np.linalg.eigh((m + m.conj().T) / 2.0)
    return EigenDecomposition(w, v)


def shannon_entropy(probs) -> float:
    """Shannon entropy in bits of a probability vector, with 0 log 0 = 0."""
    w = np.asarray(probs, dtype=float)
    nz = w[w > 0.0]
    if nz.size == 0:
        return 0.0
    value = float(-(nz * np.log2(nz)).sum())
    return value if value > 0.0 else 0.0


def density_spectrum(rho) -> np.ndarray:
    """Eigenvalues of a density operator, ascending.

    Values in [-EIG_CLIP, 0) are clipped to 0 and the spectrum is
    renormalized to sum 1; anything below -EIG_CLIP raises.  Channel outputs
    can be exactly rank-deficient, so tiny negative round-off is expected.
    """
    w = herm_eig(rho).eigenvalues
    lowest = float(w.min())
    if lowest < -EIG_CLIP:
        raise ValueError(
            f"positivity violation: eigenvalue {lowest:.3e} below -{EIG_CLIP:g}"
        )
    w = np.clip(w, 0.0, None)
    return w / w.sum()


def von_neumann_entropy(rho) -> float:
    """S(rho) = -sum_i lambda_i log2 lambda_i in bits."""
    return shannon_entropy(density_spectrum(rho))


def relative_entropy(rho, sigma) -> float:
    """S(rho || sigma) = tr rho (log2 rho - log2 sigma) in bits.

    Returns ``math.inf`` (a distinguished value, not an exception) when the
    support of rho is not contained in the support of sigma, i.e. sigma has
    an eigenvalue below ``SUPPORT_TOL`` on rho's support.
    """
    r = _as_matrix(rho)
    s = _as_matrix(sigma)
    if r.shape != s.shape:
        raise ValueError(f"dimension mismatch: {r.shape} vs {s.shape}")
    wr = density_spectrum(r)
    nz = wr[wr > 0.0]
    rho_term = float((nz * np.log2(nz)).sum())

    ws, vs = herm_eig(s)
    ws = np.clip(ws, 0.0, None)
    # overlap of rho with each eigenvector of sigma
    overlaps = np.einsum("ij,jk,ki->i", vs.conj().T, r, vs).real
    overlaps = np.clip(overlaps, 0.0, None)
    deficient = ws < SUPPORT_TOL
    if bool((overlaps[deficient] > SUPPORT_TOL).any()):
        return math.inf
    keep = ~deficient
    sigma_term = float((overlaps[keep] * np.log2(ws[keep])).sum())
    return max(rho_term - sigma_term, 0.0)


def tensor(a, b) -> np.ndarray:
    """Kronecker product with the A-major index convention."""
    return np.kron(_as_matrix(a), _as_matrix(b))


def partial_trace(op, dims: tuple[int, int], traced: str) -> np.ndarray:
    """Trace out one leg of an operator on a (d_a, d_b) composite space.

    ``traced="a"`` returns the B-leg operator (tr_a), ``traced="b"`` the
    A-leg operator (tr_b).
    """
    m = _as_matrix(op)
    da, db = dims
    if m.shape != (da * db, da * db):
        raise ValueError(f"operator shape {m.shape} does not match dims {dims}")
    t = m.reshape(da, db, da, db)
    if traced == "a":
        return np.trace(t, axis1=0, axis2=2)
    if traced == "b":
        return np.trace(t, axis1=1, axis2=3)
    raise ValueError(f"traced must be 'a' or 'b', got {traced!r}")
