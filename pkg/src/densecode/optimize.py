"""Derivative-free minimization of channel-output entropy over encodings on
the sender's leg, plus root finding for the unitary/pre-processing crossover.

Output entropy is piecewise-smooth in the encoder parameters (eigenvalue
crossings kink it), and the parameter counts are tiny (d^2 reals for a
unitary, 2 d^2 d_env for a CPTP map), so seeded multistart simplex search is
used instead of gradients.  Everything is deterministic given the seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize as _simplex_minimize

from . import qmat
from .channels import CorrelatedPauliSpec, KrausMap, correlated_operators, reset_map
from .holevo import analytic_capacity_quasi, transferred_info_preprocessed
from .states import DensityOperator

_RANK_TOL = 1e-12


@dataclass(frozen=True)
class OptimizerConfig:
    """Multistart search budget.  ftol is the simplex spread at which a
    local search stops."""

    restarts: int = 16
    max_iters: int = 2000
    ftol: float = 1e-10
    seed: int = 0

    def __post_init__(self):
        if self.restarts < 1 or self.max_iters < 1 or self.ftol <= 0.0:
            raise ValueError("restarts, max_iters and ftol must be positive")


@dataclass(frozen=True, eq=False)
class OptimResult:
    entropy_bits: float
    parameters: np.ndarray
    encoder: KrausMap
    converged: bool
    evaluations: int


def unitary_from_params(x, d: int) -> np.ndarray:
    """U = exp(iH) with H Hermitian assembled from d^2 reals: d diagonal
    entries followed by (re, im) pairs for the upper triangle."""
    x = np.asarray(x, dtype=float)
    if x.size != d * d:
        raise ValueError(f"expected {d * d} parameters, got {x.size}")
    h = np.zeros((d, d), dtype=complex)
    h[np.diag_indices(d)] = x[:d]
    k = d
    for i in range(d):
        for j in range(i + 1, d):
            h[i, j] = x[k] + 1j * x[k + 1]
            h[j, i] = x[k] - 1j * x[k + 1]
            k += 2
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * w)) @ v.conj().T


def isometry_from_params(x, d: int, d_env: int) -> np.ndarray:
    """Orthonormalized (d*d_env) x d matrix from 2 d^2 d_env reals.

    Parameters fill the matrix row-major as (re, im) pairs; QR with the
    R-diagonal phase fixed positive makes the map exactly reproduce inputs
    that are already isometries.  Raises LinAlgError on rank deficiency.
    """
    x = np.asarray(x, dtype=float)
    if x.size != 2 * d * d * d_env:
        raise ValueError(f"expected {2 * d * d * d_env} parameters, got {x.size}")
    m = (x[0::2] + 1j * x[1::2]).reshape(d * d_env, d)
    q, r = np.linalg.qr(m)
    diag = np.diagonal(r)
    if float(np.abs(diag).min()) < _RANK_TOL:
        raise np.linalg.LinAlgError("parameter matrix is rank deficient")
    return q * (diag / np.abs(diag))


def _params_from_matrix(m: np.ndarray) -> np.ndarray:
    flat = np.asarray(m, dtype=complex).reshape(-1)
    x = np.empty(2 * flat.size)
    x[0::2] = flat.real
    x[1::2] = flat.imag
    return x


def _kraus_blocks(iso: np.ndarray, d: int, d_env: int) -> tuple[np.ndarray, ...]:
    return tuple(iso[k * d : (k + 1) * d, :] for k in range(d_env))


def _superoperator(channel: CorrelatedPauliSpec) -> np.ndarray:
    # row-major vec: channel(rho) = unvec(M @ vec(rho))
    ops, probs = correlated_operators(channel)
    dim = ops.shape[1]
    m = np.zeros((dim * dim, dim * dim), dtype=complex)
    for w, a in zip(probs, ops):
        m += w * np.kron(a, a.conj())
    return m


def _output_entropy(superop: np.ndarray, encoded: np.ndarray) -> float:
    out = (superop @ encoded.reshape(-1)).reshape(encoded.shape)
    return qmat.von_neumann_entropy(out)


def _multistart(objective, starts, cfg: OptimizerConfig) -> tuple[float, np.ndarray, bool, int]:
    """Run a simplex search from each start; argmin, ties to the earliest."""
    best = None
    evaluations = 0
    for x0 in starts:
        res = _simplex_minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={
                "maxiter": cfg.max_iters,
                "maxfev": 50 * cfg.max_iters,
                "fatol": cfg.ftol,
                "xatol": 1e-8,
            },
        )
        evaluations += int(res.nfev)
        if best is None or float(res.fun) < best[0]:
            best = (float(res.fun), np.array(res.x), bool(res.success))
    value, x, converged = best
    return value, x, converged, evaluations


def minimize_unitary(
    channel: CorrelatedPauliSpec,
    rho: DensityOperator,
    cfg: OptimizerConfig = OptimizerConfig(),
) -> OptimResult:
    """Minimize S(channel((U (x) 1) rho (U^dag (x) 1))) over unitaries U.

    The identity is always restart 0, so the result never exceeds the
    unencoded output entropy.  Deterministic for a fixed cfg.seed.
    """
    d = channel.d
    if rho.dims != (d, d):
        raise ValueError(f"state dims {rho.dims} do not match channel legs ({d}, {d})")
    superop = _superoperator(channel)
    rho_mat = rho.matrix
    eye_b = np.eye(d, dtype=complex)

    def objective(x) -> float:
        big = np.kron(unitary_from_params(x, d), eye_b)
        return _output_entropy(superop, big @ rho_mat @ big.conj().T)

    rng = np.random.default_rng(cfg.seed)
    starts = [np.zeros(d * d)]
    starts += [rng.uniform(-np.pi, np.pi, d * d) for _ in range(cfg.restarts - 1)]
    value, x, converged, evaluations = _multistart(objective, starts, cfg)
    encoder = KrausMap.from_unitary(unitary_from_params(x, d))
    return OptimResult(value, x, encoder, converged, evaluations)


def minimize_cptp(
    channel: CorrelatedPauliSpec,
    rho: DensityOperator,
    d_env: int | None = None,
    cfg: OptimizerConfig = OptimizerConfig(),
) -> OptimResult:
    """Minimize the output entropy over CPTP maps on the sender's leg.

    Maps are parametrized through an orthonormalized (d*d_env) x d isometry
    whose d x d blocks are the Kraus operators; d_env defaults to d^2, which
    already reaches every CPTP map on dimension d.  The identity map and the
    reset map are always included as fixed restarts, so the result never
    exceeds the entropy either of them attains; rank-deficient random starts
    are resampled (at most 10x restarts), and rank-deficient points reached
    *during* a search are scored with a penalty above the maximal entropy.
    """
    d = channel.d
    if rho.dims != (d, d):
        raise ValueError(f"state dims {rho.dims} do not match channel legs ({d}, {d})")
    d_env = d * d if d_env is None else int(d_env)
    if d_env < 1:
        raise ValueError(f"d_env must be positive, got {d_env}")
    superop = _superoperator(channel)
    rho_mat = rho.matrix
    eye_b = np.eye(d, dtype=complex)
    penalty = math.log2(d * d) + 1.0

    def encode(x) -> np.ndarray:
        iso = isometry_from_params(x, d, d_env)
        out = np.zeros_like(rho_mat)
        for e in _kraus_blocks(iso, d, d_env):
            big = np.kron(e, eye_b)
            out += big @ rho_mat @ big.conj().T
        return out

    def objective(x) -> float:
        try:
            return _output_entropy(superop, encode(x))
        except np.linalg.LinAlgError:
            return penalty

    fixed = [_params_from_matrix(np.vstack([np.eye(d)] + [np.zeros((d, d))] * (d_env - 1)))]
    if d_env >= d:
        stacked = np.zeros((d * d_env, d), dtype=complex)
        for k, e in enumerate(reset_map(d).operators):
            stacked[k * d : (k + 1) * d, :] = e
        fixed.append(_params_from_matrix(stacked))

    rng = np.random.default_rng(cfg.seed)
    starts = list(fixed[: cfg.restarts])
    resamples = 0
    while len(starts) < cfg.restarts:
        x0 = rng.standard_normal(2 * d * d * d_env)
        try:
            isometry_from_params(x0, d, d_env)
        except np.linalg.LinAlgError:
            resamples += 1
            if resamples > 10 * cfg.restarts:
                raise RuntimeError("could not sample a full-rank starting point")
            continue
        starts.append(x0)
    value, x, converged, evaluations = _multistart(objective, starts, cfg)
    # the fixed candidates bound the result even when restarts < len(fixed)
    for x0 in fixed:
        evaluations += 1
        candidate = objective(x0)
        if candidate < value:
            value, x, converged = candidate, x0, True
    encoder = KrausMap(d, d, _kraus_blocks(isometry_from_params(x, d, d_env), d, d_env))
    return OptimResult(value, x, encoder, converged, evaluations)


@dataclass(frozen=True)
class CrossoverResult:
    """Root of (unitary capacity - preprocessed transfer) in mu, if any.

    mu_tilde is None when the difference has one sign on all of [0, 1];
    f_at_zero / f_at_one record the endpoint values either way.
    """

    mu_tilde: float | None
    f_at_zero: float
    f_at_one: float


def crossover_mu(p: float, tol: float = 1e-4) -> CrossoverResult:
    """Bisect, in the correlation degree mu, the difference between the
    unitary-encoding capacity of a Bell state and the reset-preprocessing
    transfer rate at noise p.  The returned bracket width is at most tol."""
    if not 0.0 < p < 1.0:
        raise ValueError(f"p must be in (0, 1), got {p}")
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    target = transferred_info_preprocessed(p)

    def f(mu: float) -> float:
        return analytic_capacity_quasi(1.0, mu, p) - target

    f0, f1 = f(0.0), f(1.0)
    if abs(f0) <= 1e-12:
        return CrossoverResult(0.0, f0, f1)
    if abs(f1) <= 1e-12:
        return CrossoverResult(1.0, f0, f1)
    if (f0 > 0.0) == (f1 > 0.0):
        return CrossoverResult(None, f0, f1)
    lo, hi, f_lo = 0.0, 1.0, f0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0:
            return CrossoverResult(mid, f0, f1)
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return CrossoverResult(0.5 * (lo + hi), f0, f1)
