"""Steady states, time propagation, and two-time correlations.

Steady states come from a direct linear solve with one redundant row of
the generator replaced by the trace constraint; time evolution uses an
implicit adaptive integrator (the rate hierarchy spans many decades, so
the problem is stiff); two-time correlations propagate the collapsed
operator b rho b† under the same generator (quantum regression theorem).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla
from scipy.integrate import solve_ivp

from .liouvillian import Liouvillian
from .operators import DensityMatrix, fock_annihilation, trace_row, unvec, vec

# Dense linear solve below this Hilbert-space dimension; above it sparse LU
# wins decisively because the generators' coherence sectors are disconnected
# components (measured ~100x at dimension 62).
DENSE_SOLVE_DIM = 20
CLIP_EIGENVALUE = -1e-8
TRAJECTORY_POSITIVITY_TOL = -1e-6


class DegenerateSteadyStateError(RuntimeError):
    """The generator's null space is not one-dimensional."""


class SteadyStateConvergenceError(RuntimeError):
    """The linear solve did not produce a valid stationary state."""


class StiffIntegrationError(RuntimeError):
    """The adaptive integrator failed (step-size underflow)."""


@dataclass(frozen=True)
class Trajectory:
    """States on a monotone time grid (omega_a-scaled time)."""

    times: np.ndarray
    states: tuple[DensityMatrix, ...]

    def populations(self) -> np.ndarray:
        """Diagonal (real) of every state, shape (n_times, dim)."""
        return np.array([np.real(np.diag(s.data)) for s in self.states])


@dataclass(frozen=True)
class CorrelationSeries:
    """Normalized two-time photon correlation g2(tau) on a delay grid."""

    taus: np.ndarray
    values: np.ndarray
    normalization: float  # <b†b>^2 in the stationary state


def _resonator_annihilation(sig) -> np.ndarray:
    """Annihilation operator of the (last) Fock factor on the full space."""
    n_max = sig.parts[-1] - 1
    b = fock_annihilation(n_max)
    if len(sig.parts) == 1:
        return b.data
    lead = 1
    for p in sig.parts[:-1]:
        lead *= p
    return np.kron(np.eye(lead), b.data)


def _solve_with_replaced_row(matrix: sp.csr_matrix, dim: int, row: int) -> np.ndarray:
    d2 = dim * dim
    rhs = np.zeros(d2, dtype=complex)
    rhs[row] = 1.0
    tr = trace_row(dim)
    if dim <= DENSE_SOLVE_DIM:
        m = matrix.toarray()
        m[row, :] = tr.toarray()[0]
        try:
            return np.linalg.solve(m, rhs)
        except np.linalg.LinAlgError as exc:
            raise DegenerateSteadyStateError(
                "trace-constrained system is singular: the generator has no "
                "unique stationary state"
            ) from exc
    parts = []
    if row > 0:
        parts.append(matrix[:row])
    parts.append(tr)
    if row < d2 - 1:
        parts.append(matrix[row + 1:])
    m = sp.vstack(parts, format="csc")
    with np.errstate(all="ignore"):
        x = spla.spsolve(m, rhs)
    if not np.all(np.isfinite(x)):
        raise DegenerateSteadyStateError(
            "trace-constrained system is singular: the generator has no "
            "unique stationary state"
        )
    return x


def steady_state(L: Liouvillian, *, check_unique: bool = True) -> DensityMatrix:
    """Stationary state of a trace-preserving Lindblad generator.

    Replaces one redundant row of L with the trace constraint and solves
    directly (dense below 64 Hilbert dimensions, sparse LU above).  With
    ``check_unique`` a second solve with a different replaced row guards
    against a degenerate (multi-dimensional) null space.  The Hermitian
    part is taken; eigenvalues in (-1e-8, 0) are clipped and the state
    renormalized, anything lower is an error.
    """
    dim = L.dim
    d2 = dim * dim
    x = _solve_with_replaced_row(L.matrix, dim, 0)
    if check_unique:
        x_alt = _solve_with_replaced_row(L.matrix, dim, d2 - 1)
        mismatch = float(np.abs(x - x_alt).max())
        if mismatch > 1e-8 * max(1.0, float(np.abs(x).max())):
            raise DegenerateSteadyStateError(
                f"stationary state not unique: two trace-constrained solves "
                f"disagree by {mismatch:.3e}"
            )

    rho = unvec(x, dim)
    rho = 0.5 * (rho + rho.conj().T)
    rho = rho / np.trace(rho).real

    residual = float(np.linalg.norm(L.matrix @ vec(rho)))
    scale = max(1.0, float(spla.norm(L.matrix)))
    if residual > 1e-10 * scale:
        raise SteadyStateConvergenceError(
            f"stationary residual {residual:.3e} exceeds 1e-10 * |L| = {1e-10 * scale:.3e}"
        )

    w, v = np.linalg.eigh(rho)
    if w[0] < CLIP_EIGENVALUE:
        raise SteadyStateConvergenceError(
            f"stationary state has eigenvalue {w[0]:.3e} below the clipping threshold"
        )
    if w[0] < 0.0:
        w = np.clip(w, 0.0, None)
        rho = (v * w) @ v.conj().T
        rho = rho / np.trace(rho).real
    return DensityMatrix.from_data(L.sig, rho, hermitize=True)


def _integrate(L: Liouvillian, y0: np.ndarray, t_grid: np.ndarray, rtol: float, atol: float):
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or len(t_grid) < 1 or np.any(np.diff(t_grid) <= 0):
        raise ValueError("time grid must be strictly increasing")
    mat = L.matrix.tocsc()

    def rhs(_t, y):
        return mat @ y

    def jac(_t, _y):
        return mat

    sol = solve_ivp(
        rhs,
        (t_grid[0], t_grid[-1]),
        y0,
        t_eval=t_grid,
        method="BDF",
        jac=jac,
        rtol=rtol,
        atol=atol,
    )
    if not sol.success:
        decay = np.abs(mat.diagonal().real)
        decay = decay[decay > 0]
        ratio = float(decay.max() / decay.min()) if decay.size else float("nan")
        raise StiffIntegrationError(
            f"integration failed ({sol.message}); stiffness ratio estimate {ratio:.3e}"
        )
    return sol


def propagate(
    L: Liouvillian,
    rho0: DensityMatrix,
    t_grid,
    *,
    rtol: float = 1e-9,
    atol: float = 1e-12,
) -> Trajectory:
    """Propagate d vec(rho)/dt = L vec(rho) on a monotone time grid.

    Implicit adaptive stepping with per-step relative error control; the
    grid's first entry is the initial time.  Mid-trajectory states are
    validated with positivity relaxed to -1e-6.
    """
    if rho0.sig != L.sig:
        raise ValueError("initial state and generator live on different spaces")
    sol = _integrate(L, vec(rho0.data).astype(complex), np.asarray(t_grid, float), rtol, atol)
    states = tuple(
        DensityMatrix.from_data(
            L.sig,
            unvec(sol.y[:, k], L.dim),
            hermitize=True,
            trace_tol=1e-7,
            positivity_tol=TRAJECTORY_POSITIVITY_TOL,
        )
        for k in range(sol.y.shape[1])
    )
    return Trajectory(times=sol.t.copy(), states=states)


def two_time_correlation(
    L: Liouvillian,
    rho_ss: DensityMatrix,
    tau_grid,
    *,
    rtol: float = 1e-9,
    atol: float = 1e-12,
) -> CorrelationSeries:
    """Stationary g2(tau) by the quantum regression theorem.

    Propagates the collapsed (trace-reducing) operator b rho_ss b† under L
    and traces against b†b; the tau = 0 entry is then exactly the
    normally-ordered single-time moment <b†b†bb>/<b†b>^2.
    """
    if rho_ss.sig != L.sig:
        raise ValueError("stationary state and generator live on different spaces")
    tau_grid = np.asarray(tau_grid, dtype=float)
    if tau_grid[0] != 0.0:
        raise ValueError("tau grid must start at 0")
    b = _resonator_annihilation(L.sig)
    nb = b.conj().T @ b
    nbar = float(np.real(np.trace(nb @ rho_ss.data)))
    norm = nbar * nbar
    if norm < 1e-12:
        raise ValueError(
            f"<b†b>^2 = {norm:.3e} below 1e-12: g2 normalization would amplify noise"
        )
    collapsed = b @ rho_ss.data @ b.conj().T
    sol = _integrate(L, vec(collapsed).astype(complex), tau_grid, rtol, atol)
    nb_vec = vec(nb.conj().T).conj()  # trace pairing: tr(N X) = vec(N†)† vec(X)
    values = np.real(nb_vec @ sol.y) / norm
    if float(values.min()) < -1e-8:
        raise RuntimeError(
            f"correlation turned negative ({values.min():.3e}): propagation lost positivity"
        )
    return CorrelationSeries(taus=sol.t.copy(), values=values, normalization=norm)


def default_tau_grid(kappa_b: float, points: int = 49) -> np.ndarray:
    """Log-spaced delays from 0.1/kappa_b to 100/kappa_b, starting at 0."""
    if kappa_b <= 0:
        raise ValueError("kappa_b must be positive")
    return np.concatenate([[0.0], np.geomspace(0.1 / kappa_b, 100.0 / kappa_b, points)])


def default_n_max(nbar_b: float) -> int:
    """Starting Fock truncation: 30 up to nbar_b = 5, then 8x the occupation."""
    return 30 if nbar_b <= 5 else int(np.ceil(8 * nbar_b))


def converge_in_n_max(evaluate, n_max0: int, *, tol: float = 1e-4, max_doublings: int = 6):
    """Double the Fock truncation until scalar observables move less than tol.

    ``evaluate(n_max)`` returns a float or array of observables; returns
    (n_max, value) for the first doubling whose shift is below tol.
    """
    n_max = int(n_max0)
    prev = np.atleast_1d(np.asarray(evaluate(n_max), dtype=float))
    for _ in range(max_doublings):
        n_next = 2 * n_max
        cur = np.atleast_1d(np.asarray(evaluate(n_next), dtype=float))
        if float(np.abs(cur - prev).max()) < tol:
            return n_next, cur if cur.size > 1 else float(cur[0])
        n_max, prev = n_next, cur
    raise RuntimeError(
        f"observables did not converge within {max_doublings} doublings from {n_max0}"
    )
