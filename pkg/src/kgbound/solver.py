"""Self-consistent radial eigensolver for the system-mass formulation.

Every mode solves an equation of the fixed shape

    -A u''(r) + V_eff(r; m) u(r) = E' u(r),      u = r*R,  u(0) = u(r_max) = 0,

on a uniform grid, where A and V_eff depend on the mode and, for the
relativistic modes, on the system mass m = m0 + E'/c^2.  That circular
dependence is resolved by fixed-point iteration: start from m = m0, solve,
update m from the eigenvalue, repeat until the mass stops moving.  The
update contracts fast (the correction is second order in the coupling), so
plain iteration with a light damping safeguard is enough.

Mode dictionary, writing msum = m0 + m, U for the vector part and S for
the scalar part:

    schrodinger        A = hbar^2/(2 m0)     V = U + l(l+1) hbar^2/(2 m0 r^2)
    kg-vector          A = hbar^2/msum      V = 2mU/msum - U^2/(msum c^2) + cent
    kg-scalar-vector   A = hbar^2/msum      V = kg-vector + 2 m0 S/msum + S^2/(msum c^2)
    kg-equal (S = U)   A = hbar^2/msum      V = 2U + cent

with cent = l(l+1) hbar^2/(msum r^2).  In kg-equal the quadratic terms
cancel exactly, leaving a Schrodinger problem with reduced mass msum/2 and
a doubled potential; the code paths are arranged so that this identity
holds entrywise in floating point, not just analytically.  The vector
Coulomb U^2 term merges with the centrifugal barrier into an effective
index l(l+1) - Z^2 alpha^2, which is why those modes inherit the
supercritical-coupling bound Z alpha < l + 1/2.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .core import (
    CoulombPart,
    HulthenPart,
    PhysicalParams,
    PotentialSpec,
    QuantumNumbers,
    RadialGrid,
    BoundState,
    make_bound_state,
    validate_params,
)
from .errors import NoConvergence, StateNotFound, UnsupportedCombination

__all__ = [
    "SolveMode",
    "SolveRequest",
    "DiscretizedOperator",
    "effective_radial_equation",
    "discretize_operator",
    "inner_eigensolve",
    "solve_self_consistent",
    "default_solver_grid",
    "ConvergenceStudy",
    "convergence_study",
    "richardson_extrapolate",
]


class SolveMode(enum.Enum):
    SCHRODINGER = "schrodinger"
    KG_VECTOR = "kg-vector"
    KG_SCALAR_VECTOR = "kg-scalar-vector"
    KG_EQUAL = "kg-equal"


@dataclass(frozen=True)
class SolveRequest:
    """One eigensolve: which equation, which channel content, which state."""

    mode: SolveMode
    potential: PotentialSpec
    n: int
    l: int
    grid: RadialGrid | None = None
    sc_tolerance: float = 1e-12
    max_sc_iters: int = 200


@dataclass(frozen=True, eq=False)
class DiscretizedOperator:
    """Symmetric tridiagonal matrix of the radial operator on a uniform grid.

    mass_parameter is hbar^2/A, i.e. 2*m0 for the Schrodinger mode and
    m0 + m for the relativistic ones, frozen at this inner iteration's mass.
    """

    diag: np.ndarray
    offdiag: np.ndarray
    mass_parameter: float
    grid: RadialGrid


def _check_combination(mode: SolveMode, potential: PotentialSpec) -> None:
    if mode in (SolveMode.SCHRODINGER, SolveMode.KG_VECTOR):
        if potential.scalar_part is not None:
            raise UnsupportedCombination(
                f"{mode.value} has no scalar channel; use kg-scalar-vector or kg-equal"
            )
    elif mode is SolveMode.KG_EQUAL:
        if potential.vector_part is None or potential.vector_part != potential.scalar_part:
            raise UnsupportedCombination(
                "kg-equal requires identical, non-empty scalar and vector parts"
            )


def effective_radial_equation(
    mode: SolveMode,
    potential: PotentialSpec,
    p: PhysicalParams,
    m_sys: float,
    l: int,
) -> tuple[float, Callable[[np.ndarray], np.ndarray]]:
    """Kinetic coefficient A and effective potential V_eff(r) for u = r*R."""
    _check_combination(mode, potential)
    mass_param = _mass_parameter(mode, p, m_sys)
    A = p.hbar ** 2 / mass_param
    cent_coef = l * (l + 1) * p.hbar ** 2 / mass_param

    def v_eff(r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        v = cent_coef / r ** 2
        U = potential.vector_part.evaluate(r, p) if potential.vector_part is not None else None
        if mode is SolveMode.SCHRODINGER:
            if U is not None:
                v = v + U
        elif mode is SolveMode.KG_EQUAL:
            v = v + 2.0 * U
        else:
            if U is not None:
                v = v + 2.0 * m_sys * U / mass_param - U ** 2 / (mass_param * p.c ** 2)
            if mode is SolveMode.KG_SCALAR_VECTOR and potential.scalar_part is not None:
                S = potential.scalar_part.evaluate(r, p)
                v = v + 2.0 * p.rest_mass * S / mass_param + S ** 2 / (mass_param * p.c ** 2)
        return v

    return A, v_eff


def _mass_parameter(mode: SolveMode, p: PhysicalParams, m_sys: float) -> float:
    """hbar^2 / A: 2*m0 for the Schrodinger mode, m0 + m for the others."""
    if mode is SolveMode.SCHRODINGER:
        return 2.0 * p.rest_mass
    return p.rest_mass + m_sys


def singular_exponent(mode: SolveMode, potential: PotentialSpec, p: PhysicalParams, l: int) -> float:
    """Origin exponent s of the regular solution, u ~ r^s.

    The indicial equation of the effective potential's 1/r^2 part gives
    s = 1/2 + sqrt(1/4 + L) with L the centrifugal index: l(l+1), shifted
    by -(Z alpha)^2 when a 1/r-singular vector channel is squared in the
    relativistic modes and by +(Z alpha)^2 for a singular scalar channel
    (the two cancel in kg-equal).  In the non-singular cases s comes out
    as the integer l + 1.
    """
    ll = float(l * (l + 1))
    za2 = (p.z_number * p.alpha) ** 2
    if mode in (SolveMode.KG_VECTOR, SolveMode.KG_SCALAR_VECTOR):
        if potential.vector_part is not None:
            ll -= za2
        if mode is SolveMode.KG_SCALAR_VECTOR and potential.scalar_part is not None:
            ll += za2
    return 0.5 + math.sqrt(0.25 + ll)


def discretize_operator(
    A: float,
    v_eff: Callable[[np.ndarray], np.ndarray],
    grid: RadialGrid,
    mass_parameter: float,
    singular_index: float | None = None,
) -> DiscretizedOperator:
    """Second-order central-difference matrix with Dirichlet ends.

    With singular_index = s given, the diagonal is corrected so the
    stencil differentiates r^s without error.  Near the origin the regular
    solution behaves like r^s with fractional s in the relativistic
    Coulomb modes, and the plain stencil's truncation error on that power
    (largest at the first interior point, where r ~ h) degrades eigenvalue
    convergence below second order; the correction restores it.  For
    integer s <= 3 the stencil is already exact and the correction is
    identically zero, so non-singular modes are untouched.
    """
    h = grid.step  # raises for non-uniform grids; the stencil needs constant h
    kin = A / h ** 2
    diag = 2.0 * kin + v_eff(grid.points)
    if singular_index is not None:
        s = singular_index
        i = np.arange(1, grid.n_points + 1, dtype=float)
        stencil_error = ((i + 1.0) ** s - 2.0 * i ** s + (i - 1.0) ** s) / i ** s - s * (
            s - 1.0
        ) / i ** 2
        diag = diag + kin * stencil_error
    offdiag = np.full(grid.n_points - 1, -kin)
    return DiscretizedOperator(diag=diag, offdiag=offdiag, mass_parameter=mass_parameter, grid=grid)


def _count_sign_changes(u: np.ndarray) -> int:
    vals = u[np.abs(u) > 1e-9 * np.abs(u).max()]
    signs = np.sign(vals)
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def _rayleigh_quotient(op: DiscretizedOperator, u: np.ndarray) -> float:
    """u^T T u / u^T u evaluated in the difference form of the quadratic.

    The raw eigenvalue carries absolute noise ~ eps * ||T||, and ||T|| is
    the kinetic diagonal 2A/h^2, which grows as the grid is refined.  That
    noise puts a floor under the self-consistency residual well above the
    default tolerance on fine grids.  Rewriting the kinetic part of the
    quadratic as kin * (u_1^2 + u_N^2 + sum (u_{i+1}-u_i)^2) makes every
    summand small (the summed magnitudes are of binding-energy scale, not
    kinetic scale), and math.fsum adds them without accumulation error, so
    the quotient is smooth in the operator at the ~1e-13 level.
    """
    kin = -float(op.offdiag[0])
    v = op.diag - 2.0 * kin  # recovers the potential as rounded into diag
    diff = np.diff(u)
    kinetic = kin * (
        float(u[0]) ** 2 + float(u[-1]) ** 2 + math.fsum((diff * diff).tolist())
    )
    potential = math.fsum((v * u * u).tolist())
    norm = math.fsum((u * u).tolist())
    return (kinetic + potential) / norm


def inner_eigensolve(op: DiscretizedOperator, node_target: int) -> tuple[float, np.ndarray]:
    """Lowest eigenpair whose eigenvector has node_target interior nodes.

    Returns (E', u) with u normalized to sum(u^2) = 1 and its first
    significant entry positive; E' is polished with a compensated Rayleigh
    quotient so repeated solves at nearby potentials differ smoothly.
    Raises StateNotFound when no such bound (E' < 0) state sits among the
    lowest node_target + 4 eigenpairs.
    """
    n = op.diag.size
    want = min(node_target + 4, n)
    vals, vecs = eigh_tridiagonal(op.diag, op.offdiag, select="i", select_range=(0, want - 1))
    for idx in range(vals.size):
        u = vecs[:, idx]
        if _count_sign_changes(u) != node_target:
            continue
        if vals[idx] >= 0.0:
            raise StateNotFound(
                f"the state with {node_target} nodes is not bound (E' = {vals[idx]:.6g})"
            )
        u = u / math.sqrt(float(np.sum(u ** 2)))
        first = np.flatnonzero(np.abs(u) > 1e-9 * np.abs(u).max())[0]
        if u[first] < 0:
            u = -u
        return _rayleigh_quotient(op, u), u
    raise StateNotFound(
        f"no eigenvector with {node_target} nodes among the lowest {want} eigenpairs"
    )


def default_solver_grid(
    mode: SolveMode,
    potential: PotentialSpec,
    p: PhysicalParams,
    n: int,
    l: int,
    n_points: int = 8000,
    r_max: float | None = None,
) -> RadialGrid:
    """Uniform grid sized to hold the (n, l) state of this potential.

    Coulomb-like channels get r_max = 15 n^2 a0 / Z: the decay constant is
    ~ Z/(n a0), so the boundary sits 15n decay lengths out (exp(-30)
    truncation at worst) while keeping the step small enough that the
    eigenvalue discretization error stays in the Richardson-correctable
    regime.  Screened channels
    are sized from the analytic decay constant of the target level,
    kappa = (lam/2)(b/n - n) with b = 2 m0 (Z e_s^2) s / (hbar^2 lam)
    (s = 2 when both channels act), asking for exp(-34) tail suppression;
    a floor of 10 screening lengths keeps shallow states resolvable.  An
    unbound estimate (kappa <= 0) falls back to a wide probe grid and lets
    the eigensolver report StateNotFound.
    """
    if r_max is None:
        screened = [
            part
            for part in (potential.vector_part, potential.scalar_part)
            if isinstance(part, HulthenPart)
        ]
        if screened:
            lam_abs = screened[0].lam_absolute(p)
            strength = 2.0 if mode is SolveMode.KG_EQUAL else 1.0
            b_est = 2.0 * p.rest_mass * strength * p.z_number * p.e_squared / (
                p.hbar ** 2 * lam_abs
            )
            kappa = 0.5 * lam_abs * (b_est / n - n)
            if kappa > 0:
                r_max = max(34.0 / kappa, 10.0 / lam_abs)
            else:
                r_max = 120.0 * n / lam_abs
        else:
            r_max = 15.0 * n ** 2 * p.bohr_radius() / p.z_number
    return RadialGrid.uniform(r_max, n_points)


def solve_self_consistent(
    req: SolveRequest, p: PhysicalParams, with_trace: bool = False
) -> BoundState | tuple[BoundState, list[float]]:
    """Solve the requested state, iterating the system mass to a fixed point.

    The Schrodinger mode has no mass feedback and returns after a single
    inner solve with residual 0.  Relativistic modes iterate
    m <- m0 + E'(m)/c^2 from m = m0, damping the step by half whenever the
    mass residual fails to shrink, until |dm|/m0 < sc_tolerance or
    max_sc_iters is exhausted (NoConvergence, reporting the last residuals).
    With with_trace=True the per-iteration residual history is returned
    alongside the state.
    """
    qn = QuantumNumbers(n=req.n, l=req.l)
    _check_combination(req.mode, req.potential)
    quadratic = req.mode in (SolveMode.KG_VECTOR, SolveMode.KG_SCALAR_VECTOR)
    if quadratic and req.potential.vector_part is not None:
        validate_params(p, qn)  # the U^2 term carries the supercritical bound
    grid = (
        req.grid
        if req.grid is not None
        else default_solver_grid(req.mode, req.potential, p, req.n, req.l)
    )
    node_target = qn.radial_nodes
    s_origin = singular_exponent(req.mode, req.potential, p, req.l)

    m = p.rest_mass
    trace: list[float] = []
    prev_resid = math.inf
    e = 0.0
    u = np.zeros(grid.n_points)
    iterations = 0
    residual = 0.0
    max_iters = 1 if req.mode is SolveMode.SCHRODINGER else req.max_sc_iters
    converged = False
    for k in range(1, max_iters + 1):
        A, v_eff = effective_radial_equation(req.mode, req.potential, p, m, req.l)
        op = discretize_operator(A, v_eff, grid, _mass_parameter(req.mode, p, m), s_origin)
        e, u = inner_eigensolve(op, node_target)
        iterations = k
        if req.mode is SolveMode.SCHRODINGER:
            residual = 0.0
            converged = True
            break
        m_new = p.rest_mass + e / p.c ** 2
        residual = abs(m_new - m) / p.rest_mass
        trace.append(residual)
        if residual < req.sc_tolerance:
            converged = True
            break
        if k >= 2 and residual >= prev_resid:
            m = m + 0.5 * (m_new - m)
        else:
            m = m_new
        prev_resid = residual
    if not converged:
        raise NoConvergence(
            f"system mass not stationary after {max_iters} iterations; "
            f"last residuals {trace[-2:]}"
        )

    u_phys = u / math.sqrt(grid.step)  # discrete sum(u^2)*h = 1
    state = make_bound_state(
        qn,
        e,
        p,
        radial_samples=(grid.points, u_phys),
        iterations=iterations,
        residual=residual,
    )
    return (state, trace) if with_trace else state


@dataclass(frozen=True)
class ConvergenceStudy:
    """Grid-refinement record: (n_points, E', Richardson extrapolant) rows.

    The first row has no extrapolant (None).  observed_orders holds the
    convergence order estimated from each consecutive triple of grids; for
    the second-order stencil used here they should sit near 2.
    """

    rows: tuple[tuple[int, float, float | None], ...]
    observed_orders: tuple[float, ...]
    r_max: float

    @property
    def final_order(self) -> float:
        return self.observed_orders[-1]

    @property
    def best_estimate(self) -> float:
        return self.rows[-1][2] if self.rows[-1][2] is not None else self.rows[-1][1]


def richardson_extrapolate(
    e_coarse: float, e_fine: float, step_ratio: float = 2.0, order: int = 2
) -> float:
    """Eliminate the leading h^order error term from two-grid eigenvalues."""
    w = step_ratio ** order
    return (w * e_fine - e_coarse) / (w - 1.0)


def convergence_study(
    req: SolveRequest, p: PhysicalParams, grid_sizes: tuple[int, ...]
) -> ConvergenceStudy:
    """Re-solve req on uniform grids of the given sizes over one fixed r_max."""
    if len(grid_sizes) < 3:
        raise ValueError("a convergence study needs at least 3 grid sizes")
    sizes = tuple(sorted(int(s) for s in grid_sizes))
    if len(set(sizes)) != len(sizes):
        raise ValueError("grid sizes must be distinct")
    if req.grid is not None:
        r_max = float(req.grid.points[-1] + req.grid.step)
    else:
        base = default_solver_grid(req.mode, req.potential, p, req.n, req.l)
        r_max = float(base.points[-1] + base.step)

    energies = []
    steps = []
    for n_pts in sizes:
        grid = RadialGrid.uniform(r_max, n_pts)
        state = solve_self_consistent(
            SolveRequest(
                mode=req.mode,
                potential=req.potential,
                n=req.n,
                l=req.l,
                grid=grid,
                sc_tolerance=req.sc_tolerance,
                max_sc_iters=req.max_sc_iters,
            ),
            p,
        )
        energies.append(state.e_prime)
        steps.append(grid.step)

    rows: list[tuple[int, float, float | None]] = [(sizes[0], energies[0], None)]
    for i in range(1, len(sizes)):
        ratio = steps[i - 1] / steps[i]
        rows.append(
            (sizes[i], energies[i], richardson_extrapolate(energies[i - 1], energies[i], ratio))
        )
    orders = []
    for i in range(len(sizes) - 2):
        d1 = abs(energies[i] - energies[i + 1])
        d2 = abs(energies[i + 1] - energies[i + 2])
        if d1 == 0.0 or d2 == 0.0:
            orders.append(math.nan)
        else:
            orders.append(math.log(d1 / d2) / math.log(steps[i] / steps[i + 1]))
    return ConvergenceStudy(rows=tuple(rows), observed_orders=tuple(orders), r_max=r_max)
