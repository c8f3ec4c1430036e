"""Stationary wavefunctions psi_nlm = R_nl * Y_lm and their diagnostics.

Radial part
-----------
R_nl(r) = N_nl * exp(-rho/2) * rho^(l - sigma_l) * L(rho) with the
relativistic Laguerre polynomial L and rho = (2Z/((n - sigma_l)*a0)) * r.
The length scale a0 = hbar^2/(m*e_s^2) uses the state's own system mass m,
not the rest mass; the difference is O(alpha^2) and deliberate.

For l = 0 the prefactor rho^(-sigma_0) diverges mildly at the origin; the
combination u = r*R stays finite (u ~ r^(1-sigma_0)), and every integrand
used here carries at least rho^(2-2*sigma_0), so nothing is singular under
an integral sign.

Normalization is numerical: composite Gauss-Legendre on log-spaced panels
in rho, doubled until the integral is stable, with a tail-decay check.  The
overall sign is then fixed by the convention R(0+) > 0, which overrides the
(-1)^(nu+1) factor the polynomial coefficients carry.

Current diagnostics
-------------------
The probability current of a Klein-Gordon state in this formulation is

    J = i*hbar/(m0 + m) * (Psi grad Psi* - Psi* grad Psi)
      = 2*hbar/(m0 + m) * Im(Psi* grad Psi),

with the system mass m in the prefactor.  For a stationary psi_nlm only the
azimuthal component survives, J_phi = 2*hbar*m_q*|psi|^2/((m0+m) r sin(theta)),
and its divergence vanishes; both facts are checked numerically on a
product grid (log radii, Gauss-Legendre colatitudes, uniform azimuths).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import simpson
from scipy.special import lpmv

from .core import PhysicalParams, QuantumNumbers, RadialGrid, validate_params
from .coulomb import energy_level, sigma_closed, system_mass
from .errors import InvalidQuantumNumbers, QuadratureFailure, TailNotConverged
from .special import LaguerreRel, laguerre_rel

__all__ = [
    "RadialWavefunction",
    "build_radial",
    "normalize",
    "radial_ode_residual",
    "reference_residual_grid",
    "count_radial_nodes",
    "SphericalHarmonic",
    "spherical_harmonic",
    "SphericalGrid3D",
    "current_check_grid",
    "sample_state",
    "probability_current",
    "continuity_check",
]


@dataclass(frozen=True, eq=False)
class RadialWavefunction:
    """Normalized radial factor R_nl.

    evaluate() applies `orientation` (+1 or -1), the sign that turns the
    polynomial's verbatim global sign into the R(0+) > 0 convention;
    `normalization` itself is kept positive.
    """

    qn: QuantumNumbers
    rho_scale: float
    normalization: float
    poly: LaguerreRel
    exponent: float
    orientation: float

    def rho(self, r: np.ndarray | float) -> np.ndarray | float:
        return self.rho_scale * np.asarray(r, dtype=float)

    def evaluate(self, r: np.ndarray | float) -> np.ndarray | float:
        rho = self.rho_scale * np.asarray(r, dtype=float)
        out = (
            self.orientation
            * self.normalization
            * np.exp(-0.5 * rho)
            * rho ** self.exponent
            * self.poly.evaluate(rho)
        )
        return out if np.ndim(out) else float(out)

    def evaluate_u(self, r: np.ndarray | float) -> np.ndarray | float:
        """u = r*R, finite at the origin for every l."""
        r = np.asarray(r, dtype=float)
        out = r * self.evaluate(r)
        return out if np.ndim(out) else float(out)

    def tail_radius(self, threshold: float = 1e-10) -> float:
        """Radius past which |u| stays below threshold * max|u|."""
        rho_hi = 80.0 * self.qn.n ** 2
        rho = np.geomspace(1e-6, rho_hi, 4096)
        u = rho ** (1.0 + self.exponent) * np.exp(-0.5 * rho) * np.abs(self.poly.evaluate(rho))
        mask = u >= threshold * u.max()
        rho_t = rho[np.flatnonzero(mask)[-1]]
        return 1.1 * min(rho_t, rho_hi) / self.rho_scale


def _norm_integral(exponent: float, poly: LaguerreRel, rho_max: float, n_panels: int) -> float:
    """integral over (0, rho_max) of exp(-rho) rho^(2*exponent+2) P(rho)^2."""
    nodes, weights = leggauss(20)
    edges = np.concatenate([[0.0], np.geomspace(1e-8, rho_max, n_panels)])
    mid = 0.5 * (edges[1:] + edges[:-1])[:, None]
    half = 0.5 * (edges[1:] - edges[:-1])[:, None]
    rho = (mid + half * nodes[None, :]).ravel()
    w = (half * weights[None, :]).ravel()
    f = np.exp(-rho) * rho ** (2.0 * exponent + 2.0) * poly.evaluate(rho) ** 2
    return float(np.sum(w * f))


def build_radial(p: PhysicalParams, n: int, l: int) -> RadialWavefunction:
    """Assemble the normalized R_nl for the Coulomb closed-form state."""
    qn = QuantumNumbers(n=n, l=l)
    validate_params(p, qn)
    sigma = sigma_closed(p, l).sigma_l
    m_sys = system_mass(p, n, l)
    a0 = p.bohr_radius(m_sys)
    rho_scale = 2.0 * p.z_number / ((n - sigma) * a0)
    poly = laguerre_rel(p, n, l)
    exponent = l - sigma

    rho_max = 80.0 * n ** 2
    # Tail check on the integrand itself, then panel doubling to stability.
    probe = np.geomspace(1e-6, rho_max, 512)
    integrand = np.exp(-probe) * probe ** (2.0 * exponent + 2.0) * poly.evaluate(probe) ** 2
    if integrand[-1] > 1e-12 * integrand.max():
        raise QuadratureFailure(
            f"norm integrand has not decayed at rho = {rho_max:g} for (n={n}, l={l})"
        )
    n_panels = 64
    value = _norm_integral(exponent, poly, rho_max, n_panels)
    for _ in range(4):
        refined = _norm_integral(exponent, poly, rho_max, 2 * n_panels)
        if abs(refined - value) <= 1e-11 * abs(refined):
            value = refined
            break
        n_panels *= 2
        value = refined
    else:
        raise QuadratureFailure(f"norm integral did not stabilize for (n={n}, l={l})")
    if not (math.isfinite(value) and value > 0):
        raise QuadratureFailure(f"norm integral came out {value!r} for (n={n}, l={l})")

    norm = math.sqrt(rho_scale ** 3 / value)
    orientation = -1.0 if poly.coefficients[0] < 0 else 1.0
    return RadialWavefunction(
        qn=qn,
        rho_scale=rho_scale,
        normalization=norm,
        poly=poly,
        exponent=exponent,
        orientation=orientation,
    )


def normalize(grid: RadialGrid, samples: np.ndarray) -> float:
    """Constant N making the sampled radial function unit-normalized.

    Integrates samples^2 * r^2 over the grid (Simpson, handles log grids);
    requires the samples, as u = r*R, to have decayed below 1e-12 of their
    peak at the last grid point.
    """
    r = grid.points
    samples = np.asarray(samples, dtype=float)
    if samples.shape != r.shape:
        raise ValueError("samples must match the grid")
    u = np.abs(samples * r)
    if u[-1] > 1e-12 * u.max():
        raise TailNotConverged(
            f"|r*R| at r_max is {u[-1] / u.max():.3e} of its peak; enlarge r_max"
        )
    integral = float(simpson(samples ** 2 * r ** 2, x=r))
    if not (math.isfinite(integral) and integral > 0):
        raise QuadratureFailure(f"norm quadrature returned {integral!r}")
    return 1.0 / math.sqrt(integral)


def _second_derivative(u: np.ndarray, r: np.ndarray) -> np.ndarray:
    """Three-point second derivative on the interior points r[1:-1]."""
    hm = r[1:-1] - r[:-2]
    hp = r[2:] - r[1:-1]
    return 2.0 * (hm * u[2:] + hp * u[:-2] - (hm + hp) * u[1:-1]) / (hm * hp * (hm + hp))


def radial_ode_residual(R: RadialWavefunction, p: PhysicalParams, grid: RadialGrid) -> float:
    """Finite-difference residual of the radial equation for R(r).

    The equation, with lam = l(l+1) and all of E', m taken from the closed
    form, reads

        (1/r^2) d/dr(r^2 dR/dr) + (m0+m)E'/hbar^2 R
            + [2m Z e_s^2/(hbar^2 r) + (Z^2 e_s^4/(hbar^2 c^2) - lam)/r^2] R = 0.

    The Laplacian term is evaluated as (r R)''/r with central second-order
    stencils; three points at each boundary are excluded.  Returns
    max|residual| / max|term|, the residual relative to the largest single
    term appearing in the equation on the same points.
    """
    n, l = R.qn.n, R.qn.l
    state = energy_level(p, n, l)
    m_sys = state.system_mass
    r = grid.points
    R_smp = R.evaluate(r)
    upp = _second_derivative(r * R_smp, r)

    # _second_derivative covers r[1:-1]; drop 2 more points per side.
    rc = r[3:-3]
    Rc = R_smp[3:-3]
    za2 = (p.z_number * p.e_squared / (p.hbar * p.c)) ** 2
    t_lap = upp[2:-2] / rc
    t_energy = (p.rest_mass + m_sys) * state.e_prime / p.hbar ** 2 * Rc
    t_coulomb = 2.0 * m_sys * p.z_number * p.e_squared / (p.hbar ** 2 * rc) * Rc
    t_centrifugal = (za2 - l * (l + 1)) / rc ** 2 * Rc

    residual = np.abs(t_lap + t_energy + t_coulomb + t_centrifugal).max()
    scale = max(
        np.abs(t_lap).max(),
        np.abs(t_energy).max(),
        np.abs(t_coulomb).max(),
        np.abs(t_centrifugal).max(),
    )
    return float(residual / scale)


def reference_residual_grid(R: RadialWavefunction, n_points: int = 12000) -> RadialGrid:
    """Log-spaced grid spanning the state for residual checks.

    Log spacing keeps the (rR)''/r term second-order accurate near the
    origin, where R goes like a fractional power of r; a uniform grid
    loses an order there because its first interior points sit at r ~ h.
    The low end starts at rho = 0.1, far below the first lobe of every
    state.
    """
    return RadialGrid.log_uniform(0.1 / R.rho_scale, R.tail_radius(1e-10), n_points)


def count_radial_nodes(R: RadialWavefunction) -> int:
    """Sign changes of R on (0, infinity); the rho prefactor never changes sign."""
    rho_t = R.rho_scale * R.tail_radius(1e-8)
    rho = np.linspace(0.0, rho_t, 6000)[1:]
    vals = R.poly.evaluate(rho)
    vals = vals[np.abs(vals) > 1e-10 * np.abs(vals).max()]
    signs = np.sign(vals)
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


@dataclass(frozen=True)
class SphericalHarmonic:
    """Orthonormal Y_lm with the exp(i m phi) azimuthal convention."""

    l: int
    m: int

    def __post_init__(self) -> None:
        if self.l < 0 or abs(self.m) > self.l:
            raise InvalidQuantumNumbers(f"need |m| <= l, l >= 0; got l={self.l}, m={self.m}")

    def evaluate(self, theta, phi):
        return spherical_harmonic(self.l, self.m, theta, phi)


def spherical_harmonic(l: int, m: int, theta, phi):
    """Y_lm(theta, phi), complex, Condon-Shortley phase."""
    if l < 0 or abs(m) > l:
        raise InvalidQuantumNumbers(f"need |m| <= l, l >= 0; got l={l}, m={m}")
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    mm = abs(m)
    norm = math.sqrt(
        (2 * l + 1) / (4.0 * math.pi) * math.factorial(l - mm) / math.factorial(l + mm)
    )
    val = norm * lpmv(mm, l, np.cos(theta)) * np.exp(1j * mm * phi)
    if m < 0:
        val = (-1) ** mm * np.conj(val)
    return val if np.ndim(val) else complex(val)


@dataclass(frozen=True, eq=False)
class SphericalGrid3D:
    """Product grid (r x theta x phi) for vector-field diagnostics.

    Radii are log-spaced, colatitudes are Gauss-Legendre nodes (their
    weights integrate smooth functions of cos(theta) exactly enough for
    norm checks), azimuths are uniform with the endpoint excluded so the
    direction is periodic.
    """

    r: np.ndarray
    theta: np.ndarray
    theta_weights: np.ndarray
    phi: np.ndarray

    @property
    def shape(self) -> tuple[int, int, int]:
        return (self.r.size, self.theta.size, self.phi.size)


def current_check_grid(
    R: RadialWavefunction,
    n_r: int = 200,
    n_theta: int = 64,
    n_phi: int = 64,
) -> SphericalGrid3D:
    x, w = leggauss(n_theta)
    order = np.argsort(-x)  # theta increasing means cos(theta) decreasing
    r_hi = R.tail_radius(1e-8)
    return SphericalGrid3D(
        r=np.geomspace(1e-3 * r_hi, r_hi, n_r),
        theta=np.arccos(x[order]),
        theta_weights=w[order],
        phi=2.0 * math.pi * np.arange(n_phi) / n_phi,
    )


def sample_state(
    p: PhysicalParams, R: RadialWavefunction, m: int, grid: SphericalGrid3D
) -> np.ndarray:
    """Complex psi_nlm samples, shape (n_r, n_theta, n_phi)."""
    qn = QuantumNumbers(n=R.qn.n, l=R.qn.l, m=m)
    radial = np.asarray(R.evaluate(grid.r))
    angular = spherical_harmonic(qn.l, qn.m, grid.theta[:, None], grid.phi[None, :])
    return radial[:, None, None] * np.asarray(angular)[None, :, :]


def _phi_spectral_derivative(psi: np.ndarray) -> np.ndarray:
    n_phi = psi.shape[2]
    k = np.fft.fftfreq(n_phi, d=1.0 / n_phi)
    if n_phi % 2 == 0:
        k[n_phi // 2] = 0.0  # derivative of the unpaired Nyquist mode is ill-defined
    return np.fft.ifft(1j * k[None, None, :] * np.fft.fft(psi, axis=2), axis=2)


def probability_current(
    psi: np.ndarray, grid: SphericalGrid3D, p: PhysicalParams, m_sys: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(J_r, J_theta, J_phi) of the sampled state.

    J = 2*hbar/(m0 + m) * Im(psi* grad psi).  A strictly real field has
    identically zero current and is short-circuited to exact zeros, which
    covers every m = 0 eigenstate.  Angular gradient components use
    second-order differences; the azimuthal one is spectral (the grid is
    periodic and uniform), so single-mode phases e^(i m phi) are
    differentiated to machine accuracy.
    """
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != grid.shape:
        raise ValueError(f"psi shape {psi.shape} does not match grid {grid.shape}")
    if not psi.imag.any():
        zeros = np.zeros(grid.shape)
        return zeros, zeros.copy(), zeros.copy()
    pref = 2.0 * p.hbar / (p.rest_mass + m_sys)
    r = grid.r[:, None, None]
    sin_t = np.sin(grid.theta)[None, :, None]
    conj = np.conj(psi)
    j_r = pref * np.imag(conj * np.gradient(psi, grid.r, axis=0))
    j_theta = pref * np.imag(conj * np.gradient(psi, grid.theta, axis=1)) / r
    j_phi = pref * np.imag(conj * _phi_spectral_derivative(psi)) / (r * sin_t)
    return j_r, j_theta, j_phi


def divergence_field(
    J: tuple[np.ndarray, np.ndarray, np.ndarray], grid: SphericalGrid3D
) -> np.ndarray:
    """div J on the grid interior, by second-order differences.

    Returns the (n_r - 4, n_theta - 2, n_phi) interior block: the outermost
    two radial rows and the polar rows are dropped because the one-sided
    stencils there are much noisier than the bulk.  The phi direction is
    periodic, so every phi sample survives.
    """
    j_r, j_theta, j_phi = J
    r = grid.r[:, None, None]
    sin_t = np.sin(grid.theta)[None, :, None]
    d_phi = 2.0 * math.pi / grid.phi.size

    term_r = np.gradient(r ** 2 * j_r, grid.r, axis=0) / r ** 2
    term_theta = np.gradient(sin_t * j_theta, grid.theta, axis=1) / (r * sin_t)
    term_phi = (np.roll(j_phi, -1, axis=2) - np.roll(j_phi, 1, axis=2)) / (2.0 * d_phi * r * sin_t)
    return (term_r + term_theta + term_phi)[2:-2, 1:-1, :]


def continuity_check(
    J: tuple[np.ndarray, np.ndarray, np.ndarray], grid: SphericalGrid3D
) -> float:
    """max |div J| over the grid interior.

    For a stationary state the probability density is time-independent, so
    conservation demands div J = 0; the returned number is the numerical
    residual of that statement.
    """
    return float(np.abs(divergence_field(J, grid)).max())
