"""Domain types and unit conventions shared by every kgbound module.

Conventions
-----------
Natural units by default: hbar = c = 1 and the rest mass m0 = 1, so all
energies come out in units of m0*c^2 and lengths in units of hbar/(m0*c).
The squared Gaussian charge e_s^2 = alpha*hbar*c, so the Coulomb energy is
-Z*e_s^2/r and the Bohr-like length for a mass M is a0 = hbar^2/(M*e_s^2).

The central quantity throughout is the system mass

    m = m0 + E'/c^2,

the actual mass of the bound system once the (negative) energy E' excluding
rest energy is accounted for.  Bound states therefore have 0 < m < m0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidQuantumNumbers, NotBound, SupercriticalCoupling

__all__ = [
    "ALPHA_FS",
    "PhysicalParams",
    "QuantumNumbers",
    "CoulombPart",
    "HulthenPart",
    "PotentialSpec",
    "BoundState",
    "RadialGrid",
    "validate_params",
    "binding_energy",
    "make_bound_state",
]

# CODATA 2018 fine-structure constant.
ALPHA_FS = 7.2973525693e-3


@dataclass(frozen=True)
class PhysicalParams:
    """Physical dial for every computation.

    Parameters
    ----------
    z_number : float
        Atomic number Z.  Real-valued on purpose: nothing in the math
        requires integrality and sweeps over Z*alpha are routine.
    alpha : float
        Fine-structure constant.
    rest_mass, c, hbar : float
        Rest mass m0, speed of light, reduced Planck constant.  Leave at 1
        for natural units.
    """

    z_number: float = 1.0
    alpha: float = ALPHA_FS
    rest_mass: float = 1.0
    c: float = 1.0
    hbar: float = 1.0

    def __post_init__(self) -> None:
        for name in ("z_number", "alpha", "rest_mass", "c", "hbar"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a finite positive number, got {value!r}")

    @property
    def is_natural(self) -> bool:
        return self.hbar == 1.0 and self.c == 1.0 and self.rest_mass == 1.0

    @property
    def e_squared(self) -> float:
        """Squared Gaussian charge e_s^2 = alpha*hbar*c."""
        return self.alpha * self.hbar * self.c

    @property
    def z_alpha(self) -> float:
        return self.z_number * self.alpha

    @property
    def rest_energy(self) -> float:
        return self.rest_mass * self.c ** 2

    def bohr_radius(self, mass: float | None = None) -> float:
        """a0 = hbar^2/(mass*e_s^2); defaults to the rest mass."""
        m = self.rest_mass if mass is None else mass
        return self.hbar ** 2 / (m * self.e_squared)


@dataclass(frozen=True)
class QuantumNumbers:
    """(n, l, m) triple indexing a bound state."""

    n: int
    l: int
    m: int = 0

    def __post_init__(self) -> None:
        if not all(isinstance(v, (int, np.integer)) for v in (self.n, self.l, self.m)):
            raise InvalidQuantumNumbers(f"quantum numbers must be integers, got {self!r}")
        if self.n < 1 or not (0 <= self.l <= self.n - 1) or abs(self.m) > self.l:
            raise InvalidQuantumNumbers(
                f"need n >= 1, 0 <= l <= n-1, |m| <= l; got (n={self.n}, l={self.l}, m={self.m})"
            )

    @property
    def radial_nodes(self) -> int:
        return self.n - self.l - 1


@dataclass(frozen=True)
class CoulombPart:
    """Attractive Coulomb channel -Z*e_s^2/r (Z and e_s^2 from PhysicalParams)."""

    def evaluate(self, r: np.ndarray, p: PhysicalParams) -> np.ndarray:
        return -p.z_number * p.e_squared / np.asarray(r, dtype=float)


@dataclass(frozen=True)
class HulthenPart:
    """Screened Coulomb channel -Z*e_s^2*lam*exp(-lam*r)/(1 - exp(-lam*r)).

    The screening parameter is stored in units of 1/a0 with a0 evaluated at
    the rest mass, so defaults stay dimensionless in natural units.  As
    lam -> 0 the channel goes over to the plain Coulomb one.
    """

    lam: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise ValueError(f"Hulthen screening parameter must be > 0, got {self.lam!r}")

    def lam_absolute(self, p: PhysicalParams) -> float:
        return self.lam / p.bohr_radius()

    def evaluate(self, r: np.ndarray, p: PhysicalParams) -> np.ndarray:
        lam = self.lam_absolute(p)
        # exp(-lam r)/(1-exp(-lam r)) = 1/expm1(lam r), stable for small lam*r.
        return -p.z_number * p.e_squared * lam / np.expm1(lam * np.asarray(r, dtype=float))


@dataclass(frozen=True)
class PotentialSpec:
    """Declarative scalar/vector potential content of a solve.

    Either part may be None (absent).  A fully empty spec is a free
    particle; solvers will report StateNotFound rather than reject it.
    """

    vector_part: CoulombPart | HulthenPart | None = None
    scalar_part: CoulombPart | HulthenPart | None = None

    @staticmethod
    def coulomb() -> "PotentialSpec":
        return PotentialSpec(vector_part=CoulombPart())

    @staticmethod
    def hulthen(lam: float) -> "PotentialSpec":
        return PotentialSpec(vector_part=HulthenPart(lam))

    @staticmethod
    def equal_coulomb() -> "PotentialSpec":
        return PotentialSpec(vector_part=CoulombPart(), scalar_part=CoulombPart())

    @staticmethod
    def equal_hulthen(lam: float) -> "PotentialSpec":
        return PotentialSpec(vector_part=HulthenPart(lam), scalar_part=HulthenPart(lam))

    @property
    def is_free(self) -> bool:
        return self.vector_part is None and self.scalar_part is None


@dataclass(frozen=True, eq=False)
class RadialGrid:
    """Discretization of r in (0, r_max]; the origin itself is never a point."""

    points: np.ndarray
    spacing: str  # "uniform" | "log-uniform"

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=float)
        object.__setattr__(self, "points", pts)
        if pts.ndim != 1 or pts.size < 3:
            raise ValueError("grid needs a 1-d array of at least 3 points")
        if not (np.all(pts > 0) and np.all(np.diff(pts) > 0)):
            raise ValueError("grid points must be strictly increasing and positive")
        if self.spacing not in ("uniform", "log-uniform"):
            raise ValueError(f"unknown spacing tag {self.spacing!r}")

    @property
    def n_points(self) -> int:
        return int(self.points.size)

    @staticmethod
    def uniform(r_max: float, n: int) -> "RadialGrid":
        """n interior points of [0, r_max] with Dirichlet ends excluded."""
        h = r_max / (n + 1)
        return RadialGrid(h * np.arange(1, n + 1), "uniform")

    @staticmethod
    def log_uniform(r_min: float, r_max: float, n: int) -> "RadialGrid":
        return RadialGrid(np.geomspace(r_min, r_max, n), "log-uniform")

    @property
    def step(self) -> float:
        """Uniform spacing h; for a uniform grid r_i = i*h and r_max = (N+1)*h."""
        if self.spacing != "uniform":
            raise ValueError("step is only defined for uniform grids")
        return float(self.points[0])


@dataclass(frozen=True, eq=False)
class BoundState:
    """Converged eigenvalue record.

    e_total and system_mass are stored with the exact arithmetic
    e_total = e_prime + m0*c^2 and system_mass = m0 + e_prime/c^2; use
    make_bound_state to get that for free.  radial_samples is a (r, u)
    pair with u = r*R, empty for closed-form states.
    """

    qn: QuantumNumbers
    e_prime: float
    e_total: float
    system_mass: float
    node_count: int
    radial_samples: tuple[np.ndarray, np.ndarray] | tuple[()] = ()
    iterations: int = 0
    residual: float = 0.0

    def __post_init__(self) -> None:
        if self.node_count != self.qn.radial_nodes:
            raise ValueError(
                f"node count {self.node_count} contradicts n-l-1 = {self.qn.radial_nodes}"
            )
        if self.radial_samples:
            r, u = self.radial_samples
            if np.shape(r) != np.shape(u):
                raise ValueError("radial_samples arrays must be paired")

    @property
    def is_bound(self) -> bool:
        return self.e_prime < 0


def make_bound_state(
    qn: QuantumNumbers,
    e_prime: float,
    p: PhysicalParams,
    radial_samples: tuple[np.ndarray, np.ndarray] | tuple[()] = (),
    iterations: int = 0,
    residual: float = 0.0,
) -> BoundState:
    """Assemble a BoundState enforcing the defining arithmetic identities."""
    return BoundState(
        qn=qn,
        e_prime=e_prime,
        e_total=e_prime + p.rest_energy,
        system_mass=p.rest_mass + e_prime / p.c ** 2,
        node_count=qn.radial_nodes,
        radial_samples=radial_samples,
        iterations=iterations,
        residual=residual,
    )


def validate_params(p: PhysicalParams, qn: QuantumNumbers) -> tuple[PhysicalParams, QuantumNumbers]:
    """Enforce the reality condition Z*alpha < l + 1/2 of the quantum defect.

    Beyond it the defect turns complex and no real bound level exists in
    this formalism, so every Coulomb entry point funnels through here.
    """
    if p.z_alpha >= qn.l + 0.5:
        raise SupercriticalCoupling(
            f"Z*alpha = {p.z_alpha:.6g} >= l + 1/2 = {qn.l + 0.5}: "
            "no real bound level for this (Z, l)"
        )
    return p, qn


def binding_energy(b: BoundState, p: PhysicalParams) -> float:
    """|E'| = (m0 - m)*c^2, the mass defect times c^2."""
    if b.e_prime >= 0:
        raise NotBound(f"e_prime = {b.e_prime} is not negative; state is not bound")
    return -b.e_prime
