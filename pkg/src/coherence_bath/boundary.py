"""Reflecting-boundary physics: response functions and decay coefficients.

A perfectly reflecting plane modifies the vacuum fluctuations seen by a
static two-level atom at distance z0.  With the dimensionless separation
u = omega0 * z0 / c, the response functions are

    f_parallel(u)      = 3/(16 u^3) * [2u cos(2u) + (4u^2 - 1) sin(2u)]
    f_perpendicular(u) = 3/(8 u^3)  * [2u cos(2u) - sin(2u)]

for dipole components parallel and perpendicular to the boundary.  Weighted
by the relative polarizability they suppress (or enhance) the spontaneous
emission rate: gamma_eff = 1 - sum_i alpha_i f_i, in units of the free-space
rate.  gamma_eff -> 0 as u -> 0 for purely in-plane polarization, which is
the configuration that freezes coherence.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

__all__ = [
    "Geometry",
    "PolarizationWeights",
    "RateCoefficients",
    "f_parallel",
    "f_parallel_direct",
    "f_parallel_series",
    "f_perpendicular",
    "f_perpendicular_direct",
    "f_perpendicular_series",
    "noise_to_damping",
    "rate_coefficients",
    "suppression_factor",
]

WEIGHT_SUM_TOL = 1e-12
GAMMA_CLAMP = -1e-12
# Below this separation the direct formulas cancel catastrophically
# (numerator ~ u^3 built from O(u) terms), so the Maclaurin series is used.
SERIES_CUTOFF = 0.1
_SERIES_TERMS = 10


def _series_coefficients(n_terms: int) -> tuple[list[float], list[float]]:
    # Coefficient of u^(2m) in each response function, from the exact
    # Maclaurin expansions of the trig numerators (kept rational until the
    # final float conversion).
    par, perp = [], []
    for m in range(n_terms):
        sign = -1 if m % 2 == 0 else 1
        base = Fraction(sign * 2 ** (2 * m + 3))
        f1 = Fraction(1, math.factorial(2 * m + 2))
        f2 = Fraction(1, math.factorial(2 * m + 3))
        f3 = Fraction(1, math.factorial(2 * m + 1))
        par.append(float(Fraction(3, 16) * base * (f1 - f2 - f3)))
        perp.append(float(Fraction(3, 8) * base * (f1 - f2)))
    return par, perp


_PAR_COEFFS, _PERP_COEFFS = _series_coefficients(_SERIES_TERMS)


def _check_u(u: float) -> float:
    u = float(u)
    if not math.isfinite(u) or u <= 0.0:
        raise ValueError(f"boundary distance u must be finite and positive, got {u}")
    return u


def f_parallel_direct(u: float) -> float:
    """Direct evaluation of f_parallel; accurate away from u -> 0."""
    u = _check_u(u)
    return 3.0 / (16.0 * u**3) * (2.0 * u * math.cos(2.0 * u) + (4.0 * u * u - 1.0) * math.sin(2.0 * u))


def f_perpendicular_direct(u: float) -> float:
    """Direct evaluation of f_perpendicular; accurate away from u -> 0."""
    u = _check_u(u)
    return 3.0 / (8.0 * u**3) * (2.0 * u * math.cos(2.0 * u) - math.sin(2.0 * u))


def f_parallel_series(u: float) -> float:
    """Maclaurin evaluation of f_parallel: 1 - (4/5)u^2 + (6/35)u^4 - ..."""
    u = _check_u(u)
    u2 = u * u
    acc, power = 0.0, 1.0
    for coeff in _PAR_COEFFS:
        acc += coeff * power
        power *= u2
    return acc


def f_perpendicular_series(u: float) -> float:
    """Maclaurin evaluation of f_perpendicular: -1 + (2/5)u^2 - (2/35)u^4 + ..."""
    u = _check_u(u)
    u2 = u * u
    acc, power = 0.0, 1.0
    for coeff in _PERP_COEFFS:
        acc += coeff * power
        power *= u2
    return acc


def f_parallel(u: float) -> float:
    """Boundary response for in-plane dipole components (f_x = f_y).

    Tends to 1 as u -> 0 (image dipole reinforces the field) and decays to 0
    with oscillations as u grows, recovering the unbounded vacuum.
    """
    u = _check_u(u)
    return f_parallel_series(u) if u < SERIES_CUTOFF else f_parallel_direct(u)


def f_perpendicular(u: float) -> float:
    """Boundary response for the normal dipole component (f_z).

    Tends to -1 as u -> 0, doubling the decay rate of a normally polarized
    atom, and decays to 0 at large separation.
    """
    u = _check_u(u)
    return f_perpendicular_series(u) if u < SERIES_CUTOFF else f_perpendicular_direct(u)


@dataclass(frozen=True)
class PolarizationWeights:
    """Relative polarizability weights (ax, ay, az), nonnegative, summing to 1."""

    ax: float
    ay: float
    az: float

    def __post_init__(self):
        for name, value in (("ax", self.ax), ("ay", self.ay), ("az", self.az)):
            if not math.isfinite(value):
                raise ValueError(f"polarization weight {name} must be finite, got {value}")
            if value < 0.0:
                raise ValueError(f"polarization weight {name} must be nonnegative, got {value}")
        total = self.ax + self.ay + self.az
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"polarization weights must sum to 1, got {total:.17g}")

    @classmethod
    def parallel(cls) -> "PolarizationWeights":
        """Dipole in the boundary plane."""
        return cls(1.0, 0.0, 0.0)

    @classmethod
    def perpendicular(cls) -> "PolarizationWeights":
        """Dipole along the boundary normal."""
        return cls(0.0, 0.0, 1.0)

    @classmethod
    def isotropic(cls) -> "PolarizationWeights":
        return cls(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0)


@dataclass(frozen=True)
class Geometry:
    """Field configuration: unbounded vacuum, or a mirror at distance u.

    ``u = omega0 * z0 / c`` is the dimensionless atom-boundary separation;
    ``None`` selects the unbounded vacuum.
    """

    u: float | None = None

    def __post_init__(self):
        if self.u is not None:
            if not math.isfinite(self.u) or self.u <= 0.0:
                raise ValueError(f"mirror distance u must be finite and positive, got {self.u}")

    @classmethod
    def unbounded(cls) -> "Geometry":
        return cls(None)

    @classmethod
    def mirror(cls, u: float) -> "Geometry":
        return cls(float(u))

    @property
    def has_boundary(self) -> bool:
        return self.u is not None


@dataclass(frozen=True)
class RateCoefficients:
    """Dissipator coefficients in units of the free-space emission rate.

    At zero temperature a_coeff = b_coeff = gamma_eff / 4; the dynamics is an
    amplitude damping channel at rate gamma_eff.
    """

    a_coeff: float
    b_coeff: float
    gamma_eff: float


def suppression_factor(geometry: Geometry, polarization: PolarizationWeights) -> float:
    """Polarization-weighted boundary response sum.

    Zero for the unbounded vacuum; 1 means fully suppressed decay (frozen
    dynamics), negative values mean enhanced decay.
    """
    if not geometry.has_boundary:
        return 0.0
    fp = f_parallel(geometry.u)
    return (polarization.ax + polarization.ay) * fp + polarization.az * f_perpendicular(geometry.u)


def rate_coefficients(geometry: Geometry, polarization: PolarizationWeights) -> RateCoefficients:
    """Effective decay rate and dissipator coefficients for a configuration."""
    gamma = 1.0 - suppression_factor(geometry, polarization)
    if gamma < 0.0:
        if gamma < GAMMA_CLAMP:
            # |f_i| <= 1 makes gamma >= 0 analytically; anything beyond
            # round-off signals a broken response evaluation.
            raise ValueError(f"effective decay rate {gamma:.3e} is negative beyond round-off")
        gamma = 0.0
    quarter = 0.25 * gamma
    return RateCoefficients(a_coeff=quarter, b_coeff=quarter, gamma_eff=gamma)


def noise_to_damping(q: float, gamma_eff: float) -> float:
    """Map the unbounded noise parameter q to the effective damping q'.

    q = 1 - exp(-tau) indexes sweeps on the free-space clock; the actual
    damping accumulated at rate gamma_eff is q' = 1 - (1-q)^gamma_eff.
    A frozen configuration (gamma_eff = 0) gives q' = 0 for every q,
    including the q = 1 endpoint.
    """
    q = float(q)
    if not math.isfinite(q) or q < 0.0 or q > 1.0:
        raise ValueError(f"noise parameter q must lie in [0, 1], got {q}")
    if gamma_eff < 0.0:
        raise ValueError(f"gamma_eff must be nonnegative, got {gamma_eff}")
    if gamma_eff == 0.0:
        return 0.0
    if q == 1.0:
        return 1.0
    return -math.expm1(gamma_eff * math.log1p(-q))
