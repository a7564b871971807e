"""Closed-form single-qubit dynamics and coherence trajectories.

A pure initial state cos(theta/2)|1> + e^{i phi} sin(theta/2)|0> undergoing
zero-temperature amplitude damping at rate gamma_eff evolves to

    rho11      = [1 + cos(theta) (1-q') - q'] / 2
    |rho12|    = |sin(theta)| sqrt(1-q') / 2,   arg(rho12) = -(Omega tau + phi)

with q' = 1 - exp(-gamma_eff tau).  Sweeps are indexed by the free-space
noise parameter q = 1 - exp(-tau) so that frozen configurations
(gamma_eff = 0) remain representable over the whole q axis; the q -> q'
mapping happens internally.  Coherence magnitudes never depend on the
effective level spacing Omega, which only rotates the off-diagonal phase.
"""

import math
from dataclasses import dataclass

import numpy as np

from .boundary import (
    Geometry,
    PolarizationWeights,
    noise_to_damping,
    rate_coefficients,
    suppression_factor,
)
from .qmath import GROUND, entropy_bits

__all__ = [
    "CoherenceTrace",
    "EvolutionParams",
    "FreezeReport",
    "InitialAngles",
    "c_l1_trajectory",
    "c_re_trajectory",
    "dq_c_l1",
    "dq_c_re",
    "evolve_closed_form",
    "freezing_report",
    "sweep",
]

# Predicate window for exact freezing and the numeric derivative bound the
# classification is validated against.
FREEZE_TOL = 1e-12
FREEZE_SUP_BOUND = 1e-8
_VALIDATION_GRID = np.linspace(0.01, 0.99, 99)


@dataclass(frozen=True)
class InitialAngles:
    """Bloch angles of the pure initial state, theta in [0, pi], phi in [0, 2 pi)."""

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.theta) or not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if not math.isfinite(self.phi) or not 0.0 <= self.phi < 2.0 * math.pi:
            raise ValueError(f"phi must lie in [0, 2 pi), got {self.phi}")


@dataclass(frozen=True)
class EvolutionParams:
    """Environment and scale parameters for the closed-form evolution.

    ``omega_ratio`` is the effective level spacing over the bare one and
    ``omega0_time_scale`` the bare spacing in units of the free-space decay
    rate; their product fixes the phase accumulated per unit damping time.
    Both affect phases only, never coherence magnitudes.
    """

    geometry: Geometry
    polarization: PolarizationWeights
    omega_ratio: float = 1.0
    omega0_time_scale: float = 100.0

    def __post_init__(self):
        if not math.isfinite(self.omega_ratio) or self.omega_ratio <= 0.0:
            raise ValueError(f"omega_ratio must be positive, got {self.omega_ratio}")
        if not math.isfinite(self.omega0_time_scale) or self.omega0_time_scale <= 0.0:
            raise ValueError(
                f"omega0_time_scale must be positive, got {self.omega0_time_scale}"
            )

    @property
    def omega_eff(self) -> float:
        """Effective level spacing in units of the free-space decay rate."""
        return self.omega_ratio * self.omega0_time_scale


@dataclass(frozen=True)
class CoherenceTrace:
    """Sweep output: ordered (q, c_l1, c_re) samples with strictly increasing q."""

    samples: tuple[tuple[float, float, float], ...]

    def __post_init__(self):
        previous = -1.0
        for q, _, _ in self.samples:
            if not 0.0 <= q <= 1.0:
                raise ValueError(f"trace q values must lie in [0, 1], got {q}")
            if q <= previous:
                raise ValueError("trace q values must be strictly increasing")
            previous = q

    @property
    def q(self) -> np.ndarray:
        return np.array([s[0] for s in self.samples])

    @property
    def c_l1(self) -> np.ndarray:
        return np.array([s[1] for s in self.samples])

    @property
    def c_re(self) -> np.ndarray:
        return np.array([s[2] for s in self.samples])


def evolve_closed_form(angles: InitialAngles, q: float, params: EvolutionParams) -> np.ndarray:
    """Evolved 2x2 density matrix at noise parameter q.

    q = 1 is returned as the analytic endpoint: the ground state when the
    configuration decays, the initial state when it is frozen (the infinite
    phase accumulated at tau -> infinity is dropped in the frozen case).
    """
    if not isinstance(angles, InitialAngles):
        angles = InitialAngles(*angles)
    q = float(q)
    if not math.isfinite(q) or not 0.0 <= q <= 1.0:
        raise ValueError(f"noise parameter q must lie in [0, 1], got {q}")
    gamma = rate_coefficients(params.geometry, params.polarization).gamma_eff
    if q == 1.0:
        if gamma == 0.0:
            return evolve_closed_form(angles, 0.0, params)
        return GROUND.copy()
    cos_t, sin_t = math.cos(angles.theta), math.sin(angles.theta)
    tau = -math.log1p(-q)
    qp = noise_to_damping(q, gamma)
    population = 0.5 * (1.0 + cos_t * (1.0 - qp) - qp)
    off = 0.5 * sin_t * math.sqrt(1.0 - qp) * np.exp(
        -1.0j * (params.omega_eff * tau + angles.phi)
    )
    return np.array([[population, off], [np.conj(off), 1.0 - population]], dtype=complex)


def c_l1_trajectory(
    theta: float, q: float, geometry: Geometry, polarization: PolarizationWeights
) -> float:
    """Closed-form l1 coherence |sin(theta)| (1-q)^((1-f)/2) at sweep point q."""
    gamma = rate_coefficients(geometry, polarization).gamma_eff
    qp = noise_to_damping(q, gamma)
    return abs(math.sin(theta)) * math.sqrt(1.0 - qp)


def _re_from_damping(theta: float, qp: float) -> float:
    cos_t = math.cos(theta)
    bz = cos_t * (1.0 - qp) - qp
    radius2 = (1.0 - cos_t * cos_t) * (1.0 - qp) + bz * bz
    radius = min(math.sqrt(radius2), 1.0)
    s_diag = entropy_bits([0.5 * (1.0 + bz), 0.5 * (1.0 - bz)])
    s_full = entropy_bits([0.5 * (1.0 + radius), 0.5 * (1.0 - radius)])
    return max(0.0, s_diag - s_full)


def c_re_trajectory(
    theta: float, q: float, geometry: Geometry, polarization: PolarizationWeights
) -> float:
    """Closed-form relative entropy of coherence at sweep point q.

    Evaluates the binary-entropy difference between the dephased populations
    and the exact spectrum (1 +- |Bloch vector|)/2 at the mapped damping q'.
    """
    gamma = rate_coefficients(geometry, polarization).gamma_eff
    return _re_from_damping(theta, noise_to_damping(q, gamma))


def _check_open_interval(q: float):
    if not math.isfinite(q) or not 0.0 < q < 1.0:
        raise ValueError(f"derivatives are defined on the open interval (0, 1), got q={q}")


def dq_c_l1(theta: float, q: float, f: float) -> float:
    """Magnitude of the q-derivative of the l1 trajectory.

    Equals |sin(theta)| (1-f) (1-q)^(-(1+f)/2) / 2; identically zero for an
    incoherent initial state or a fully suppressed bath (f = 1).
    """
    _check_open_interval(q)
    gamma = 1.0 - f
    if gamma == 0.0:
        return 0.0
    return 0.5 * abs(math.sin(theta)) * gamma * (1.0 - q) ** (-0.5 * (1.0 + f))


def dq_c_re(theta: float, q: float, f: float) -> float:
    """Magnitude of the q-derivative of the relative-entropy trajectory.

    Chain rule through q' = 1 - (1-q)^(1-f): the inner derivative is
    (1-f)(1-q)^(-f), the outer one the analytic q'-derivative of the
    entropy difference.
    """
    _check_open_interval(q)
    gamma = 1.0 - f
    sin_t, cos_t = math.sin(theta), math.cos(theta)
    if gamma == 0.0 or sin_t == 0.0 or 1.0 + cos_t == 0.0:
        return 0.0
    qp = -math.expm1(gamma * math.log1p(-q))
    if qp == 0.0:
        return 0.0
    dqp_dq = gamma * (1.0 - q) ** (-f)
    one_plus = 1.0 + cos_t
    bz = cos_t * (1.0 - qp) - qp
    # 1 - |Bloch|^2 = q'(1-q')(1+cos theta)^2 exactly for this channel; the
    # direct radius expression cancels catastrophically near q' = 0, which
    # would wreck the spectral-gap logarithm below.
    one_minus_r2 = qp * (1.0 - qp) * one_plus * one_plus
    radius = math.sqrt(max(1.0 - one_minus_r2, 0.0))
    one_minus_r = one_minus_r2 / (1.0 + radius)
    # d S_diag / dq' and d S / dq'; the dephased populations move at rate
    # (1 + cos theta)/2 while the spectrum radius obeys
    # d(radius^2)/dq' = (1 + cos theta)^2 (2 q' - 1).
    ds_diag = 0.5 * one_plus * math.log2((1.0 + bz) / (1.0 - bz))
    if radius == 0.0:
        log_ratio_over_radius = 2.0 / math.log(2.0)
    else:
        log_ratio_over_radius = math.log2((1.0 + radius) / one_minus_r) / radius
    ds_full = -(one_plus * one_plus) * (2.0 * qp - 1.0) / 4.0 * log_ratio_over_radius
    return abs(dqp_dq * (ds_diag - ds_full))


@dataclass(frozen=True)
class FreezeReport:
    """Freezing classification with the numeric derivative bounds backing it."""

    l1_frozen: bool
    re_frozen: bool
    reason: str  # "trivial" | "boundary-induced" | "none"
    sup_dq_c_l1: float
    sup_dq_c_re: float
    numeric_consistent: bool


def freezing_report(
    theta: float, geometry: Geometry, polarization: PolarizationWeights
) -> FreezeReport:
    """Classify whether both coherence measures stay constant over all q.

    Freezing is either trivial (incoherent initial state, sin(theta) = 0) or
    boundary-induced (suppression factor 1 within 1e-12).  The analytic
    predicate is cross-checked against the supremum of the derivative
    magnitudes on a 99-point interior grid.
    """
    f = suppression_factor(geometry, polarization)
    trivial = abs(math.sin(theta)) <= FREEZE_TOL
    boundary_frozen = abs(f - 1.0) <= FREEZE_TOL
    l1_frozen = trivial or boundary_frozen
    re_frozen = trivial or boundary_frozen
    if trivial:
        reason = "trivial"
    elif boundary_frozen:
        reason = "boundary-induced"
    else:
        reason = "none"
    sup_l1 = float(max(dq_c_l1(theta, float(q), f) for q in _VALIDATION_GRID))
    sup_re = float(max(dq_c_re(theta, float(q), f) for q in _VALIDATION_GRID))
    consistent = bool(
        (sup_l1 < FREEZE_SUP_BOUND) == l1_frozen and (sup_re < FREEZE_SUP_BOUND) == re_frozen
    )
    return FreezeReport(l1_frozen, re_frozen, reason, sup_l1, sup_re, consistent)


def sweep(
    theta: float,
    geometry: Geometry,
    polarization: PolarizationWeights,
    q_grid,
) -> CoherenceTrace:
    """Evaluate both coherence trajectories over an increasing q grid."""
    samples = tuple(
        (
            float(q),
            c_l1_trajectory(theta, float(q), geometry, polarization),
            c_re_trajectory(theta, float(q), geometry, polarization),
        )
        for q in q_grid
    )
    return CoherenceTrace(samples)
