"""Bell-diagonal two-qubit states under a one-sided damping channel.

Only atom A couples to the field; atom B is a spectator.  The dynamics is
therefore (Lambda x id) with Lambda the single-qubit amplitude damping map
(damping q', off-diagonal phase rotation).  For a Bell-diagonal initial
state with correlation vector (c1, c2, c3) the evolved matrix keeps the
two-block X shape: the transverse correlations scale by sqrt(1-q'), the
longitudinal one by (1-q'), and a -q' polarization builds up on atom A.

The l1 coherence is sqrt(1-q') (|c1+c2| + |c1-c2|) / 2.  The relative
entropy is computed from the exact block eigenvalues

    [1 + c3(1-q') +- sqrt(q'^2 + (1-q')(c1-c2)^2)] / 4     (outer block)
    [1 - c3(1-q') +- sqrt(q'^2 + (1-q')(c1+c2)^2)] / 4     (inner block)

``c_re_bd_closed_form`` keeps the compact single-gap expression that reuses
the inner-block gap in all four slots; it is exact only when c1 * c2 = 0
and is retained purely as a cross-check column.
"""

import math
from dataclasses import dataclass

import numpy as np

from .boundary import Geometry, PolarizationWeights, noise_to_damping, rate_coefficients, suppression_factor
from .qmath import as_density_matrix, entropy_bits
from .single_qubit import FREEZE_SUP_BOUND, FREEZE_TOL, _VALIDATION_GRID, CoherenceTrace

__all__ = [
    "BellDiagonalParams",
    "FreezeReportBD",
    "OneSidedChannel",
    "apply_one_sided_channel",
    "bd_density",
    "c_l1_bd",
    "c_re_bd",
    "c_re_bd_closed_form",
    "channel_kraus",
    "choi_matrix",
    "freezing_report_bd",
    "sweep_bd",
]

# Bell states land exactly on the physicality boundary; this absorbs the
# round-off of user-supplied correlation vectors.
PHYSICALITY_TOL = -1e-12


@dataclass(frozen=True)
class BellDiagonalParams:
    """Correlation vector (c1, c2, c3) of a maximally-mixed-marginals state."""

    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        for name, value in (("c1", self.c1), ("c2", self.c2), ("c3", self.c3)):
            if not math.isfinite(value) or abs(value) > 1.0:
                raise ValueError(f"{name} must be a finite value in [-1, 1], got {value}")
        for label, value in self.eigenvalues().items():
            if value < PHYSICALITY_TOL:
                raise ValueError(
                    f"unphysical correlation vector: eigenvalue {label} = {value:.3e} < 0"
                )

    def eigenvalues(self) -> dict[str, float]:
        """The four spectral values of the initial state, keyed by closed form."""
        return {
            "(1 + c3 + (c1 - c2))/4": 0.25 * (1.0 + self.c3 + (self.c1 - self.c2)),
            "(1 + c3 - (c1 - c2))/4": 0.25 * (1.0 + self.c3 - (self.c1 - self.c2)),
            "(1 - c3 + (c1 + c2))/4": 0.25 * (1.0 - self.c3 + (self.c1 + self.c2)),
            "(1 - c3 - (c1 + c2))/4": 0.25 * (1.0 - self.c3 - (self.c1 + self.c2)),
        }


@dataclass(frozen=True)
class OneSidedChannel:
    """Amplitude damping of atom A: damping q' in [0, 1] plus a phase rotation."""

    damping: float
    phase: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.damping) or not 0.0 <= self.damping <= 1.0:
            raise ValueError(f"damping must lie in [0, 1], got {self.damping}")
        if not math.isfinite(self.phase):
            raise ValueError(f"phase must be finite, got {self.phase}")


def bd_density(c: BellDiagonalParams) -> np.ndarray:
    """Bell-diagonal density matrix in the {|11>,|10>,|01>,|00>} basis."""
    if not isinstance(c, BellDiagonalParams):
        c = BellDiagonalParams(*c)
    dp = 0.25 * (1.0 + c.c3)
    dm = 0.25 * (1.0 - c.c3)
    outer = 0.25 * (c.c1 - c.c2)
    inner = 0.25 * (c.c1 + c.c2)
    return np.array(
        [
            [dp, 0.0, 0.0, outer],
            [0.0, dm, inner, 0.0],
            [0.0, inner, dm, 0.0],
            [outer, 0.0, 0.0, dp],
        ],
        dtype=complex,
    )


def channel_kraus(ch: OneSidedChannel) -> list[np.ndarray]:
    """Kraus operators of the one-sided channel on the full two-qubit space."""
    qp = ch.damping
    rot = np.diag([np.exp(-0.5j * ch.phase), np.exp(0.5j * ch.phase)])
    k_keep = rot @ np.diag([math.sqrt(1.0 - qp), 1.0])
    k_decay = rot @ np.array([[0.0, 0.0], [math.sqrt(qp), 0.0]], dtype=complex)
    eye = np.eye(2, dtype=complex)
    return [np.kron(k_keep, eye), np.kron(k_decay, eye)]


def _apply_kraus(mat: np.ndarray, kraus: list[np.ndarray]) -> np.ndarray:
    return sum(k @ mat @ k.conj().T for k in kraus)


def apply_one_sided_channel(rho, ch: OneSidedChannel) -> np.ndarray:
    """Apply the one-sided damping channel to a two-qubit density matrix."""
    rho = as_density_matrix(rho)
    if rho.shape != (4, 4):
        raise ValueError("the one-sided channel acts on 4x4 density matrices")
    return _apply_kraus(rho, channel_kraus(ch))


def choi_matrix(ch: OneSidedChannel) -> np.ndarray:
    """Unnormalized Choi matrix of the channel; PSD certifies complete positivity."""
    kraus = channel_kraus(ch)
    choi = np.zeros((16, 16), dtype=complex)
    for i in range(4):
        for j in range(4):
            unit = np.zeros((4, 4), dtype=complex)
            unit[i, j] = 1.0
            choi[i * 4 : (i + 1) * 4, j * 4 : (j + 1) * 4] = _apply_kraus(unit, kraus)
    return choi


def c_l1_bd(c: BellDiagonalParams, q_prime: float) -> float:
    """l1 coherence of the evolved Bell-diagonal state at damping q'."""
    if not isinstance(c, BellDiagonalParams):
        c = BellDiagonalParams(*c)
    q_prime = _check_damping(q_prime)
    return 0.5 * math.sqrt(1.0 - q_prime) * (abs(c.c1 + c.c2) + abs(c.c1 - c.c2))


def _check_damping(q_prime: float) -> float:
    q_prime = float(q_prime)
    if not math.isfinite(q_prime) or not 0.0 <= q_prime <= 1.0:
        raise ValueError(f"damping q' must lie in [0, 1], got {q_prime}")
    return q_prime


def _evolved_diagonal(c: BellDiagonalParams, qp: float) -> list[float]:
    a = c.c3 * (1.0 - qp)
    return [
        0.25 * (1.0 + a - qp),
        0.25 * (1.0 - a - qp),
        0.25 * (1.0 - a + qp),
        0.25 * (1.0 + a + qp),
    ]


def c_re_bd(c: BellDiagonalParams, q_prime: float) -> float:
    """Relative entropy of coherence of the evolved state, from exact blocks."""
    if not isinstance(c, BellDiagonalParams):
        c = BellDiagonalParams(*c)
    qp = _check_damping(q_prime)
    a = c.c3 * (1.0 - qp)
    gap_outer = math.sqrt(qp * qp + (1.0 - qp) * (c.c1 - c.c2) ** 2)
    gap_inner = math.sqrt(qp * qp + (1.0 - qp) * (c.c1 + c.c2) ** 2)
    spectrum = [
        0.25 * (1.0 + a + gap_outer),
        0.25 * (1.0 + a - gap_outer),
        0.25 * (1.0 - a + gap_inner),
        0.25 * (1.0 - a - gap_inner),
    ]
    return max(0.0, entropy_bits(_evolved_diagonal(c, qp)) - entropy_bits(spectrum))


def c_re_bd_closed_form(c: BellDiagonalParams, q_prime: float) -> float:
    """Compact closed form that reuses the inner-block gap in every slot.

    Matches c_re_bd exactly when c1 * c2 = 0; otherwise it misassigns the
    outer-block gap and deviates.  Kept as a comparison column, never used
    as the authoritative value.
    """
    if not isinstance(c, BellDiagonalParams):
        c = BellDiagonalParams(*c)
    qp = _check_damping(q_prime)
    a = c.c3 * (1.0 - qp)
    gap = math.sqrt(qp * qp + (1.0 - qp) * (c.c1 + c.c2) ** 2)
    spectrum = [
        0.25 * (1.0 + a + gap),
        0.25 * (1.0 + a - gap),
        0.25 * (1.0 - a + gap),
        0.25 * (1.0 - a - gap),
    ]
    # The symmetric gap can push a slot slightly negative for states near
    # the physicality boundary; clamp like any other spectral round-off.
    spectrum = [max(v, 0.0) for v in spectrum]
    return entropy_bits(_evolved_diagonal(c, qp)) - entropy_bits(spectrum)


@dataclass(frozen=True)
class FreezeReportBD:
    """Two-qubit freezing classification with numeric derivative bounds."""

    frozen: bool
    reason: str  # "trivial" | "boundary-induced" | "none"
    sup_dq_c_l1: float
    sup_dq_c_re: float
    numeric_consistent: bool


def freezing_report_bd(
    c: BellDiagonalParams, geometry: Geometry, polarization: PolarizationWeights
) -> FreezeReportBD:
    """Classify whether the Bell-diagonal coherence stays constant over all q.

    Frozen trivially when c1 = c2 = 0 (both measures vanish identically) or
    boundary-induced when the suppression factor is 1 within 1e-12.  The
    predicate is validated against central-difference derivative suprema of
    both trajectories on the interior q grid.
    """
    if not isinstance(c, BellDiagonalParams):
        c = BellDiagonalParams(*c)
    f = suppression_factor(geometry, polarization)
    gamma = rate_coefficients(geometry, polarization).gamma_eff
    trivial = abs(c.c1) <= FREEZE_TOL and abs(c.c2) <= FREEZE_TOL
    boundary_frozen = abs(f - 1.0) <= FREEZE_TOL
    frozen = trivial or boundary_frozen
    if trivial:
        reason = "trivial"
    elif boundary_frozen:
        reason = "boundary-induced"
    else:
        reason = "none"

    step = 1e-5

    def l1_of_q(q):
        return c_l1_bd(c, noise_to_damping(q, gamma))

    def re_of_q(q):
        return c_re_bd(c, noise_to_damping(q, gamma))

    sup_l1 = float(
        max(abs(l1_of_q(float(q) + step) - l1_of_q(float(q) - step)) / (2 * step) for q in _VALIDATION_GRID)
    )
    sup_re = float(
        max(abs(re_of_q(float(q) + step) - re_of_q(float(q) - step)) / (2 * step) for q in _VALIDATION_GRID)
    )
    consistent = bool((max(sup_l1, sup_re) < FREEZE_SUP_BOUND) == frozen)
    return FreezeReportBD(frozen, reason, sup_l1, sup_re, consistent)


def sweep_bd(
    c: BellDiagonalParams,
    geometry: Geometry,
    polarization: PolarizationWeights,
    q_grid,
) -> CoherenceTrace:
    """Evaluate both Bell-diagonal trajectories over an increasing q grid."""
    if not isinstance(c, BellDiagonalParams):
        c = BellDiagonalParams(*c)
    gamma = rate_coefficients(geometry, polarization).gamma_eff
    samples = tuple(
        (
            float(q),
            c_l1_bd(c, noise_to_damping(float(q), gamma)),
            c_re_bd(c, noise_to_damping(float(q), gamma)),
        )
        for q in q_grid
    )
    return CoherenceTrace(samples)
