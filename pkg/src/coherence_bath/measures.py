"""Coherence quantifiers in the energy eigenbasis.

Both measures are basis dependent; the reference basis is always the
computational (energy) basis fixed by sigma_z, so no basis argument is
exposed.  They vanish exactly on diagonal states and are invariant under
diagonal phase rotations.
"""

import numpy as np

from . import qmath


def c_l1(m) -> float:
    """l1 norm of coherence: the sum of all off-diagonal magnitudes."""
    rho = qmath.as_density_matrix(m)
    off = rho.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.abs(off).sum())


def c_re(m) -> float:
    """Relative entropy of coherence: S(dephased state) - S(state), in bits.

    Computed from exact eigen-decompositions, never from model-specific
    closed forms; the dynamics modules carry those as cross-checks.
    """
    rho = qmath.as_density_matrix(m)
    s_diag = qmath.von_neumann_entropy(qmath.diagonal_part(rho))
    s_full = qmath.von_neumann_entropy(rho)
    return max(0.0, s_diag - s_full)
