"""Numerically exact ground state of the truncated three-qubit Rabi model."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import CutoffCeiling, NoConvergence
from .model import SPIN_DIM, JointState, ModelParams, build_hamiltonian, fock_ops

RESIDUAL_TOL = 1e-9
MAX_CUTOFF = 512


@dataclass(frozen=True)
class ExactGround:
    energy: float
    state: JointState
    cutoff_used: int
    converged: bool
    residual: float


def _parity_bases(cutoff: int) -> tuple[np.ndarray, np.ndarray]:
    """Orthonormal bases of the odd and even sectors of ``F (x) (-1)^n``.

    Returned as ``(odd, even)``; the decoupled ground state
    ``(-1, sqrt3, -sqrt3, 1)/sqrt8 (x) |0>`` lies in the odd sector.
    """
    nf = cutoff + 1
    dim = SPIN_DIM * nf
    half = dim // 2
    odd = np.zeros((dim, half))
    even = np.zeros((dim, half))
    col = 0
    for k in range(SPIN_DIM // 2):
        for n in range(nf):
            i = k * nf + n
            j = (SPIN_DIM - 1 - k) * nf + n
            sign = (-1.0) ** n
            odd[i, col] = even[i, col] = 1 / np.sqrt(2)
            odd[j, col] = -sign / np.sqrt(2)
            even[j, col] = sign / np.sqrt(2)
            col += 1
    return odd, even


def _fix_phase(vec: np.ndarray) -> np.ndarray:
    k = np.argmax(np.abs(vec))
    return vec * (abs(vec[k]) / vec[k])


def solve_exact(p: ModelParams, cutoff: int = 30) -> ExactGround:
    """Lowest eigenpair of the Hamiltonian truncated at ``cutoff`` photons.

    The matrix is block-diagonalized by the conserved spin-flip/photon parity
    and each block is solved densely. The odd block (which holds the
    decoupled ground state) is kept unless the even block is lower by more
    than round-off; at strong coupling the two lowest levels become
    exponentially close and a full-matrix solve would return an arbitrary,
    symmetry-broken mixture.

    The returned ``converged`` flag is False here; only
    :func:`solve_converged` certifies the cutoff.
    """
    if cutoff < 1:
        raise ValueError(f"cutoff must be >= 1, got {cutoff}")
    h = build_hamiltonian(p, fock_ops(cutoff))
    best = None
    for basis in _parity_bases(cutoff):
        w, v = np.linalg.eigh(basis.T @ h @ basis)
        if best is None or w[0] < best[0] - 1e-10 * max(1.0, abs(best[0])):
            best = (w[0], basis @ v[:, 0])
    energy, vec = best
    vec = _fix_phase(vec.astype(complex))
    vec /= np.linalg.norm(vec)
    residual = float(np.linalg.norm(h @ vec - energy * vec))
    if residual > RESIDUAL_TOL:
        raise NoConvergence(f"residual {residual:.3g} exceeds {RESIDUAL_TOL:g}")
    return ExactGround(
        energy=float(energy),
        state=JointState(vec, cutoff),
        cutoff_used=cutoff,
        converged=False,
        residual=residual,
    )


def solve_converged(p: ModelParams, tol: float = 1e-10, start_cutoff: int = 30) -> ExactGround:
    """Double the cutoff until the ground energy moves by less than ``tol``.

    Returns the larger-cutoff solve with ``converged=True``. Raises
    :class:`CutoffCeiling` if that needs a cutoff above 512.
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    cutoff = max(1, start_cutoff)
    if 2 * cutoff > MAX_CUTOFF:
        raise CutoffCeiling(f"start cutoff {cutoff} leaves no room below {MAX_CUTOFF}")
    prev = solve_exact(p, cutoff)
    while 2 * cutoff <= MAX_CUTOFF:
        cutoff *= 2
        cur = solve_exact(p, cutoff)
        if abs(prev.energy - cur.energy) < tol:
            return replace(cur, converged=True)
        prev = cur
    raise CutoffCeiling(
        f"energy still moving by {abs(prev.energy - cur.energy):.3g} at cutoff {MAX_CUTOFF}"
    )
