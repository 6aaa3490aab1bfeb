"""Qubit-level observables: symmetric-state embedding, two-qubit reduced
density matrices, pairwise entanglement and state fidelity."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotXForm
from .model import SPIN_DIM, JointState, ModelParams

X_TOL = 1e-10
SQRT3 = math.sqrt(3.0)

# Positions that the X pattern allows to be non-zero.
X_MASK = np.array(
    [
        [1, 0, 0, 1],
        [0, 1, 1, 0],
        [0, 1, 1, 0],
        [1, 0, 0, 1],
    ],
    dtype=bool,
)


def _dicke_map() -> np.ndarray:
    # Columns: m = -3/2 .. 3/2; rows: |q1 q2 q3> with e=0, s=1, q1 most significant.
    d = np.zeros((8, SPIN_DIM))
    for bits in itertools.product((0, 1), repeat=3):
        excited = 3 - sum(bits)
        row = 4 * bits[0] + 2 * bits[1] + bits[2]
        d[row, excited] = 1 / math.sqrt(math.comb(3, excited))
    return d


DICKE = _dicke_map()


def dicke_to_qubits(m_amplitudes) -> np.ndarray:
    """Embed spin-3/2 amplitudes (m = -3/2..3/2) into the 8-dim three-qubit space.

    ``|3/2> -> |eee>``, ``|1/2> -> W`` over one ``s``, ``|-1/2> -> W`` over one
    ``e``, ``|-3/2> -> |sss>``. Qubit order is (1, 2, 3), ``|e> = |0>``.
    """
    c = np.asarray(m_amplitudes, dtype=complex)
    if c.shape[0] != SPIN_DIM:
        raise ValueError(f"expected {SPIN_DIM} spin amplitudes, got {c.shape[0]}")
    return DICKE @ c


@dataclass(frozen=True)
class TwoQubitRDM:
    """Density matrix of a qubit pair in the basis (|ee>, |es>, |se>, |ss>)."""

    rho: np.ndarray

    def __post_init__(self):
        rho = np.array(self.rho, dtype=complex)
        if rho.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got {rho.shape}")
        rho.flags.writeable = False
        object.__setattr__(self, "rho", rho)

    @property
    def off_x_weight(self) -> float:
        return float(np.abs(self.rho[~X_MASK]).max())

    def is_x_form(self, tol: float = X_TOL) -> bool:
        return self.off_x_weight <= tol

    def x_part(self) -> TwoQubitRDM:
        return TwoQubitRDM(np.where(X_MASK, self.rho, 0))

    def validity_errors(self, tol: float = 1e-10) -> list[str]:
        """Empty when the matrix is Hermitian, unit trace and PSD within ``tol``."""
        errs = []
        herm = np.abs(self.rho - self.rho.conj().T).max()
        if herm > tol:
            errs.append(f"not Hermitian ({herm:.3g})")
        tr = abs(np.trace(self.rho) - 1)
        if tr > tol:
            errs.append(f"trace off by {tr:.3g}")
        low = np.linalg.eigvalsh((self.rho + self.rho.conj().T) / 2)[0]
        if low < -tol:
            errs.append(f"negative eigenvalue {low:.3g}")
        return errs


def two_qubit_rdm(state: JointState, traced_qubit: int = 3) -> TwoQubitRDM:
    """Reduced state of two qubits after tracing the field and ``traced_qubit``.

    Returns the full matrix. For the model's states it is generally not
    X-shaped in this basis (``<Jx> != 0`` feeds the single-flip coherences).
    """
    if traced_qubit not in (1, 2, 3):
        raise ValueError(f"traced_qubit must be 1, 2 or 3, got {traced_qubit}")
    # psi[n, q1, q2, q3]
    psi = (state.as_matrix().T @ DICKE.T).reshape(-1, 2, 2, 2)
    kept = [q for q in (1, 2, 3) if q != traced_qubit]
    psi = np.moveaxis(psi, [kept[0], kept[1], traced_qubit], [1, 2, 3])
    pair = psi.reshape(psi.shape[0], 4, 2)
    rho = np.einsum("nit,njt->ij", pair, pair.conj())
    return TwoQubitRDM(rho)


def rdm_from_moments(chi: float, K1: float) -> TwoQubitRDM:
    """X-shaped pair matrix of the transformed ground state in closed form.

    The ``exp(-2 chi^2)`` factor is the overlap of the field states attached to
    spin components two steps apart.
    """
    d = 3 * (1 + K1 * K1)
    r11 = 1 / 6 + 1 / d
    r14 = SQRT3 * K1 * math.exp(-2 * chi * chi) / d
    r22 = K1 * K1 / d
    rho = np.array(
        [
            [r11, 0, 0, r14],
            [0, r22, r22, 0],
            [0, r22, r22, 0],
            [r14, 0, 0, r11],
        ]
    )
    return TwoQubitRDM(rho)


def partial_transpose_negativity(rdm: TwoQubitRDM) -> float:
    """Twice the summed magnitude of the negative eigenvalues of rho^{T_B}."""
    pt = rdm.rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)
    w = np.linalg.eigvalsh((pt + pt.conj().T) / 2)
    return float(-2 * w[w < 0].sum())


def x_state_entanglement(rdm: TwoQubitRDM) -> float:
    """``2 max(0, |r23| - sqrt(r11 r44), |r14| - sqrt(r22 r33))`` from the X entries.

    This is the X-state concurrence. It equals the partial-transpose negativity
    when ``r11 = r44`` and ``r22 = r33``, which holds for every state of the model.
    """
    r = rdm.rho
    a = abs(r[1, 2]) - math.sqrt(max(r[0, 0].real * r[3, 3].real, 0.0))
    b = abs(r[0, 3]) - math.sqrt(max(r[1, 1].real * r[2, 2].real, 0.0))
    return 2 * max(0.0, a, b)


def pairwise_entanglement(rdm: TwoQubitRDM, tol: float = X_TOL) -> float:
    """Pairwise entanglement through the X-state formula.

    X-shaped input is evaluated directly. A matrix with off-X coherences is
    accepted only when the formula on its X entries reproduces the
    partial-transpose negativity of the full matrix within ``tol``; otherwise
    :class:`NotXForm` is raised.
    """
    value = x_state_entanglement(rdm)
    if rdm.is_x_form(tol):
        return value
    full = partial_transpose_negativity(rdm)
    if abs(full - value) > tol:
        raise NotXForm(
            f"off-X weight {rdm.off_x_weight:.3g}; X formula {value:.6g} vs "
            f"negativity {full:.6g}"
        )
    return value


def state_entanglement(state: JointState) -> float:
    return pairwise_entanglement(two_qubit_rdm(state))


def quadratic_entanglement(p: ModelParams) -> float:
    """Small-coupling law ``g^2 / (4 (w_a + w_c)^2)``."""
    return p.g**2 / (4 * (p.w_a + p.w_c) ** 2)


def fidelity(a: JointState, b: JointState) -> float:
    """``|<a|b>|``; modulus so the result does not depend on phase conventions."""
    if a.cutoff != b.cutoff or a.amplitudes.shape != b.amplitudes.shape:
        raise DimensionMismatch(f"cutoffs differ: {a.cutoff} vs {b.cutoff}")
    return float(min(1.0, abs(np.vdot(a.amplitudes, b.amplitudes))))
