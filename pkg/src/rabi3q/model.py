"""Model substrate: parameters, spin-3/2 and truncated boson operators, the
Hamiltonian, and coherent states.

Basis convention used everywhere in the package: spin-major product basis
``|m> (x) |n>`` with ``m`` running over (-3/2, -1/2, 1/2, 3/2) and ``n`` over
0..cutoff, so the flat index is ``4``-block ``m`` outer, ``n`` inner.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammainc

from .errors import TailTooHeavy

M_VALUES = np.array([-1.5, -0.5, 0.5, 1.5])
SPIN_DIM = 4
TAIL_TOL = 1e-10


@dataclass(frozen=True)
class ModelParams:
    """Qubit frequency ``w_a``, oscillator frequency ``w_c`` and collective
    coupling ``g`` (hbar = 1, any consistent energy unit)."""

    w_a: float
    w_c: float
    g: float

    def __post_init__(self):
        if not self.w_a > 0:
            raise ValueError(f"w_a must be positive, got {self.w_a}")
        if not self.w_c > 0:
            raise ValueError(f"w_c must be positive, got {self.w_c}")
        if not self.g >= 0:
            raise ValueError(f"g must be non-negative, got {self.g}")

    @property
    def detuning(self) -> float:
        return self.w_c - self.w_a


@dataclass(frozen=True)
class SpinOps:
    jz: np.ndarray
    jp: np.ndarray
    jm: np.ndarray
    jx: np.ndarray
    jy: np.ndarray


@dataclass(frozen=True)
class FockOps:
    cutoff: int
    a: np.ndarray
    adag: np.ndarray
    n: np.ndarray

    @property
    def dim(self) -> int:
        return self.cutoff + 1


@lru_cache(maxsize=None)
def spin_ops() -> SpinOps:
    """Collective spin-3/2 matrices in the (-3/2, -1/2, 1/2, 3/2) basis."""
    m = M_VALUES
    jp = np.zeros((SPIN_DIM, SPIN_DIM), dtype=complex)
    for i in range(SPIN_DIM - 1):
        jp[i + 1, i] = np.sqrt(15 / 4 - m[i] * (m[i] + 1))
    jm = jp.conj().T
    ops = SpinOps(
        jz=np.diag(m).astype(complex),
        jp=jp,
        jm=jm,
        jx=(jp + jm) / 2,
        jy=(jp - jm) / 2j,
    )
    for arr in vars(ops).values():
        arr.flags.writeable = False
    return ops


@lru_cache(maxsize=64)
def fock_ops(cutoff: int) -> FockOps:
    """Truncated ladder operators on photon numbers 0..cutoff."""
    if cutoff < 1:
        raise ValueError(f"cutoff must be >= 1, got {cutoff}")
    a = np.diag(np.sqrt(np.arange(1, cutoff + 1, dtype=float)), 1)
    adag = a.T.copy()
    n = adag @ a
    for arr in (a, adag, n):
        arr.flags.writeable = False
    return FockOps(cutoff=cutoff, a=a, adag=adag, n=n)


def mn_to_index(m: float, n: int, cutoff: int) -> int:
    """Flat index of ``|m>|n>``."""
    k = int(round(m + 1.5))
    if not (0 <= k < SPIN_DIM and np.isclose(M_VALUES[k], m)):
        raise ValueError(f"m must be one of {M_VALUES.tolist()}, got {m}")
    if not 0 <= n <= cutoff:
        raise ValueError(f"n must lie in [0, {cutoff}], got {n}")
    return k * (cutoff + 1) + n


def index_to_mn(index: int, cutoff: int) -> tuple[float, int]:
    """Inverse of :func:`mn_to_index`."""
    if not 0 <= index < SPIN_DIM * (cutoff + 1):
        raise ValueError(f"index {index} out of range for cutoff {cutoff}")
    k, n = divmod(index, cutoff + 1)
    return float(M_VALUES[k]), n


def build_hamiltonian(p: ModelParams, fock: FockOps, spin: SpinOps | None = None) -> np.ndarray:
    """Three-qubit Rabi Hamiltonian on the truncated product basis.

    ``H = w_a Jx + w_c a^dag a + g (a + a^dag) Jz``. Every coefficient is real
    in this basis, so the matrix is returned as real symmetric float64.
    """
    s = spin_ops() if spin is None else spin
    eye_f = np.eye(fock.dim)
    eye_s = np.eye(SPIN_DIM)
    h = (
        p.w_a * np.kron(s.jx.real, eye_f)
        + p.w_c * np.kron(eye_s, fock.n)
        + p.g * np.kron(s.jz.real, fock.a + fock.adag)
    )
    return h


def spin_flip_parity(cutoff: int) -> np.ndarray:
    """Matrix of the conserved parity ``F (x) (-1)^n``.

    ``F`` maps ``|m> -> |-m>``; it anticommutes with Jz, commutes with Jx,
    and so the product with photon parity commutes with the Hamiltonian.
    """
    flip = np.fliplr(np.eye(SPIN_DIM))
    photon = np.diag((-1.0) ** np.arange(cutoff + 1))
    return np.kron(flip, photon)


def coherent_tail(x: float, cutoff: int) -> float:
    """Weight of a coherent state with real amplitude ``x`` above ``cutoff``."""
    if x == 0:
        return 0.0
    # P(Poisson(x^2) > cutoff)
    return float(gammainc(cutoff + 1, x * x))


def coherent_vector(x: float, cutoff: int) -> np.ndarray:
    """Coherent state ``|x>`` with real amplitude on photon numbers 0..cutoff.

    Built with the ratio recursion ``v_n = v_{n-1} x / sqrt(n)`` and then
    renormalized. Raises :class:`TailTooHeavy` if more than ``1e-10`` of the
    weight would be lost to truncation.
    """
    tail = coherent_tail(x, cutoff)
    if tail > TAIL_TOL:
        raise TailTooHeavy(
            f"coherent amplitude {x:.4g} loses {tail:.3g} of its weight above "
            f"cutoff {cutoff}"
        )
    v = np.empty(cutoff + 1)
    v[0] = np.exp(-x * x / 2)
    for n in range(1, cutoff + 1):
        v[n] = v[n - 1] * x / np.sqrt(n)
    return v / np.linalg.norm(v)


def auto_cutoff(chi: float, floor: int = 30) -> int:
    """Heuristic cutoff for displacements up to ``3 chi / 2``: mean photon
    number plus ten standard deviations plus 20, never below ``floor``."""
    mean = 9 * chi * chi / 4
    return max(floor, int(np.ceil(mean + 10 * np.sqrt(mean) + 20)))


@dataclass(frozen=True)
class JointState:
    """Normalized amplitude vector on the spin-major product basis."""

    amplitudes: np.ndarray
    cutoff: int

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (SPIN_DIM * (self.cutoff + 1),):
            raise ValueError(
                f"expected {SPIN_DIM * (self.cutoff + 1)} amplitudes, got shape {amps.shape}"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1) > 1e-12:
            raise ValueError(f"state is not normalized (norm - 1 = {norm - 1:.3g})")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_vector(cls, vec, cutoff: int) -> JointState:
        vec = np.asarray(vec, dtype=complex)
        return cls(vec / np.linalg.norm(vec), cutoff)

    def as_matrix(self) -> np.ndarray:
        """Amplitudes reshaped to ``(4, cutoff + 1)``, rows indexed by m."""
        return self.amplitudes.reshape(SPIN_DIM, self.cutoff + 1)

    def expect(self, op: np.ndarray) -> complex:
        return complex(np.vdot(self.amplitudes, op @ self.amplitudes))
