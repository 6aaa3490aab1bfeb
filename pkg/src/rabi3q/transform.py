"""Analytic ground state from the spin-conditioned displacement ``exp(S)``,
``S = chi (a^dag - a) Jz``.

After the transformation the qubit part ``eta w_a Jx - (2 g chi - w_c chi^2) Jz^2``
is a renormalized four-level system with closed-form eigenpairs. ``chi`` is
fixed by removing the leading counter-rotating coupling ``C1`` of the lowest
level; the second one, ``C3``, is only small and is reported as a diagnostic.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import DegenerateB, NoRootInBracket
from .model import M_VALUES, JointState, ModelParams, coherent_vector

SQRT3 = math.sqrt(3.0)
CHI_WINDOW = 0.5
ROOT_SCAN_POINTS = 400


class LambdaOrderWarning(UserWarning):
    """Closed-form eigenvalues are not in ascending index order."""


@dataclass(frozen=True)
class TransformCoeffs:
    chi: float
    eta: float
    A: float
    B: float
    K: tuple[float, float, float, float]
    norms: tuple[float, float, float, float]
    lambdas: tuple[float, float, float, float]
    C1: float
    C3: float

    @property
    def K1(self) -> float:
        return self.K[0]

    @property
    def lambda_ordered(self) -> bool:
        lam = self.lambdas
        return lam[0] < lam[1] < lam[2] < lam[3]

    def eigenvector(self, k: int) -> np.ndarray:
        """Renormalized qubit eigenvector ``k`` (1-based) in the m basis."""
        K = self.K[k - 1]
        if k in (1, 3):
            vec = np.array([-1.0, K, -K, 1.0])
        elif k in (2, 4):
            vec = np.array([1.0, -K, -K, 1.0])
        else:
            raise ValueError(f"k must be 1..4, got {k}")
        return vec / self.norms[k - 1]


def _k_values(A: float, B: float) -> tuple[float, float, float, float]:
    # Each K has one verbatim and one rationalized form; pick whichever
    # avoids cancellation for the sign of its leading term.
    s1 = math.sqrt(4 * A * A + A * B + B * B / 4)
    s2 = math.sqrt(4 * A * A - A * B + B * B / 4)
    p, q = 8 * A + B, 8 * A - B
    K1 = (p + 4 * s1) / (SQRT3 * B) if p >= 0 else SQRT3 * B / (4 * s1 - p)
    K2 = (q + 4 * s2) / (SQRT3 * B) if q >= 0 else SQRT3 * B / (4 * s2 - q)
    K3 = (p - 4 * s1) / (SQRT3 * B) if p <= 0 else -SQRT3 * B / (4 * s1 + p)
    K4 = (q - 4 * s2) / (SQRT3 * B) if q <= 0 else -SQRT3 * B / (4 * s2 + q)
    return K1, K2, K3, K4


def coeffs_at(p: ModelParams, chi: float) -> TransformCoeffs:
    """Evaluate every closed-form coefficient of the transformed model at ``chi``."""
    if chi < 0:
        raise ValueError(f"chi must be non-negative, got {chi}")
    eta = math.exp(-chi * chi / 2)
    A = -(2 * p.g * chi - p.w_c * chi * chi) / 4
    B = eta * p.w_a
    if not B > 0:
        raise DegenerateB(f"B underflowed to {B} at chi={chi}")
    K = _k_values(A, B)
    s1 = math.sqrt(4 * A * A + A * B + B * B / 4)
    s2 = math.sqrt(4 * A * A - A * B + B * B / 4)
    lambdas = (
        5 * A - B / 2 - 2 * s1,
        5 * A + B / 2 - 2 * s2,
        5 * A - B / 2 + 2 * s1,
        5 * A + B / 2 + 2 * s2,
    )
    norms = tuple(math.sqrt(2 + 2 * k * k) for k in K)
    K1, K2, _, K4 = K
    detune = p.g - p.w_c * chi
    C1 = (3 + K1 * K2) * detune - B * chi * (SQRT3 * K1 + 2 * K1 * K2 - SQRT3 * K2)
    C3 = (3 + K1 * K4) * detune - B * chi * (SQRT3 * K1 + 2 * K1 * K4 - SQRT3 * K4)
    return TransformCoeffs(chi, eta, A, B, K, norms, lambdas, C1, C3)


def c1(p: ModelParams, chi: float) -> float:
    return coeffs_at(p, chi).C1


def transformed_energy(p: ModelParams, chi: float) -> float:
    """Lowest renormalized eigenvalue written out in terms of ``g, w_a, w_c, chi``."""
    x = 2 * p.g * chi - p.w_c * chi * chi
    e = math.exp(-chi * chi / 2)
    return (
        1.25 * p.w_c * chi * chi
        - 2.5 * chi * p.g
        - 0.5 * p.w_a * e
        - math.sqrt(x * x - p.w_a * x * e + p.w_a**2 * e * e)
    )


def chi_search_max(p: ModelParams) -> float:
    return max(1.5, 3 * p.g / p.w_c)


def solve_chi(p: ModelParams) -> float:
    """Root of ``C1(chi) = 0`` closest to the seed ``g / (w_a + w_c)``.

    Sign changes are located on a uniform scan of ``(0, chi_max]`` and each is
    refined with Brent's method to full double precision.
    """
    if p.g == 0:
        return 0.0
    chi_max = chi_search_max(p)
    grid = np.linspace(0.0, chi_max, ROOT_SCAN_POINTS + 1)[1:]
    vals = []
    for x in grid:
        try:
            vals.append(c1(p, x))
        except DegenerateB:
            break
    grid = grid[: len(vals)]
    vals = np.array(vals)
    roots = [float(grid[i]) for i in np.flatnonzero(vals == 0)]
    for i in np.flatnonzero(vals[:-1] * vals[1:] < 0):
        roots.append(
            brentq(lambda x: c1(p, x), grid[i], grid[i + 1], xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
        )
    # C1(0) = (3 + K1 K2) g > 0, so a sign change inside the first cell counts too
    if vals.size and vals[0] < 0:
        roots.append(brentq(lambda x: c1(p, x), 0.0, grid[0], xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200))
    if not roots:
        raise NoRootInBracket(f"C1 keeps one sign on (0, {chi_max:g}] for {p}")
    seed = p.g / (p.w_a + p.w_c)
    return min(roots, key=lambda r: abs(r - seed))


@dataclass(frozen=True)
class TransformedSolution:
    coeffs: TransformCoeffs
    energy: float
    state: JointState
    c3_magnitude: float

    @property
    def chi(self) -> float:
        return self.coeffs.chi

    @property
    def chi_in_window(self) -> bool:
        """Whether the root lies in the small-chi range the expansion relies on."""
        return self.coeffs.chi <= CHI_WINDOW


def transformed_state(coeffs: TransformCoeffs, cutoff: int) -> JointState:
    """``exp(-S) |phi_1> |0>``: each spin component ``m`` carries a coherent
    field of amplitude ``-m chi``."""
    phi1 = coeffs.eigenvector(1)
    blocks = [c * coherent_vector(-m * coeffs.chi, cutoff) for c, m in zip(phi1, M_VALUES)]
    return JointState.from_vector(np.concatenate(blocks), cutoff)


def transformed_ground(p: ModelParams, cutoff: int = 30) -> TransformedSolution:
    """Approximate ground state and energy at the ``C1 = 0`` root."""
    chi = solve_chi(p)
    coeffs = coeffs_at(p, chi)
    if not coeffs.lambda_ordered:
        warnings.warn(
            f"renormalized levels out of index order at {p}: {coeffs.lambdas}",
            LambdaOrderWarning,
            stacklevel=2,
        )
    # lambda_1 <= lambda_2 holds for any B > 0, so it is always the minimum
    energy = min(coeffs.lambdas)
    return TransformedSolution(
        coeffs=coeffs,
        energy=energy,
        state=transformed_state(coeffs, cutoff),
        c3_magnitude=abs(coeffs.C3),
    )


def quadratic_energy(p: ModelParams) -> float:
    """Small-coupling approximation ``-3 w_a / 2 - 3 g^2 / (2 w_c + 3 w_a)``."""
    return -1.5 * p.w_a - 3 * p.g**2 / (2 * p.w_c + 3 * p.w_a)
