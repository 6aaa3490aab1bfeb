"""Independent reference computations shared by the tests.

Nothing here imports the package; everything is written out from the model
definition with explicit loops so the tests compare two separate routes.
"""

import math

import numpy as np

M = (-1.5, -0.5, 0.5, 1.5)


def hamiltonian_loops(w_a, w_c, g, cutoff):
    nf = cutoff + 1
    h = np.zeros((4 * nf, 4 * nf))

    def idx(k, n):
        return k * nf + n

    for k, m in enumerate(M):
        for n in range(nf):
            h[idx(k, n), idx(k, n)] += w_c * n
            if n < cutoff:
                v = g * m * math.sqrt(n + 1)
                h[idx(k, n), idx(k, n + 1)] += v
                h[idx(k, n + 1), idx(k, n)] += v
            if k < 3:
                v = w_a * 0.5 * math.sqrt(15 / 4 - m * (m + 1))
                h[idx(k, n), idx(k + 1, n)] += v
                h[idx(k + 1, n), idx(k, n)] += v
    return h


def c1_verbatim(w_a, w_c, g, chi):
    """C1 straight from its closed form, vectorized over chi."""
    chi = np.asarray(chi, dtype=float)
    eta = np.exp(-chi**2 / 2)
    A = -(2 * g * chi - w_c * chi**2) / 4
    B = eta * w_a
    K1 = (8 * A + B + 4 * np.sqrt(4 * A * A + A * B + B * B / 4)) / (np.sqrt(3) * B)
    K2 = (8 * A - B + 4 * np.sqrt(4 * A * A - A * B + B * B / 4)) / (np.sqrt(3) * B)
    return (3 + K1 * K2) * (g - w_c * chi) - eta * w_a * chi * (
        np.sqrt(3) * K1 + 2 * K1 * K2 - np.sqrt(3) * K2
    )


def renormalized_qubit_matrix(w_a, w_c, g, chi):
    """eta w_a Jx - (2 g chi - w_c chi^2) Jz^2 built from matrix elements."""
    h = np.zeros((4, 4))
    for k, m in enumerate(M):
        h[k, k] = -(2 * g * chi - w_c * chi**2) * m * m
        if k < 3:
            v = 0.5 * math.sqrt(15 / 4 - m * (m + 1)) * math.exp(-chi * chi / 2) * w_a
            h[k, k + 1] = h[k + 1, k] = v
    return h


def coherent_series(x, cutoff):
    """Coherent amplitudes from the factorial formula (small cutoffs only)."""
    return np.array([math.exp(-x * x / 2) * x**n / math.sqrt(math.factorial(n)) for n in range(cutoff + 1)])


def qubit_state(m_amps):
    """Three-qubit vector by explicit symmetrization over bit strings (e=0)."""
    psi = np.zeros(8, dtype=complex)
    for idx in range(8):
        bits = [(idx >> 2) & 1, (idx >> 1) & 1, idx & 1]
        excited = bits.count(0)
        psi[idx] = m_amps[excited] / math.sqrt(math.comb(3, excited))
    return psi


def pair_rdm_bruteforce(joint, cutoff, traced):
    """Two-qubit reduced matrix by summing over field and traced-qubit indices."""
    nf = cutoff + 1
    amps = np.asarray(joint).reshape(4, nf)
    full = np.array([qubit_state(amps[:, n]) for n in range(nf)]).reshape(nf, 2, 2, 2)
    kept = [q for q in (0, 1, 2) if q != traced - 1]
    rho = np.zeros((4, 4), dtype=complex)
    for n in range(nf):
        for t in (0, 1):
            for i in range(4):
                for j in range(4):
                    bi = [0, 0, 0]
                    bj = [0, 0, 0]
                    bi[kept[0]], bi[kept[1]] = divmod(i, 2)
                    bj[kept[0]], bj[kept[1]] = divmod(j, 2)
                    bi[traced - 1] = bj[traced - 1] = t
                    rho[i, j] += full[n][tuple(bi)] * np.conj(full[n][tuple(bj)])
    return rho
