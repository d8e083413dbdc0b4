"""Entanglement and energy analytics: reduced states, pairwise Heisenberg
energy witnesses, concurrence, complementarity, monogamy and total energy."""

import math

import numpy as np

from .spin_model import (
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    build_hamiltonian,
    norm_constant,
)

_SS_2Q = sum(np.kron(s, s) for s in (PAULI_X, PAULI_Y, PAULI_Z))
_SPIN_FLIP = np.kron(PAULI_Y, PAULI_Y)


def partial_trace(rho, keep):
    """Reduced 4x4 state of qubits (i, j), 1-based, i < j."""
    i, j = keep
    if not (1 <= i < j <= 4):
        raise ValueError(f"invalid qubit pair {keep}; need 1 <= i < j <= 4")
    rho = np.asarray(rho, dtype=complex)
    if rho.shape == (16,):
        rho = np.outer(rho, rho.conj())
    if rho.shape != (16, 16):
        raise ValueError("expected a 16x16 density matrix or 16-dim pure state")
    t = rho.reshape([2] * 8)
    keep0 = [i - 1, j - 1]
    trace0 = [k for k in range(4) if k not in keep0]
    t = np.transpose(t, keep0 + trace0 + [k + 4 for k in keep0] + [k + 4 for k in trace0])
    t = t.reshape(4, 4, 4, 4)
    return np.einsum("abcb->ac", t)


def pair_energy(rho_ij):
    """Normalized Heisenberg energy witness -(1/3) Tr(rho_ij S_i.S_j); 1 for a singlet."""
    rho_ij = np.asarray(rho_ij, dtype=complex)
    if rho_ij.shape != (4, 4):
        raise ValueError("expected a two-qubit density matrix")
    return float(-np.trace(rho_ij @ _SS_2Q).real / 3.0)


def pair_energies_closed(theta):
    """Closed-form (e12, e13, e14) for the analytic ground state family."""
    n = norm_constant(theta)
    c2, s2 = math.cos(theta) ** 2, math.sin(theta) ** 2
    cc = math.cos(2.0 * theta)
    return (-(s2 * cc) / n, (s2 * c2) / n, (c2 * cc) / n)


def complementarity_sum(energies):
    """Sum of squared pairwise energies; 1 for every ideal ground state."""
    e12, e13, e14 = energies
    return e12 * e12 + e13 * e13 + e14 * e14


def concurrence_from_energy(e):
    """Concurrence of a pair from its energy witness: max{0, -1/2 + 3/2 e}."""
    if not -1.0 - 1e-9 <= e <= 1.0 + 1e-9:
        raise ValueError(f"pair energy {e} outside [-1, 1]")
    return max(0.0, -0.5 + 1.5 * e)


def wootters_concurrence(rho_ij):
    """Two-qubit concurrence from the spin-flipped matrix spectrum."""
    rho_ij = np.asarray(rho_ij, dtype=complex)
    if rho_ij.shape != (4, 4):
        raise ValueError("expected a two-qubit density matrix")
    rho_tilde = _SPIN_FLIP @ rho_ij.conj() @ _SPIN_FLIP
    evals = np.linalg.eigvals(rho_ij @ rho_tilde)
    lam = np.sort(np.sqrt(np.maximum(evals.real, 0.0)))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def pair_energies(rho):
    """(e12, e13, e14) of a 16x16 state via partial traces."""
    return tuple(pair_energy(partial_trace(rho, (1, j))) for j in (2, 3, 4))


def pair_concurrences(rho):
    """Wootters concurrences of the (1,2), (1,3), (1,4) reduced states."""
    return tuple(wootters_concurrence(partial_trace(rho, (1, j))) for j in (2, 3, 4))


def monogamy_sum(rho):
    """C12^2 + C13^2 + C14^2; bounded by 1 for every physical state here."""
    return sum(c * c for c in pair_concurrences(rho))


def total_energy(rho, kappa):
    """Tr(rho H(kappa)) assembled from the four weighted bond terms."""
    if not math.isfinite(kappa):
        raise ValueError("kappa must be finite for the total energy")
    rho = np.asarray(rho, dtype=complex)
    if rho.shape == (16,):
        rho = np.outer(rho, rho.conj())
    e = 0.0
    for (i, j), weight in (((1, 3), 1.0), ((2, 4), 1.0), ((1, 2), kappa), ((3, 4), kappa)):
        rho_ij = partial_trace(rho, (i, j))
        e += weight * float(np.trace(rho_ij @ _SS_2Q).real)
    return e


def correlation_tensor_exact(rho, pair):
    """3x3 tensor Tr(rho_ij sigma_w x sigma_v), bases ordered (X, Y, Z)."""
    i, j = sorted(pair)
    rho_ij = partial_trace(rho, (i, j))
    if pair[0] > pair[1]:
        rho_ij = rho_ij.reshape(2, 2, 2, 2).transpose(1, 0, 3, 2).reshape(4, 4)
    paulis = (PAULI_X, PAULI_Y, PAULI_Z)
    out = np.zeros((3, 3))
    for a, sw in enumerate(paulis):
        for b, sv in enumerate(paulis):
            out[a, b] = float(np.trace(rho_ij @ np.kron(sw, sv)).real)
    return out
