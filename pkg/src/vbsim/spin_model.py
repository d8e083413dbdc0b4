"""Operator algebra and closed forms for the J1-J2 spin-1/2 tetramer.

Four spin-1/2 particles sit on a square plaquette with couplings J1 on the
diagonal bonds (1,3), (2,4) and J2 on the edge bonds (1,2), (3,4).  All
physics depends only on the ratio kappa = J2/J1, or equivalently on the
coupler angle theta related by tan^2(theta) = kappa + sqrt(kappa^2 - kappa + 1).

Basis convention: four qubits q1..q4, H -> 0, V -> 1, amplitude index
8*q1 + 4*q2 + 2*q3 + q4.  Spin operators are the bare Pauli matrices, so a
single bond operator S.S has eigenvalues {-3, +1, +1, +1}.
"""

import math

import numpy as np

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

#: Lower edge of the coupler angle range covering kappa in [-inf, +inf].
THETA_MIN = float(np.arctan(1.0 / np.sqrt(2.0)))
THETA_MAX = math.pi / 2.0

PAIRS = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))

_DIMER_PAIRINGS = {
    "=": ((1, 2), (3, 4)),
    "parallel": ((1, 3), (2, 4)),
    "cross": ((1, 4), (2, 3)),
}
_DIMER_ALIASES = {"∥": "parallel", "par": "parallel", "×": "cross", "x": "cross"}


def _kron4(ops):
    out = np.array([[1.0 + 0.0j]])
    for op in ops:
        out = np.kron(out, op)
    return out


def pair_coupling_operator(i, j):
    """Bond operator sum_w sigma_w^(i) sigma_w^(j) embedded in the 4-qubit space."""
    if not (1 <= i < j <= 4):
        raise ValueError(f"invalid qubit pair ({i}, {j}); need 1 <= i < j <= 4")
    op = np.zeros((16, 16), dtype=complex)
    for sigma in (PAULI_X, PAULI_Y, PAULI_Z):
        ops = [IDENTITY_2] * 4
        ops[i - 1] = sigma
        ops[j - 1] = sigma
        op += _kron4(ops)
    return op


def build_hamiltonian(kappa):
    """H(kappa) = S1.S3 + S2.S4 + kappa*(S1.S2 + S3.S4)."""
    if not math.isfinite(kappa):
        raise ValueError(
            "kappa must be finite; for the +-inf limits diagonalize the edge-bond "
            "term S1.S2 + S3.S4 alone with the corresponding sign"
        )
    h0 = pair_coupling_operator(1, 3) + pair_coupling_operator(2, 4)
    h1 = pair_coupling_operator(1, 2) + pair_coupling_operator(3, 4)
    return h0 + kappa * h1


def ground_state_energy_closed(kappa):
    """Closed-form ground-state energy in units of J1."""
    if not math.isfinite(kappa):
        raise ValueError("kappa must be finite")
    return -2.0 * (1.0 + kappa) - 4.0 * math.sqrt(1.0 - kappa + kappa * kappa)


def theta_from_kappa(kappa):
    """Coupler angle for a coupling ratio; total on the extended reals."""
    if kappa == math.inf:
        return THETA_MAX
    if kappa == -math.inf:
        return THETA_MIN
    disc = math.sqrt(kappa * kappa - kappa + 1.0)
    if kappa >= 0.0:
        t2 = kappa + disc
    else:
        # rationalized form; the direct sum cancels catastrophically for kappa << 0
        t2 = (kappa - 1.0) / (kappa - disc)
    return math.atan(math.sqrt(t2))


def kappa_from_theta(theta):
    """Inverse coupler-angle map; endpoints return -inf / +inf sentinels."""
    if not (THETA_MIN - 1e-12 <= theta <= THETA_MAX + 1e-12):
        raise ValueError(
            f"theta={theta} outside the covered range [{THETA_MIN}, {THETA_MAX}]"
        )
    if theta >= THETA_MAX - 1e-12:
        return math.inf
    if theta <= THETA_MIN + 1e-12:
        return -math.inf
    t2 = math.tan(theta) ** 2
    return (t2 * t2 - 1.0) / (2.0 * t2 - 1.0)


def norm_constant(theta):
    """Normalization n(theta) of the analytic ground state; also the
    post-selection success probability of the optics pipeline."""
    c, s = math.cos(theta), math.sin(theta)
    return 0.5 * (c**4 + math.cos(2.0 * theta) ** 2 + s**4)


def _ket(bits):
    v = np.zeros(16, dtype=complex)
    v[8 * bits[0] + 4 * bits[1] + 2 * bits[2] + bits[3]] = 1.0
    return v


def dimer_state(pairing):
    """Product of two singlets on the named dimer covering ('=', 'parallel', 'cross')."""
    key = _DIMER_ALIASES.get(pairing, pairing)
    if key not in _DIMER_PAIRINGS:
        raise ValueError(f"unknown dimer pairing {pairing!r}")
    (a1, a2), (b1, b2) = _DIMER_PAIRINGS[key]
    v = np.zeros(16, dtype=complex)
    for pa, sa in (((0, 1), 1.0), ((1, 0), -1.0)):
        for pb, sb in (((0, 1), 1.0), ((1, 0), -1.0)):
            bits = [0, 0, 0, 0]
            bits[a1 - 1], bits[a2 - 1] = pa
            bits[b1 - 1], bits[b2 - 1] = pb
            v += 0.5 * sa * sb * _ket(bits)
    return v


def ground_state_analytic(theta):
    """Normalized ground state cos(2t)|Phi_=> - cos^2(t)|Phi_par> over sqrt(n)."""
    n = norm_constant(theta)
    if n <= 0.0:
        raise ValueError("degenerate normalization; theta outside the valid domain")
    v = math.cos(2.0 * theta) * dimer_state("=") - math.cos(theta) ** 2 * dimer_state(
        "parallel"
    )
    return v / math.sqrt(n)


def total_spin_squared():
    """(sum_i sigma_i)^2 = 12*I + 2*sum_{i<j} S_i.S_j; annihilates spin-zero states."""
    op = 12.0 * np.eye(16, dtype=complex)
    for i, j in PAIRS:
        op += 2.0 * pair_coupling_operator(i, j)
    return op


def min_eigenpair(hermitian):
    """Lowest eigenvalue and eigenvector of a Hermitian matrix."""
    vals, vecs = np.linalg.eigh(hermitian)
    return float(vals[0]), vecs[:, 0]


def ground_space_projector(hermitian, tol=1e-8):
    """Projector onto the (possibly degenerate) lowest eigenspace."""
    vals, vecs = np.linalg.eigh(hermitian)
    cols = vecs[:, vals <= vals[0] + tol]
    return cols @ cols.conj().T


def pure_overlap(a, b):
    """|<a|b>|^2; state equality is defined up to a global phase."""
    return float(abs(np.vdot(a, b)) ** 2)
