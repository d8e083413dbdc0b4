"""Bosonic linear-optics pipeline: two singlet sources, a tunable coupler on
spatial modes 1 and 3, fourfold-coincidence post-selection and a parametric
imperfection model.

Coupler convention (fixed by requiring the post-selected output to reproduce
the target four-photon family for every theta): a real beam splitter
[[cos t, sin t], [-sin t, cos t]] with transmissivity cos^2(t) acts on spatial
modes 1 and 3, identically for both polarizations, and the two output fibres
are then relabelled 1 <-> 3.  The combined mode matrix used throughout is

    [[-sin t, cos t],
     [ cos t, sin t]].

Fock amplitudes are stored in the orthonormal (normalized) Fock basis, i.e.
including the sqrt(n!) bosonic factors, so the state norm is the plain l2 norm
of the amplitude map.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .spin_model import dimer_state

#: 8 optical modes: index 2*(spatial-1) + pol with pol H -> 0, V -> 1.
N_MODES = 8


class PostselectionImpossible(ValueError):
    """The one-photon-per-mode component of the state has zero norm."""


def mode_index(spatial, pol):
    return 2 * (spatial - 1) + pol


class FockState:
    """Sparse amplitude map over bosonic occupation vectors of fixed photon number."""

    def __init__(self, terms, n_modes=N_MODES):
        clean = {}
        total = None
        for occ, amp in terms.items():
            occ = tuple(int(n) for n in occ)
            if len(occ) != n_modes or any(n < 0 for n in occ):
                raise ValueError(f"invalid occupation vector {occ}")
            if total is None:
                total = sum(occ)
            elif sum(occ) != total:
                raise ValueError("photon number differs between terms")
            if amp != 0.0:
                clean[occ] = clean.get(occ, 0.0) + complex(amp)
        self.terms = clean
        self.n_modes = n_modes
        self.n_photons = 0 if total is None else total

    def norm(self):
        return math.sqrt(sum(abs(a) ** 2 for a in self.terms.values()))


@dataclass(frozen=True)
class NoiseParams:
    """White-noise fraction and two-photon interference visibility."""

    white_noise_p: float = 0.0
    visibility_V: float = 1.0

    def __post_init__(self):
        if not (0.0 <= self.white_noise_p <= 1.0):
            raise ValueError(f"white_noise_p={self.white_noise_p} outside [0, 1]")
        if not (0.0 <= self.visibility_V <= 1.0):
            raise ValueError(f"visibility_V={self.visibility_V} outside [0, 1]")


@dataclass
class PostselectionResult:
    state: np.ndarray
    success_probability: float


def singlet_source():
    """Product of polarization singlets on spatial-mode pairs (1,2) and (3,4)."""
    terms = {}
    for (p1, p2), s12 in (((0, 1), 1.0), ((1, 0), -1.0)):
        for (p3, p4), s34 in (((0, 1), 1.0), ((1, 0), -1.0)):
            occ = [0] * N_MODES
            occ[mode_index(1, p1)] = 1
            occ[mode_index(2, p2)] = 1
            occ[mode_index(3, p3)] = 1
            occ[mode_index(4, p4)] = 1
            terms[tuple(occ)] = 0.5 * s12 * s34
    return FockState(terms)


def tdc_unitary(theta):
    """Combined coupler + output-relabelling matrix on spatial modes (1, 3)."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[-s, c], [c, s]], dtype=complex)


def _couple_channel(n_a, n_b, u):
    """Expand (u00 a + u10 b)^n_a (u01 a + u11 b)^n_b; returns {(k_a, k_b): coeff}
    in creation-operator (unnormalized) coefficient space."""
    poly = {}
    for t in range(n_a + 1):
        ca = math.comb(n_a, t) * u[0, 0] ** t * u[1, 0] ** (n_a - t)
        for s in range(n_b + 1):
            cb = math.comb(n_b, s) * u[0, 1] ** s * u[1, 1] ** (n_b - s)
            key = (t + s, n_a + n_b - t - s)
            poly[key] = poly.get(key, 0.0) + ca * cb
    return poly


def apply_coupler(state, u, channels):
    """Apply a 2x2 mode unitary to each (mode_a, mode_b) channel in `channels`."""
    touched = [m for pair in channels for m in pair]
    out = {}
    for occ, amp in state.terms.items():
        # strip the normalized-basis factors of the transformed modes
        coeff = amp / math.sqrt(math.prod(math.factorial(occ[m]) for m in touched))
        partial = {(): coeff}
        for m_a, m_b in channels:
            nxt = {}
            for key, c in partial.items():
                for (k_a, k_b), cc in _couple_channel(occ[m_a], occ[m_b], u).items():
                    k = key + (k_a, k_b)
                    nxt[k] = nxt.get(k, 0.0) + c * cc
            partial = nxt
        for key, c in partial.items():
            if c == 0.0:
                continue
            new_occ = list(occ)
            for idx, (m_a, m_b) in enumerate(channels):
                new_occ[m_a] = key[2 * idx]
                new_occ[m_b] = key[2 * idx + 1]
            new_occ = tuple(new_occ)
            c = c * math.sqrt(math.prod(math.factorial(n) for n in new_occ[:]))
            # only transformed modes changed; untouched factorials cancel exactly,
            # so divide them back out
            c = c / math.sqrt(
                math.prod(
                    math.factorial(new_occ[m])
                    for m in range(state.n_modes)
                    if m not in touched
                )
            )
            out[new_occ] = out.get(new_occ, 0.0) + c
    return FockState(out, n_modes=state.n_modes)


def apply_tdc(state, theta):
    """Tunable coupler on spatial modes 1 and 3 (both polarizations alike)."""
    if state.n_modes != N_MODES:
        raise ValueError("state must live on the 4 spatial x 2 polarization modes")
    u = tdc_unitary(theta)
    channels = [
        (mode_index(1, 0), mode_index(3, 0)),
        (mode_index(1, 1), mode_index(3, 1)),
    ]
    return apply_coupler(state, u, channels)


def postselect_coincidence(state):
    """Keep the one-photon-per-spatial-mode component and map it to four qubits."""
    if state.n_modes != N_MODES or state.n_photons != 4:
        raise ValueError("post-selection requires a 4-photon state on 8 modes")
    psi = np.zeros(16, dtype=complex)
    for occ, amp in state.terms.items():
        if any(occ[2 * m] + occ[2 * m + 1] != 1 for m in range(4)):
            continue
        bits = [occ[2 * m + 1] for m in range(4)]  # V -> 1
        psi[8 * bits[0] + 4 * bits[1] + 2 * bits[2] + bits[3]] += amp
    norm2 = float(np.vdot(psi, psi).real)
    if norm2 < 1e-24:
        raise PostselectionImpossible("no one-photon-per-mode component")
    return PostselectionResult(psi / math.sqrt(norm2), norm2)


def ground_state_via_optics(theta):
    """Full source -> coupler -> post-selection pipeline."""
    return postselect_coincidence(apply_tdc(singlet_source(), theta))


def distinguishable_ground_state(theta):
    """Post-selected 16x16 density matrix when the two photons meeting at the
    coupler are fully distinguishable (incoherent which-path mixture).

    Photons are tagged by their source (modes 1,2 -> tag 0; modes 3,4 -> tag 1);
    the coupler acts identically on every (polarization, tag) channel and the
    tag is traced out after post-selection.
    """

    def mode16(spatial, pol, tag):
        return 4 * (spatial - 1) + 2 * pol + tag

    terms = {}
    for (p1, p2), s12 in (((0, 1), 1.0), ((1, 0), -1.0)):
        for (p3, p4), s34 in (((0, 1), 1.0), ((1, 0), -1.0)):
            occ = [0] * 16
            occ[mode16(1, p1, 0)] = 1
            occ[mode16(2, p2, 0)] = 1
            occ[mode16(3, p3, 1)] = 1
            occ[mode16(4, p4, 1)] = 1
            terms[tuple(occ)] = 0.5 * s12 * s34
    state = FockState(terms, n_modes=16)
    channels = [(mode16(1, p, t), mode16(3, p, t)) for p in (0, 1) for t in (0, 1)]
    state = apply_coupler(state, tdc_unitary(theta), channels)

    # post-select one photon per spatial mode, keeping the tag degree of freedom
    kept = {}
    for occ, amp in state.terms.items():
        per_mode = []
        ok = True
        for m in range(4):
            chans = occ[4 * m : 4 * m + 4]
            if sum(chans) != 1:
                ok = False
                break
            idx = chans.index(1)
            per_mode.append((idx // 2, idx % 2))  # (pol, tag)
        if not ok:
            continue
        pol = sum(b << (3 - k) for k, (b, _) in enumerate(per_mode))
        tag = sum(t << (3 - k) for k, (_, t) in enumerate(per_mode))
        kept[(pol, tag)] = kept.get((pol, tag), 0.0) + amp
    norm2 = sum(abs(a) ** 2 for a in kept.values())
    if norm2 < 1e-24:
        raise PostselectionImpossible("no one-photon-per-mode component")
    rho = np.zeros((16, 16), dtype=complex)
    by_tag = {}
    for (pol, tag), amp in kept.items():
        by_tag.setdefault(tag, {})[pol] = amp
    for comps in by_tag.values():
        for p1, a1 in comps.items():
            for p2, a2 in comps.items():
                rho[p1, p2] += a1 * np.conj(a2)
    return rho / norm2


def apply_noise(state, params, distinguishable_rho=None):
    """rho = (1-p) * [V |psi><psi| + (1-V) rho_dist] + p * I/16.

    `distinguishable_rho` is required whenever visibility_V < 1; use
    `noisy_ground_state` for the full theta-parameterized model.
    """
    if not isinstance(params, NoiseParams):
        params = NoiseParams(*params)
    psi = np.asarray(state, dtype=complex)
    rho_pure = np.outer(psi, psi.conj())
    v = params.visibility_V
    if v < 1.0:
        if distinguishable_rho is None:
            raise ValueError("visibility_V < 1 requires the distinguishable-photon state")
        rho_v = v * rho_pure + (1.0 - v) * distinguishable_rho
    else:
        rho_v = rho_pure
    p = params.white_noise_p
    return (1.0 - p) * rho_v + p * np.eye(16) / 16.0


def noisy_ground_state(theta, params):
    """Noise-degraded post-selected state; returns (rho, success_probability)."""
    result = ground_state_via_optics(theta)
    rho_dist = distinguishable_ground_state(theta) if params.visibility_V < 1.0 else None
    rho = apply_noise(result.state, params, distinguishable_rho=rho_dist)
    return rho, result.success_probability
