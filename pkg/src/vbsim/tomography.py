"""Tomography synthesis and reconstruction for the four-photon states.

81 measurement settings (all products of the single-qubit mutually unbiased
bases Z = H/V, X = +/-, Y = R/L) with 16 outcomes each.  Outcome bit 0 selects
the first-listed eigenvector (H, +, R); the outcome index packs the qubit bits
as 8*b1 + 4*b2 + 2*b3 + b4, matching the state amplitude convention.

Dataset JSON:  {"meta": {"seed": int, "mean_total": number, "theta": number,
"noise": {...}}, "records": [{"setting": "XYZZ", "counts": [16 ints]} x 81]}
with records in itertools.product("ZXY", repeat=4) order.
Density-matrix JSON: {"dim": 16, "re": [[...]], "im": [[...]]} (an optional
"meta" key carries provenance).
"""

import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np

BASIS_LABELS = ("Z", "X", "Y")

_SQ2 = 1.0 / math.sqrt(2.0)
#: First-listed eigenvector encodes outcome bit 0.
BASIS_VECTORS = {
    "Z": (np.array([1.0, 0.0], dtype=complex), np.array([0.0, 1.0], dtype=complex)),
    "X": (np.array([_SQ2, _SQ2], dtype=complex), np.array([_SQ2, -_SQ2], dtype=complex)),
    "Y": (np.array([_SQ2, _SQ2 * 1j], dtype=complex), np.array([_SQ2, -_SQ2 * 1j], dtype=complex)),
}

ALL_SETTINGS = tuple("".join(s) for s in itertools.product(BASIS_LABELS, repeat=4))
N_SETTINGS = len(ALL_SETTINGS)
N_OUTCOMES = 16


def _check_setting(setting):
    if len(setting) != 4 or any(b not in BASIS_LABELS for b in setting):
        raise ValueError(f"invalid measurement setting {setting!r}")


def measurement_vector(setting, outcome):
    """16-dim eigenvector of a setting/outcome pair (projector = outer product)."""
    _check_setting(setting)
    if not (0 <= outcome < N_OUTCOMES):
        raise ValueError(f"invalid outcome index {outcome}")
    v = np.array([1.0 + 0.0j])
    for k, basis in enumerate(setting):
        bit = (outcome >> (3 - k)) & 1
        v = np.kron(v, BASIS_VECTORS[basis][bit])
    return v


def basis_projector(setting, outcome):
    """Rank-1 projector of a setting/outcome pair."""
    v = measurement_vector(setting, outcome)
    return np.outer(v, v.conj())


def _all_vectors():
    """Stacked (1296, 16) eigenvectors in canonical setting/outcome order."""
    return np.stack(
        [measurement_vector(s, o) for s in ALL_SETTINGS for o in range(N_OUTCOMES)]
    )


_VECTORS = None


def _vectors():
    global _VECTORS
    if _VECTORS is None:
        _VECTORS = _all_vectors()
    return _VECTORS


def _as_density(rho, psd_tol=1e-8):
    rho = np.asarray(rho, dtype=complex)
    if rho.shape == (16,):
        rho = np.outer(rho, rho.conj())
    if rho.shape != (16, 16):
        raise ValueError("expected a 16x16 density matrix or a 16-dim pure state")
    if np.linalg.norm(rho - rho.conj().T) > 1e-8:
        raise ValueError("density matrix is not Hermitian")
    if np.linalg.eigvalsh(rho)[0] < -psd_tol:
        raise ValueError("density matrix is not positive semidefinite")
    return rho


def expected_distribution(rho, setting):
    """Born-rule outcome probabilities for one setting; clamped to [0, 1]."""
    rho = _as_density(rho)
    _check_setting(setting)
    base = ALL_SETTINGS.index(setting) * N_OUTCOMES
    vecs = _vectors()[base : base + N_OUTCOMES]
    p = np.einsum("ai,ij,aj->a", vecs.conj(), rho, vecs).real
    return np.clip(p, 0.0, 1.0)


@dataclass
class TomographyDataset:
    """81 count records plus generation metadata."""

    records: list  # [(setting str, counts array of 16)] in canonical order
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if tuple(s for s, _ in self.records) != ALL_SETTINGS:
            raise ValueError("dataset must contain all 81 settings in canonical order")
        self.records = [
            (s, np.asarray(c, dtype=float).reshape(N_OUTCOMES)) for s, c in self.records
        ]

    def counts_flat(self):
        return np.concatenate([c for _, c in self.records])

    def to_json(self):
        doc = {
            "meta": self.meta,
            "records": [
                {"setting": s, "counts": [int(round(x)) for x in c]}
                for s, c in self.records
            ],
        }
        return json.dumps(doc, indent=1)

    @classmethod
    def from_json(cls, text):
        doc = json.loads(text)
        records = []
        for k, rec in enumerate(doc["records"]):
            try:
                records.append((rec["setting"], rec["counts"]))
            except (KeyError, TypeError) as exc:
                raise ValueError(f"malformed record {k}: {exc}") from exc
        return cls(records=records, meta=doc.get("meta", {}))


def sample_dataset(rho, mean_total, seed, extra_meta=None):
    """Poisson-sampled dataset: counts[o] ~ Poisson(mean_total * p_o) per setting."""
    if not mean_total > 0:
        raise ValueError("mean_total must be positive")
    rho = _as_density(rho)
    rng = np.random.default_rng(seed)
    records = []
    for setting in ALL_SETTINGS:
        p = expected_distribution(rho, setting)
        records.append((setting, rng.poisson(mean_total * p).astype(float)))
    meta = {"seed": int(seed), "mean_total": float(mean_total)}
    if extra_meta:
        meta.update(extra_meta)
    return TomographyDataset(records=records, meta=meta)


def exact_dataset(rho, mean_total, extra_meta=None):
    """Noiseless dataset with counts = mean_total * p (non-integer; tests only)."""
    rho = _as_density(rho)
    records = [
        (s, mean_total * expected_distribution(rho, s)) for s in ALL_SETTINGS
    ]
    meta = {"seed": None, "mean_total": float(mean_total), "exact": True}
    if extra_meta:
        meta.update(extra_meta)
    return TomographyDataset(records=records, meta=meta)


@dataclass
class ReconstructionResult:
    rho: np.ndarray
    log_likelihood: float
    iterations: int
    converged: bool
    ll_history: list = field(default_factory=list)


def _log_likelihood(counts, probs):
    mask = counts > 0
    return float(np.sum(counts[mask] * np.log(np.maximum(probs[mask], 1e-300))))


def mle_reconstruct(dataset, max_iter=5000, tol=1e-10, init="linear"):
    """Maximum-likelihood reconstruction via the RrhoR fixed-point iteration
    with a diluted fallback step whenever the likelihood would decrease.

    The iterate starts from the PSD-projected linear-inversion estimate mixed
    with a little identity (init="linear"); init="mixed" starts from I/16.
    """
    counts = dataset.counts_flat()
    n_total = counts.sum()
    if n_total <= 0:
        raise ValueError("dataset contains no counts")
    vecs = _vectors()
    vecs_c = vecs.conj()
    rho = np.eye(16, dtype=complex) / 16.0
    if init == "linear":
        guess = linear_inversion(dataset)
        vals, basis = np.linalg.eigh(guess)
        vals = np.clip(vals, 0.0, None)
        if vals.sum() > 1e-12:
            projected = (basis * vals) @ basis.conj().T / vals.sum()
            # tiny identity floor keeps every eigenvalue populated without
            # perceptibly moving off the (often already optimal) estimate
            rho = (1.0 - 1e-7) * projected + 1e-7 * rho
    elif init != "mixed":
        raise ValueError(f"unknown init {init!r}")

    def probs_of(r):
        return np.maximum(np.einsum("ai,ai->a", vecs_c @ r, vecs).real, 1e-15)

    probs = probs_of(rho)
    ll = _log_likelihood(counts, probs)
    history = [ll]
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        w = counts / probs / n_total
        r_op = (vecs.T * w) @ vecs_c
        candidate = r_op @ rho @ r_op
        candidate /= np.trace(candidate).real
        new_probs = probs_of(candidate)
        new_ll = _log_likelihood(counts, new_probs)
        if new_ll < ll - 1e-12:
            # diluted step: mix the improvement operator with the identity
            eps = 0.1
            g = (1.0 - eps) * np.eye(16) + eps * r_op
            candidate = g @ rho @ g.conj().T
            candidate /= np.trace(candidate).real
            new_probs = probs_of(candidate)
            new_ll = _log_likelihood(counts, new_probs)
            if new_ll < ll:
                converged = True  # no improving direction left at working precision
                break
        improvement = new_ll - ll
        rho, probs, ll = candidate, new_probs, new_ll
        history.append(ll)
        if improvement < tol:
            converged = True
            break
    rho = 0.5 * (rho + rho.conj().T)
    rho /= np.trace(rho).real
    return ReconstructionResult(
        rho=rho,
        log_likelihood=ll,
        iterations=iterations,
        converged=converged,
        ll_history=history,
    )


_PAULI_1Q = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def linear_inversion(dataset):
    """Least-squares (Pauli-moment) estimate from outcome frequencies.

    Hermitian and unit-trace by construction but possibly non-PSD; diagnostic
    baseline only.
    """
    freqs = {}
    for setting, counts in dataset.records:
        total = counts.sum()
        freqs[setting] = counts / total if total > 0 else np.zeros(N_OUTCOMES)

    rho = np.zeros((16, 16), dtype=complex)
    for labels in itertools.product("IXYZ", repeat=4):
        support = [k for k, l in enumerate(labels) if l != "I"]
        compatible = [
            s for s in ALL_SETTINGS if all(s[k] == labels[k] for k in support)
        ]
        est = 0.0
        for s in compatible:
            f = freqs[s]
            signs = np.ones(N_OUTCOMES)
            for k in support:
                bits = (np.arange(N_OUTCOMES) >> (3 - k)) & 1
                signs *= 1.0 - 2.0 * bits
            est += float(np.dot(signs, f))
        est /= len(compatible)
        op = np.array([[1.0 + 0.0j]])
        for l in labels:
            op = np.kron(op, _PAULI_1Q[l])
        rho += est * op / 16.0
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.trace(rho).real


def fidelity(rho, target):
    """<target| rho |target>, clamped to [0, 1]."""
    rho = np.asarray(rho, dtype=complex)
    target = np.asarray(target, dtype=complex)
    val = float(np.real(np.vdot(target, rho @ target)))
    return min(max(val, 0.0), 1.0)


def monte_carlo_uncertainty(dataset, statistic, runs=10, seed=0, max_iter=5000):
    """Resample every count as Poisson(observed), rerun the reconstruction and
    the statistic; returns (sample mean, sample std).

    `statistic` maps a reconstructed 16x16 density matrix to a float.  Runs use
    derived seeds seed + run index and may fail individually; more than half
    failing is an error.
    """
    if runs < 2:
        raise ValueError("need at least 2 Monte Carlo runs")
    values = []
    failures = 0
    for run in range(runs):
        rng = np.random.default_rng(seed + run)
        records = [
            (s, rng.poisson(np.maximum(c, 0.0)).astype(float))
            for s, c in dataset.records
        ]
        try:
            resampled = TomographyDataset(records=records, meta=dict(dataset.meta))
            result = mle_reconstruct(resampled, max_iter=max_iter)
            values.append(float(statistic(result.rho)))
        except (ValueError, FloatingPointError):
            failures += 1
    if failures > runs // 2:
        raise ValueError(f"{failures}/{runs} Monte Carlo runs failed")
    values = np.asarray(values)
    return float(values.mean()), float(values.std(ddof=1))


def format_with_uncertainty(mean, std):
    """Compact '0.888(2)' rendering: std rounded to one significant digit."""
    if std <= 0 or not math.isfinite(std):
        return f"{mean:.3f}(0)"
    digits = max(0, -int(math.floor(math.log10(std))))
    u = int(round(std * 10**digits))
    if u >= 10:  # rounding pushed the std to the next decade
        u = 1
        digits -= 1
    return f"{mean:.{digits}f}({u})"


def correlation_tensor(dataset, pair):
    """3x3 correlation tensor of a qubit pair from coincidence counts.

    Entry (w, v), bases ordered (X, Y, Z): aggregate counts over the nine
    settings measuring qubit i in w and qubit j in v, marginalized over the
    other two qubits; T = (N_same - N_diff) / (N_same + N_diff).  Settings with
    zero aggregate counts yield NaN entries (flagged, never silently zero).
    """
    i, j = pair
    if i == j or not (1 <= i <= 4) or not (1 <= j <= 4):
        raise ValueError(f"invalid qubit pair {pair}")
    tensor = np.zeros((3, 3))
    order = ("X", "Y", "Z")
    counts_by_setting = dict(dataset.records)
    for a, w in enumerate(order):
        for b, v in enumerate(order):
            num = 0.0
            den = 0.0
            for setting in ALL_SETTINGS:
                if setting[i - 1] != w or setting[j - 1] != v:
                    continue
                c = counts_by_setting[setting]
                bits_i = (np.arange(N_OUTCOMES) >> (4 - i)) & 1
                bits_j = (np.arange(N_OUTCOMES) >> (4 - j)) & 1
                signs = (1.0 - 2.0 * bits_i) * (1.0 - 2.0 * bits_j)
                num += float(np.dot(signs, c))
                den += float(c.sum())
            tensor[a, b] = num / den if den > 0 else math.nan
    return tensor


def density_matrix_to_json(rho, meta=None):
    rho = np.asarray(rho, dtype=complex)
    doc = {"dim": 16, "re": rho.real.tolist(), "im": rho.imag.tolist()}
    if meta is not None:
        doc["meta"] = meta
    return json.dumps(doc, indent=1)


def density_matrix_from_json(text):
    doc = json.loads(text)
    if doc.get("dim") != 16:
        raise ValueError("expected a 16-dimensional density matrix document")
    rho = np.asarray(doc["re"], dtype=float) + 1j * np.asarray(doc["im"], dtype=float)
    if rho.shape != (16, 16):
        raise ValueError("re/im blocks must be 16x16")
    return rho, doc.get("meta", {})
