import math

import numpy as np
import pytest

from vbsim import observables as obs, spin_model as sm, tomography as tom

RVB_THETA = math.atan(math.sqrt(2.0))


def random_density(rng):
    a = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def test_projectors_resolve_identity():
    total = sum(tom.basis_projector("ZZZZ", o) for o in range(16))
    assert np.allclose(total, np.eye(16), atol=1e-12)


def test_projectors_rank_one():
    rng = np.random.default_rng(3)
    for _ in range(20):
        setting = "".join(rng.choice(list(tom.BASIS_LABELS), size=4))
        outcome = int(rng.integers(0, 16))
        p = tom.basis_projector(setting, outcome)
        assert np.allclose(p @ p, p, atol=1e-12)
        assert np.trace(p).real == pytest.approx(1.0, abs=1e-12)


def test_singlet_z_basis_pattern():
    rho = sm.dimer_state("=")
    probs = tom.expected_distribution(rho, "ZZZZ")
    # singlets on (1,2) and (3,4): weight 1/4 on each of HVHV, HVVH, VHHV, VHVH
    expected = np.zeros(16)
    for ket in ("HVHV", "HVVH", "VHHV", "VHVH"):
        expected[int("".join("1" if c == "V" else "0" for c in ket), 2)] = 0.25
    assert np.allclose(probs, expected, atol=1e-12)


def test_expected_distribution_maximally_mixed():
    probs = tom.expected_distribution(np.eye(16) / 16.0, "XYZX")
    assert np.allclose(probs, 1.0 / 16.0, atol=1e-12)
    assert probs.sum() == pytest.approx(1.0, abs=1e-10)


def test_expected_distribution_matches_state_amplitudes():
    psi = sm.ground_state_analytic(math.pi / 2.0)
    probs = tom.expected_distribution(psi, "ZZZZ")
    assert np.allclose(probs, np.abs(psi) ** 2, atol=1e-12)


def test_expected_distribution_rejects_unphysical():
    bad = np.diag(np.concatenate([[1.5], -0.5 / 15.0 * np.ones(15)])).astype(complex)
    with pytest.raises(ValueError):
        tom.expected_distribution(bad, "ZZZZ")


def test_sampling_deterministic():
    rho = sm.ground_state_analytic(1.0)
    a = tom.sample_dataset(rho, 600.0, seed=11)
    b = tom.sample_dataset(rho, 600.0, seed=11)
    assert a.to_json() == b.to_json()
    c = tom.sample_dataset(rho, 600.0, seed=12)
    assert a.to_json() != c.to_json()


def test_sampling_poisson_means():
    rho = np.eye(16) / 16.0
    ds = tom.sample_dataset(rho, 1600.0, seed=5)
    counts = ds.counts_flat()
    # each outcome mean is 100; the grand mean over 1296 cells is tight
    assert abs(counts.mean() - 100.0) < 3.0 * math.sqrt(100.0 / counts.size)


def test_dataset_round_trip_and_validation():
    rho = sm.ground_state_analytic(1.0)
    ds = tom.sample_dataset(rho, 600.0, seed=11)
    again = tom.TomographyDataset.from_json(ds.to_json())
    assert np.allclose(again.counts_flat(), ds.counts_flat())
    with pytest.raises(ValueError):
        tom.TomographyDataset(records=ds.records[:5])


def test_mle_exact_counts_recovers_truth():
    psi = sm.dimer_state("parallel")
    ds = tom.exact_dataset(psi, 600.0)
    res = tom.mle_reconstruct(ds)
    assert res.converged
    assert tom.fidelity(res.rho, psi) >= 1.0 - 1e-6


def test_mle_physicality_and_monotonicity():
    psi = sm.ground_state_analytic(RVB_THETA)
    ds = tom.sample_dataset(psi, 600.0, seed=1)
    res = tom.mle_reconstruct(ds)
    rho = res.rho
    assert np.linalg.norm(rho - rho.conj().T) < 1e-10
    assert np.linalg.eigvalsh(rho)[0] > -1e-10
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-10)
    assert np.all(np.diff(res.ll_history) >= -1e-12)
    assert tom.fidelity(rho, psi) >= 0.98


def test_mle_maximally_mixed_purity():
    ds = tom.sample_dataset(np.eye(16) / 16.0, 600.0, seed=2)
    res = tom.mle_reconstruct(ds)
    purity = float(np.trace(res.rho @ res.rho).real)
    assert 1.0 / 16.0 <= purity <= 1.0 / 16.0 + 0.05


def test_mle_rejects_empty_dataset():
    records = [(s, np.zeros(16)) for s in tom.ALL_SETTINGS]
    ds = tom.TomographyDataset(records=records)
    with pytest.raises(ValueError):
        tom.mle_reconstruct(ds)


def test_statistical_consistency_in_mean_total():
    psi = sm.ground_state_analytic(1.0)
    fids = []
    for mean_total in (60.0, 600.0, 6000.0, 60000.0):
        vals = [
            tom.fidelity(
                tom.mle_reconstruct(tom.sample_dataset(psi, mean_total, seed=s)).rho, psi
            )
            for s in range(5)
        ]
        fids.append(np.mean(vals))
    assert np.all(np.diff(fids) > 0)


def test_linear_inversion_exact_and_sampled():
    rng = np.random.default_rng(9)
    rho = random_density(rng)
    ds = tom.exact_dataset(rho, 1000.0)
    est = tom.linear_inversion(ds)
    assert np.linalg.norm(est - rho) < 1e-10
    sampled = tom.sample_dataset(rho, 600.0, seed=1)
    est2 = tom.linear_inversion(sampled)
    assert np.linalg.norm(est2 - est2.conj().T) < 1e-12
    assert np.trace(est2).real == pytest.approx(1.0, abs=1e-12)


def test_linear_inversion_approaches_mle_with_counts():
    psi = sm.ground_state_analytic(1.0)
    dists = []
    for mean_total in (600.0, 60000.0):
        ds = tom.sample_dataset(psi, mean_total, seed=4)
        d = np.linalg.norm(tom.linear_inversion(ds) - tom.mle_reconstruct(ds).rho)
        dists.append(d)
    assert dists[1] < dists[0]


def test_fidelity_trivials():
    psi = sm.dimer_state("=")
    assert tom.fidelity(np.outer(psi, psi.conj()), psi) == pytest.approx(1.0, abs=1e-12)
    assert tom.fidelity(np.eye(16) / 16.0, psi) == pytest.approx(1.0 / 16.0, abs=1e-12)
    other = sm.dimer_state("parallel") - 0.5 * psi  # orthogonal to psi
    other /= np.linalg.norm(other)
    assert tom.fidelity(np.outer(other, other.conj()), psi) == pytest.approx(0.0, abs=1e-12)


def test_monte_carlo_trace_statistic_is_fixed():
    psi = sm.ground_state_analytic(1.0)
    ds = tom.sample_dataset(psi, 600.0, seed=3)
    mean, std = tom.monte_carlo_uncertainty(
        ds, lambda rho: float(np.trace(rho).real), runs=4, seed=0
    )
    assert mean == pytest.approx(1.0, abs=1e-10)
    assert std < 1e-10


def test_monte_carlo_large_count_fidelity_spread():
    psi = sm.ground_state_analytic(1.0)
    ds = tom.exact_dataset(psi, 1e6)
    mean, std = tom.monte_carlo_uncertainty(
        ds, lambda rho: tom.fidelity(rho, psi), runs=10, seed=0
    )
    assert std < 1e-3
    assert mean > 0.999


def test_monte_carlo_run_requirements():
    psi = sm.ground_state_analytic(1.0)
    ds = tom.sample_dataset(psi, 600.0, seed=3)
    with pytest.raises(ValueError):
        tom.monte_carlo_uncertainty(ds, lambda rho: 1.0, runs=1)


def test_uncertainty_formatting():
    assert tom.format_with_uncertainty(0.888, 0.002) == "0.888(2)"
    assert tom.format_with_uncertainty(0.712, 0.004) == "0.712(4)"
    assert tom.format_with_uncertainty(0.746, 0.0097) == "0.75(1)"
    assert tom.format_with_uncertainty(1.0, 0.0) == "1.000(0)"


def test_correlation_tensor_dimer():
    ds = tom.exact_dataset(sm.dimer_state("="), 600.0)
    t12 = tom.correlation_tensor(ds, (1, 2))
    assert np.allclose(t12, -np.eye(3), atol=1e-10)
    t13 = tom.correlation_tensor(ds, (1, 3))
    assert np.allclose(t13, 0.0, atol=1e-10)
    with pytest.raises(ValueError):
        tom.correlation_tensor(ds, (2, 2))


def test_correlation_tensor_matches_born_rule():
    rng = np.random.default_rng(21)
    for _ in range(20):
        rho = random_density(rng)
        ds = tom.exact_dataset(rho, 777.0)
        pair = tuple(sorted(rng.choice(np.arange(1, 5), size=2, replace=False)))
        got = tom.correlation_tensor(ds, pair)
        want = obs.correlation_tensor_exact(rho, pair)
        assert np.allclose(got, want, atol=1e-10)


def test_correlation_tensor_flags_zero_counts():
    records = [(s, np.zeros(16)) for s in tom.ALL_SETTINGS]
    ds = tom.TomographyDataset(records=records)
    t = tom.correlation_tensor(ds, (1, 2))
    assert np.all(np.isnan(t))


def test_density_matrix_json_round_trip():
    rng = np.random.default_rng(6)
    rho = random_density(rng)
    text = tom.density_matrix_to_json(rho, meta={"seed": 6})
    back, meta = tom.density_matrix_from_json(text)
    assert np.allclose(back, rho, atol=1e-15)
    assert meta == {"seed": 6}
