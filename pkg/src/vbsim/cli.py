"""Command-line orchestration: sweeps, dataset synthesis, reconstruction,
analysis reports and figure-ready data export.

Angles are passed as multiples of pi (--theta-pi 0.304) and stored in radians
internally.  Exit codes: 0 success, 2 domain error, 3 I/O error, 4 MLE
non-convergence.  VBSIM_SEED provides the default seed.
"""

import argparse
import json
import math
import os
import sys

import numpy as np

from . import __version__
from . import observables, optics, spin_model, tomography

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_IO = 3
EXIT_NONCONVERGED = 4

#: The eight coupler settings (in units of pi) whose states are reconstructed.
REFERENCE_THETAS_PI = (0.045, 0.197, 0.222, 0.25, 0.304, 0.366, 0.455, 0.468)


def _default_seed():
    return int(os.environ.get("VBSIM_SEED", "0"))


def _fmt(x):
    if x == math.inf:
        return "+inf"
    if x == -math.inf:
        return "-inf"
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return f"{x:.17g}"


def _write_text(path, text):
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def _noise_from_args(args):
    return optics.NoiseParams(
        white_noise_p=args.noise_p, visibility_V=args.visibility
    )


def _meta(args, theta_pi=None, noise=None, **extra):
    meta = {"tool_version": __version__}
    if theta_pi is not None:
        meta["theta"] = theta_pi * math.pi
        meta["theta_pi"] = theta_pi
    if hasattr(args, "seed"):
        meta["seed"] = args.seed
    if noise is not None:
        meta["noise"] = {
            "white_noise_p": noise.white_noise_p,
            "visibility_V": noise.visibility_V,
        }
    meta.update(extra)
    return meta


def _state_for(theta, noise):
    """(rho, success_probability, ideal pure state) for a coupler angle."""
    ideal = spin_model.ground_state_analytic(theta)
    if noise.white_noise_p == 0.0 and noise.visibility_V == 1.0:
        result = optics.ground_state_via_optics(theta)
        rho = np.outer(result.state, result.state.conj())
        return rho, result.success_probability, ideal
    rho, prob = optics.noisy_ground_state(theta, noise)
    return rho, prob, ideal


def cmd_sweep_energy(args):
    if args.kappas is not None:
        kappas = [float(k) for k in args.kappas.split(",")]
        thetas = [spin_model.theta_from_kappa(k) for k in kappas]
    else:
        if args.steps < 2:
            raise ValueError("sweep needs at least 2 steps")
        lo = args.theta_min_pi * math.pi if args.theta_min_pi is not None else spin_model.THETA_MIN
        hi = args.theta_max_pi * math.pi
        thetas = list(np.linspace(lo, hi, args.steps))
        kappas = [spin_model.kappa_from_theta(t) for t in thetas]

    lines = ["theta,kappa,E_closed,E_eigensolver,e12,e13,e14,complementarity_sum"]
    for theta, kappa in zip(thetas, kappas):
        e12, e13, e14 = observables.pair_energies_closed(theta)
        comp = observables.complementarity_sum((e12, e13, e14))
        if math.isfinite(kappa):
            e_closed = spin_model.ground_state_energy_closed(kappa)
            e_eig, _ = spin_model.min_eigenpair(spin_model.build_hamiltonian(kappa))
        else:
            e_closed = e_eig = -math.inf  # energy in units of J1 diverges at the endpoints
        lines.append(
            ",".join(
                _fmt(x) for x in (theta, kappa, e_closed, e_eig, e12, e13, e14, comp)
            )
        )
    _write_text(args.out, "\n".join(lines) + "\n")
    return EXIT_OK


def _check_theta_pi(theta_pi):
    if not (0.0 <= theta_pi <= 0.5):
        raise ValueError(f"theta-pi={theta_pi} outside [0, 0.5]")
    return theta_pi * math.pi


def cmd_ground_state(args):
    theta = _check_theta_pi(args.theta_pi)
    noise = _noise_from_args(args)
    rho, prob, ideal = _state_for(theta, noise)
    fid = tomography.fidelity(rho, ideal)
    meta = _meta(
        args,
        theta_pi=args.theta_pi,
        noise=noise,
        success_probability=prob,
        fidelity_ideal=fid,
    )
    _write_text(args.out, tomography.density_matrix_to_json(rho, meta=meta))
    print(f"theta={args.theta_pi}*pi  success_probability={prob:.6f}  fidelity={fid:.6f}")
    return EXIT_OK


def cmd_simulate_counts(args):
    theta = _check_theta_pi(args.theta_pi)
    noise = _noise_from_args(args)
    rho, _, _ = _state_for(theta, noise)
    dataset = tomography.sample_dataset(
        rho,
        args.mean_total,
        args.seed,
        extra_meta={
            "theta": theta,
            "theta_pi": args.theta_pi,
            "noise": {
                "white_noise_p": noise.white_noise_p,
                "visibility_V": noise.visibility_V,
            },
            "tool_version": __version__,
        },
    )
    _write_text(args.out, dataset.to_json())
    return EXIT_OK


def _reconstruct_one(dataset, args):
    result = tomography.mle_reconstruct(dataset, max_iter=args.max_iter)
    report = {
        "iterations": result.iterations,
        "converged": result.converged,
        "log_likelihood": result.log_likelihood,
        "meta": dict(dataset.meta),
        "tool_version": __version__,
    }
    theta = dataset.meta.get("theta")
    if theta is not None:
        ideal = spin_model.ground_state_analytic(theta)
        report["fidelity"] = tomography.fidelity(result.rho, ideal)
        if args.runs >= 2:
            mean, std = tomography.monte_carlo_uncertainty(
                dataset,
                lambda r: tomography.fidelity(r, ideal),
                runs=args.runs,
                seed=args.seed,
                max_iter=args.max_iter,
            )
            report["fidelity_mc"] = {
                "mean": mean,
                "std": std,
                "formatted": tomography.format_with_uncertainty(mean, std),
            }
            for label, j in (("e12", 2), ("e13", 3), ("e14", 4)):
                m, s = tomography.monte_carlo_uncertainty(
                    dataset,
                    lambda r, jj=j: observables.pair_energy(
                        observables.partial_trace(r, (1, jj))
                    ),
                    runs=args.runs,
                    seed=args.seed,
                    max_iter=args.max_iter,
                )
                report[label] = {
                    "value": observables.pair_energy(
                        observables.partial_trace(result.rho, (1, j))
                    ),
                    "mc_mean": m,
                    "mc_std": s,
                    "formatted": tomography.format_with_uncertainty(m, s),
                }
    return result, report


def cmd_reconstruct(args):
    jobs = []  # (tag, dataset)
    if args.batch_thetas_pi:
        noise = _noise_from_args(args)
        for tp in (float(t) for t in args.batch_thetas_pi.split(",")):
            theta = _check_theta_pi(tp)
            rho, _, _ = _state_for(theta, noise)
            dataset = tomography.sample_dataset(
                rho,
                args.mean_total,
                args.seed,
                extra_meta={"theta": theta, "theta_pi": tp},
            )
            jobs.append((f"{tp:g}", dataset))
    for path in args.datasets:
        try:
            with open(path) as fh:
                dataset = tomography.TomographyDataset.from_json(fh.read())
        except FileNotFoundError as exc:
            raise OSError(str(exc)) from exc
        tag = os.path.splitext(os.path.basename(path))[0]
        jobs.append((tag, dataset))
    if not jobs:
        raise ValueError("nothing to reconstruct: give dataset paths or --batch-thetas-pi")

    single = len(jobs) == 1 and not os.path.isdir(args.out)
    if not single:
        os.makedirs(args.out, exist_ok=True)
    all_converged = True
    for tag, dataset in jobs:
        result, report = _reconstruct_one(dataset, args)
        all_converged &= result.converged
        if single:
            rho_path, report_path = args.out, os.path.splitext(args.out)[0] + "_report.json"
        else:
            rho_path = os.path.join(args.out, f"rho_{tag}.json")
            report_path = os.path.join(args.out, f"report_{tag}.json")
        _write_text(
            rho_path,
            tomography.density_matrix_to_json(
                result.rho, meta=_meta(args, **{"dataset_meta": dict(dataset.meta)})
            ),
        )
        _write_text(report_path, json.dumps(report, indent=1))
        fid = report.get("fidelity")
        fid_txt = f"  F={report['fidelity_mc']['formatted']}" if "fidelity_mc" in report else (
            f"  F={fid:.4f}" if fid is not None else ""
        )
        print(f"{tag}: iterations={result.iterations} converged={result.converged}{fid_txt}")
    return EXIT_OK if all_converged else EXIT_NONCONVERGED


def _parse_kappa(text):
    if text in ("inf", "+inf"):
        return math.inf
    if text == "-inf":
        return -math.inf
    return float(text)


def analyze_density_matrix(rho, kappa):
    e12, e13, e14 = observables.pair_energies(rho)
    c12, c13, c14 = observables.pair_concurrences(rho)
    report = {
        "e12": e12,
        "e13": e13,
        "e14": e14,
        "concurrence_12": c12,
        "concurrence_13": c13,
        "concurrence_14": c14,
        "complementarity_sum": observables.complementarity_sum((e12, e13, e14)),
        "monogamy_sum": c12 * c12 + c13 * c13 + c14 * c14,
        "total_energy": observables.total_energy(rho, kappa)
        if kappa is not None and math.isfinite(kappa)
        else None,
        "tensors": {
            f"1{j}": observables.correlation_tensor_exact(rho, (1, j)).tolist()
            for j in (2, 3, 4)
        },
    }
    return report


def cmd_analyze(args):
    try:
        with open(args.density_matrix) as fh:
            rho, meta = tomography.density_matrix_from_json(fh.read())
    except FileNotFoundError as exc:
        raise OSError(str(exc)) from exc
    kappa = _parse_kappa(args.kappa) if args.kappa is not None else None
    report = analyze_density_matrix(rho, kappa)
    report["kappa"] = _fmt(kappa) if kappa is not None else None
    report["input_meta"] = meta
    report["tool_version"] = __version__
    _write_text(args.out, json.dumps(report, indent=1))
    return EXIT_OK


def cmd_report_figures(args):
    os.makedirs(args.out, exist_ok=True)
    noise = _noise_from_args(args)
    thetas_pi = [float(t) for t in args.thetas_pi.split(",")]

    # theory sweep over the covered coupling range
    thetas = np.linspace(spin_model.THETA_MIN, math.pi / 2.0, args.steps)
    energy_lines = ["theta,kappa,E_closed"]
    pair_rows = []
    for theta in thetas:
        kappa = spin_model.kappa_from_theta(float(theta))
        e_closed = (
            spin_model.ground_state_energy_closed(kappa)
            if math.isfinite(kappa)
            else -math.inf
        )
        energy_lines.append(f"{_fmt(theta)},{_fmt(kappa)},{_fmt(e_closed)}")
        pair_rows.append((float(theta),) + observables.pair_energies_closed(float(theta)))
    _write_text(os.path.join(args.out, "energy_curve.csv"), "\n".join(energy_lines) + "\n")

    e_max = [max(abs(row[k]) for row in pair_rows) for k in (1, 2, 3)]
    pair_lines = ["theta,e12,e13,e14,e12_renorm,e13_renorm,e14_renorm"]
    comp_lines = ["theta,sum_squares,sum_squares_renormalized"]
    for theta, e12, e13, e14 in pair_rows:
        renorm = (e12 / e_max[0], e13 / e_max[1], e14 / e_max[2])
        pair_lines.append(
            ",".join(_fmt(x) for x in (theta, e12, e13, e14) + renorm)
        )
        comp_lines.append(
            ",".join(
                _fmt(x)
                for x in (
                    theta,
                    observables.complementarity_sum((e12, e13, e14)),
                    observables.complementarity_sum(renorm),
                )
            )
        )
    _write_text(os.path.join(args.out, "pair_energies.csv"), "\n".join(pair_lines) + "\n")
    _write_text(os.path.join(args.out, "complementarity.csv"), "\n".join(comp_lines) + "\n")

    # per-theta density matrices and correlation tensors
    point_lines = ["theta,kappa,E"]
    for tp in thetas_pi:
        theta = _check_theta_pi(tp)
        tag = f"{tp:g}"
        if args.ideal:
            rho, _, _ = _state_for(theta, noise)
        else:
            rho_noisy, _, _ = _state_for(theta, noise)
            dataset = tomography.sample_dataset(
                rho_noisy, args.mean_total, args.seed, extra_meta={"theta": theta, "theta_pi": tp}
            )
            rho = tomography.mle_reconstruct(dataset, max_iter=args.max_iter).rho
        meta = _meta(args, theta_pi=tp, noise=noise, source="ideal" if args.ideal else "mle")
        _write_text(
            os.path.join(args.out, f"dm_{tag}.json"),
            tomography.density_matrix_to_json(rho, meta=meta),
        )
        tensors = {
            f"1{j}": observables.correlation_tensor_exact(rho, (1, j)).tolist()
            for j in (2, 3, 4)
        }
        _write_text(
            os.path.join(args.out, f"tensors_{tag}.json"),
            json.dumps({"theta_pi": tp, "pairs": tensors, "meta": meta}, indent=1),
        )
        kappa = spin_model.kappa_from_theta(theta) if theta >= spin_model.THETA_MIN else None
        if kappa is not None and math.isfinite(kappa):
            point_lines.append(
                f"{_fmt(theta)},{_fmt(kappa)},{_fmt(observables.total_energy(rho, kappa))}"
            )
    _write_text(os.path.join(args.out, "energy_points.csv"), "\n".join(point_lines) + "\n")

    manifest = _meta(args, noise=noise, thetas_pi=thetas_pi, steps=args.steps,
                     mean_total=args.mean_total, ideal=bool(args.ideal))
    _write_text(os.path.join(args.out, "bundle.json"), json.dumps(manifest, indent=1))
    return EXIT_OK


def _add_noise_flags(p):
    p.add_argument("--noise-p", type=float, default=0.0, help="white-noise fraction")
    p.add_argument("--visibility", type=float, default=1.0, help="two-photon interference visibility")


def build_parser():
    parser = argparse.ArgumentParser(prog="vbsim", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep-energy", help="theory sweep: energies and pair witnesses")
    p.add_argument("--theta-min-pi", type=float, default=None)
    p.add_argument("--theta-max-pi", type=float, default=0.5)
    p.add_argument("--steps", type=int, default=101)
    p.add_argument("--kappas", type=str, default=None, help="explicit comma-separated kappa list")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep_energy)

    p = sub.add_parser("ground-state", help="write the (possibly noisy) ground state")
    p.add_argument("--theta-pi", type=float, required=True)
    p.add_argument("--seed", type=int, default=_default_seed())
    _add_noise_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ground_state)

    p = sub.add_parser("simulate-counts", help="synthesize a Poisson tomography dataset")
    p.add_argument("--theta-pi", type=float, required=True)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--mean-total", type=float, default=600.0)
    _add_noise_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_simulate_counts)

    p = sub.add_parser("reconstruct", help="MLE reconstruction with Monte Carlo errors")
    p.add_argument("datasets", nargs="*", help="dataset JSON paths")
    p.add_argument("--batch-thetas-pi", type=str, default=None,
                   help="simulate+reconstruct these theta/pi values in one go")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--mean-total", type=float, default=600.0)
    p.add_argument("--runs", type=int, default=10, help="Monte Carlo runs (0 disables)")
    p.add_argument("--max-iter", type=int, default=5000)
    _add_noise_flags(p)
    p.add_argument("--out", required=True, help="output file (single) or directory (batch)")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("analyze", help="observables report for a density-matrix file")
    p.add_argument("density_matrix")
    p.add_argument("--kappa", type=str, default=None, help="float or +inf/-inf")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("report-figures", help="end-to-end figure-data bundle")
    p.add_argument("--thetas-pi", type=str, default=",".join(str(t) for t in REFERENCE_THETAS_PI))
    p.add_argument("--steps", type=int, default=201)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--mean-total", type=float, default=600.0)
    p.add_argument("--max-iter", type=int, default=5000)
    p.add_argument("--ideal", action="store_true", help="export ideal states instead of reconstructions")
    _add_noise_flags(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_report_figures)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
