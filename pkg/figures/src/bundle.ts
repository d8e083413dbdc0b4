/**
 * Loader for the data bundle exported by `vbsim report-figures`.
 *
 * The bundle directory holds tidy CSV files (energy curve, pair energies,
 * complementarity sums, per-setting energy points), one density-matrix JSON
 * and one correlation-tensor JSON per coupler setting, and a bundle.json
 * manifest with the generation config. Everything here is parsing only;
 * no physics is recomputed.
 */

import { readFileSync } from "node:fs";
import { join } from "node:path";

export interface NoiseConfig {
    white_noise_p: number;
    visibility_V: number;
}

export interface BundleManifest {
    tool_version: string;
    seed: number;
    noise: NoiseConfig;
    thetas_pi: number[];
    steps: number;
    mean_total: number;
    ideal: boolean;
}

export interface EnergyCurveRow {
    theta: number;
    kappa: number;
    energy: number;
}

export interface PairEnergyRow {
    theta: number;
    e12: number;
    e13: number;
    e14: number;
    e12Renorm: number;
    e13Renorm: number;
    e14Renorm: number;
}

export interface ComplementarityRow {
    theta: number;
    sumSquares: number;
    sumSquaresRenormalized: number;
}

export interface EnergyPointRow {
    theta: number;
    kappa: number;
    energy: number;
}

export interface DensityMatrix {
    dim: number;
    re: number[][];
    im: number[][];
    meta: Record<string, unknown>;
}

export type Pair = "12" | "13" | "14";

export interface CorrelationTensors {
    thetaPi: number;
    pairs: Record<Pair, number[][]>;
    meta: Record<string, unknown>;
}

export interface FigureBundle {
    manifest: BundleManifest;
    energyCurve: EnergyCurveRow[];
    pairEnergies: PairEnergyRow[];
    complementarity: ComplementarityRow[];
    energyPoints: EnergyPointRow[];
    densityMatrices: Map<number, DensityMatrix>;
    tensors: Map<number, CorrelationTensors>;
}

export class BundleError extends Error {}

/** Parse one CSV cell; the exporter renders infinities as "+inf"/"-inf". */
export function parseCell(text: string): number {
    if (text === "+inf" || text === "inf") return Infinity;
    if (text === "-inf") return -Infinity;
    const value = Number(text);
    if (Number.isNaN(value)) {
        throw new BundleError(`unparseable numeric cell: ${JSON.stringify(text)}`);
    }
    return value;
}

/**
 * Parse a headered numeric CSV into row objects keyed by column name.
 * The exporter never quotes or escapes, so splitting on commas is exact.
 */
export function parseCsv(text: string, expectedHeader: string[]): Record<string, number>[] {
    const lines = text.split("\n").filter((line) => line.trim().length > 0);
    if (lines.length === 0) throw new BundleError("empty CSV");
    const header = lines[0].split(",");
    if (header.join(",") !== expectedHeader.join(",")) {
        throw new BundleError(
            `CSV header mismatch: got ${header.join(",")}, want ${expectedHeader.join(",")}`,
        );
    }
    return lines.slice(1).map((line) => {
        const cells = line.split(",");
        if (cells.length !== header.length) {
            throw new BundleError(`row has ${cells.length} cells, header has ${header.length}`);
        }
        const row: Record<string, number> = {};
        header.forEach((name, i) => (row[name] = parseCell(cells[i])));
        return row;
    });
}

function readText(dir: string, name: string): string {
    try {
        return readFileSync(join(dir, name), "utf8");
    } catch (err) {
        throw new BundleError(`cannot read ${name}: ${(err as Error).message}`);
    }
}

function tag(thetaPi: number): string {
    // matches the exporter's file naming: the theta/pi value as given
    return String(thetaPi);
}

function loadDensityMatrix(dir: string, thetaPi: number): DensityMatrix {
    const doc = JSON.parse(readText(dir, `dm_${tag(thetaPi)}.json`));
    const dim = doc.dim;
    for (const part of ["re", "im"] as const) {
        const m = doc[part];
        if (!Array.isArray(m) || m.length !== dim || m.some((r: number[]) => r.length !== dim)) {
            throw new BundleError(`dm_${tag(thetaPi)}.json: ${part} is not ${dim}x${dim}`);
        }
    }
    return { dim, re: doc.re, im: doc.im, meta: doc.meta ?? {} };
}

function loadTensors(dir: string, thetaPi: number): CorrelationTensors {
    const doc = JSON.parse(readText(dir, `tensors_${tag(thetaPi)}.json`));
    const pairs = doc.pairs ?? {};
    for (const pair of ["12", "13", "14"] as const) {
        const t = pairs[pair];
        if (!Array.isArray(t) || t.length !== 3 || t.some((r: number[]) => r.length !== 3)) {
            throw new BundleError(`tensors_${tag(thetaPi)}.json: pair ${pair} is not 3x3`);
        }
    }
    return { thetaPi: doc.theta_pi, pairs, meta: doc.meta ?? {} };
}

export function loadBundle(dir: string): FigureBundle {
    const manifest = JSON.parse(readText(dir, "bundle.json")) as BundleManifest;

    const energyCurve = parseCsv(readText(dir, "energy_curve.csv"), [
        "theta", "kappa", "E_closed",
    ]).map((r) => ({ theta: r.theta, kappa: r.kappa, energy: r.E_closed }));

    const pairEnergies = parseCsv(readText(dir, "pair_energies.csv"), [
        "theta", "e12", "e13", "e14", "e12_renorm", "e13_renorm", "e14_renorm",
    ]).map((r) => ({
        theta: r.theta,
        e12: r.e12,
        e13: r.e13,
        e14: r.e14,
        e12Renorm: r.e12_renorm,
        e13Renorm: r.e13_renorm,
        e14Renorm: r.e14_renorm,
    }));

    const complementarity = parseCsv(readText(dir, "complementarity.csv"), [
        "theta", "sum_squares", "sum_squares_renormalized",
    ]).map((r) => ({
        theta: r.theta,
        sumSquares: r.sum_squares,
        sumSquaresRenormalized: r.sum_squares_renormalized,
    }));

    const energyPoints = parseCsv(readText(dir, "energy_points.csv"), [
        "theta", "kappa", "E",
    ]).map((r) => ({ theta: r.theta, kappa: r.kappa, energy: r.E }));

    const densityMatrices = new Map<number, DensityMatrix>();
    const tensors = new Map<number, CorrelationTensors>();
    for (const thetaPi of manifest.thetas_pi) {
        densityMatrices.set(thetaPi, loadDensityMatrix(dir, thetaPi));
        tensors.set(thetaPi, loadTensors(dir, thetaPi));
    }

    return { manifest, energyCurve, pairEnergies, complementarity, energyPoints, densityMatrices, tensors };
}

/** One-line provenance string embedded into every figure. */
export function provenance(manifest: BundleManifest): string {
    const n = manifest.noise;
    return (
        `vbsim ${manifest.tool_version} seed=${manifest.seed} ` +
        `p=${n.white_noise_p} V=${n.visibility_V} mean_total=${manifest.mean_total} ` +
        `${manifest.ideal ? "ideal" : "mle"}`
    );
}
