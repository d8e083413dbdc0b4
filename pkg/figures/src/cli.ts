#!/usr/bin/env node
/**
 * Render every figure from a bundle directory into SVG files.
 *
 * Usage: vbsim-figures --bundle <dir> --out <dir> [--theta 0.304 ...]
 *
 * Exit codes: 0 success, 2 bad arguments or unparsable bundle.
 */

import { mkdirSync, writeFileSync } from "node:fs";
import { join } from "node:path";
import { parseArgs } from "node:util";

import { BundleError, loadBundle } from "./bundle.js";
import { figComplementarity } from "./fig_complementarity.js";
import { figCorrelations } from "./fig_correlations.js";
import { figDensityMatrix } from "./fig_density_matrix.js";
import { figEnergy } from "./fig_energy.js";
import { figMonogamy } from "./fig_monogamy.js";

export function run(argv: string[]): number {
    let values;
    try {
        ({ values } = parseArgs({
            args: argv,
            options: {
                bundle: { type: "string" },
                out: { type: "string" },
                theta: { type: "string", multiple: true },
            },
        }));
    } catch (err) {
        console.error((err as Error).message);
        return 2;
    }
    if (!values.bundle || !values.out) {
        console.error("usage: vbsim-figures --bundle <dir> --out <dir> [--theta <theta_pi> ...]");
        return 2;
    }

    let bundle;
    try {
        bundle = loadBundle(values.bundle);
    } catch (err) {
        if (err instanceof BundleError || err instanceof SyntaxError) {
            console.error(`bad bundle: ${(err as Error).message}`);
            return 2;
        }
        throw err;
    }

    const thetas = values.theta?.length
        ? values.theta.map(Number)
        : bundle.manifest.thetas_pi;
    for (const t of thetas) {
        if (!bundle.densityMatrices.has(t)) {
            console.error(`theta_pi=${t} not present in bundle`);
            return 2;
        }
    }

    mkdirSync(values.out, { recursive: true });
    const write = (name: string, svg: string) => {
        writeFileSync(join(values.out!, name), svg + "\n");
        console.log(`wrote ${join(values.out!, name)}`);
    };

    write("energy.svg", figEnergy(bundle).svg);
    write("monogamy.svg", figMonogamy(bundle).svg);
    write("complementarity.svg", figComplementarity(bundle).svg);
    for (const t of thetas) {
        write(`dm_${t}.svg`, figDensityMatrix(bundle, t).svg);
        write(`correlations_${t}.svg`, figCorrelations(bundle, t).svg);
    }
    return 0;
}

const invokedDirectly =
    process.argv[1] !== undefined &&
    import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (invokedDirectly) {
    process.exit(run(process.argv.slice(2)));
}
