/**
 * Grouped bar chart of the three two-spin correlation tensors T12, T13,
 * T14 at one coupler setting. Bars show the negated tensor entries
 * (singlet correlations are negative) in the fixed axis order
 * XX, XY, XZ, YX, YY, YZ, ZX, ZY, ZZ.
 */

import { CorrelationTensors, FigureBundle, Pair, provenance } from "./bundle.js";
import { line, rect, scaleLinear, svgDocument, textEl, yAxis } from "./svg.js";

export const AXIS_ORDER = ["XX", "XY", "XZ", "YX", "YY", "YZ", "ZX", "ZY", "ZZ"];

const PAIRS: Pair[] = ["12", "13", "14"];
const COLORS: Record<Pair, string> = { "12": "#c0392b", "13": "#1f3c88", "14": "#1e8449" };

const BAR = 14;
const GROUP_GAP = 30;
const MARGIN = { left: 56, right: 16, top: 34, bottom: 56 };

export interface CorrelationsFigure {
    svg: string;
    series: { thetaPi: number; pairs: Record<Pair, number[][]> };
}

function flatten(tensor: number[][]): number[] {
    // row-major: XX, XY, XZ, YX, ...
    return tensor.flat();
}

export function figCorrelations(bundle: FigureBundle, thetaPi: number): CorrelationsFigure {
    const tensors: CorrelationTensors | undefined = bundle.tensors.get(thetaPi);
    if (tensors === undefined) {
        throw new Error(`no correlation tensors for theta_pi=${thetaPi} in bundle`);
    }

    const groupW = PAIRS.length * BAR;
    const plotW = AXIS_ORDER.length * (groupW + GROUP_GAP);
    const width = MARGIN.left + plotW + MARGIN.right;
    const height = 360;
    const sy = scaleLinear([-1.05, 1.05], [height - MARGIN.bottom, MARGIN.top]);

    const body: string[] = [];
    body.push(textEl(MARGIN.left, MARGIN.top - 14,
        `negated correlation tensors -T12, -T13, -T14 at theta = ${thetaPi}pi`,
        { "font-size": 12 }));
    body.push(line(MARGIN.left, sy(0), width - MARGIN.right, sy(0), "black"));

    AXIS_ORDER.forEach((label, comp) => {
        const gx = MARGIN.left + comp * (groupW + GROUP_GAP) + GROUP_GAP / 2;
        PAIRS.forEach((pair, k) => {
            // plot the negated entries so singlet correlations point up
            const value = -flatten(tensors.pairs[pair])[comp];
            const y = sy(Math.max(value, 0));
            const h = Math.abs(sy(value) - sy(0));
            body.push(rect(gx + k * BAR, y, BAR - 2, h, COLORS[pair]));
        });
        body.push(textEl(gx + groupW / 2, height - MARGIN.bottom + 16, label, {
            "text-anchor": "middle", "font-size": 10,
        }));
    });

    PAIRS.forEach((pair, k) => {
        body.push(rect(MARGIN.left + k * 70, height - 22, 10, 10, COLORS[pair]));
        body.push(textEl(MARGIN.left + k * 70 + 14, height - 13, `-T${pair}`, { "font-size": 10 }));
    });
    body.push(yAxis(sy, MARGIN.left, {
        ticks: [-1, -0.5, 0, 0.5, 1],
        labels: ["-1", "-0.5", "0", "0.5", "1"],
        title: "-T components",
    }));

    return {
        svg: svgDocument(width, height, body, provenance(bundle.manifest)),
        series: { thetaPi, pairs: tensors.pairs },
    };
}
