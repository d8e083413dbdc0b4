/**
 * Renormalized pair energies and the complementarity sum. Each e_ij is
 * divided by its maximum over the sweep; the sum of squares of the raw
 * values stays pinned at 1 for ideal data and drops under noise.
 */

import { FigureBundle, provenance } from "./bundle.js";
import { polyline, scaleLinear, svgDocument, textEl, xAxis, yAxis } from "./svg.js";

const W = 640;
const H = 420;
const MARGIN = { left: 60, right: 20, top: 24, bottom: 52 };

const COLORS: Record<string, string> = {
    e12Renorm: "#c0392b",
    e13Renorm: "#1f3c88",
    e14Renorm: "#1e8449",
};

export interface ComplementarityFigure {
    svg: string;
    series: {
        theta: number[];
        e12Renorm: number[];
        e13Renorm: number[];
        e14Renorm: number[];
        sumSquares: number[];
    };
}

export function figComplementarity(bundle: FigureBundle): ComplementarityFigure {
    const rows = bundle.pairEnergies;
    const comp = bundle.complementarity;
    const series = {
        theta: rows.map((r) => r.theta),
        e12Renorm: rows.map((r) => r.e12Renorm),
        e13Renorm: rows.map((r) => r.e13Renorm),
        e14Renorm: rows.map((r) => r.e14Renorm),
        sumSquares: comp.map((r) => r.sumSquares),
    };

    const thetaLo = Math.min(...series.theta);
    const thetaHi = Math.max(...series.theta);
    const lo = Math.min(-0.5, ...series.e12Renorm, ...series.e13Renorm, ...series.e14Renorm);
    const hi = Math.max(1.1, ...series.sumSquares);
    const sx = scaleLinear([thetaLo, thetaHi], [MARGIN.left, W - MARGIN.right]);
    const sy = scaleLinear([lo, hi], [H - MARGIN.bottom, MARGIN.top]);

    const body: string[] = [];
    for (const key of ["e12Renorm", "e13Renorm", "e14Renorm"] as const) {
        body.push(polyline(rows.map((r) => [sx(r.theta), sy(r[key])]), COLORS[key], 2));
    }
    body.push(polyline(comp.map((r) => [sx(r.theta), sy(r.sumSquares)]), "black", 2, "6 3"));
    body.push(textEl(sx(thetaLo) + 6, sy(series.sumSquares[0]) - 6, "sum of squares", {
        "font-size": 11,
    }));
    body.push(textEl(W - MARGIN.right - 4, MARGIN.top + 12, "e12/e12max, e13/e13max, e14/e14max", {
        "text-anchor": "end", "font-size": 10, fill: "#555",
    }));

    body.push(xAxis(sx, H - MARGIN.bottom, {
        ticks: [thetaLo, Math.PI / 4, Math.atan(Math.sqrt(2)), Math.PI / 2],
        labels: ["arctan(1/sqrt2)", "pi/4", "0.304pi", "pi/2"],
        title: "theta",
    }));
    body.push(yAxis(sy, MARGIN.left, {
        ticks: [-0.5, 0, 0.5, 1],
        labels: ["-0.5", "0", "0.5", "1"],
        title: "renormalized pair energy",
    }));

    return { svg: svgDocument(W, H, body, provenance(bundle.manifest)), series };
}
