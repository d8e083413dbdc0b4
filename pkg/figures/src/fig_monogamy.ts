/**
 * Pair-wise Heisenberg energies e12, e13, e14 against the coupler angle.
 * Entanglement monogamy shows up as the trade-off between the three curves;
 * values above the 1/3 witness line certify pair entanglement.
 */

import { FigureBundle, provenance } from "./bundle.js";
import { polyline, scaleLinear, svgDocument, textEl, xAxis, yAxis } from "./svg.js";

const W = 640;
const H = 420;
const MARGIN = { left: 60, right: 20, top: 24, bottom: 52 };

const COLORS: Record<string, string> = { e12: "#c0392b", e13: "#1f3c88", e14: "#1e8449" };

export interface MonogamyFigure {
    svg: string;
    series: {
        theta: number[];
        e12: number[];
        e13: number[];
        e14: number[];
    };
}

export function figMonogamy(bundle: FigureBundle): MonogamyFigure {
    const rows = bundle.pairEnergies;
    const series = {
        theta: rows.map((r) => r.theta),
        e12: rows.map((r) => r.e12),
        e13: rows.map((r) => r.e13),
        e14: rows.map((r) => r.e14),
    };

    const thetaLo = Math.min(...series.theta);
    const thetaHi = Math.max(...series.theta);
    const sx = scaleLinear([thetaLo, thetaHi], [MARGIN.left, W - MARGIN.right]);
    const sy = scaleLinear([-0.5, 1.05], [H - MARGIN.bottom, MARGIN.top]);

    const body: string[] = [];
    // entanglement witness threshold
    body.push(
        polyline(
            [
                [sx(thetaLo), sy(1 / 3)],
                [sx(thetaHi), sy(1 / 3)],
            ],
            "#888",
            1,
            "5 4",
        ),
    );
    body.push(textEl(W - MARGIN.right - 4, sy(1 / 3) - 5, "e = 1/3", {
        "text-anchor": "end", "font-size": 10, fill: "#555",
    }));

    for (const key of ["e12", "e13", "e14"] as const) {
        body.push(polyline(rows.map((r) => [sx(r.theta), sy(r[key])]), COLORS[key], 2));
        const last = rows[rows.length - 1];
        body.push(textEl(sx(last.theta) - 4, sy(last[key]) - 6, key, {
            "text-anchor": "end", "font-size": 11, fill: COLORS[key],
        }));
    }

    body.push(xAxis(sx, H - MARGIN.bottom, {
        ticks: [thetaLo, Math.PI / 4, Math.atan(Math.sqrt(2)), Math.PI / 2],
        labels: ["arctan(1/sqrt2)", "pi/4", "0.304pi", "pi/2"],
        title: "theta",
    }));
    body.push(yAxis(sy, MARGIN.left, {
        ticks: [-1 / 3, 0, 1 / 3, 2 / 3, 1],
        labels: ["-1/3", "0", "1/3", "2/3", "1"],
        title: "pair energy e_ij",
    }));

    return { svg: svgDocument(W, H, body, provenance(bundle.manifest)), series };
}
