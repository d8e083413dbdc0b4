/**
 * Ground-state energy versus coupler angle: the closed-form theory line
 * with reconstructed-state energy markers, annotated at the four named
 * product/superposition states along the sweep.
 */

import { FigureBundle, provenance } from "./bundle.js";
import { circle, polyline, scaleLinear, svgDocument, textEl, xAxis, yAxis } from "./svg.js";

const W = 640;
const H = 440;
const MARGIN = { left: 64, right: 20, top: 24, bottom: 52 };

const THETA_MIN = Math.atan(1 / Math.sqrt(2));
const RVB_THETA = Math.atan(Math.sqrt(2));

const ANNOTATIONS: [number, string][] = [
    [THETA_MIN, "dimer + cross"],
    [Math.PI / 4, "dimer (13)(24)"],
    [RVB_THETA, "RVB"],
    [Math.PI / 2, "dimer (12)(34)"],
];

export interface EnergyFigure {
    svg: string;
    series: {
        theta: number[];
        energy: number[];
        pointTheta: number[];
        pointEnergy: number[];
    };
}

export function figEnergy(bundle: FigureBundle): EnergyFigure {
    const series = {
        theta: bundle.energyCurve.map((r) => r.theta),
        energy: bundle.energyCurve.map((r) => r.energy),
        pointTheta: bundle.energyPoints.map((r) => r.theta),
        pointEnergy: bundle.energyPoints.map((r) => r.energy),
    };

    // the energy diverges at both sweep endpoints (|kappa| -> infinity);
    // clip the drawing window so the bounded interior stays readable,
    // leaving the series themselves untouched
    const floor = -30;
    const finite = bundle.energyCurve.filter(
        (r) => Number.isFinite(r.energy) && r.energy >= floor,
    );
    const finitePoints = bundle.energyPoints.filter(
        (r) => Number.isFinite(r.energy) && r.energy >= floor,
    );
    const energies = finite
        .map((r) => r.energy)
        .concat(finitePoints.map((r) => r.energy));
    const eMin = Math.min(...energies);
    const eMax = Math.max(...energies, -4);

    const sx = scaleLinear([THETA_MIN, Math.PI / 2], [MARGIN.left, W - MARGIN.right]);
    const sy = scaleLinear([eMin, eMax], [H - MARGIN.bottom, MARGIN.top]);

    const body: string[] = [];
    body.push(polyline(finite.map((r) => [sx(r.theta), sy(r.energy)]), "#1f3c88", 2));
    for (const p of finitePoints) {
        body.push(circle(sx(p.theta), sy(p.energy), 4, "black"));
    }
    for (const [theta, label] of ANNOTATIONS) {
        body.push(
            polyline(
                [
                    [sx(theta), MARGIN.top],
                    [sx(theta), H - MARGIN.bottom],
                ],
                "#999",
                1,
                "4 3",
            ),
        );
        body.push(textEl(sx(theta), MARGIN.top - 6, label, { "text-anchor": "middle", "font-size": 10 }));
    }

    const xticks = [THETA_MIN, Math.PI / 4, RVB_THETA, Math.PI / 2];
    const xlabels = ["arctan(1/sqrt2)", "pi/4", "0.304pi", "pi/2"];
    body.push(xAxis(sx, H - MARGIN.bottom, { ticks: xticks, labels: xlabels, title: "theta" }));
    const yticks = [];
    for (let v = Math.ceil(eMin); v <= eMax; v += Math.max(1, Math.round((eMax - eMin) / 6))) {
        yticks.push(v);
    }
    body.push(yAxis(sy, MARGIN.left, { ticks: yticks, title: "E(theta)" }));

    return { svg: svgDocument(W, H, body, provenance(bundle.manifest)), series };
}
