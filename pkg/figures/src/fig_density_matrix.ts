/**
 * Heatmaps of the real and imaginary parts of a reconstructed 16x16
 * density matrix in the H/V computational basis, with row and column
 * labels spelled as four-letter H/V strings.
 */

import { DensityMatrix, FigureBundle, provenance } from "./bundle.js";
import { rect, svgDocument, textEl } from "./svg.js";

const CELL = 18;
const LABEL = 46;
const GAP = 36;
const TOP = 44;

export function basisLabels(dim: number): string[] {
    const qubits = Math.round(Math.log2(dim));
    const labels: string[] = [];
    for (let i = 0; i < dim; i++) {
        labels.push(
            i
                .toString(2)
                .padStart(qubits, "0")
                .split("")
                .map((b) => (b === "1" ? "V" : "H"))
                .join(""),
        );
    }
    return labels;
}

/** Diverging blue/white/red fill for a value in [-scale, scale]. */
function cellColor(value: number, scale: number): string {
    const t = Math.max(-1, Math.min(1, value / scale));
    const other = Math.round(255 * (1 - Math.abs(t)));
    return t >= 0
        ? `rgb(255,${other},${other})`
        : `rgb(${other},${other},255)`;
}

export interface DensityMatrixFigure {
    svg: string;
    series: { thetaPi: number; re: number[][]; im: number[][] };
}

function panel(
    matrix: number[][],
    labels: string[],
    x0: number,
    title: string,
    scale: number,
): string[] {
    const dim = matrix.length;
    const parts: string[] = [];
    parts.push(textEl(x0 + (dim * CELL) / 2, TOP - 10, title, {
        "text-anchor": "middle", "font-size": 12,
    }));
    for (let i = 0; i < dim; i++) {
        for (let j = 0; j < dim; j++) {
            parts.push(rect(
                x0 + j * CELL,
                TOP + i * CELL,
                CELL,
                CELL,
                cellColor(matrix[i][j], scale),
                { stroke: "#ddd", "stroke-width": 0.5 },
            ));
        }
        parts.push(textEl(x0 - 4, TOP + i * CELL + CELL * 0.72, labels[i], {
            "text-anchor": "end", "font-size": 7,
        }));
    }
    for (let j = 0; j < dim; j++) {
        parts.push(
            `<g transform="rotate(-90 ${x0 + j * CELL + CELL * 0.72} ${TOP + dim * CELL + 4})">` +
                textEl(x0 + j * CELL + CELL * 0.72, TOP + dim * CELL + 4, labels[j], {
                    "text-anchor": "end", "font-size": 7,
                }) +
                "</g>",
        );
    }
    return parts;
}

export function figDensityMatrix(bundle: FigureBundle, thetaPi: number): DensityMatrixFigure {
    const dm: DensityMatrix | undefined = bundle.densityMatrices.get(thetaPi);
    if (dm === undefined) {
        throw new Error(`no density matrix for theta_pi=${thetaPi} in bundle`);
    }
    const labels = basisLabels(dm.dim);
    const scale = Math.max(
        1e-12,
        ...dm.re.flat().map(Math.abs),
        ...dm.im.flat().map(Math.abs),
    );

    const panelW = dm.dim * CELL;
    const width = LABEL + panelW + GAP + LABEL + panelW + 20;
    const height = TOP + panelW + LABEL + 24;

    const body: string[] = [];
    body.push(...panel(dm.re, labels, LABEL, `Re(rho), theta = ${thetaPi}pi`, scale));
    body.push(...panel(dm.im, labels, LABEL + panelW + GAP + LABEL, "Im(rho)", scale));
    body.push(textEl(LABEL, height - 8, `color scale +/- ${scale.toPrecision(3)}`, {
        "font-size": 9, fill: "#555",
    }));

    return {
        svg: svgDocument(width, height, body, provenance(bundle.manifest)),
        series: { thetaPi, re: dm.re, im: dm.im },
    };
}
