/**
 * Minimal SVG assembly helpers: linear scales, axes, polylines, markers,
 * bars, and a document wrapper that embeds provenance metadata.
 */

export interface Scale {
    (value: number): number;
    domain: [number, number];
    range: [number, number];
}

export function scaleLinear(domain: [number, number], range: [number, number]): Scale {
    const [d0, d1] = domain;
    const [r0, r1] = range;
    const f = ((value: number) => r0 + ((value - d0) / (d1 - d0)) * (r1 - r0)) as Scale;
    f.domain = domain;
    f.range = range;
    return f;
}

export function esc(text: string): string {
    return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

const FMT = (v: number) => (Math.abs(v) < 1e-12 ? "0" : String(Math.round(v * 1000) / 1000));

export function textEl(
    x: number,
    y: number,
    content: string,
    attrs: Record<string, string | number> = {},
): string {
    const extra = Object.entries(attrs)
        .map(([k, v]) => ` ${k}="${v}"`)
        .join("");
    return `<text x="${FMT(x)}" y="${FMT(y)}" font-family="sans-serif"${extra}>${esc(content)}</text>`;
}

export function polyline(
    points: [number, number][],
    stroke: string,
    width = 1.5,
    dash = "",
): string {
    const pts = points.map(([x, y]) => `${FMT(x)},${FMT(y)}`).join(" ");
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : "";
    return `<polyline points="${pts}" fill="none" stroke="${stroke}" stroke-width="${width}"${dashAttr}/>`;
}

export function circle(x: number, y: number, r: number, fill: string): string {
    return `<circle cx="${FMT(x)}" cy="${FMT(y)}" r="${r}" fill="${fill}"/>`;
}

export function rect(
    x: number,
    y: number,
    w: number,
    h: number,
    fill: string,
    attrs: Record<string, string | number> = {},
): string {
    const extra = Object.entries(attrs)
        .map(([k, v]) => ` ${k}="${v}"`)
        .join("");
    return `<rect x="${FMT(x)}" y="${FMT(y)}" width="${FMT(Math.max(w, 0))}" height="${FMT(Math.max(h, 0))}" fill="${fill}"${extra}/>`;
}

export function line(x1: number, y1: number, x2: number, y2: number, stroke: string, width = 1): string {
    return `<line x1="${FMT(x1)}" y1="${FMT(y1)}" x2="${FMT(x2)}" y2="${FMT(y2)}" stroke="${stroke}" stroke-width="${width}"/>`;
}

export interface AxisOptions {
    ticks: number[];
    labels?: string[];
    title?: string;
}

/** Horizontal axis drawn at pixel height y. */
export function xAxis(scale: Scale, y: number, opts: AxisOptions): string {
    const parts = [line(scale.range[0], y, scale.range[1], y, "black")];
    opts.ticks.forEach((t, i) => {
        const px = scale(t);
        parts.push(line(px, y, px, y + 5, "black"));
        const label = opts.labels ? opts.labels[i] : String(t);
        parts.push(textEl(px, y + 18, label, { "text-anchor": "middle", "font-size": 11 }));
    });
    if (opts.title) {
        const mid = (scale.range[0] + scale.range[1]) / 2;
        parts.push(textEl(mid, y + 34, opts.title, { "text-anchor": "middle", "font-size": 12 }));
    }
    return parts.join("");
}

/** Vertical axis drawn at pixel offset x. */
export function yAxis(scale: Scale, x: number, opts: AxisOptions): string {
    const parts = [line(x, scale.range[0], x, scale.range[1], "black")];
    opts.ticks.forEach((t, i) => {
        const py = scale(t);
        parts.push(line(x - 5, py, x, py, "black"));
        const label = opts.labels ? opts.labels[i] : String(t);
        parts.push(textEl(x - 8, py + 4, label, { "text-anchor": "end", "font-size": 11 }));
    });
    if (opts.title) {
        const mid = (scale.range[0] + scale.range[1]) / 2;
        parts.push(
            `<g transform="rotate(-90 ${x - 34} ${FMT(mid)})">` +
                textEl(x - 34, mid, opts.title, { "text-anchor": "middle", "font-size": 12 }) +
                "</g>",
        );
    }
    return parts.join("");
}

export function svgDocument(
    width: number,
    height: number,
    body: string[],
    metadata: string,
): string {
    return (
        `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}">` +
        `<metadata>${esc(metadata)}</metadata>` +
        `<rect x="0" y="0" width="${width}" height="${height}" fill="white"/>` +
        body.join("") +
        "</svg>"
    );
}
