/**
 * Minimal deterministic SVG drawing: pure string building, fixed float
 * formatting, no timestamps or ids, so one input always yields one
 * byte sequence.
 */

export interface Series {
  label: string;
  points: Array<[number, number]>;
  color: string;
  /** Dash pattern, empty string for a solid line. */
  dash: string;
}

export interface RefLine {
  y: number;
  label: string;
}

export interface PanelSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  /** Plot x on a log2 axis (coupling-ratio sweeps are geometric). */
  xLog: boolean;
  /** Plot y on a log10 axis; requires strictly positive values. */
  yLog: boolean;
  series: Series[];
  refLines: RefLine[];
}

export const PALETTE = [
  "#1f6fb2",
  "#c2431f",
  "#2f8b57",
  "#7b5cc2",
  "#b8860b",
  "#3f3f3f",
];

const WIDTH = 680;
const PANEL_HEIGHT = 230;
const MARGIN = { left: 86, right: 24, top: 34, bottom: 44 };

function fmt(x: number): string {
  // two decimals is below one output pixel everywhere on the canvas
  const s = x.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

function escapeText(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

function tickLabel(x: number): string {
  if (x !== 0 && (Math.abs(x) < 1e-3 || Math.abs(x) >= 1e4)) {
    return x.toExponential(1);
  }
  const s = x.toPrecision(3);
  return s.includes(".") ? s.replace(/\.?0+$/, "") : s;
}

interface Scale {
  (value: number): number;
}

function makeScale(
  domain: [number, number],
  range: [number, number],
  log: boolean,
  base: number,
): Scale {
  const t = log ? (v: number) => Math.log(v) / Math.log(base) : (v: number) => v;
  const [d0, d1] = [t(domain[0]), t(domain[1])];
  const span = d1 - d0 === 0 ? 1 : d1 - d0;
  return (value: number) =>
    range[0] + ((t(value) - d0) / span) * (range[1] - range[0]);
}

function linearTicks(lo: number, hi: number, count: number): number[] {
  if (lo === hi) {
    return [lo];
  }
  const ticks: number[] = [];
  for (let i = 0; i < count; i++) {
    ticks.push(lo + ((hi - lo) * i) / (count - 1));
  }
  return ticks;
}

function log10Ticks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(Math.log10(lo)); Math.pow(10, e) <= hi * 1.0001; e++) {
    ticks.push(Math.pow(10, e));
  }
  return ticks.length >= 2 ? ticks : [lo, hi];
}

function panelSvg(panel: PanelSpec, top: number): string {
  const xs = panel.series.flatMap((s) => s.points.map((p) => p[0]));
  const ys = panel.series
    .flatMap((s) => s.points.map((p) => p[1]))
    .concat(panel.refLines.map((r) => r.y));
  if (xs.length === 0) {
    throw new Error(`panel '${panel.title}' has no points`);
  }
  let xLo = Math.min(...xs);
  let xHi = Math.max(...xs);
  let yLo = Math.min(...ys);
  let yHi = Math.max(...ys);
  if (panel.yLog && yLo <= 0) {
    throw new Error(`panel '${panel.title}' has non-positive values on a log axis`);
  }
  if (!panel.yLog) {
    const pad = (yHi - yLo || Math.abs(yHi) || 1) * 0.08;
    yLo -= pad;
    yHi += pad;
  } else {
    yLo /= 1.3;
    yHi *= 1.3;
  }

  const plot = {
    x0: MARGIN.left,
    x1: WIDTH - MARGIN.right,
    y0: top + MARGIN.top,
    y1: top + PANEL_HEIGHT - MARGIN.bottom,
  };
  const sx = makeScale([xLo, xHi], [plot.x0, plot.x1], panel.xLog, 2);
  const sy = makeScale([yLo, yHi], [plot.y1, plot.y0], panel.yLog, 10);

  const parts: string[] = [`<g class="panel">`];
  parts.push(
    `<text x="${fmt((plot.x0 + plot.x1) / 2)}" y="${fmt(top + 18)}" ` +
      `text-anchor="middle" class="title">${escapeText(panel.title)}</text>`,
  );
  parts.push(
    `<rect x="${fmt(plot.x0)}" y="${fmt(plot.y0)}" width="${fmt(plot.x1 - plot.x0)}" ` +
      `height="${fmt(plot.y1 - plot.y0)}" class="frame"/>`,
  );

  const xTicks = [...new Set(xs)].sort((a, b) => a - b);
  for (const tick of xTicks) {
    const px = sx(tick);
    parts.push(
      `<line x1="${fmt(px)}" y1="${fmt(plot.y1)}" x2="${fmt(px)}" y2="${fmt(plot.y1 + 5)}" class="tick"/>`,
    );
    parts.push(
      `<text x="${fmt(px)}" y="${fmt(plot.y1 + 19)}" text-anchor="middle" class="label">` +
        `${escapeText(tickLabel(tick))}</text>`,
    );
  }
  const yTicks = panel.yLog ? log10Ticks(yLo, yHi) : linearTicks(yLo, yHi, 5);
  for (const tick of yTicks) {
    const py = sy(tick);
    parts.push(
      `<line x1="${fmt(plot.x0 - 5)}" y1="${fmt(py)}" x2="${fmt(plot.x0)}" y2="${fmt(py)}" class="tick"/>`,
    );
    parts.push(
      `<text x="${fmt(plot.x0 - 9)}" y="${fmt(py + 4)}" text-anchor="end" class="label">` +
        `${escapeText(tickLabel(tick))}</text>`,
    );
  }
  parts.push(
    `<text x="${fmt((plot.x0 + plot.x1) / 2)}" y="${fmt(plot.y1 + 36)}" ` +
      `text-anchor="middle" class="axis">${escapeText(panel.xLabel)}</text>`,
  );
  parts.push(
    `<text x="${fmt(plot.x0 - 66)}" y="${fmt((plot.y0 + plot.y1) / 2)}" text-anchor="middle" ` +
      `transform="rotate(-90 ${fmt(plot.x0 - 66)} ${fmt((plot.y0 + plot.y1) / 2)})" class="axis">` +
      `${escapeText(panel.yLabel)}</text>`,
  );

  for (const ref of panel.refLines) {
    const py = sy(ref.y);
    parts.push(
      `<line x1="${fmt(plot.x0)}" y1="${fmt(py)}" x2="${fmt(plot.x1)}" y2="${fmt(py)}" ` +
        `class="ref-line" stroke-dasharray="3 3"/>`,
    );
    parts.push(
      `<text x="${fmt(plot.x1 - 4)}" y="${fmt(py - 4)}" text-anchor="end" class="ref-label">` +
        `${escapeText(ref.label)}</text>`,
    );
  }

  for (const series of panel.series) {
    const pts = [...series.points].sort((a, b) => a[0] - b[0]);
    const d = pts
      .map((p, i) => `${i === 0 ? "M" : "L"}${fmt(sx(p[0]))} ${fmt(sy(p[1]))}`)
      .join(" ");
    const dash = series.dash === "" ? "" : ` stroke-dasharray="${series.dash}"`;
    parts.push(
      `<path d="${d}" fill="none" stroke="${series.color}" stroke-width="1.6"${dash} class="series"/>`,
    );
  }

  parts.push("</g>");
  return parts.join("\n");
}

export interface LegendEntry {
  label: string;
  color: string;
  dash: string;
}

/** Stack the panels top to bottom under one title, legend at the foot. */
export function renderFigure(
  title: string,
  panels: PanelSpec[],
  legend: LegendEntry[],
): string {
  const legendRows = Math.ceil(legend.length / 3);
  const legendHeight = legend.length === 0 ? 0 : 14 + legendRows * 18;
  const height = 26 + panels.length * PANEL_HEIGHT + legendHeight + 8;
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${height}" ` +
      `viewBox="0 0 ${WIDTH} ${height}" font-family="Helvetica, Arial, sans-serif">`,
  );
  parts.push(
    `<style>text{fill:#222}.title{font-size:13px;font-weight:bold}` +
      `.label{font-size:10px}.axis{font-size:11px}.ref-label{font-size:10px;fill:#555}` +
      `.frame{fill:none;stroke:#222;stroke-width:1}.tick{stroke:#222;stroke-width:1}` +
      `.ref-line{stroke:#555;stroke-width:1}</style>`,
  );
  parts.push(`<rect width="${WIDTH}" height="${height}" fill="#ffffff"/>`);
  parts.push(
    `<text x="${fmt(WIDTH / 2)}" y="18" text-anchor="middle" class="title">` +
      `${escapeText(title)}</text>`,
  );
  panels.forEach((panel, i) => {
    parts.push(panelSvg(panel, 26 + i * PANEL_HEIGHT));
  });
  const legendTop = 26 + panels.length * PANEL_HEIGHT + 10;
  legend.forEach((entry, i) => {
    const col = i % 3;
    const row = Math.floor(i / 3);
    const x = MARGIN.left + col * 190;
    const y = legendTop + row * 18;
    const dash = entry.dash === "" ? "" : ` stroke-dasharray="${entry.dash}"`;
    parts.push(
      `<line x1="${fmt(x)}" y1="${fmt(y)}" x2="${fmt(x + 26)}" y2="${fmt(y)}" ` +
        `stroke="${entry.color}" stroke-width="1.6"${dash}/>`,
    );
    parts.push(
      `<text x="${fmt(x + 32)}" y="${fmt(y + 4)}" class="label">${escapeText(entry.label)}</text>`,
    );
  });
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
