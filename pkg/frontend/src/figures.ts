/**
 * Map harness result CSVs onto figure layouts. Each preset fixes the
 * panel stack and the column mapping; the CSV must carry the referenced
 * columns or rendering fails with the missing name.
 */

import { readFileSync, writeFileSync } from "node:fs";

import { parseTable, requireColumns, num, mustNum, type Record } from "./csv.js";
import { UsageError } from "./errors.js";
import {
  renderFigure,
  PALETTE,
  type PanelSpec,
  type Series,
  type LegendEntry,
} from "./svg.js";

export const PRESET_NAMES = ["fig2", "fig4", "fig5", "fig6"] as const;
export type PresetName = (typeof PRESET_NAMES)[number];

export interface FigureSpec {
  preset: PresetName;
  input: string;
  output: string;
  /** Only "svg" renders byte-deterministically; anything else is refused. */
  format: string;
}

const METHOD_DASH: { [method: string]: string } = {
  exact: "",
  weak: "6 4",
  closed_form: "2 3",
};

function methodDash(method: string): string {
  const dash = METHOD_DASH[method];
  return dash === undefined ? "4 4" : dash;
}

function methodOrder(method: string): number {
  const order = ["exact", "weak", "closed_form"].indexOf(method);
  return order === -1 ? 99 : order;
}

function sortedMethods(rows: Record[]): string[] {
  const methods = [...new Set(rows.map((r) => r["method"] ?? ""))];
  methods.sort((a, b) => methodOrder(a) - methodOrder(b) || a.localeCompare(b));
  return methods;
}

function sortedPartitions(rows: Record[]): string[] {
  return [...new Set(rows.map((r) => r["partition"] ?? ""))].sort();
}

/**
 * One series per (partition, method): colour tracks the partition, dash
 * tracks the method, so exact and asymptotic curves for the same cut
 * share a colour.
 */
function curveSeries(
  rows: Record[],
  yOf: (r: Record) => number | null,
): Series[] {
  const partitions = sortedPartitions(rows);
  const series: Series[] = [];
  for (const method of sortedMethods(rows)) {
    for (const partition of partitions) {
      const points: Array<[number, number]> = [];
      for (const row of rows) {
        if (row["partition"] !== partition || row["method"] !== method) {
          continue;
        }
        const y = yOf(row);
        if (y !== null) {
          points.push([mustNum(row, "lambda_ratio"), y]);
        }
      }
      if (points.length > 0) {
        series.push({
          label: `${partition}, ${method}`,
          color: PALETTE[partitions.indexOf(partition) % PALETTE.length]!,
          dash: methodDash(method),
          points,
        });
      }
    }
  }
  return series;
}

function curveLegend(rows: Record[]): LegendEntry[] {
  const entries: LegendEntry[] = sortedPartitions(rows).map((p, i) => ({
    label: p,
    color: PALETTE[i % PALETTE.length]!,
    dash: "",
  }));
  for (const method of sortedMethods(rows)) {
    entries.push({ label: method, color: "#888888", dash: methodDash(method) });
  }
  return entries;
}

function fig2Panels(rows: Record[]): PanelSpec[] {
  const shared = { xLabel: "λ/λc", xLog: true, yLog: true, refLines: [] };
  return [
    {
      ...shared,
      title: "entanglement entropy, scaled by |∂A|₂",
      yLabel: "S / |∂A|₂",
      series: curveSeries(rows, (r) => num(r, "entropy_over_b2")),
    },
    {
      ...shared,
      title: "logarithmic negativity, scaled by |∂A|₂",
      yLabel: "N / |∂A|₂",
      series: curveSeries(rows, (r) => {
        const neg = num(r, "log_negativity");
        return neg === null ? null : neg / mustNum(r, "boundary_2");
      }),
    },
    {
      ...shared,
      title: "logarithmic negativity, scaled by |∂A|₁",
      yLabel: "N / |∂A|₁",
      series: curveSeries(rows, (r) => num(r, "negativity_over_b1")),
    },
  ];
}

interface PairGroups {
  /** partition id with the orientation token blanked out */
  canonical: string[];
  /** canonical -> method -> x -> orientation -> value */
  values: Map<string, Map<string, Map<number, { [o: string]: number }>>>;
}

function groupOrientationPairs(rows: Record[]): PairGroups {
  const values: PairGroups["values"] = new Map();
  for (const row of rows) {
    const partition = row["partition"] ?? "";
    const orientation = partition.includes("tilted")
      ? "tilted"
      : partition.includes("parallel")
        ? "parallel"
        : null;
    if (orientation === null) {
      continue;
    }
    const neg = num(row, "log_negativity");
    if (neg === null) {
      continue;
    }
    const canonical = partition.replace(orientation, "pair");
    const method = row["method"] ?? "";
    const x = mustNum(row, "lambda_ratio");
    let byMethod = values.get(canonical);
    if (byMethod === undefined) {
      values.set(canonical, (byMethod = new Map()));
    }
    let byX = byMethod.get(method);
    if (byX === undefined) {
      byMethod.set(method, (byX = new Map()));
    }
    let pair = byX.get(x);
    if (pair === undefined) {
      byX.set(x, (pair = {}));
    }
    pair[orientation] = neg;
  }
  return { canonical: [...values.keys()].sort(), values };
}

function ratioSeries(groups: PairGroups): Series[] {
  const series: Series[] = [];
  for (const canonical of groups.canonical) {
    const byMethod = groups.values.get(canonical)!;
    const methods = [...byMethod.keys()].sort(
      (a, b) => methodOrder(a) - methodOrder(b) || a.localeCompare(b),
    );
    for (const method of methods) {
      const points: Array<[number, number]> = [];
      for (const [x, pair] of byMethod.get(method)!) {
        const parallel = pair["parallel"];
        const tilted = pair["tilted"];
        if (parallel !== undefined && tilted !== undefined && parallel > 0) {
          points.push([x, tilted / parallel]);
        }
      }
      if (points.length > 0) {
        series.push({
          label: `${canonical}, ${method}`,
          color: PALETTE[groups.canonical.indexOf(canonical) % PALETTE.length]!,
          dash: methodDash(method),
          points,
        });
      }
    }
  }
  if (series.length === 0) {
    throw new Error(
      "no tilted/parallel partition pairs with negativity values in the CSV",
    );
  }
  return series;
}

function fig4Panels(rows: Record[]): PanelSpec[] {
  const groups = groupOrientationPairs(rows);
  return [
    {
      title: "block-pair logarithmic negativity",
      xLabel: "λ/λc",
      yLabel: "N",
      xLog: true,
      yLog: true,
      refLines: [],
      series: curveSeries(rows, (r) => num(r, "log_negativity")),
    },
    {
      title: "tilted / parallel negativity ratio",
      xLabel: "λ/λc",
      yLabel: "N(tilted) / N(parallel)",
      xLog: true,
      yLog: false,
      refLines: [
        { y: 4 / Math.PI, label: "4/pi" },
        { y: 2, label: "2" },
      ],
      series: ratioSeries(groups),
    },
  ];
}

/**
 * Pair sweeps over the block size: x is the n parsed from the partition
 * id suffix "_n<size>", colour tracks (orientation, coupling ratio).
 */
function fig5Panels(rows: Record[]): PanelSpec[] {
  interface GroupRow {
    orientation: string;
    separation: string;
    n: number;
    method: string;
    ratio: number;
    row: Record;
  }
  const parsed: GroupRow[] = [];
  for (const row of rows) {
    const partition = row["partition"] ?? "";
    const sep = /_s(\d+)/.exec(partition);
    const size = /_n(\d+)/.exec(partition);
    const orientation = partition.includes("tilted")
      ? "tilted"
      : partition.includes("parallel")
        ? "parallel"
        : null;
    if (sep === null || size === null || orientation === null) {
      continue;
    }
    parsed.push({
      orientation,
      separation: sep[1]!,
      n: Number(size[1]),
      method: row["method"] ?? "",
      ratio: mustNum(row, "lambda_ratio"),
      row,
    });
  }
  if (parsed.length === 0) {
    throw new Error(
      "no partitions of the form <orientation>_s<sep>_n<size> in the CSV",
    );
  }
  const groupLabels = [
    ...new Set(parsed.map((g) => `${g.orientation}, λ/λc=${g.ratio}`)),
  ].sort();
  const methods = sortedMethods(rows);

  const panelFor = (
    separation: string,
    title: string,
    yLabel: string,
    yOf: (r: Record) => number | null,
  ): PanelSpec => {
    const series: Series[] = [];
    for (const method of methods) {
      for (const label of groupLabels) {
        const points: Array<[number, number]> = [];
        for (const g of parsed) {
          if (
            g.separation !== separation ||
            g.method !== method ||
            `${g.orientation}, λ/λc=${g.ratio}` !== label
          ) {
            continue;
          }
          const y = yOf(g.row);
          if (y !== null) {
            points.push([g.n, y]);
          }
        }
        if (points.length > 0) {
          series.push({
            label: `${label}, ${method}`,
            color: PALETTE[groupLabels.indexOf(label) % PALETTE.length]!,
            dash: methodDash(method),
            points,
          });
        }
      }
    }
    return {
      title,
      xLabel: "block size n",
      yLabel,
      xLog: false,
      yLog: false,
      refLines: [],
      series,
    };
  };

  return [
    panelFor(
      "0",
      "contiguous pairs: negativity scaled by |∂A|₁",
      "N / |∂A|₁",
      (r) => num(r, "negativity_over_b1"),
    ),
    panelFor(
      "1",
      "one-site separated pairs: negativity scaled by |∂A|₂",
      "N / |∂A|₂",
      (r) => {
        const neg = num(r, "log_negativity");
        return neg === null ? null : neg / mustNum(r, "boundary_2");
      },
    ),
  ];
}

function fig6Panels(rows: Record[]): PanelSpec[] {
  return [
    {
      title: "lines vs blocks at one-site separation",
      xLabel: "λ/λc",
      yLabel: "N",
      xLog: true,
      yLog: true,
      refLines: [],
      series: curveSeries(rows, (r) => num(r, "log_negativity")),
    },
  ];
}

interface PresetDef {
  title: string;
  columns: string[];
  panels: (rows: Record[]) => PanelSpec[];
}

const PRESETS: { [name in PresetName]: PresetDef } = {
  fig2: {
    title: "Lattice bipartitions: scaled entropy and negativity vs λ/λc",
    columns: [
      "scenario",
      "partition",
      "method",
      "lambda_ratio",
      "entropy_over_b2",
      "log_negativity",
      "negativity_over_b1",
      "boundary_2",
    ],
    panels: fig2Panels,
  },
  fig4: {
    title: "Block pairs: tilted vs parallel negativity",
    columns: ["scenario", "partition", "method", "lambda_ratio", "log_negativity"],
    panels: fig4Panels,
  },
  fig5: {
    title: "Block pairs: boundary-measure scaling vs block size",
    columns: [
      "scenario",
      "partition",
      "method",
      "lambda_ratio",
      "log_negativity",
      "negativity_over_b1",
      "boundary_2",
    ],
    panels: fig5Panels,
  },
  fig6: {
    title: "Line pairs vs block pairs at one-site separation",
    columns: ["scenario", "partition", "method", "lambda_ratio", "log_negativity"],
    panels: fig6Panels,
  },
};

/** Render a preset against CSV text, returning the SVG document. */
export function renderPreset(preset: PresetName, csvText: string): string {
  const def = PRESETS[preset];
  const table = parseTable(csvText);
  requireColumns(table, def.columns);
  return renderFigure(def.title, def.panels(table.rows), curveLegend(table.rows));
}

/**
 * Read, render, then write. The output file is only touched after the
 * whole document rendered, so a bad CSV never leaves a partial file.
 */
export function render(spec: FigureSpec): { bytes: number; panels: number } {
  if (spec.format !== "svg") {
    throw new UsageError(
      `format '${spec.format}' is not supported; only svg output is deterministic`,
    );
  }
  if (!(PRESET_NAMES as readonly string[]).includes(spec.preset)) {
    throw new UsageError(
      `unknown preset '${spec.preset}' (available: ${PRESET_NAMES.join(", ")})`,
    );
  }
  const csvText = readFileSync(spec.input, "utf8");
  const svg = renderPreset(spec.preset, csvText);
  writeFileSync(spec.output, svg, "utf8");
  const panels = svg.split('<g class="panel">').length - 1;
  return { bytes: Buffer.byteLength(svg, "utf8"), panels };
}
