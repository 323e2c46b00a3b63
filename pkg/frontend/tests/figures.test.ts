import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { renderPreset } from "../src/figures.js";
import { EmptyInput, SchemaMismatch } from "../src/errors.js";

const here = dirname(fileURLToPath(import.meta.url));
const fig2Csv = readFileSync(join(here, "fixtures", "fig2.csv"), "utf8");
const fig4Csv = readFileSync(join(here, "fixtures", "fig4.csv"), "utf8");

function panelCount(svg: string): number {
  return svg.split('<g class="panel">').length - 1;
}

describe("fig2 preset", () => {
  it("stacks the three scaled panels", () => {
    const svg = renderPreset("fig2", fig2Csv);
    expect(panelCount(svg)).toBe(3);
    expect(svg).toContain("entanglement entropy, scaled by |∂A|₂");
    expect(svg).toContain("logarithmic negativity, scaled by |∂A|₂");
    expect(svg).toContain("logarithmic negativity, scaled by |∂A|₁");
  });

  it("draws every partition and method combination", () => {
    const svg = renderPreset("fig2", fig2Csv);
    // 4 partitions x 3 methods per panel
    expect(svg.match(/class="series"/g)).toHaveLength(36);
    expect(svg).toContain('stroke-dasharray="6 4"');
    expect(svg).toContain('stroke-dasharray="2 3"');
    for (const partition of [
      "a_single_site",
      "b_parallel_block",
      "c_tilted_block",
      "d_checkerboard",
    ]) {
      expect(svg).toContain(partition);
    }
  });

  it("renders identical bytes on repeat runs", () => {
    const first = renderPreset("fig2", fig2Csv);
    const second = renderPreset("fig2", fig2Csv);
    expect(second).toBe(first);
  });
});

describe("fig4 preset", () => {
  it("puts the ratio panel under the curves with both references", () => {
    const svg = renderPreset("fig4", fig4Csv);
    expect(panelCount(svg)).toBe(2);
    expect(svg).toContain("tilted / parallel negativity ratio");
    expect(svg).toContain('class="ref-label">4/pi<');
    expect(svg).toContain('class="ref-label">2<');
    expect(svg.match(/class="ref-line"/g)).toHaveLength(2);
  });

  it("keeps exact curves solid and asymptotic curves dashed", () => {
    const svg = renderPreset("fig4", fig4Csv);
    const all = svg.match(/<path [^>]*class="series"/g)!;
    const dashed = svg.match(/<path [^>]*stroke-dasharray[^>]*class="series"/g)!;
    // 12 curve series + 6 ratio series, one method in three is exact
    expect(all).toHaveLength(18);
    expect(dashed).toHaveLength(12);
    expect(all.length - dashed.length).toBe(6);
  });

  it("renders identical bytes on repeat runs", () => {
    const first = renderPreset("fig4", fig4Csv);
    expect(renderPreset("fig4", fig4Csv)).toBe(first);
  });
});

describe("schema and emptiness checks", () => {
  it("names the missing column", () => {
    const lines = fig4Csv.split("\n");
    const stripped = lines
      .map((line) => line.split(",").slice(0, 4).join(","))
      .join("\n");
    let caught: unknown;
    try {
      renderPreset("fig4", stripped);
    } catch (err) {
      caught = err;
    }
    expect(caught).toBeInstanceOf(SchemaMismatch);
    expect((caught as SchemaMismatch).column).toBe("log_negativity");
  });

  it("rejects empty input before looking at columns", () => {
    expect(() => renderPreset("fig2", "")).toThrow(EmptyInput);
    const headerOnly = fig4Csv.split("\n")[0]! + "\n";
    expect(() => renderPreset("fig4", headerOnly)).toThrow(EmptyInput);
  });
});

describe("pair-sweep presets", () => {
  const fig5Header =
    "scenario,partition,method,lambda_ratio,log_negativity,negativity_over_b1,boundary_2";
  const fig5Rows: string[] = [];
  for (const orientation of ["parallel", "tilted"]) {
    for (const s of [0, 1]) {
      for (const n of [4, 6, 8]) {
        for (const method of ["exact", "closed_form"]) {
          const value = (0.01 * n * (s + 1)).toFixed(6);
          fig5Rows.push(
            `fig5,pair_${orientation}_s${s}_n${n},${method},8.0,${value},${value},${4 * n}`,
          );
        }
      }
    }
  }
  const fig5Csv = fig5Header + "\n" + fig5Rows.join("\n") + "\n";

  it("fig5 splits contiguous and separated pairs over block size", () => {
    const svg = renderPreset("fig5", fig5Csv);
    expect(panelCount(svg)).toBe(2);
    expect(svg).toContain("contiguous pairs");
    expect(svg).toContain("one-site separated pairs");
    expect(svg).toContain("block size n");
  });

  it("fig6 overlays line and block pairs", () => {
    const header = "scenario,partition,method,lambda_ratio,log_negativity";
    const rows = [
      "fig6,line_parallel_s1,exact,2.0,0.010",
      "fig6,line_parallel_s1,exact,4.0,0.004",
      "fig6,block_parallel_s1_d2,exact,2.0,0.020",
      "fig6,block_parallel_s1_d2,exact,4.0,0.008",
    ];
    const svg = renderPreset("fig6", header + "\n" + rows.join("\n") + "\n");
    expect(panelCount(svg)).toBe(1);
    expect(svg).toContain("line_parallel_s1");
    expect(svg).toContain("block_parallel_s1_d2");
  });
});
