import { mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import path from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { loadTable } from "../src/csv.js";
import {
  LineSpec,
  buildFigure,
  collectSeries,
  parseFigureSpec,
} from "../src/figure.js";
import { viridis } from "../src/scale.js";
import { LineNode, RectNode } from "../src/scene.js";

const FIXTURES = fileURLToPath(new URL("../fixtures", import.meta.url));

function tmpCsv(content: string): string {
  const dir = mkdtempSync(path.join(tmpdir(), "figtest-"));
  const file = path.join(dir, "t.csv");
  writeFileSync(file, content);
  return file;
}

const HEADER = "experiment,n,k,p,trials,failures,mean_runtime,std_runtime\n";

describe("parseFigureSpec", () => {
  it("rejects unknown families", () => {
    expect(() => parseFigureSpec({ name: "x", family: "pie", input: "a", x: "n", y: "m" })).toThrow(
      /family/,
    );
  });

  it("rejects missing required fields by name", () => {
    expect(() => parseFigureSpec({ family: "heatmap", input: "a", x: "k", y: "p" })).toThrow(
      /"name"/,
    );
    expect(() =>
      parseFigureSpec({ name: "h", family: "heatmap", input: "a", x: "k", y: "p" }),
    ).toThrow(/"value"/);
  });

  it("rejects a bad weight mode", () => {
    expect(() =>
      parseFigureSpec({ name: "l", family: "line-errorbar", input: "a", x: "n", y: "m", weight: "lol" }),
    ).toThrow(/weight/);
  });
});

describe("line figures", () => {
  it("pools hidden grid rows into one point per (series, x)", () => {
    const table = loadTable(path.join(FIXTURES, "runtime-vs-p_summary.csv"));
    const spec: LineSpec = {
      name: "t",
      family: "line-errorbar",
      input: "unused",
      x: "p",
      y: "mean_runtime",
      err: "std_runtime",
      series: "n",
      weight: "successes",
    };
    const series = collectSeries(spec, table.rows);
    expect(series.map((s) => s.label)).toEqual(["n=40", "n=200"]);
    expect(series[0].points.length).toBe(19);

    // independent check of one pooled point from the raw rows
    const rows = table.rows.filter((r) => r.n === "200" && r.p === "0.5");
    expect(rows.length).toBe(10); // one per k
    const w = rows.map((r) => Number(r.trials) - Number(r.failures));
    const m = rows.map((r) => Number(r.mean_runtime));
    const n = w.reduce((a, b) => a + b, 0);
    const mean = rows.reduce((a, r, i) => a + w[i] * m[i], 0) / n;
    const point = series
      .find((s) => s.label === "n=200")!
      .points.find((p) => p.x === 0.5)!;
    expect(point.mean).toBeCloseTo(mean, 9);
    const ss = rows.reduce(
      (a, r, i) => a + (w[i] - 1) * Number(r.std_runtime) ** 2 + w[i] * m[i] ** 2,
      0,
    );
    expect(point.std!).toBeCloseTo(Math.sqrt((ss - n * mean * mean) / (n - 1)), 9);
  });

  it("draws a single-row CSV as one point with a zero-length bar", () => {
    const file = tmpCsv(HEADER + "e,100,5,0.5,5,0,1234.0,0.0\n");
    const { scene, info } = buildFigure({
      name: "single",
      family: "line-errorbar",
      input: file,
      x: "n",
      y: "mean_runtime",
      err: "std_runtime",
    });
    expect(info.series).toBe(1);
    expect(info.points).toBe(1);
    const markers = scene.nodes.filter((n) => n.kind === "circle");
    expect(markers.length).toBe(1);
    const bars = scene.nodes.filter(
      (n): n is LineNode => n.kind === "line" && n.x1 === n.x2 && n.y1 === n.y2,
    );
    expect(bars.length).toBeGreaterThan(0); // collapsed to a point
  });

  it("names a missing column", () => {
    const file = tmpCsv(HEADER + "e,100,5,0.5,5,0,1.0,0.0\n");
    expect(() =>
      buildFigure({ name: "t", family: "line-errorbar", input: file, x: "n", y: "recovery_rate" }),
    ).toThrow(/"recovery_rate" not found/);
  });

  it("rejects a filter that matches nothing", () => {
    const file = tmpCsv(HEADER + "e,100,5,0.5,5,0,1.0,0.0\n");
    expect(() =>
      buildFigure({
        name: "t",
        family: "line-errorbar",
        input: file,
        x: "n",
        y: "mean_runtime",
        filter: { n: 999 },
      }),
    ).toThrow(/matches no rows/);
  });

  it("rejects an all-empty statistic column", () => {
    const file = tmpCsv(HEADER + "e,100,5,0.5,5,5,,\ne,200,5,0.5,5,5,,\n");
    expect(() =>
      buildFigure({ name: "t", family: "line-errorbar", input: file, x: "n", y: "mean_runtime" }),
    ).toThrow(/empty throughout/);
  });

  it("skips empty cells but keeps the rest of the series", () => {
    const file = tmpCsv(HEADER + "e,100,5,0.5,5,5,,\ne,200,5,0.5,5,0,50.0,2.0\ne,300,5,0.5,5,0,80.0,3.0\n");
    const { info } = buildFigure({
      name: "t",
      family: "line-errorbar",
      input: file,
      x: "n",
      y: "mean_runtime",
      err: "std_runtime",
    });
    expect(info.points).toBe(2);
  });
});

describe("heatmap figures", () => {
  it("colors the extreme cells with the ramp endpoints", () => {
    const file = tmpCsv(HEADER + "e,200,10,0.1,5,0,100.0,1.0\ne,200,10,0.5,5,0,1000.0,1.0\ne,200,20,0.1,5,0,400.0,1.0\ne,200,20,0.5,5,0,250.0,1.0\n");
    const { scene, info } = buildFigure({
      name: "h",
      family: "heatmap",
      input: file,
      x: "k",
      y: "p",
      value: "mean_runtime",
    });
    expect(info.cols).toBe(2);
    expect(info.rows).toBe(2);
    expect(info.points).toBe(4);
    const fills = scene.nodes.filter((n): n is RectNode => n.kind === "rect").map((n) => n.fill);
    expect(fills).toContain(viridis(0));
    expect(fills).toContain(viridis(1));
  });

  it("rejects duplicate cells and suggests a filter", () => {
    const file = tmpCsv(HEADER + "e,200,10,0.1,5,0,1.0,1.0\ne,300,10,0.1,5,0,2.0,1.0\n");
    expect(() =>
      buildFigure({ name: "h", family: "heatmap", input: file, x: "k", y: "p", value: "mean_runtime" }),
    ).toThrow(/duplicate cell.*filter/);
  });

  it("rejects non-positive values under a log color scale", () => {
    const file = tmpCsv("experiment,k,p,v\ne,10,0.1,0.0\n");
    expect(() =>
      buildFigure({ name: "h", family: "heatmap", input: file, x: "k", y: "p", value: "v", logColor: true }),
    ).toThrow(/positive/);
  });

  it("paints missing combinations in the gap color", () => {
    const file = tmpCsv("experiment,k,p,v\ne,10,0.1,5.0\ne,20,0.5,9.0\n");
    const { scene, info } = buildFigure({
      name: "h",
      family: "heatmap",
      input: file,
      x: "k",
      y: "p",
      value: "v",
    });
    expect(info.points).toBe(2); // 2 of 4 grid cells filled
    const gaps = scene.nodes.filter((n) => n.kind === "rect" && n.fill === "#eeeeee");
    expect(gaps.length).toBe(2);
  });
});
