/**
 * Figure construction from experiment summary tables.
 *
 * Two families are supported. "line-errorbar" plots one or more series
 * of (x, mean) points with optional +/-1 std bars; rows that share a
 * series and x value are pooled into one point (see stats.ts), which is
 * how a figure averages over a grid dimension the CSV still spells out.
 * "heatmap" fills a (x, y) grid of cells colored by a value column.
 */

import path from "node:path";
import { readFileSync } from "node:fs";

import { Table, loadTable, num, requireColumns } from "./csv.js";
import { CellStat, pool } from "./stats.js";
import { Scene, scene } from "./scene.js";
import { AxisScale, makeScale, tickLabel, viridis } from "./scale.js";

export type Family = "line-errorbar" | "heatmap";

interface SpecBase {
  name: string;
  family: Family;
  input: string; // CSV path, resolved when loaded from a spec file
  title?: string;
  xLabel?: string;
  yLabel?: string;
  filter?: Record<string, string | number>;
}

export interface LineSpec extends SpecBase {
  family: "line-errorbar";
  x: string;
  y: string;
  err?: string;
  series?: string;
  weight?: "trials" | "successes" | "rows";
  logY?: boolean;
  expect?: { series: number; points: number };
}

export interface HeatmapSpec extends SpecBase {
  family: "heatmap";
  x: string;
  y: string;
  value: string;
  logColor?: boolean;
  expect?: { cols: number; rows: number; points?: number };
}

export type FigureSpec = LineSpec | HeatmapSpec;

export interface FigureInfo {
  name: string;
  family: Family;
  xLabel: string;
  yLabel: string;
  /** number of plotted series (always 1 for heatmaps) */
  series: number;
  /** total plotted points (line) or filled cells (heatmap) */
  points: number;
  cols?: number;
  rows?: number;
}

export interface BuiltFigure {
  scene: Scene;
  info: FigureInfo;
}

// ---------------------------------------------------------------------------
// Spec parsing
// ---------------------------------------------------------------------------

function need(obj: Record<string, unknown>, field: string, ctx: string): string {
  const v = obj[field];
  if (typeof v !== "string" || v.length === 0) {
    throw new Error(`${ctx}: field "${field}" must be a non-empty string`);
  }
  return v;
}

export function parseFigureSpec(raw: unknown, ctx = "figure spec"): FigureSpec {
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    throw new Error(`${ctx}: expected a JSON object`);
  }
  const o = raw as Record<string, unknown>;
  const family = o.family;
  if (family !== "line-errorbar" && family !== "heatmap") {
    throw new Error(`${ctx}: field "family" must be "line-errorbar" or "heatmap"`);
  }
  const base = {
    name: need(o, "name", ctx),
    input: need(o, "input", ctx),
    x: need(o, "x", ctx),
    y: need(o, "y", ctx),
  };
  if (family === "heatmap") {
    return { ...o, ...base, family, value: need(o, "value", ctx) } as HeatmapSpec;
  }
  const weight = o.weight;
  if (weight !== undefined && weight !== "trials" && weight !== "successes" && weight !== "rows") {
    throw new Error(`${ctx}: field "weight" must be "trials", "successes" or "rows"`);
  }
  return { ...o, ...base, family } as LineSpec;
}

/** Read a spec file; the input CSV path is resolved against the file's directory. */
export function loadFigureSpec(file: string): FigureSpec {
  const spec = parseFigureSpec(JSON.parse(readFileSync(file, "utf8")), file);
  spec.input = path.resolve(path.dirname(file), spec.input);
  return spec;
}

// ---------------------------------------------------------------------------
// Shared layout
// ---------------------------------------------------------------------------

const W = 640;
const H = 420;
const PALETTE = ["#4269d0", "#efb118", "#ff725c", "#6cc5b0", "#a463f2", "#9c6b4e"];
const AXIS = "#444444";
const GRID = "#dddddd";
const INK = "#222222";
const MISSING = "#eeeeee";

function applyFilter(spec: FigureSpec, table: Table): Array<Record<string, string>> {
  if (!spec.filter) return table.rows;
  requireColumns(table, Object.keys(spec.filter));
  const wanted = Object.entries(spec.filter).map(([c, v]) => [c, String(v)] as const);
  const rows = table.rows.filter((r) => wanted.every(([c, v]) => r[c] === v));
  if (rows.length === 0) {
    throw new Error(`filter ${JSON.stringify(spec.filter)} matches no rows in ${table.path}`);
  }
  return rows;
}

function frame(s: Scene, l: number, t: number, r: number, b: number): void {
  s.nodes.push(
    { kind: "line", x1: l, y1: t, x2: l, y2: b, stroke: AXIS, width: 1 },
    { kind: "line", x1: l, y1: b, x2: r, y2: b, stroke: AXIS, width: 1 },
    { kind: "line", x1: r, y1: t, x2: r, y2: b, stroke: AXIS, width: 1 },
    { kind: "line", x1: l, y1: t, x2: r, y2: t, stroke: AXIS, width: 1 },
  );
}

function chrome(s: Scene, spec: FigureSpec, xLabel: string, yLabel: string, plotB: number): void {
  s.nodes.push(
    { kind: "text", x: W / 2, y: 18, text: spec.title ?? spec.name, size: 13, fill: INK, anchor: "middle" },
    { kind: "text", x: W / 2, y: H - 8, text: xLabel, size: 11, fill: INK, anchor: "middle" },
    { kind: "text", x: 14, y: (28 + plotB) / 2, text: yLabel, size: 11, fill: INK, anchor: "middle", rotate: 270 },
  );
}

// ---------------------------------------------------------------------------
// Line family
// ---------------------------------------------------------------------------

export interface SeriesPoints {
  label: string;
  points: Array<{ x: number; mean: number; std: number | null }>;
}

function weightOf(row: Record<string, string>, mode: "trials" | "successes" | "rows"): number {
  if (mode === "rows") return 1;
  const t = num(row, "trials") ?? 0;
  if (mode === "trials") return t;
  return t - (num(row, "failures") ?? 0);
}

export function collectSeries(spec: LineSpec, rows: Array<Record<string, string>>): SeriesPoints[] {
  const mode = spec.weight ?? "successes";
  const grouped = new Map<string, Map<number, CellStat[]>>();
  for (const row of rows) {
    const key = spec.series ? row[spec.series] : "";
    const x = num(row, spec.x);
    if (x === null) throw new Error(`column "${spec.x}" has an empty value, cannot place a point`);
    const mean = num(row, spec.y);
    if (mean === null) continue; // no statistic recorded for this cell
    const std = spec.err ? num(row, spec.err) : null;
    let byX = grouped.get(key);
    if (!byX) grouped.set(key, (byX = new Map()));
    let cell = byX.get(x);
    if (!cell) byX.set(x, (cell = []));
    cell.push({ mean, std, weight: weightOf(row, mode) });
  }
  const out: SeriesPoints[] = [];
  for (const [key, byX] of grouped) {
    const label = spec.series && /^[-+0-9.]/.test(key) ? `${spec.series}=${key}` : key;
    const points = [...byX.entries()]
      .sort((a, b) => a[0] - b[0])
      .flatMap(([x, cells]) => {
        const p = pool(cells);
        return p === null ? [] : [{ x, mean: p.mean, std: p.std }];
      });
    if (points.length > 0) out.push({ label, points });
  }
  if (out.length === 0) throw new Error(`no plottable rows: column "${spec.y}" is empty throughout`);
  return out;
}

function buildLine(spec: LineSpec, table: Table): BuiltFigure {
  requireColumns(
    table,
    [spec.x, spec.y]
      .concat(spec.err ? [spec.err] : [])
      .concat(spec.series ? [spec.series] : [])
      .concat((spec.weight ?? "successes") === "rows" ? [] : ["trials", "failures"]),
  );
  const series = collectSeries(spec, applyFilter(spec, table));

  const xs = series.flatMap((s) => s.points.map((p) => p.x));
  const extents = series.flatMap((s) =>
    s.points.flatMap((p) => (p.std === null ? [p.mean] : [p.mean - p.std, p.mean + p.std])),
  );
  let lo = Math.min(...extents);
  let hi = Math.max(...extents);
  if (spec.logY) {
    const positives = series.flatMap((s) => s.points.map((p) => p.mean)).filter((v) => v > 0);
    if (positives.length === 0) throw new Error(`log scale on "${spec.y}" needs positive values`);
    lo = Math.min(...positives) / 1.5;
    hi = Math.max(...positives) * 1.5;
  } else {
    const pad = (hi - lo || Math.abs(lo) || 1) * 0.06;
    lo = lo >= 0 && lo - pad < 0 ? 0 : lo - pad;
    hi = hi + pad;
  }

  const [plotL, plotT, plotR, plotB] = [64, 28, W - 20, H - 46];
  const sx = makeScale([Math.min(...xs), Math.max(...xs)], [plotL, plotR]);
  const sy = makeScale([lo, hi], [plotB, plotT], spec.logY ?? false);
  const s = scene(W, H);

  for (const t of sx.ticks) {
    if (t < sx.domain[0] - 1e-9 || t > sx.domain[1] + 1e-9) continue;
    const x = sx.map(t);
    s.nodes.push({ kind: "line", x1: x, y1: plotT, x2: x, y2: plotB, stroke: GRID, width: 1 });
    s.nodes.push({ kind: "text", x, y: plotB + 14, text: tickLabel(t), size: 10, fill: INK, anchor: "middle" });
  }
  for (const t of sy.ticks) {
    const y = sy.map(t);
    if (y < plotT - 1e-9 || y > plotB + 1e-9) continue;
    s.nodes.push({ kind: "line", x1: plotL, y1: y, x2: plotR, y2: y, stroke: GRID, width: 1 });
    s.nodes.push({ kind: "text", x: plotL - 6, y: y + 3, text: tickLabel(t), size: 10, fill: INK, anchor: "end" });
  }
  frame(s, plotL, plotT, plotR, plotB);

  series.forEach((sp, i) => {
    const color = PALETTE[i % PALETTE.length];
    for (const p of sp.points) {
      if (p.std === null) continue;
      // clamp bar ends into the plotted domain so log scales stay finite
      const lov = Math.max(p.mean - p.std, sy.domain[0]);
      const hiv = Math.min(p.mean + p.std, sy.domain[1]);
      const x = sx.map(p.x);
      s.nodes.push(
        { kind: "line", x1: x, y1: sy.map(lov), x2: x, y2: sy.map(hiv), stroke: color, width: 1 },
        { kind: "line", x1: x - 3, y1: sy.map(lov), x2: x + 3, y2: sy.map(lov), stroke: color, width: 1 },
        { kind: "line", x1: x - 3, y1: sy.map(hiv), x2: x + 3, y2: sy.map(hiv), stroke: color, width: 1 },
      );
    }
    if (sp.points.length > 1) {
      s.nodes.push({
        kind: "polyline",
        points: sp.points.map((p) => [sx.map(p.x), sy.map(p.mean)]),
        stroke: color,
        width: 1.5,
      });
    }
    for (const p of sp.points) {
      s.nodes.push({ kind: "circle", cx: sx.map(p.x), cy: sy.map(p.mean), r: 2.5, fill: color });
    }
  });

  if (spec.series) {
    const widest = Math.max(...series.map((sp) => sp.label.length));
    const boxW = widest * 5.5 + 34;
    const boxH = series.length * 14 + 8;
    const bx = plotR - boxW - 8;
    const by = plotT + 8;
    s.nodes.push({ kind: "rect", x: bx, y: by, w: boxW, h: boxH, fill: "#ffffff" });
    series.forEach((sp, i) => {
      const y = by + 14 + i * 14;
      const color = PALETTE[i % PALETTE.length];
      s.nodes.push(
        { kind: "line", x1: bx + 6, y1: y - 3, x2: bx + 24, y2: y - 3, stroke: color, width: 1.5 },
        { kind: "text", x: bx + 28, y, text: sp.label, size: 9, fill: INK, anchor: "start" },
      );
    });
  }

  const xLabel = spec.xLabel ?? spec.x;
  const yLabel = spec.yLabel ?? spec.y;
  chrome(s, spec, xLabel, yLabel, plotB);
  return {
    scene: s,
    info: {
      name: spec.name,
      family: spec.family,
      xLabel,
      yLabel,
      series: series.length,
      points: series.reduce((a, sp) => a + sp.points.length, 0),
    },
  };
}

// ---------------------------------------------------------------------------
// Heatmap family
// ---------------------------------------------------------------------------

function buildHeatmap(spec: HeatmapSpec, table: Table): BuiltFigure {
  requireColumns(table, [spec.x, spec.y, spec.value]);
  const rows = applyFilter(spec, table);

  const cells = new Map<string, number>();
  const xsSet = new Set<number>();
  const ysSet = new Set<number>();
  for (const row of rows) {
    const x = num(row, spec.x);
    const y = num(row, spec.y);
    if (x === null || y === null) {
      throw new Error(`columns "${spec.x}"/"${spec.y}" must be filled on every row`);
    }
    xsSet.add(x);
    ysSet.add(y);
    const v = num(row, spec.value);
    if (v === null) continue;
    const key = `${x}|${y}`;
    if (cells.has(key)) {
      throw new Error(`duplicate cell at ${spec.x}=${x}, ${spec.y}=${y}; add a filter to disambiguate`);
    }
    if (spec.logColor && v <= 0) {
      throw new Error(`log color scale on "${spec.value}" needs positive values, got ${v}`);
    }
    cells.set(key, v);
  }
  if (cells.size === 0) throw new Error(`no plottable rows: column "${spec.value}" is empty throughout`);
  const xs = [...xsSet].sort((a, b) => a - b);
  const ys = [...ysSet].sort((a, b) => a - b);

  const values = [...cells.values()];
  const vLo = Math.min(...values);
  const vHi = Math.max(...values);
  const tOf = (v: number): number => {
    if (vLo === vHi) return 0.5;
    return spec.logColor
      ? (Math.log(v) - Math.log(vLo)) / (Math.log(vHi) - Math.log(vLo))
      : (v - vLo) / (vHi - vLo);
  };

  const [plotL, plotT, plotR, plotB] = [64, 28, W - 92, H - 46];
  const cw = (plotR - plotL) / xs.length;
  const ch = (plotB - plotT) / ys.length;
  const s = scene(W, H);

  xs.forEach((xv, i) => {
    ys.forEach((yv, j) => {
      const v = cells.get(`${xv}|${yv}`);
      s.nodes.push({
        kind: "rect",
        x: plotL + i * cw,
        y: plotB - (j + 1) * ch,
        w: cw,
        h: ch,
        fill: v === undefined ? MISSING : viridis(tOf(v)),
      });
    });
  });
  frame(s, plotL, plotT, plotR, plotB);

  const xStep = Math.ceil(xs.length / 10);
  xs.forEach((xv, i) => {
    if (i % xStep !== 0) return;
    s.nodes.push({
      kind: "text",
      x: plotL + (i + 0.5) * cw,
      y: plotB + 14,
      text: tickLabel(xv),
      size: 10,
      fill: INK,
      anchor: "middle",
    });
  });
  const yStep = Math.ceil(ys.length / 10);
  ys.forEach((yv, j) => {
    if (j % yStep !== 0) return;
    s.nodes.push({
      kind: "text",
      x: plotL - 6,
      y: plotB - (j + 0.5) * ch + 3,
      text: tickLabel(yv),
      size: 10,
      fill: INK,
      anchor: "end",
    });
  });

  // color key: a vertical ramp with the extreme values labelled
  const barX = plotR + 18;
  const slices = 64;
  const barH = plotB - plotT;
  for (let i = 0; i < slices; i++) {
    s.nodes.push({
      kind: "rect",
      x: barX,
      y: plotB - ((i + 1) * barH) / slices,
      w: 14,
      h: barH / slices + 0.5,
      fill: viridis((i + 0.5) / slices),
    });
  }
  frame(s, barX, plotT, barX + 14, plotB);
  s.nodes.push(
    { kind: "text", x: barX + 18, y: plotB + 3, text: tickLabel(vLo), size: 9, fill: INK, anchor: "start" },
    { kind: "text", x: barX + 18, y: plotT + 7, text: tickLabel(vHi), size: 9, fill: INK, anchor: "start" },
  );
  if (spec.logColor && vLo < vHi) {
    for (let e = Math.ceil(Math.log10(vLo)); Math.pow(10, e) < vHi; e++) {
      const v = Math.pow(10, e);
      if (v <= vLo) continue;
      const y = plotB - tOf(v) * barH;
      s.nodes.push(
        { kind: "line", x1: barX + 14, y1: y, x2: barX + 17, y2: y, stroke: AXIS, width: 1 },
        { kind: "text", x: barX + 19, y: y + 3, text: tickLabel(v), size: 9, fill: INK, anchor: "start" },
      );
    }
  }

  const xLabel = spec.xLabel ?? spec.x;
  const yLabel = spec.yLabel ?? spec.y;
  chrome(s, spec, xLabel, yLabel, plotB);
  return {
    scene: s,
    info: {
      name: spec.name,
      family: spec.family,
      xLabel,
      yLabel,
      series: 1,
      points: cells.size,
      cols: xs.length,
      rows: ys.length,
    },
  };
}

// ---------------------------------------------------------------------------

export function buildFigure(spec: FigureSpec, table?: Table): BuiltFigure {
  const data = table ?? loadTable(spec.input);
  return spec.family === "heatmap" ? buildHeatmap(spec, data) : buildLine(spec, data);
}
