/** Axis scales, tick selection and the heatmap color ramp. */

export interface AxisScale {
  map(v: number): number;
  ticks: number[];
  domain: [number, number];
  log: boolean;
}

/** Round tick step to the usual 1/2/5 ladder. */
export function niceStep(span: number, count: number): number {
  if (span <= 0 || count <= 0) return 1;
  const raw = span / count;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const norm = raw / mag;
  if (norm <= 1) return mag;
  if (norm <= 2) return 2 * mag;
  if (norm <= 5) return 5 * mag;
  return 10 * mag;
}

export function linearTicks(lo: number, hi: number, count = 5): number[] {
  if (lo === hi) return [lo];
  const step = niceStep(hi - lo, count);
  const out: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    // kill accumulated float error so labels stay short
    out.push(Math.round(v / step) * step);
  }
  return out;
}

export function logTicks(lo: number, hi: number): number[] {
  const out: number[] = [];
  const e0 = Math.ceil(Math.log10(lo) - 1e-9);
  const e1 = Math.floor(Math.log10(hi) + 1e-9);
  for (let e = e0; e <= e1; e++) out.push(Math.pow(10, e));
  if (out.length >= 2) return out;
  // fewer than two decades in range: fall back to linear spacing
  return linearTicks(lo, hi);
}

export function makeScale(
  domain: [number, number],
  range: [number, number],
  log = false,
): AxisScale {
  let [d0, d1] = domain;
  if (log && d0 <= 0) throw new Error(`log scale needs a positive domain, got ${d0}`);
  if (d0 === d1) {
    // degenerate single-value domain: pad so the point sits mid-range
    d0 = log ? d0 / 2 : d0 - 1;
    d1 = log ? d1 * 2 : d1 + 1;
  }
  const [r0, r1] = range;
  const t = (v: number) =>
    log ? (Math.log(v) - Math.log(d0)) / (Math.log(d1) - Math.log(d0)) : (v - d0) / (d1 - d0);
  return {
    map: (v) => r0 + t(v) * (r1 - r0),
    ticks: log ? logTicks(d0, d1) : linearTicks(d0, d1),
    domain: [d0, d1],
    log,
  };
}

/** Compact tick labels without float noise. */
export function tickLabel(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e5 || a < 1e-3) {
    const e = Math.floor(Math.log10(a) + 1e-9);
    const m = v / Math.pow(10, e);
    const ms = Math.round(m * 100) / 100;
    return `${ms}e${e}`;
  }
  return (Math.round(v * 1e6) / 1e6).toString();
}

// viridis anchors, sampled every 1/15th of the ramp
const VIRIDIS: Array<[number, number, number]> = [
  [68, 1, 84],
  [72, 26, 108],
  [71, 47, 125],
  [65, 68, 135],
  [57, 86, 140],
  [49, 104, 142],
  [42, 120, 142],
  [35, 136, 142],
  [31, 152, 139],
  [34, 168, 132],
  [53, 183, 121],
  [84, 197, 104],
  [122, 209, 81],
  [165, 219, 54],
  [210, 226, 27],
  [253, 231, 37],
];

/** Map t in [0, 1] onto the viridis ramp as a #rrggbb string. */
export function viridis(t: number): string {
  const c = Math.min(1, Math.max(0, t)) * (VIRIDIS.length - 1);
  const i = Math.min(VIRIDIS.length - 2, Math.floor(c));
  const f = c - i;
  const hex = (a: number, b: number) => {
    const v = Math.round(a + (b - a) * f);
    return v.toString(16).padStart(2, "0");
  };
  const [r0, g0, b0] = VIRIDIS[i];
  const [r1, g1, b1] = VIRIDIS[i + 1];
  return `#${hex(r0, r1)}${hex(g0, g1)}${hex(b0, b1)}`;
}
