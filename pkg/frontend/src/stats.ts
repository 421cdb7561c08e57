/**
 * Pooling of per-cell summary statistics.
 *
 * Summary CSVs hold one row per experiment cell with a mean, a sample
 * standard deviation and the number of contributing runs. Figures that
 * aggregate over a hidden grid dimension (runtime vs p averages over
 * every k, for example) need the exact statistics of the merged sample.
 * Mean and std per cell determine the cell's first and second moments,
 * so the merged sample mean and sample std can be reconstructed without
 * per-trial data.
 */

export interface CellStat {
  mean: number;
  std: number | null;
  weight: number; // runs behind this cell's statistics
}

export interface Pooled {
  mean: number;
  std: number | null; // null when any contributing cell lacks a std
  n: number;
}

export function pool(cells: CellStat[]): Pooled | null {
  const used = cells.filter((c) => c.weight > 0);
  if (used.length === 0) return null;
  const n = used.reduce((a, c) => a + c.weight, 0);
  const mean = used.reduce((a, c) => a + c.weight * c.mean, 0) / n;
  if (used.some((c) => c.std === null)) {
    return { mean, std: null, n };
  }
  if (n < 2) {
    return { mean, std: 0, n };
  }
  // sum of squares per cell from its sample variance and mean
  const ss = used.reduce((a, c) => a + (c.weight - 1) * c.std! ** 2 + c.weight * c.mean ** 2, 0);
  const variance = Math.max(0, (ss - n * mean * mean) / (n - 1));
  return { mean, std: Math.sqrt(variance), n };
}
