/** CSV loading with strict header checks. */

import { readFileSync } from "node:fs";
import Papa from "papaparse";

export interface Table {
  columns: string[];
  rows: Array<Record<string, string>>;
  path: string;
}

export function loadTable(path: string): Table {
  const text = readFileSync(path, "utf8");
  const parsed = Papa.parse<Record<string, string>>(text, {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const e = parsed.errors[0];
    throw new Error(`${path}: CSV parse error at row ${e.row}: ${e.message}`);
  }
  const columns = parsed.meta.fields ?? [];
  if (columns.length === 0) {
    throw new Error(`${path}: empty CSV, no header row`);
  }
  if (parsed.data.length === 0) {
    throw new Error(`${path}: CSV has a header but no data rows`);
  }
  return { columns, rows: parsed.data, path };
}

export function requireColumns(table: Table, needed: string[]): void {
  for (const c of needed) {
    if (!table.columns.includes(c)) {
      throw new Error(
        `column "${c}" not found in ${table.path} (have: ${table.columns.join(", ")})`,
      );
    }
  }
}

/**
 * Numeric cell access. Empty cells are legitimate (a statistic with no
 * supporting trials) and come back as null; anything else must parse.
 */
export function num(row: Record<string, string>, col: string): number | null {
  const raw = row[col];
  if (raw === undefined || raw === "") return null;
  const v = Number(raw);
  if (!Number.isFinite(v)) {
    throw new Error(`column "${col}" has non-numeric value "${raw}"`);
  }
  return v;
}
