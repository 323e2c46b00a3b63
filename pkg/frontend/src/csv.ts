import { EmptyInput, SchemaMismatch } from "./errors.js";

/** One result-table row, keyed by header name; cells stay as written. */
export type Record = { [column: string]: string };

export interface Table {
  header: string[];
  rows: Record[];
}

/**
 * Parse a result table. The producer never quotes fields (ids are
 * word-shaped, numbers are plain decimals), so a comma split is exact.
 */
export function parseTable(text: string): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new EmptyInput("CSV is empty");
  }
  const header = lines[0]!.split(",");
  if (lines.length === 1) {
    throw new EmptyInput("CSV has a header but no data rows");
  }
  const rows: Record[] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i]!.split(",");
    if (cells.length !== header.length) {
      throw new Error(
        `row ${i + 1} has ${cells.length} cells, header has ${header.length}`,
      );
    }
    const rec: Record = {};
    header.forEach((name, k) => {
      rec[name] = cells[k]!;
    });
    rows.push(rec);
  }
  return { header, rows };
}

/** Check every referenced column exists; name the first missing one. */
export function requireColumns(table: Table, columns: string[]): void {
  const have = new Set(table.header);
  for (const column of columns) {
    if (!have.has(column)) {
      throw new SchemaMismatch(column);
    }
  }
}

/** Numeric cell value; empty cells mean "not defined for this row". */
export function num(rec: Record, column: string): number | null {
  const cell = rec[column];
  if (cell === undefined || cell === "") {
    return null;
  }
  const value = Number(cell);
  if (!Number.isFinite(value)) {
    throw new Error(`column '${column}' holds non-finite value '${cell}'`);
  }
  return value;
}

/** Like num but the column must carry a value on this row. */
export function mustNum(rec: Record, column: string): number {
  const value = num(rec, column);
  if (value === null) {
    throw new Error(`column '${column}' is empty where a number is needed`);
  }
  return value;
}
