/** The CSV header lacks a column the figure needs. */
export class SchemaMismatch extends Error {
  readonly column: string;

  constructor(column: string) {
    super(`missing required column '${column}' in the CSV header`);
    this.name = "SchemaMismatch";
    this.column = column;
  }
}

/** The CSV holds no data rows, so there is nothing to draw. */
export class EmptyInput extends Error {
  constructor(message: string) {
    super(message);
    this.name = "EmptyInput";
  }
}

/** Bad command-line arguments or an unusable figure spec. */
export class UsageError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "UsageError";
  }
}
