export { render, renderPreset, PRESET_NAMES } from "./figures.js";
export type { FigureSpec, PresetName } from "./figures.js";
export { parseTable, requireColumns, num, mustNum } from "./csv.js";
export type { Table, Record } from "./csv.js";
export { SchemaMismatch, EmptyInput, UsageError } from "./errors.js";
export { renderFigure, PALETTE } from "./svg.js";
export type { PanelSpec, Series, RefLine, LegendEntry } from "./svg.js";
export { main } from "./cli.js";
