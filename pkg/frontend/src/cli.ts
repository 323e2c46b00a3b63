/**
 * render --preset fig2 --in results.csv --out fig2.svg
 *
 * Exit codes: 0 rendered, 1 usage or input error. Errors never leave an
 * output file behind.
 */

import { render, PRESET_NAMES, type PresetName } from "./figures.js";
import { UsageError } from "./errors.js";

const USAGE =
  "usage: render --preset <name> --in <results.csv> --out <figure.svg> [--format svg]\n" +
  `presets: ${PRESET_NAMES.join(", ")}`;

interface Args {
  preset: string;
  input: string;
  output: string;
  format: string;
}

function parseArgs(argv: string[]): Args {
  const flags: { [flag: string]: string } = {};
  let i = 0;
  if (argv[0] === "render") {
    i = 1;
  }
  for (; i < argv.length; i += 2) {
    const flag = argv[i]!;
    const value = argv[i + 1];
    if (!flag.startsWith("--")) {
      throw new UsageError(`unexpected argument '${flag}'\n${USAGE}`);
    }
    if (value === undefined) {
      throw new UsageError(`flag '${flag}' needs a value\n${USAGE}`);
    }
    flags[flag.slice(2)] = value;
  }
  for (const required of ["preset", "in", "out"]) {
    if (flags[required] === undefined) {
      throw new UsageError(`missing --${required}\n${USAGE}`);
    }
  }
  for (const flag of Object.keys(flags)) {
    if (!["preset", "in", "out", "format"].includes(flag)) {
      throw new UsageError(`unknown flag '--${flag}'\n${USAGE}`);
    }
  }
  return {
    preset: flags["preset"]!,
    input: flags["in"]!,
    output: flags["out"]!,
    format: flags["format"] ?? "svg",
  };
}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    if (err instanceof UsageError) {
      process.stderr.write(`${err.message}\n`);
      return 1;
    }
    throw err;
  }
  try {
    const result = render({
      preset: args.preset as PresetName,
      input: args.input,
      output: args.output,
      format: args.format,
    });
    process.stdout.write(
      `wrote ${args.output} (${result.panels} panels, ${result.bytes} bytes)\n`,
    );
    return 0;
  } catch (err) {
    if (err instanceof Error) {
      process.stderr.write(`error: ${err.message}\n`);
      return 1;
    }
    throw err;
  }
}
