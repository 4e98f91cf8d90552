#!/usr/bin/env node
/**
 * becring-plot --in <file.csv> --out <file.svg> --kind <relaxation|seeded|sweep>
 *
 * Renders a simulator CSV to an SVG figure. `relaxation` and `seeded`
 * expect a trajectory file (the latter shades seed windows and marks the
 * pump switch, which come straight from the eta/eps columns); `sweep`
 * expects a sweep file.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { parseArgs } from "node:util";

import { parseSweepCsv, parseTrajectoryCsv } from "./csv.js";
import { sweepFigure, trajectoryFigure } from "./figures.js";

const KINDS = ["relaxation", "seeded", "sweep"] as const;
type Kind = (typeof KINDS)[number];

const TITLES: Record<Kind, string> = {
  relaxation: "Spontaneous relaxation into the dark state",
  seeded: "Seed-triggered decay",
  sweep: "Steady populations vs pump ratio",
};

export function render(kind: Kind, csvText: string): string {
  if (kind === "sweep") return sweepFigure(parseSweepCsv(csvText), TITLES[kind]);
  return trajectoryFigure(parseTrajectoryCsv(csvText), TITLES[kind]);
}

export function main(argv: string[]): number {
  let values;
  try {
    ({ values } = parseArgs({
      args: argv,
      options: {
        in: { type: "string" },
        out: { type: "string" },
        kind: { type: "string" },
      },
    }));
  } catch (e) {
    console.error(`error: ${(e as Error).message}`);
    return 2;
  }
  const kind = values.kind as Kind | undefined;
  if (!values.in || !values.out || !kind || !KINDS.includes(kind)) {
    console.error(
      "usage: becring-plot --in <file.csv> --out <file.svg> --kind <relaxation|seeded|sweep>",
    );
    return 2;
  }
  try {
    writeFileSync(values.out, render(kind, readFileSync(values.in, "utf8")));
  } catch (e) {
    console.error(`error: ${(e as Error).message}`);
    return 1;
  }
  return 0;
}

if (import.meta.url === `file://${process.argv[1]}`) {
  process.exit(main(process.argv.slice(2)));
}
