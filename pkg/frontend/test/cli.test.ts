import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

import { main } from "../src/cli.js";
import { SWEEP_CSV, TRAJ_CSV } from "./fixtures.js";

function tmpFiles() {
  const dir = mkdtempSync(join(tmpdir(), "becring-plot-"));
  const traj = join(dir, "traj.csv");
  const sweep = join(dir, "sweep.csv");
  writeFileSync(traj, TRAJ_CSV);
  writeFileSync(sweep, SWEEP_CSV);
  return { dir, traj, sweep };
}

describe("cli", () => {
  it("renders each kind to an SVG file", () => {
    const { dir, traj, sweep } = tmpFiles();
    for (const [kind, src] of [
      ["relaxation", traj],
      ["seeded", traj],
      ["sweep", sweep],
    ] as const) {
      const out = join(dir, `${kind}.svg`);
      expect(main(["--in", src, "--out", out, "--kind", kind])).toBe(0);
      const svg = readFileSync(out, "utf8");
      expect(svg).toMatch(/^<svg /);
      expect(svg).toMatch(/<\/svg>$/);
    }
  });

  it("rejects bad usage", () => {
    const { traj } = tmpFiles();
    expect(main([])).toBe(2);
    expect(main(["--in", traj, "--out", "x.svg", "--kind", "nope"])).toBe(2);
    expect(main(["--in", traj, "--out", "x.svg", "--frobnicate", "1"])).toBe(2);
  });

  it("fails cleanly on a missing input file", () => {
    const { dir } = tmpFiles();
    expect(
      main(["--in", join(dir, "absent.csv"), "--out", join(dir, "o.svg"), "--kind", "sweep"]),
    ).toBe(1);
  });

  it("fails cleanly on the wrong CSV format for the kind", () => {
    const { dir, traj } = tmpFiles();
    expect(main(["--in", traj, "--out", join(dir, "o.svg"), "--kind", "sweep"])).toBe(1);
  });
});
