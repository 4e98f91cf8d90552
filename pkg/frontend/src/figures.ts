/**
 * The three standard figures: trajectory populations + photon number
 * (relaxation and seeded runs), and steady populations vs pump ratio.
 * Mode colors follow the usual convention: n = 0 red, n = 1 black,
 * n = 2 blue.
 */

import {
  epsSwitches,
  modeSeries,
  seedWindows,
  type SweepRow,
  type Trajectory,
} from "./csv.js";
import { renderFigure, type Curve, type Panel } from "./svg.js";

export const MODE_COLORS: Record<number, string> = {
  0: "#cc2222",
  1: "#000000",
  2: "#2244cc",
};

const MS = 1e3;

export function trajectoryFigure(traj: Trajectory, title: string): string {
  const t = traj.t.map((s) => s * MS);
  const popCurves: Curve[] = [0, 1, 2].map((n) => ({
    x: t,
    y: modeSeries(traj, n),
    color: MODE_COLORS[n],
    label: `|c_${n}|²`,
  }));
  const bands = seedWindows(traj).map(([a, b]) => ({ x0: a * MS, x1: b * MS }));
  const vlines = epsSwitches(traj).map((x) => ({ x: x * MS }));
  const pops: Panel = {
    curves: popCurves,
    bands,
    vlines,
    yLabel: "population",
    yDomain: [0, 1],
    legend: true,
  };
  const field: Panel = {
    curves: [{ x: t, y: traj.photons, color: "#444444" }],
    bands,
    vlines,
    xLabel: "t (ms)",
    yLabel: "photon number",
  };
  return renderFigure(title, [pops, field]);
}

export function sweepFigure(rows: SweepRow[], title: string): string {
  const eps = rows.map((r) => r.eps);
  const dashes = ["6,4", "7,3,2,3", ""];
  const curves: Curve[] = [0, 1, 2].map((n) => ({
    x: eps,
    y: rows.map((r) => r.popMean[n]),
    color: MODE_COLORS[n],
    dash: dashes[n] || undefined,
    label: `|c_${n}|²`,
  }));
  const errorBars = rows.flatMap((r) =>
    ([0, 1, 2] as const)
      .filter((n) => r.popStd[n] > 0)
      .map((n) => ({
        x: r.eps,
        y: r.popMean[n],
        dy: r.popStd[n],
        color: MODE_COLORS[n],
      })),
  );
  const panel: Panel = {
    curves,
    errorBars,
    xLabel: "pump ratio ε",
    yLabel: "steady population",
    yDomain: [0, 1],
    legend: true,
  };
  return renderFigure(title, [panel]);
}
