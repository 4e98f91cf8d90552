/**
 * Readers for the simulator's two CSV formats.
 *
 * Trajectory files: `#`-prefixed header lines carrying the run config,
 * then columns t_s, pop_<n> for each mode n, re_a, im_a, photons, N,
 * eps, eta — one row per time sample.
 *
 * Sweep files: columns eps, pop_0_mean, pop_1_mean, pop_2_mean,
 * pop_rest_mean, photons_resid, pop_0_std, pop_1_std, pop_2_std,
 * replicas — one row per pump ratio.
 */

export interface Trajectory {
  /** time in seconds */
  t: number[];
  /** mode numbers in column order, e.g. [-5 … 5] */
  modes: number[];
  /** pops[i] is the |c_n|^2 series for modes[i] */
  pops: number[][];
  photons: number[];
  eps: number[];
  eta: number[];
  /** the run config from the `#` header lines, unprefixed */
  header: string;
}

export interface SweepRow {
  eps: number;
  popMean: [number, number, number];
  popRest: number;
  photonsResid: number;
  popStd: [number, number, number];
  replicas: number;
}

function splitCsv(text: string): { header: string[]; cols: string[]; rows: number[][] } {
  const header: string[] = [];
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  let i = 0;
  for (; i < lines.length && lines[i].startsWith("#"); i++) {
    header.push(lines[i].replace(/^# ?/, ""));
  }
  if (i >= lines.length) throw new Error("CSV has no column header row");
  const cols = lines[i++].split(",");
  const rows: number[][] = [];
  for (; i < lines.length; i++) {
    const vals = lines[i].split(",").map(Number);
    if (vals.length !== cols.length || vals.some(Number.isNaN)) {
      throw new Error(`malformed CSV row ${i + 1}: ${lines[i]}`);
    }
    rows.push(vals);
  }
  if (rows.length === 0) throw new Error("CSV has no data rows");
  return { header, cols, rows };
}

function column(cols: string[], rows: number[][], name: string): number[] {
  const j = cols.indexOf(name);
  if (j < 0) throw new Error(`missing column ${name}`);
  return rows.map((r) => r[j]);
}

export function parseTrajectoryCsv(text: string): Trajectory {
  const { header, cols, rows } = splitCsv(text);
  const modes = cols
    .filter((c) => /^pop_-?\d+$/.test(c))
    .map((c) => Number(c.slice(4)))
    .sort((a, b) => a - b);
  if (modes.length === 0) throw new Error("no pop_<n> columns found");
  return {
    t: column(cols, rows, "t_s"),
    modes,
    pops: modes.map((n) => column(cols, rows, `pop_${n}`)),
    photons: column(cols, rows, "photons"),
    eps: column(cols, rows, "eps"),
    eta: column(cols, rows, "eta"),
    header: header.join("\n"),
  };
}

export function parseSweepCsv(text: string): SweepRow[] {
  const { cols, rows } = splitCsv(text);
  const get = (name: string) => column(cols, rows, name);
  const [e, m0, m1, m2, rest, ph, s0, s1, s2, rep] = [
    "eps", "pop_0_mean", "pop_1_mean", "pop_2_mean", "pop_rest_mean",
    "photons_resid", "pop_0_std", "pop_1_std", "pop_2_std", "replicas",
  ].map(get);
  return rows.map((_, i) => ({
    eps: e[i],
    popMean: [m0[i], m1[i], m2[i]] as [number, number, number],
    popRest: rest[i],
    photonsResid: ph[i],
    popStd: [s0[i], s1[i], s2[i]] as [number, number, number],
    replicas: rep[i],
  }));
}

/** Series of |c_n|^2 for one mode, or throws if the file lacks it. */
export function modeSeries(traj: Trajectory, n: number): number[] {
  const i = traj.modes.indexOf(n);
  if (i < 0) throw new Error(`mode ${n} not in file`);
  return traj.pops[i];
}

/** Contiguous [t0, t1] intervals where the seed drive eta is non-zero. */
export function seedWindows(traj: Trajectory): Array<[number, number]> {
  const out: Array<[number, number]> = [];
  let start: number | null = null;
  for (let i = 0; i < traj.t.length; i++) {
    const on = traj.eta[i] > 0;
    if (on && start === null) start = traj.t[i];
    if (!on && start !== null) {
      out.push([start, traj.t[i]]);
      start = null;
    }
  }
  if (start !== null) out.push([start, traj.t[traj.t.length - 1]]);
  return out;
}

/** Times where the pump ratio eps changes between samples. */
export function epsSwitches(traj: Trajectory): number[] {
  const out: number[] = [];
  for (let i = 1; i < traj.t.length; i++) {
    if (traj.eps[i] !== traj.eps[i - 1]) out.push(traj.t[i]);
  }
  return out;
}
