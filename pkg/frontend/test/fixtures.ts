/** Tiny hand-written CSV fixtures matching the simulator's formats. */

const popCols = Array.from({ length: 11 }, (_, i) => `pop_${i - 5}`).join(",");

function trajRow(
  t: number,
  pops: Partial<Record<number, number>>,
  photons: number,
  eps: number,
  eta: number,
): string {
  const p = Array.from({ length: 11 }, (_, i) => pops[i - 5] ?? 0);
  return [t, ...p, 0, 0, photons, 250000, eps, eta].join(",");
}

export const TRAJ_CSV = [
  "# [run]",
  "# scenario = seeded",
  "#",
  "# eps = 1.8",
  `t_s,${popCols},re_a,im_a,photons,N,eps,eta`,
  trajRow(0.0e-3, { 0: 1.0 }, 0, 1.8, 5e4),
  trajRow(0.1e-3, { 0: 0.9, 1: 0.1 }, 2e4, 1.8, 0),
  trajRow(0.2e-3, { 0: 0.4, 1: 0.4, 2: 0.2 }, 5e4, 1.8, 0),
  trajRow(0.6e-3, { 0: 0.2, 1: 0.4, 2: 0.4 }, 1e3, 0.0, 5e4),
  trajRow(0.7e-3, { 0: 0.1, 1: 0.5, 2: 0.4 }, 2e3, 0.0, 0),
  trajRow(1.0e-3, { 0: 0.0, 1: 0.6, 2: 0.4 }, 10, 0.0, 0),
  "",
].join("\n");

export const SWEEP_CSV = [
  "# [run]",
  "# scenario = sweep",
  "eps,pop_0_mean,pop_1_mean,pop_2_mean,pop_rest_mean,photons_resid,pop_0_std,pop_1_std,pop_2_std,replicas",
  "0.0,0.01,0.97,0.01,0.01,12.0,0.001,0.002,0.001,5",
  "1.0,0.00,0.05,0.93,0.02,30.0,0.0,0.01,0.01,5",
  "2.1,0.40,0.30,0.25,0.05,55.0,0.05,0.04,0.03,5",
  "",
].join("\n");
