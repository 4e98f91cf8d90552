"""CSV serialization for trajectories and sweeps.

Every file starts with the resolved run configuration as '# '-prefixed
comment lines, so any output is reproducible from its own header. Files are
written to a temporary sibling and renamed into place, so a failed run never
leaves a partial CSV behind.
"""

from __future__ import annotations

import csv
import os
import tempfile

from .integrator import Trajectory
from .scenarios import SweepResult


def _fmt(x) -> str:
    return f"{float(x):.12e}"


def _write_atomic(path, emit):
    d = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".csv")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            emit(fh)
        os.replace(tmp, path)
    except OSError as exc:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise OSError(f"failed writing {path}: {exc}") from exc
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _emit_metadata(fh, metadata):
    for line in metadata.rstrip("\n").splitlines():
        fh.write(f"# {line}\n" if line else "#\n")


def write_trajectory_csv(traj: Trajectory, path: str, metadata: str = "") -> None:
    """One row per sample: t_s, pop_n for each mode, re_a, im_a, photons, N,
    eps, eta. 12+ significant digits, final row newline-terminated."""
    def emit(fh):
        _emit_metadata(fh, metadata)
        w = csv.writer(fh)
        cols = (["t_s"] + [f"pop_{n}" for n in traj.mode_numbers]
                + ["re_a", "im_a", "photons", "N", "eps", "eta"])
        w.writerow(cols)
        ph = traj.photons
        for i in range(len(traj.t)):
            w.writerow([_fmt(traj.t[i])]
                       + [_fmt(p) for p in traj.pops[i]]
                       + [_fmt(traj.a[i].real), _fmt(traj.a[i].imag),
                          _fmt(ph[i]), _fmt(traj.N[i]),
                          _fmt(traj.eps[i]), _fmt(traj.eta[i])])

    _write_atomic(path, emit)


def write_sweep_csv(sweep: SweepResult, path: str) -> None:
    """One row per eps: mean populations of n = 0, 1, 2, everything else
    lumped in pop_rest_mean, residual photons, std-devs, replica count."""
    def emit(fh):
        _emit_metadata(fh, sweep.metadata)
        w = csv.writer(fh)
        w.writerow(["eps", "pop_0_mean", "pop_1_mean", "pop_2_mean",
                    "pop_rest_mean", "photons_resid",
                    "pop_0_std", "pop_1_std", "pop_2_std", "replicas"])
        for r in sweep.rows:
            idx = {n: n - r.n_min for n in (0, 1, 2)}
            main = [r.pops_mean[idx[n]] for n in (0, 1, 2)]
            rest = float(r.pops_mean.sum() - sum(main))
            w.writerow([_fmt(r.eps)] + [_fmt(v) for v in main]
                       + [_fmt(max(rest, 0.0)), _fmt(r.residual_photons)]
                       + [_fmt(r.pops_std[idx[n]]) for n in (0, 1, 2)]
                       + [str(r.n_replicas)])

    _write_atomic(path, emit)
