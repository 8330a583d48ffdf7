"""Regenerate the Monte Carlo artifacts consumed by the acceptance suite.

Writes ladder_T8.npz, ladder_T32.npz, ladder_T128.npz (homogeneous
intensity, common master seed across the horizon ladder) and
weighted_T128.npz (one axis with intensity index 0.5, three evaluation
points).  Takes several hours on a single core; pass --reps to produce
smaller, noisier artifacts for smoke testing.
"""

import argparse
import time
from pathlib import Path

import numpy as np

from wfbs import ParticleConfig, ParticleParams, TestFunction, run_ensemble

HERE = Path(__file__).parent
MASTER_SEED = 20260826
WIDTH = 1.0 / 16.0


def save(name, cfg, ens, secs):
    np.savez(
        HERE / f"{name}.npz",
        xt=ens.xt_values,
        seeds=np.array(ens.seeds, dtype=np.uint64),
        alpha=np.array([cfg.pp.alpha1, cfg.pp.alpha2]),
        gamma=np.array([cfg.pp.gamma1, cfg.pp.gamma2]),
        T=cfg.T,
        eval_points=np.array(cfg.eval_points),
        width=WIDTH,
        time_steps=cfg.time_steps,
        trunc_eps=cfg.trunc_eps,
        master_seed=MASTER_SEED,
        replications=ens.replications,
        wall_seconds=secs,
    )


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--reps", type=int, default=4000)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    f = TestFunction.gaussian(0.0, WIDTH)
    pp_h = ParticleParams(2.0, 2.0, 0.0, 0.0)
    for T in (8.0, 32.0, 128.0):
        cfg = ParticleConfig(pp=pp_h, phi=f, psi=f, T=T, eval_points=((1.0, 1.0),))
        t0 = time.time()
        ens = run_ensemble(cfg, args.reps, MASTER_SEED, jobs=args.jobs)
        save(f"ladder_T{int(T)}", cfg, ens, time.time() - t0)
        print(f"ladder_T{int(T)}: var={np.var(ens.xt_values[:, 0], ddof=1):.4f} "
              f"({time.time() - t0:.0f}s)")

    pp_w = ParticleParams(2.0, 2.0, 0.5, 0.0)
    cfg = ParticleConfig(
        pp=pp_w, phi=f, psi=f, T=128.0,
        eval_points=((1.0, 1.0), (1.0, 2.0), (2.0, 1.0)),
    )
    t0 = time.time()
    ens = run_ensemble(cfg, args.reps, MASTER_SEED, jobs=args.jobs)
    save("weighted_T128", cfg, ens, time.time() - t0)
    print(f"weighted_T128: {time.time() - t0:.0f}s")


if __name__ == "__main__":
    main()
