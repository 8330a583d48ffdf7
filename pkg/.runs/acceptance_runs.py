"""Generate the Monte Carlo ensembles consumed by the acceptance tests.

Homogeneous ladder (criterion: convergence of Var X_T(1,1) along T with a
common master seed) and the weighted case at T=128.  Each ensemble is saved
as tests/data/<name>.npz with the xt matrix, per-replication seeds, and the
generating configuration.
"""
import json, time
import numpy as np
from wfbs import ParticleConfig, ParticleParams, TestFunction, run_ensemble

MASTER_SEED = 20260826
REPS = 4000
W = 1.0 / 32.0

def save(name, cfg, ens, secs):
    np.savez(
        f"/root/pkg/tests/data/{name}.npz",
        xt=ens.xt_values,
        seeds=np.array(ens.seeds, dtype=np.uint64),
        alpha=np.array([cfg.pp.alpha1, cfg.pp.alpha2]),
        gamma=np.array([cfg.pp.gamma1, cfg.pp.gamma2]),
        T=cfg.T,
        eval_points=np.array(cfg.eval_points),
        width=W,
        time_steps=cfg.time_steps,
        trunc_eps=cfg.trunc_eps,
        master_seed=MASTER_SEED,
        replications=ens.replications,
        wall_seconds=secs,
    )

f = TestFunction.gaussian(0.0, W)
log = {}

pp_h = ParticleParams(2.0, 2.0, 0.0, 0.0)
for T in (8.0, 32.0, 128.0):
    cfg = ParticleConfig(pp=pp_h, phi=f, psi=f, T=T, eval_points=((1.0, 1.0),))
    t0 = time.time()
    ens = run_ensemble(cfg, REPS, MASTER_SEED)
    secs = time.time() - t0
    save(f"ladder_T{int(T)}", cfg, ens, secs)
    v = ens.xt_values[:, 0]
    log[f"T{int(T)}"] = {"var": float(np.var(v, ddof=1)), "mean": float(v.mean()),
                         "sec": round(secs, 1)}
    with open("/root/pkg/.runs/acceptance_runs.json", "w") as fh:
        json.dump(log, fh, indent=2)

pp_w = ParticleParams(2.0, 2.0, 0.5, 0.0)
cfg = ParticleConfig(pp=pp_w, phi=f, psi=f, T=128.0,
                     eval_points=((1.0, 1.0), (1.0, 2.0), (2.0, 1.0)))
t0 = time.time()
ens = run_ensemble(cfg, REPS, MASTER_SEED)
secs = time.time() - t0
save("weighted_T128", cfg, ens, secs)
log["weighted"] = {"cov": np.cov(ens.xt_values, rowvar=False).tolist(), "sec": round(secs, 1)}
log["done"] = True
with open("/root/pkg/.runs/acceptance_runs.json", "w") as fh:
    json.dump(log, fh, indent=2)
