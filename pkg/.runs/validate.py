import json, time
import numpy as np
from wfbs import ParticleParams, ParticleConfig, TestFunction, run_ensemble, prelimit_cov_XT
from wfbs import amplitude_D, params_from_particle, sheet_cov

out = {}
pp = ParticleParams(2.0, 2.0, 0.0, 0.0)
d = amplitude_D(pp, 1.0, 1.0)
lim = d*d*sheet_cov(params_from_particle(pp), 1, 1, 1, 1)
out["limit"] = lim

for w in (1/32, 1/64):
    f = TestFunction.gaussian(0.0, w)
    key = f"w{int(round(1/w))}"
    for T in (8.0, 32.0, 128.0, 512.0):
        cfg = ParticleConfig(pp=pp, phi=f, psi=f, T=T, eval_points=((1.0, 1.0),))
        t0 = time.time()
        out[f"prelimit_{key}_T{int(T)}"] = prelimit_cov_XT(cfg, (1, 1), (1, 1))
        out[f"prelimit_{key}_T{int(T)}_sec"] = round(time.time() - t0, 1)
        with open("/root/pkg/.runs/validate.json", "w") as fh:
            json.dump(out, fh, indent=2)

# discretization-bias probe: MC variance at T=8 vs exact quadrature
for w in (1/32, 1/64):
    f = TestFunction.gaussian(0.0, w)
    key = f"w{int(round(1/w))}"
    cfg = ParticleConfig(pp=pp, phi=f, psi=f, T=8.0, eval_points=((1.0, 1.0),))
    t0 = time.time()
    ens = run_ensemble(cfg, 12000, 20240817)
    v = ens.xt_values[:, 0]
    var = v.var(ddof=1)
    m4 = np.mean((v - v.mean())**4)
    out[f"mc8_{key}_var"] = var
    out[f"mc8_{key}_se"] = float(np.sqrt((m4 - var**2) / len(v)))
    out[f"mc8_{key}_mean"] = float(v.mean())
    out[f"mc8_{key}_mean_se"] = float(v.std(ddof=1) / np.sqrt(len(v)))
    out[f"mc8_{key}_sec"] = round(time.time() - t0, 1)
    with open("/root/pkg/.runs/validate.json", "w") as fh:
        json.dump(out, fh, indent=2)
out["done"] = True
with open("/root/pkg/.runs/validate.json", "w") as fh:
    json.dump(out, fh, indent=2)
