import numpy as np, math, time
from wfbs import ParticleConfig, ParticleParams, TestFunction, run_ensemble

W = 1/16
f = TestFunction.gaussian(0.0, W)
pp = ParticleParams(2.0, 2.0, 0.0, 0.0)
cfg = ParticleConfig(pp=pp, phi=f, psi=f, T=8.0, eval_points=((1.0, 1.0),))
t0 = time.time()
ens = run_ensemble(cfg, 4000, 555000)
dt = time.time() - t0
v = ens.xt_values[:, 0]
var = v.var(ddof=1)
from scipy import stats
k = stats.kurtosis(v, fisher=False)
bl = v.reshape(8, 500)
bv = bl.var(ddof=1, axis=1)
se_block = bv.std(ddof=1)/math.sqrt(8)*math.sqrt(500/4000)*math.sqrt(8)  # sd of block vars -> SE at n=4000
se4000 = bv.std(ddof=1)/math.sqrt(8.0)
print(f"time {dt:.0f}s ({dt/4000*1000:.0f} ms/rep)")
print(f"var = {var:.6f}  expected 0.530503  dev {(var-0.530503):+.5f}")
print(f"kurtosis(sample) = {k:.3f}")
print(f"block vars: {np.round(bv,4)}")
print(f"SE(var@4000) from blocks = {se4000:.5f}   gaussian rule {var*math.sqrt(2/3999):.5f}")
print(f"implied kurtosis-1 = {(se4000/var)**2*4000:.2f}")
