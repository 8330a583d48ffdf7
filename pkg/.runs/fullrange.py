import numpy as np, math, time
from wfbs._kernel import axis_occupation

sigma = 1/32; steps = 256; delta = 1.0/steps
amp = 1.0/(sigma*math.sqrt(2*math.pi)); inv2w2 = 1.0/(2*sigma*sigma)
r_eff = 8.0*sigma
T = 32.0; N = int(round(T*steps)); bounds = np.array([N], np.int64)
R = r_eff + math.sqrt(2.0*T/1e-3)
rng = np.random.default_rng(987654321)

tot = 0.0; tot2 = 0.0; Ktot = 0
t0 = time.time()
CH = 24
for c in range(CH):
    K = rng.poisson(2_500_000)
    x0 = rng.uniform(-R, R, K)
    A = axis_occupation(x0, bounds, True, 0.0, r_eff, amp, inv2w2, 2.0,
                        delta, int(rng.integers(1, 2**31)))
    a2 = A[:,0]**2
    tot += a2.sum(); tot2 += (a2*a2).sum(); Ktot += K
m1 = tot/Ktot
se = math.sqrt(tot2/Ktot/Ktot)*math.sqrt(Ktot)/Ktot  # sqrt(m2/Ktot)
est = 2*R*m1
se_est = 2*R*math.sqrt((tot2/Ktot - m1*m1)/Ktot)
print(f"K={Ktot}  integral = {est:.4f} +- {se_est:.4f}  vs Jhat 135.3209  ({(est/135.3209-1)*100:+.3f}% +- {se_est/135.3209*100:.3f}%)  [{time.time()-t0:.0f}s]")
