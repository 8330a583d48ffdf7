import numpy as np, math, time
from wfbs._kernel import axis_occupation

sigma = 1/32; steps = 256; delta = 1.0/steps
amp = 1.0/(sigma*math.sqrt(2*math.pi)); inv2w2 = 1.0/(2*sigma*sigma)
r_eff = 8.0*sigma
T = 32.0; N = int(round(T*steps)); bounds = np.array([N], np.int64)
rng = np.random.default_rng(31415)

def piece(lo_abs, hi_abs, n, chunks=8):
    # integral over {lo_abs < |x0| < hi_abs} of E[A^2] dx0, uniform importance
    measure = 2.0*(hi_abs - lo_abs)
    tot = 0.0; tot2 = 0.0
    for c in range(chunks):
        k = n//chunks
        u = rng.uniform(lo_abs, hi_abs, k)
        s = rng.integers(0, 2, k)*2 - 1
        x0 = u*s
        A = axis_occupation(x0, bounds, True, 0.0, r_eff, amp, inv2w2, 2.0,
                            delta, int(rng.integers(1, 2**31)))
        a2 = A[:,0]**2
        tot += a2.sum(); tot2 += (a2*a2).sum()
    ktot = (n//chunks)*chunks
    mean = tot/ktot
    se_mean = math.sqrt(max(tot2/ktot - mean*mean, 0)/ktot)
    return measure*mean, measure*se_mean

t0=time.time()
p1, e1 = piece(0.0, 20.0, 24_000_000)
print(f"piece |x0|<20      : {p1:.4f} +- {e1:.4f}   ({time.time()-t0:.0f}s)", flush=True)
t0=time.time()
p2, e2 = piece(20.0, 60.0, 48_000_000)
print(f"piece 20<|x0|<60   : {p2:.4f} +- {e2:.4f}   ({time.time()-t0:.0f}s)")
tot = p1+p2; err = math.sqrt(e1*e1+e2*e2)
print(f"total              : {tot:.4f} +- {err:.4f}   vs Jhat 135.3209  ({(tot/135.3209-1)*100:+.3f}% +- {err/135.3209*100:.3f}%)")
