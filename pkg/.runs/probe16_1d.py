import numpy as np, math, time
from wfbs._kernel import axis_occupation

sigma = 1/16; steps = 256; delta = 1.0/steps
amp = 1.0/(sigma*math.sqrt(2*math.pi)); inv2w2 = 1.0/(2*sigma*sigma)
r_eff = 8.0*sigma

def J_hat(sigma, T, steps):
    delta = 1.0/steps
    N = int(round(T*steps))
    m = np.arange(N)
    r = 1.0/(2*math.sqrt(math.pi)*np.sqrt(sigma**2 + m*delta))
    return delta**2 * (2*np.sum((N-m)*r) - N*r[0])

rng = np.random.default_rng(1122334455)
for T, Mtot in ((8.0, 40_000_000), (32.0, 30_000_000)):
    N = int(round(T*steps)); bounds = np.array([N], np.int64)
    R = r_eff + math.sqrt(2.0*T/1e-3)
    tot=0.0; tot2=0.0; K=0
    t0=time.time()
    for c in range(12):
        k = Mtot//12
        x0 = rng.uniform(-R, R, k)
        A = axis_occupation(x0, bounds, True, 0.0, r_eff, amp, inv2w2, 2.0,
                            delta, int(rng.integers(1,2**31)))
        a2 = A[:,0]**2
        tot += a2.sum(); tot2 += (a2*a2).sum(); K += k
    m1 = tot/K
    est = 2*R*m1
    se = 2*R*math.sqrt((tot2/K - m1*m1)/K)
    jh = J_hat(sigma, T, steps)
    print(f"T={T:4.0f}: integral {est:.4f} +- {se:.4f}  Jhat {jh:.4f}  ({(est/jh-1)*100:+.3f}% +- {se/jh*100:.3f}%)  [{time.time()-t0:.0f}s]")
