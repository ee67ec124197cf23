"""Reference values for the unit tests, computed with mpmath/scipy.

Run with `python3 tests/oracles/gen_oracles.py`; the printed numbers are
pasted into the C++ tests.
"""
import mpmath as mp
from scipy import stats, optimize, integrate
import numpy as np

mp.mp.dps = 40

# comp defaults
D, kappa, psi, zeta = 5e5, 1.25, 3.5, 0.05
fc_min, fc_max, Ps, f_b, Q_max = 0.8e9, 2.5e9, 1.0, 2.5e9, 1.5
# channel defaults
P_tx, B, d, ell = 0.25, 1e8, 1000.0, 2.0
N0 = 10 ** ((-153 - 30) / 10)
K0 = 10 ** (-27 / 10)
nu, lam, eps, n_p = 1e-14, 1e-15, 1e-3, 1000


def show(name, v):
    print(f"{name} = {mp.nstr(mp.mpf(v), 17)}")


print("# special functions")
for s, x in [(0.5, 0.1), (1.25, 0.7), (1.25, 3.0), (5.0, 2.0), (5.0, 12.0), (30.0, 25.0), (100.0, 130.0)]:
    show(f"P({s},{x})", mp.gammainc(s, 0, x, regularized=True))
    show(f"Q({s},{x})", mp.gammainc(s, x, mp.inf, regularized=True))
for x in [0.5, 1.25, 3.7, 10.0, 171.5]:
    show(f"lgamma({x})", mp.loggamma(x))
for shape, scale, rho in [(1.25, 0.02, 0.9), (1.25, 0.02, 0.999), (0.3, 1.0, 0.5), (40.0, 2.0, 0.01)]:
    show(f"gamma_ppf({shape},{scale},{rho})", stats.gamma.ppf(rho, shape, scale=scale))
for r in [0.9, 0.99, 0.999, 1e-6]:
    show(f"probit({r})", mp.sqrt(2) * mp.erfinv(2 * mp.mpf(r) - 1))
print("binom_sf(400,1e-3,>=3)", repr(stats.binom.sf(2, 400, 1e-3)))
print("binom_cdf(50,0.3,<=10)", repr(stats.binom.cdf(10, 50, 0.3)))
print("nbinom_cdf(N=400,eps=1e-3,k=401)", repr(stats.nbinom.cdf(1, 400, 1 - 1e-3)))
print("nbinom_quantile(400,1e-3,0.999)", 400 + int(stats.nbinom.ppf(0.999, 400, 1 - 1e-3)))

print("# channel")
g0 = mp.mpf(K0) * P_tx / (mp.mpf(d) ** ell * mp.mpf(N0) * B)
gth = -g0 * mp.log(1 - mp.mpf(eps))
R = B * mp.log(1 + gth) / mp.log(2)
tp = n_p / R
eta = R / (P_tx + nu * B + lam * R)
C = D / ((1 - mp.mpf(eps)) * eta)
for k, v in [("gamma0", g0), ("gamma_th", gth), ("R", R), ("t_p", tp), ("eta", eta), ("C", C)]:
    show(k, v)

print("# power scenario")
def m(Q):
    return mp.e ** (psi * Q) - mp.e ** psi

coef = Ps * D / mp.mpf(fc_max) ** 3

def fcstar(Q, E):
    return mp.sqrt((E - C / Q) / (m(Q) * coef))

def bound(Q, f, rho, decomp=True):
    scale = m(Q) * D / (kappa * f)
    comp = stats.gamma.ppf(rho, kappa, scale=float(scale)) if Q > 1 else 0.0
    if decomp:
        comp *= 1 + zeta * f / f_b
    n = D / (Q * n_p)
    z = stats.norm.ppf(rho)
    return comp + float(n * tp / (1 - eps) + z * tp * mp.sqrt(eps * n) / (1 - eps))

show("fc_star(1.3,0.08)", fcstar(1.3, 0.08))
show("bound(1.3,1.6e9,0.9)", bound(1.3, 1.6e9, 0.9))
show("bound(1.3,1.6e9,0.9,nodecomp)", bound(1.3, 1.6e9, 0.9, False))
show("bound(1,-,0.9)", bound(1.0, 1.0, 0.9))

for E, rho in [(0.08, 0.9), (0.08, 0.999), (0.1, 0.9)]:
    def obj(Q):
        if Q == 1.0:
            return bound(1.0, 1.0, rho)
        rem = E - float(C) / Q
        if rem <= 0:
            return np.inf
        f = float(fcstar(Q, E))
        if f < fc_min:
            return np.inf
        return bound(Q, min(f, fc_max), rho)
    grid = np.linspace(1.0, Q_max, 5001)
    vals = np.array([obj(q) for q in grid])
    i = int(np.argmin(vals))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    res = optimize.minimize_scalar(obj, bounds=(lo, hi), method="bounded", options={"xatol": 1e-10})
    print(f"power_opt(E={E},rho={rho}) Q* = {res.x!r} latency = {res.fun!r}")

print("# deadline scenario")
T = 0.4
Nmin = int(np.ceil(D / (Q_max * n_p)))
show("alpha_max(T=0.4)", 1 - Nmin * tp / T)
print("tx_count(alpha=0.3,T=0.5)", int(mp.floor((1 - 0.3) * 0.5 / tp)))
show("comm_energy_time(alpha=0.3,T=0.5)", n_p * mp.floor((1 - 0.3) * 0.5 / tp) / eta)
for alpha, Q, f, TT in [(0.35, 1.2, 1.6e9, 0.4), (0.3, 1.36, 1.2e9, 0.4), (0.2, 1.45, 2.5e9, 0.5)]:
    scale = m(Q) * D / (kappa * f)
    w = alpha * TT
    epsc = mp.gammainc(kappa, w / scale, mp.inf, regularized=True)
    # conditional mean by direct quadrature of t * density on [0, w]
    dens = lambda t: t ** (kappa - 1) * mp.e ** (-t / scale)
    tm = mp.quad(lambda t: t * dens(t), [0, w]) / mp.quad(dens, [0, w])
    Pc = Ps * (f / fc_max) ** 3
    Ec = ((1 - epsc) * tm + epsc * w) * Pc
    show(f"eps_c({alpha},{Q},{f},{TT})", epsc)
    show(f"trunc_mean({alpha},{Q},{f},{TT})", tm)
    show(f"E_c({alpha},{Q},{f},{TT})", Ec)
    N = int(np.ceil(D / (Q * n_p)))
    Ntx = int(mp.floor((1 - alpha) * TT / tp))
    epstx = stats.binom.sf(Ntx - N, Ntx, eps)
    print(f"N={N} N_tx={Ntx} eps_tx={epstx!r}")
