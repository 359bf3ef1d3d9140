"""Independent reference values for the C++ tests.

Every value here is computed by a route that does not share code or
integration variables with the library: Bessel-function closed forms for the
exponential law, angle integrals for marginals, and plain mpmath quadrature.
Run with `python3 tests/oracles/frozen_values.py`; the printed numbers are the
constants frozen in tests/*.cpp.
"""
import mpmath as mp

mp.mp.dps = 30
pi = mp.pi


def show(name, v):
    print(f"{name:40s} {mp.nstr(v, 17)}", flush=True)


# regularized incomplete beta (survival of Beta(a, b) at x)
for a, b, x in [(0.5, 1.5, 0.3), (0.5, 0.5, 0.7), (0.5, 2.5, 0.01), (2.0, 3.0, 0.9)]:
    show(f"beta_survival({a},{b},{x})", 1 - mp.betainc(a, b, 0, x, regularized=True))

# exponential law, d = 2: q_2(x) = K0(x)/pi, Qbar_2(u) = int_u^inf q_2
for u in [1, 5, mp.log(1e8)]:
    show(f"exp Qbar2({mp.nstr(u, 6)})", mp.quad(lambda x: mp.besselk(0, x), [u, mp.inf]) / pi)
    show(f"exp q2({mp.nstr(u, 6)})", mp.besselk(0, u) / pi)

# Qbar_2 by the angle integral, a second route
u = 5
show("exp Qbar2(5) angle", mp.quad(lambda t: mp.exp(-u / mp.cos(t)), [0, pi / 2]) / pi)

# exponential law, d = 3: X1/R uniform on [-1, 1]
for u in [1, 5, mp.log(1e8)]:
    show(f"exp Qbar3({mp.nstr(u, 6)})", mp.quad(lambda r: 0.5 * (1 - u / r) * mp.exp(-r), [u, mp.inf]))

# H for the exponential law: min of two Exp(1) is Exp(2)
for u in [1, 5]:
    show(f"exp Hbar({u})", 2 / pi * mp.quad(lambda m: mp.acos(u / m) * 2 * mp.exp(-2 * m), [u, mp.inf]))
    show(f"exp h({u})", 4 / pi * mp.besselk(0, 2 * u))

# K and K*: J(s) = int_s^inf sqrt(y^2-s^2) e^{-y} dy = s K1(s), mu = 1
for s in [1, 5]:
    J = s * mp.besselk(1, s)
    show(f"exp Kbar({s})", J**2 / pi)
    show(f"exp Kstar({s})", J)

# pareto(alpha), u >= xm = 1: Qbar_2(u)/Fbar(u) = (1/pi) int_0^{pi/2} cos^alpha
for alpha in [2, 3]:
    show(f"pareto({alpha}) Q2/F", mp.quad(lambda t: mp.cos(t) ** alpha, [0, pi / 2]) / pi)

# scaling functions w(u) = Fbar(u) / int_u^xF Fbar
show("weibull(1,2) w(10)", mp.exp(-100) / (mp.sqrt(pi) / 2 * mp.erfc(10)))
show("example1(1,1) w(0.9)", mp.exp(-10) / mp.quad(lambda s: mp.exp(-1 / (1 - s)), [0.9, 1]))

# dimensional constants
for d in [2, 3, 4]:
    show(f"tau_{d}", mp.sqrt(d) * (1 + mp.mpf(1) / d) ** (mp.mpf(d + 1) / 2) / mp.gamma(d + 1))
    show(f"kappa_{d}", 2 * pi ** (mp.mpf(d) / 2) / mp.gamma(mp.mpf(d) / 2))

# heavy-tail vertex limit expression
for g in [1, 3]:
    show(f"frechet_printed({g})", mp.gamma(g + 0.5) * mp.gamma(g / 2 + 1) ** 2
         / (mp.gamma((g + 1) / mp.mpf(2)) ** 2 * mp.gamma(g + 1)))

# 2-D vertex and bound integrals for the exponential law at n = 1e4
n = mp.mpf(10) ** 4
mp.mp.dps = 20


def Qb(s):
    # int_0^s K0 = (pi s / 2)(K0 L_{-1} + K1 L_0), L = modified Struve
    head = pi * s / 2 * (mp.besselk(0, s) * mp.struvel(-1, s) + mp.besselk(1, s) * mp.struvel(0, s))
    return (pi / 2 - head) / pi


show("exp Qbar2(5) struve", Qb(mp.mpf(5)))
b = [0, 2, 4, 6, 8, 10, 14, 20, 40]
show("exp carnal vertices n=1e4",
     n**2 * mp.quad(lambda s: mp.exp((n - 2) * mp.log1p(-Qb(s))) * 4 / pi * mp.besselk(0, 2 * s), b) / 2)
show("exp vn lower n=1e4", n * mp.quad(lambda s: mp.exp((n - 1) * mp.log1p(-Qb(s))) * mp.exp(-s), b))
show("exp vn upper n=1e4", 2 * n * mp.quad(lambda s: mp.exp((n - 1) * mp.log1p(-Qb(s) / 2)) * mp.exp(-s), b))
# planar facet bound: kappa_2 tau_1 kappa_1 n^2 int (r+1) e^{-r} q_2(r) e^{-n Qbar_2(r)} dr
show("exp dwyer facets d=2 n=1e4",
     8 * pi * n**2 * mp.quad(lambda s: (s + 1) * mp.exp(-s) * mp.besselk(0, s) / pi * mp.exp(-n * Qb(s)), b))
