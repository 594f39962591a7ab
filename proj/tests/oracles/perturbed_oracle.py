"""High-precision reference values for the oscillatory perturbed family.

f(x) = amp * x**p * (1 + eps*sin(log x)).  Everything is computed with mpmath
quadrature at 30 digits, independently of the C++ engine; the printed values
are frozen into the unit and acceptance tests.
"""
import mpmath as mp

mp.mp.dps = 30


def family(p, eps, amp=1):
    f = lambda x: amp * x**p * (1 + eps * mp.sin(mp.log(x)))
    E = lambda x: p + eps * mp.cos(mp.log(x)) / (1 + eps * mp.sin(mp.log(x)))
    return f, E


def quad0(h, a):
    # split on a geometric ladder so the log-oscillation near 0 is resolved
    pts = [mp.mpf(0)] + [a * mp.mpf(2) ** (-k) for k in range(80, -1, -1)]
    return mp.quad(h, pts)


def moments(p, eps, a, amp=1):
    f, E = family(p, eps, amp)
    F = quad0(f, a)
    H = quad0(lambda x: x * f(x), a)
    G = quad0(lambda x: f(x) ** 2, a)
    fa = f(a)
    A, B, C = F / (a * fa), H / (a**2 * fa), G / (a * fa**2)
    return dict(F=F, H=H, G=G, A=A, B=B, C=C, theta=B / A, xbar=H / F, ybar=G / (2 * F))


def variance(p, eps, a):
    f, E = family(p, eps)
    m = moments(p, eps, a)
    th = m["theta"]
    fa = f(a)
    Et = E(a * th)
    g = lambda s: f(a * s) / fa
    V = quad0(lambda s: (s - th) ** 2 * g(s) * (E(a * s) - Et) ** 2, 1)
    D = quad0(lambda s: (s - th) ** 2 * g(s), 1)
    W = quad0(lambda s: (s - th) ** 2 * g(s) * E(a * s), 1) / D - Et
    return V, D, W


def derivs(p, eps, a):
    f, E = family(p, eps)
    m = moments(p, eps, a)
    e = E(a)
    A, B, C = m["A"], m["B"], m["C"]
    dA = (1 - (1 + e) * A) / a
    dB = (1 - (2 + e) * B) / a
    dC = (1 - (1 + 2 * e) * C) / a
    dth = (dB * A - B * dA) / A**2
    return dA, dB, dC, dth


if __name__ == "__main__":
    for eps in ["0.02", "0.05", "0.1"]:
        V, D, W = variance(1, mp.mpf(eps), 1)
        print(f"eps={eps} a=1 variance={mp.nstr(V, 17)} ratio={mp.nstr(V / mp.mpf(eps)**2, 10)} D={mp.nstr(D, 17)} wm={mp.nstr(W, 17)}")
    m = moments(1, mp.mpf("0.1"), 1)
    print("p=1 eps=0.1 a=1:", {k: mp.nstr(v, 17) for k, v in m.items()})
    print("derivs p=1 eps=0.1 a=1:", [mp.nstr(d, 17) for d in derivs(1, mp.mpf("0.1"), 1)])
    f, _ = family(1, mp.mpf("0.1"))
    for a in ["0.5", "8"]:
        m = moments(1, mp.mpf("0.1"), mp.mpf(a))
        print(f"a={a} xbar={mp.nstr(m['xbar'],17)} ybar={mp.nstr(m['ybar'],17)} ratio ybar/f(xbar)={mp.nstr(m['ybar']/f(m['xbar']),17)}")
