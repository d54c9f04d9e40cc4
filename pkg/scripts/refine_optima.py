"""Numerically refine the global optima of the analytic CEC2013 niching
problems and print them as Python literals for the benchmark catalog.

Run once; the output is frozen into src/hillvallea/benchmarks.py and
re-verified there by the grid-scan oracle tests.
"""
import numpy as np
from scipy import optimize


def refine_f3():
    # envelope * sin^6 peak near x = 0.15**(4/3)
    f = lambda x: -(np.exp(-2.0 * np.log(2.0) * ((x - 0.08) / 0.854) ** 2)
                    * np.sin(5 * np.pi * (x ** 0.75 - 0.05)) ** 6)
    res = optimize.minimize_scalar(f, bounds=(0.06, 0.10), method="bounded",
                                   options={"xatol": 1e-15})
    return res.x, -res.fun


def refine_f4():
    # roots of x^2 + y = 11, x + y^2 = 7 (f = 200 there exactly)
    seeds = [(3.0, 2.0), (-2.805118, 3.131312), (-3.779310, -3.283186),
             (3.584428, -1.848126)]
    sys = lambda p: [p[0] ** 2 + p[1] - 11.0, p[0] + p[1] ** 2 - 7.0]
    roots = [optimize.fsolve(sys, s, xtol=1e-15) for s in seeds]
    f = lambda p: 200.0 - (p[0] ** 2 + p[1] - 11.0) ** 2 - (p[0] + p[1] ** 2 - 7.0) ** 2
    return roots, [f(r) for r in roots]


def refine_f5():
    inner = lambda p: ((4.0 - 2.1 * p[0] ** 2 + p[0] ** 4 / 3.0) * p[0] ** 2
                       + p[0] * p[1] + (4.0 * p[1] ** 2 - 4.0) * p[1] ** 2)
    res = optimize.minimize(inner, [0.0898, -0.7126], method="Nelder-Mead",
                            options={"xatol": 1e-14, "fatol": 1e-16})
    # polish with gradient-free refinement via fsolve on the gradient
    def grad(p):
        x, y = p
        return [(8.0 - 8.4 * x ** 2 + 2.0 * x ** 4) * x + y,
                x + (16.0 * y ** 2 - 8.0) * y]
    r = optimize.fsolve(grad, res.x, xtol=1e-15)
    return r, -4.0 * inner(r)


def shubert_1d_critical():
    j = np.arange(1, 6)
    g = lambda x: np.sum(j * np.cos((j + 1) * x + j))
    dg = lambda x: np.sum(-j * (j + 1) * np.sin((j + 1) * x + j))
    xs = np.linspace(-10, 10, 20001)
    vals = [dg(x) for x in xs]
    roots = []
    for a, b, va, vb in zip(xs[:-1], xs[1:], vals[:-1], vals[1:]):
        if va == 0.0:
            roots.append(a)
        elif va * vb < 0:
            roots.append(optimize.brentq(dg, a, b, xtol=1e-15, rtol=8.9e-16))
    gv = np.array([g(r) for r in roots])
    gmin, gmax = gv.min(), gv.max()
    mins = [r for r, v in zip(roots, gv) if abs(v - gmin) < 1e-9]
    maxs = [r for r, v in zip(roots, gv) if abs(v - gmax) < 1e-9]
    return mins, maxs, gmin, gmax, g


def main():
    np.set_printoptions(precision=17)
    x3, f3 = refine_f3()
    print(f"F3 optimum: x = {x3!r}  f = {f3!r}")

    roots, fs = refine_f4()
    print("F4 roots:")
    for r, f in zip(roots, fs):
        print(f"  ({r[0]!r}, {r[1]!r})  f = {f!r}")

    r5, f5 = refine_f5()
    print(f"F5 optimum: ({r5[0]!r}, {r5[1]!r})  f = {f5!r}")

    mins, maxs, gmin, gmax, g = shubert_1d_critical()
    print(f"Shubert 1-D: gmin = {gmin!r} at {[repr(m) for m in mins]}")
    print(f"             gmax = {gmax!r} at {[repr(m) for m in maxs]}")
    print(f"  2D fopt (= -gmin*gmax): {-gmin * gmax!r}, count {2 * len(mins) * len(maxs)}")
    print(f"  3D fopt (= -gmin*gmax^2): {-gmin * gmax * gmax!r}, count {3 * len(mins) * len(maxs) ** 2}")

    k = np.arange(-2, 4)
    vx = np.exp((np.pi / 2 + 2 * np.pi * k) / 10.0)
    print(f"Vincent 1-D peaks: {[repr(v) for v in vx]}")


if __name__ == "__main__":
    main()
