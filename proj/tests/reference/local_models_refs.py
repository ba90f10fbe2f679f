"""Exact reference coefficients for tests/test_local_models.cpp.

psi:  x (1 + s(x)/u)^lambda with lambda = 1/3, s = x/2 + x^2/3, p = 0.
phi:  delta(x, v) with g(v + delta) = g(v) + z(x), g = v^2 / (1 - v),
      z = x + x^2/2, as Laurent series in v at 0. This g comes from the
      Mobius involution I(v) = -v / (1 - v).

Run with python3; prints C++ initializers.
"""
import sympy as sp

x, u, v = sp.symbols("x u v")


def psi_refs(order=4):
    lam = sp.Rational(1, 3)
    s = x / 2 + x**2 / 3
    expr = x * (1 + s / u) ** lam
    ser = sp.series(expr, x, 0, order + 1).removeO()
    out = {}
    for k in range(1, order + 1):
        ck = sp.expand(ser.coeff(x, k))
        out[k] = {-e: ck.coeff(u, -e) for e in range(0, k)}
    return out


def phi_refs(order=3, depth=4):
    g = lambda t: t**2 / (1 - t)
    z = x + x**2 / 2
    ds = sp.symbols("d1:%d" % (order + 1))
    delta = sum(ds[k - 1] * x**k for k in range(1, order + 1))
    eq = sp.expand(sp.series(g(v + delta) - g(v) - z, x, 0, order + 1).removeO())
    sol = {}
    for k in range(1, order + 1):
        ck = eq.coeff(x, k).subs(sol)
        sol[ds[k - 1]] = sp.simplify(sp.solve(ck, ds[k - 1])[0])
    out = {}
    for k in range(1, order + 1):
        lo = -(2 * k - 1)
        ser = sp.series(sol[ds[k - 1]], v, 0, depth + 1).removeO()
        ser = sp.expand(ser)
        out[k] = {e: ser.coeff(v, e) for e in range(lo, depth + 1)}
    return out


def emit(name, table):
    print("// %s" % name)
    for k, row in table.items():
        items = ", ".join("{%d, %s}" % (e, sp.N(c, 20)) for e, c in sorted(row.items()))
        print("{%d, {%s}}," % (k, items))


if __name__ == "__main__":
    emit("psi", psi_refs())
    emit("phi", phi_refs())
