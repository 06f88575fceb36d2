"""Regenerate ``src/quadcurl/_manufactured_exprs.py`` with sympy.

Run from the repository root: ``python tools/gen_manufactured.py``.
"""
import sympy as sp
from sympy.printing.numpy import NumPyPrinter

x, y, z = sp.symbols("x y z", real=True)
X = (x, y, z)
pi = sp.pi


def curl(u):
    return sp.Matrix([
        sp.diff(u[2], y) - sp.diff(u[1], z),
        sp.diff(u[0], z) - sp.diff(u[2], x),
        sp.diff(u[1], x) - sp.diff(u[0], y),
    ])


def lap(u):
    return sp.Matrix([sum(sp.diff(c, v, 2) for v in X) for c in u])


def grad(w):
    return sp.Matrix(3, 3, lambda i, j: sp.diff(w[i], X[j]))


class _Printer(NumPyPrinter):
    def _print_Pi(self, expr):
        return "np.pi"

    def _module_format(self, fqn, register=True):
        return fqn.replace("numpy.", "np.")


def emit(name, exprs, doc, extra_symbols=()):
    flat = list(exprs)
    reps, reduced = sp.cse(flat, optimizations="basic")
    pr = _Printer()
    lines = [f"def {name}(x, y, z):", f'    """{doc}"""']
    for s, e in reps:
        lines.append(f"    {s} = {pr.doprint(e)}")
    body = ", ".join(pr.doprint(e) if not e.is_number else f"{float(e)!r} + 0.0 * x" for e in reduced)
    lines.append(f"    return ({body},)")
    return "\n".join(lines)


def example1():
    s = lambda v: sp.sin(pi * v)  # noqa: E731
    c = lambda v: sp.cos(pi * v)  # noqa: E731
    u = sp.Matrix([
        s(x) ** 3 * s(y) ** 2 * s(z) ** 2 * c(y) * c(z),
        s(y) ** 3 * s(z) ** 2 * s(x) ** 2 * c(z) * c(x),
        -2 * s(z) ** 3 * s(x) ** 2 * s(y) ** 2 * c(x) * c(y),
    ])
    w = curl(u)
    return u, w, grad(w), curl(curl(u)), -curl(lap(w))


def example2():
    u = sp.Matrix([
        0,
        -x**2 * y**2 * z * (x - 1) ** 3 * (y - 1) ** 3 * (z - 1) ** 3 / 4
        - 3 * x**2 * y**2 * z**2 * (x - 1) ** 3 * (y - 1) ** 3 * (z - 1) ** 2 / 8,
        x**2 * y * z**2 * (x - 1) ** 3 * (y - 1) ** 3 * (z - 1) ** 3 / 4
        + 3 * x**2 * y**2 * z**2 * (x - 1) ** 3 * (y - 1) ** 2 * (z - 1) ** 3 / 8,
    ])
    w = curl(u)
    return u, w, grad(w), curl(curl(u))


def main():
    out = [
        '"""Closed-form manufactured fields, generated by tools/gen_manufactured.py.',
        "",
        "Do not edit by hand.",
        '"""',
        "import numpy as np",
        "",
    ]
    u, w, gw, f2, f4 = example1()
    out += ["", emit("ex1_u", list(u), "Example 1 field."), ""]
    out += ["", emit("ex1_curl", list(w), "Curl of the Example 1 field."), ""]
    out += ["", emit("ex1_grad_curl", list(gw), "Row-major d_j (curl u)_i."), ""]
    out += ["", emit("ex1_curlcurl", list(f2), "curl curl u."), ""]
    out += ["", emit("ex1_curl_lap_curl", list(f4), "-curl(Laplace(curl u))."), ""]
    u, w, gw, f2 = example2()
    out += ["", emit("ex2_u", list(u), "Example 2 reduced-problem field."), ""]
    out += ["", emit("ex2_curl", list(w), "Curl of the Example 2 field."), ""]
    out += ["", emit("ex2_grad_curl", list(gw), "Row-major d_j (curl u)_i."), ""]
    out += ["", emit("ex2_curlcurl", list(f2), "curl curl u (the Example 2 source)."), ""]
    with open("src/quadcurl/_manufactured_exprs.py", "w") as fh:
        fh.write("\n".join(out).rstrip() + "\n")


if __name__ == "__main__":
    main()
