#!/usr/bin/env python3
"""Scan the one-way deficit of the transverse-field Ising chain across h = 1.

Computes the deficit of two adjacent spins along the gamma = 1 line, its
finite-difference susceptibility, and the location of the |chi| extrema.
Also prints the XX-limit collapse (gamma -> 0, deficit drops to zero for
h > 1) and a few points on the circle gamma^2 + h^2 = 1 where the ground
state is a site-by-site product.
"""

import numpy as np

from spindeficit import SweepSpec, XYParams, deficit_of, run_sweep


def ising_line():
    print("== transverse-field Ising line (gamma = 1) ==")
    spec = SweepSpec(model="xy", param="h", lo=0.2, hi=1.8, n=81, gamma=1.0)
    result = run_sweep(spec)
    for x, d, c in zip(result.x[::8], result.deficit[::8], result.chi[::8]):
        print(f"  h = {x:5.2f}   deficit = {d:.6f}   chi = {c:+.6f}")
    for x, c in result.extrema:
        print(f"  |chi| extremum at h = {x:.4f}  (chi = {c:+.4f})")


def xx_collapse():
    print("== XX limit (gamma = 1e-6) ==")
    for h in (0.5, 0.8, 0.95, 1.05, 1.2, 2.0):
        d = deficit_of(XYParams(gamma=1e-6, h=h))
        tag = "  <- zero above h = 1" if h > 1 and d < 1e-6 else ""
        print(f"  h = {h:5.2f}   deficit = {d:.3e}{tag}")


def product_circle():
    print("== circle gamma^2 + h^2 = 1 (product ground state) ==")
    for t in np.linspace(0.1, np.pi / 2, 5):
        gamma, h = np.sin(t), np.cos(t)
        d = deficit_of(XYParams(gamma=gamma, h=h))
        print(f"  gamma = {gamma:.3f}  h = {h:.3f}   deficit = {d:.6f}")
    print("  (the reduced pair state is separable here, yet every local")
    print("   measurement still adds entropy unless gamma = 1, h = 0)")


if __name__ == "__main__":
    ising_line()
    xx_collapse()
    product_circle()
