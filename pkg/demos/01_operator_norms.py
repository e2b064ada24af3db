#!/usr/bin/env python3
"""Operator norms of the family T_a f(x) = integral of f over [0, x^a].

Walks through the (p, q) norm sandwich, the exact L^2 norm from the
smallest zero of the associated entire function, and the behaviour of the
norm at both ends of the parameter range.
"""

import math

import numpy as np

from volterra_alpha import (
    LpContext,
    discretize,
    largest_singular_value,
    norm_22,
    norm_sandwich,
    preferred_upper_bound,
)

print("=" * 72)
print("1. The (p, q) norm sandwich")
print("=" * 72)
print(
    """
For every exponent a > 0 the norm of T_a : L^p -> L^q is pinched between
(a q + 1)^(-1/q) and the smaller of two upper bounds, one from Holder's
inequality applied to T_a and one from applying it to the adjoint.  Which
upper bound wins depends only on the sign of q - p'.
"""
)
for p, q in ((2.0, 2.0), (3.0, 4.0), (1.5, 1.2)):
    ctx = LpContext(p, q)
    sw = norm_sandwich(1.0, ctx)
    print(
        f"  p={p:3.1f} q={q:3.1f}: lower {sw.lower:.6f}  holder {sw.upper_holder:.6f}"
        f"  beta {sw.upper_beta:.6f}  -> preferred: {preferred_upper_bound(ctx)}"
    )

print()
print("=" * 72)
print("2. The exact L^2 norm and the classical Volterra operator")
print("=" * 72)
exact = norm_22(1.0)
print(f"\n  norm_22(1)     = {exact:.12f}")
print(f"  2/pi           = {2 / math.pi:.12f}   (classical value for a = 1)")
sigma = largest_singular_value(discretize(1.0, 2048))
print(f"  matrix oracle  = {sigma:.12f}   (N = 2048 discretization)")

print()
print("  Exact norm against the sandwich for several exponents:")
ctx22 = LpContext(2.0, 2.0)
for alpha in (0.2, 0.5, 1.0, 2.0, 5.0, 20.0):
    sw = norm_sandwich(alpha, ctx22)
    val = norm_22(alpha)
    print(
        f"    a={alpha:6.2f}: {sw.lower:.6f} <= {val:.6f} <= {sw.upper:.6f}"
        f"   (width {sw.upper - sw.lower:.4f})"
    )

print()
print("=" * 72)
print("3. Asymptotics at the two ends")
print("=" * 72)
print("\n  Small a: the norm leaves 1 with slope -3/4.")
for alpha in (1e-1, 1e-2, 1e-3):
    print(f"    a={alpha:7.0e}: (1 - norm)/a = {(1 - norm_22(alpha)) / alpha:.6f}")
print("\n  Large a: norm * sqrt(a) approaches 1/sqrt(h0) = 0.831661...")
for alpha in (1e2, 1e3, 1e4):
    print(f"    a={alpha:7.0e}: norm * sqrt(a) = {norm_22(alpha) * math.sqrt(alpha):.6f}")
