"""The probability wave function of a high-degree orthogonal polynomial acts
on smooth test data like a boundary distribution: the limit picks the values
at infinity of the (anti)holomorphic parts, and the 1/N corrections integrate
radial derivatives of the circle-vanishing part."""

import planorth as po
from planorth.distributional import (distributional_expectation, distributional_terms,
                                     split_test_function)
from planorth.oracle import berezin_expectation
from planorth.presets import preset_model

model = preset_model("disk-expre03", 3)
rule = po.build_quadrature(model.map, model.weight, degree=68)
polys = po.oracle_onps(rule, 32)

M, rho = model.szego.omega_flat.bidegree, model.inner_radius
g = po.annulus_from_terms({(1, 1): 1.0, (0, 0): -1.0}, M, rho)   # |z|^2 - 1
split = split_test_function(g)
print("test data g = |z|^2 - 1 (vanishes on the circle):")
print("  g_+(inf) =", split.plus_infinity, " g_-(inf) =", split.minus_infinity)

print("\n  N    boundary expansion   oracle integral      |difference|")
for N in (8, 16, 32):
    v = distributional_expectation(model, split, N, order=2)
    o = berezin_expectation(model, polys, rule, g, N)
    print(f"  {N:<4} {v.real:+.8f}        {o.real:+.8f}        {abs(v - o):.2e}")

print("\nper-index contributions at N = 32 (nu, j, k):")
for idx, val in distributional_terms(model, split, 32, order=2):
    print(f"  {idx}: {val.real:+.6e}")

gp = po.annulus_from_terms({(-1, 0): 1.0}, M, rho)               # 1/z: no boundary-vanishing part
sp = split_test_function(gp)
print("\nharmonic-measure limit for g = 1/z (value at infinity 0):")
for N in (16, 32):
    o = berezin_expectation(model, polys, rule, gp, N)
    print(f"  N={N:<3} expansion = {distributional_expectation(model, sp, N, order=2)}"
          f"  oracle = {abs(o):.2e}")
