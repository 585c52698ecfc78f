"""Tour of the series algebra: bi-Laurent arithmetic on an annulus, circle
restriction, Hardy-type projection and the exterior Herglotz transform."""

import numpy as np

import planorth as po

RHO = 0.7

print("== products and exponentials ==")
a = po.annulus_from_terms({(1, 0): 0.3, (0, 1): 0.3}, 12, RHO)   # 2 Re(0.3 z)
omega = po.series_exp(a)
zs = np.exp(2j * np.pi * np.arange(8) / 8)
print("exp(series) vs exp(values) on the circle:",
      np.max(np.abs(omega.evaluate(zs) - np.exp(a.evaluate(zs)))))

prod = po.multiply(omega, po.series_exp(-a))
print("exp(a) * exp(-a) on the circle:", np.max(np.abs(prod.evaluate(zs) - 1.0)))
print("truncation mass carried by the product:", prod.trunc_mass)

print("\n== circle restriction ==")
f = po.annulus_from_terms({(2, 1): 1.0, (1, 1): 2.0}, 4, RHO)    # z^2 zbar + 2 |z|^2
r = po.restrict_to_circle(f)
print("z^2 zbar restricts to mode +1:", r.coeff(1), " |z|^2 to mode 0:", r.coeff(0))

print("\n== projection onto exterior-vanishing boundary data ==")
c = po.circle_from_modes({0: 3.0, -1: 2.0, 1: 5.0}, 4)
proj = po.hardy_project(c)
surviving = {k: complex(proj.coeff(k)) for k in range(-4, 5) if proj.coeff(k) != 0}
print("3 + 2/z + 5z  ->  ", surviving, " (tag:", proj.support + ")")

print("\n== Herglotz transform ==")
u = po.circle_from_modes({1: 0.5, -1: 0.5}, 8)                   # cos t
h = po.herglotz(u)
print("herglotz(cos t) = 1/z: mode -1 coefficient:", h.coeff(-1))
ts = np.exp(1j * np.linspace(0, 6.2, 13))
print("real part on the circle reproduces the input:",
      np.max(np.abs(np.real(h.evaluate(ts)) - np.cos(np.angle(ts)))))
