"""Dirichlet(2,1,1) mass of the plurality cells, integrated exactly with sympy.

Density on the (u1, u2) chart is 6 u1 over u1, u2 >= 0, u1 + u2 <= 1.
Cell a = {u1 >= u2, u1 >= 1 - u1 - u2}; cell b by symmetry of b and c.
"""
import sympy as sp

u1, u2 = sp.symbols("u1 u2", nonnegative=True)
f = 6 * u1
# cell a: max(0, 1 - 2 u1) <= u2 <= min(u1, 1 - u1), for u1 in [1/3, 1]
cell_a = (sp.integrate(sp.integrate(f, (u2, 1 - 2 * u1, u1)), (u1, sp.Rational(1, 3), sp.Rational(1, 2)))
          + sp.integrate(sp.integrate(f, (u2, 0, 1 - u1)), (u1, sp.Rational(1, 2), 1)))
rest = (1 - cell_a) / 2
print("mu(cell a) =", cell_a, float(cell_a))
print("mu(cell b) = mu(cell c) =", rest, float(rest))
print("TV surrogate vs uniform on plurality cells =", cell_a - sp.Rational(1, 3), float(cell_a - sp.Rational(1, 3)))
