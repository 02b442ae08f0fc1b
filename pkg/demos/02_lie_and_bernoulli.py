"""
Lyndon bases and the Bernoulli series
=====================================
"""

from dskrv.lie import bernoulli, is_lie, lyndon_basis, t_elements, witt_number
from dskrv.ncpoly import Poly

# a basis of the degree-5 part of the free Lie algebra
basis = lyndon_basis(5)
print(basis.to_table())
print("dimension", len(basis.elements), "= Witt number", witt_number(5))

# brackets are Lie, plain words are not
e = basis.elements[0].expansion
print("is_lie(L)  :", is_lie(e))
print("is_lie(xy) :", is_lie(Poly.word("xy")))

print("B_0..B_8   :", [str(bernoulli(k)) for k in range(9)])

# t01 + t02 + t12 vanishes degree by degree
t01, t02, t12 = t_elements(8)
print("t01 (deg<=3):", t01.truncate(3))
print("t02 (deg<=3):", t02.truncate(3))
print("sum is zero :", not (t01 + t02 + t12))
