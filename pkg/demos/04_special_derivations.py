"""
From double shuffle to special derivations
==========================================

g = f(-x-y, -y), and h is fixed by [x, h] + [y, g] = 0.
"""

from dskrv.ds import ds_basis
from dskrv.krv import at_map, divergence, ds_to_krv, furusho_map, morphism_check, triangle_check
from dskrv.ncpoly import gens, trace_target

x, y = gens()
f3 = ds_basis(3)[0]
img = ds_to_krv(f3)
print("g =", img.g)
print("h =", img.h)
print("D(x+y) = 0      :", not img.derivation(x + y))
print("divergence      :", divergence(img.derivation))
print("target          :", trace_target(3))
print("lambda          :", img.divergence_scalar)

# the same derivation from the other side
D = at_map(furusho_map(f3.poly))
print("\ntriangle at 3   :", (D.g, D.h) == (img.g, img.h))
for n in (5, 7, 8):
    print(f"triangle at {n}   :", [triangle_check(f) for f in ds_basis(n)])

print("\nbracket (3,5)   :", morphism_check(f3, ds_basis(5)[0]))
for n in (5, 7, 8, 9):
    for f in ds_basis(n):
        print(f"weight {n}: lambda = {ds_to_krv(f).divergence_scalar}, (f|x^(n-1)y) = {f.leading_coeff}")
