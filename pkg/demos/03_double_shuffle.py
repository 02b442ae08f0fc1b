"""
Solving for double shuffle elements
===================================

Each weight is one exact nullspace computation on Lyndon coordinates.
"""

import time

from dskrv.ds import chain_checks, ds_basis, stuffle_defects
from dskrv.lie import poisson_bracket

for n in range(3, 10):
    t = time.perf_counter()
    basis = ds_basis(n)
    print(f"weight {n}: dim {len(basis)}  depths {[f.depth for f in basis]}  ({time.perf_counter() - t:.2f}s)")

f3 = ds_basis(3)[0]
print("\nf3 =", f3.poly)

# the y^n correction matters: without it f3 would not survive
print("uncorrected defects:", {k: str(v) for k, v in stuffle_defects(f3.poly, corrected=False).items() if v})

# the bracket of f3 and f5 lands in weight 8
f5 = ds_basis(5)[0]
br = poisson_bracket(f3.poly, f5.poly)
f8 = ds_basis(8)[0].poly
w = next(iter(f8.words()))
print("{f3, f5} / f8 =", br.coeff(w) / f8.coeff(w), "->", br == f8.scale(br.coeff(w) / f8.coeff(w)))

rep = chain_checks(f5)
for name, ok in rep.checks().items():
    print(f"  [{'ok' if ok else '!!'}] {name}")
