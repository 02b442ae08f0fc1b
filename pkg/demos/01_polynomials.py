"""
Words, shuffles and the push operator
=====================================

Noncommutative polynomials in x, y with exact rational coefficients.
"""

from dskrv.ncpoly import Poly, gens, push_list, shuffle, stuffle, substitute, trace

x, y = gens()
p = x * x * y - (x * y * x).scale(2) + y * x * x
print("p          =", p)
print("p(y, x)    =", substitute(p, y, x))

# shuffle of two words keeps multiplicities
print("xy sh y    =", dict(shuffle("xy", "y")))

# stuffle works on depth-encoded words: (1,) is y, (2,) is xy
print("y * xy     =", dict(stuffle((1,), (2,))))

# push rotates the x-blocks sitting between the y's
print("push(xxyxy)  ->", push_list("xxyxy"))

# traces forget where a word starts
print("tr(xy - yx) =", trace(x * y - y * x))
print("tr(xyx)     =", trace(Poly.word("xyx")))
