import random
import re
from fractions import Fraction

import pytest

from dskrv.lie import ad
from dskrv.ncpoly import Poly, gens, push_list, words


@pytest.fixture
def xy():
    return gens("xy")


@pytest.fixture
def f3():
    x, y = gens()
    return ad(x, ad(x, y)) + ad(y, ad(y, x))


def P(text: str, alphabet: str = "xy") -> Poly:
    """Tiny literal helper: ``P("xxy - 2xyx + 1/2 yxx")``."""
    terms = {}
    sign, coef = 1, None
    for op, num, word in re.findall(r"([+-])|(\d+(?:/\d+)?)|([a-z]+)", text):
        if op:
            sign = -1 if op == "-" else 1
        elif num:
            coef = Fraction(num)
        else:
            terms[word] = terms.get(word, 0) + sign * (coef if coef is not None else 1)
            sign, coef = 1, None
    return Poly(terms, alphabet)


def random_poly(rng: random.Random, degree: int, nterms: int = 6, alphabet: str = "xy") -> Poly:
    pool = words(degree, alphabet)
    return Poly({rng.choice(pool): Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(nterms)}, alphabet)


def random_orbit_sum(rng: random.Random, degree: int, norbits: int = 3) -> Poly:
    """Random linear combination of push-orbit sums in one degree."""
    pool = words(degree)
    out = Poly.zero()
    for _ in range(norbits):
        w = rng.choice(pool)
        c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        out = out + Poly({u: c for u in set(push_list(w))})
    return out


def random_push_constant(rng: random.Random, degree: int) -> tuple[Poly, Fraction]:
    """Random push-constant polynomial of the given degree, with its constant."""
    c = Fraction(0) if degree % 2 else Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    top = "y" * degree
    terms = {}
    seen = set()
    for w in words(degree):
        if w == top or w in seen:
            continue
        plist = push_list(w)
        orbit = sorted(set(plist))
        seen.update(orbit)
        mult = len(plist) // len(orbit)
        vals = [Fraction(rng.randint(-3, 3)) for _ in orbit[1:]]
        first = c / mult - sum(vals)
        for u, v in zip(orbit, [first] + vals):
            terms[u] = v
    return Poly(terms), c
