import random
from fractions import Fraction
from math import factorial

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import P, random_poly
from dskrv.ds import ds_basis
from dskrv.krv import ds_to_krv
from dskrv.lie import (
    GenDerivation,
    TangentialDerivation,
    ad,
    ad_divide,
    apply_derivation,
    ber,
    bernoulli,
    derivation_bracket,
    dynkin,
    embed,
    is_lie,
    lie_bracket,
    lyndon_basis,
    lyndon_words,
    partner,
    poisson_bracket,
    t_elements,
    witt_number,
)
from dskrv.linalg import nullspace, rank
from dskrv.ncpoly import Poly, decompose, gens, is_push_invariant, push_poly, reverse, shuffle, substitute, trace, words


def friedrichs_is_lie(p: Poly) -> bool:
    """Lie iff orthogonal to every shuffle of two nonempty words."""
    if p.coeff(""):
        return False
    for n, part in p.graded_parts().items():
        for k in range(1, n):
            for u in words(k):
                for v in words(n - k):
                    if sum(m * part.coeff(w) for w, m in shuffle(u, v).items()):
                        return False
    return True


def brute_lyndon(n):
    return [w for w in words(n) if all(w < w[i:] + w[:i] for i in range(1, n))]


def test_bracket_examples(xy):
    x, y = xy
    assert lie_bracket(x, y) == P("xy - yx")
    assert lie_bracket(x, lie_bracket(x, y)) == P("xxy - 2xyx + yxx")
    p = P("xy - 3yyx + x")
    assert lie_bracket(p, p) == Poly.zero()


def test_is_lie_examples(f3):
    assert is_lie(P("xy - yx"))
    assert not is_lie(P("xy"))
    assert is_lie(f3)
    assert not is_lie(Poly.one())


def test_is_lie_matches_friedrichs():
    rng = random.Random(11)
    for n in range(2, 7):
        basis = lyndon_basis(n)
        for _ in range(6):
            lie = sum((e.expansion.scale(rng.randint(-3, 3)) for e in basis), Poly.zero())
            assert is_lie(lie) and friedrichs_is_lie(lie)
            noise = random_poly(rng, n, nterms=3)
            assert is_lie(lie + noise) == friedrichs_is_lie(lie + noise)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 6))
def test_dynkin_idempotent_up_to_degree(seed, n):
    p = random_poly(random.Random(seed), n)
    assert dynkin(dynkin(p)) == dynkin(p).scale(n)


def test_lyndon_examples():
    b2 = lyndon_basis(2)
    assert [(e.word, e.bracket_string) for e in b2] == [("xy", "[x,y]")]
    b3 = lyndon_basis(3)
    assert [(e.word, e.bracket_string) for e in b3] == [("xxy", "[x,[x,y]]"), ("xyy", "[[x,y],y]")]
    assert len(lyndon_basis(8)) == 30
    assert lyndon_basis(3).to_table() == "xxy\txxy - 2*xyx + yxx\nxyy\txyy - 2*yxy + yyx\n"


@pytest.mark.parametrize("n", range(1, 11))
def test_lyndon_counts(n):
    assert lyndon_words(n) == brute_lyndon(n)
    assert len(lyndon_words(n)) == witt_number(n)


@pytest.mark.parametrize("n", range(2, 9))
def test_lyndon_expansions(n):
    basis = lyndon_basis(n)
    ws = words(n)
    assert rank([[e.expansion.coeff(w) for w in ws] for e in basis]) == len(basis)
    for e in basis:
        p = e.expansion
        assert p.is_homogeneous() and p.degree == n
        assert p == reverse(p).scale((-1) ** (n - 1))
        assert trace(p) == 0
        # leading word of a Lyndon bracket is the Lyndon word itself, with coefficient 1
        assert min(p.words()) == e.word and p.coeff(e.word) == 1


def test_bernoulli_against_series():
    t = sympy.symbols("t")
    series = sympy.series(t / (sympy.exp(t) - 1), t, 0, 16).removeO()
    for k in range(16):
        expected = sympy.Rational(series.coeff(t, k)) * sympy.factorial(k)
        assert bernoulli(k) == Fraction(int(expected.p), int(expected.q))
    assert [bernoulli(k) for k in range(5)] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30)]


def test_ber_examples(xy):
    x, y = xy
    xy_ = lie_bracket(x, y)
    assert ber(x, y, 3) == y - xy_.scale(Fraction(1, 2)) + lie_bracket(x, xy_).scale(Fraction(1, 12))
    assert ber(x, y, 1) == y
    assert ber(Poly.zero(), y, 6) == y
    with pytest.raises(ValueError):
        ber(x, xy_, 1)


@pytest.mark.parametrize("N", range(1, 9))
def test_ber_series_inverse(N):
    x, y = gens()
    b = ber(x, y, N)
    # (e^ad - 1)/ad = sum ad^k/(k+1)!
    back = Poly.zero()
    term = b
    k = 0
    while term:
        back = back + term.scale(Fraction(1, factorial(k + 1)))
        term = lie_bracket(x, term).truncate(N)
        k += 1
    assert back.truncate(N) == y


def test_t_elements_examples():
    t01, t02, t12 = t_elements(3)
    a, b = gens("ab")
    ba = lie_bracket(b, a)
    assert t01 == -a + ba.scale(Fraction(1, 2)) - lie_bracket(b, ba).scale(Fraction(1, 12))
    assert t02 == a + ba.scale(Fraction(1, 2)) + lie_bracket(b, ba).scale(Fraction(1, 12))
    assert t12 == lie_bracket(a, b)


def test_t_identity_through_12():
    t01, t02, t12 = t_elements(12)
    assert t01 + t02 + t12 == Poly.zero("ab")
    assert t01.degree == 11  # even Bernoulli terms survive; odd ones vanish
    assert is_lie(t01) and is_lie(t02)


def test_embed_examples(xy):
    x, y = xy
    a, b = gens("ab")
    for N in (2, 5, 8):
        assert embed(x + y, N) == -lie_bracket(a, b)
        assert embed(lie_bracket(x, y), N) == lie_bracket(embed(x, N), embed(y, N)).truncate(N)
    assert embed(x, 1) == -a
    with pytest.raises(ValueError):
        embed(lie_bracket(x, y), 1)


def test_embed_is_a_lie_morphism_on_f3(f3):
    N = 7
    x, y = gens()
    lhs = embed(lie_bracket(x, f3), N)
    rhs = lie_bracket(embed(x, N), embed(f3, N)).truncate(N)
    assert lhs == rhs
    assert is_lie(embed(f3, N))


def test_partner_examples(xy):
    x, y = xy
    g = -ad(x, ad(x, y))
    gp = partner(g)
    assert gp == P("xyy - 2yxy + yyx")
    assert gp == lie_bracket(lie_bracket(x, y), y)
    assert partner(Poly.zero()) == Poly.zero()
    assert lie_bracket(x, -gp) + lie_bracket(y, g) == Poly.zero()
    with pytest.raises(ValueError):
        partner(P("xy + xxy"))


@pytest.mark.parametrize("n", range(3, 9))
def test_partner_gives_special_pairs(n):
    x, y = gens()
    for f in ds_basis(n):
        g = substitute(f.poly, -x - y, -y)
        h = -partner(g)
        assert is_lie(h)
        assert lie_bracket(x, h) + lie_bracket(y, g) == Poly.zero()
        g_x, g_y, gx, gy = decompose(g)
        h_x, h_y, hx, hy = decompose(h)
        assert h_x == hx and h_y == gx and hy == g_x and gy == g_y
        # x -> g, y -> g' kills [x, y]
        E = GenDerivation(g, partner(g))
        assert E(lie_bracket(x, y)) == Poly.zero()


@pytest.mark.parametrize("n", range(3, 8))
def test_every_push_invariant_lie_element_has_a_partner(n):
    x, y = gens()
    basis = lyndon_basis(n)
    ws = words(n)
    # columns: Lyndon elements; rows: coefficients of push(L) - L
    cols = [[(push_poly(e.expansion) - e.expansion).coeff(w) for w in ws] for e in basis]
    kernel = nullspace([list(r) for r in zip(*cols)])
    if n % 2:
        assert kernel
    for v in kernel:
        g = sum((e.expansion.scale(c) for e, c in zip(basis, v)), Poly.zero())
        assert is_push_invariant(g)
        assert lie_bracket(x, -partner(g)) + lie_bracket(y, g) == Poly.zero()


def test_apply_derivation_examples(f3, xy):
    x, y = xy
    D = GenDerivation(Poly.zero(), lie_bracket(y, f3))
    assert D(x) == Poly.zero()
    assert D(y) == lie_bracket(y, f3)
    image = ds_to_krv(f3)
    assert image.derivation(x + y) == Poly.zero()
    with pytest.raises(ValueError):
        apply_derivation(D, P("xy") + 1)


def test_apply_derivation_is_leibniz():
    rng = random.Random(5)
    D = GenDerivation(random_poly(rng, 2), random_poly(rng, 3))
    p, q = random_poly(rng, 2), random_poly(rng, 3)
    assert D(p * q) == D(p) * q + p * D(q)
    assert D(p + q) == D(p) + D(q)


def _random_derivation(rng):
    return GenDerivation(random_poly(rng, rng.randint(1, 4), 3), random_poly(rng, rng.randint(1, 4), 3))


def test_derivation_bracket_properties():
    rng = random.Random(9)
    D = _random_derivation(rng)
    assert derivation_bracket(D, D).is_zero()
    for _ in range(5):
        A, B, C = (_random_derivation(rng) for _ in range(3))
        jac = (derivation_bracket(derivation_bracket(A, B), C)
               + derivation_bracket(derivation_bracket(B, C), A)
               + derivation_bracket(derivation_bracket(C, A), B))
        assert jac.is_zero()


def test_bracket_of_tangential_is_tangential():
    D3 = ds_to_krv(ds_basis(3)[0]).derivation
    D5 = ds_to_krv(ds_basis(5)[0]).derivation
    B = derivation_bracket(D3, D5)
    h, g = ad_divide(B.val_x, "x"), ad_divide(B.val_y, "y")
    T = TangentialDerivation(g, h)
    assert T.general == B
    assert is_lie(g) and is_lie(h)


def test_ad_divide_examples(xy):
    x, y = xy
    t = ad(y, ad(y, x))
    assert ad_divide(lie_bracket(x, t), "x") == t
    assert ad_divide(Poly.zero(), "x") == Poly.zero()
    with pytest.raises(ValueError):
        ad_divide(P("xxy"), "x")
    with pytest.raises(ValueError):
        ad_divide(P("xy - yx"), "x")


def test_ad_divide_recovers_at_component(f3):
    from dskrv.krv import at_map, furusho_map

    D = at_map(furusho_map(f3))
    assert ad_divide(D.general.val_x, "x") == D.h
    assert ad_divide(D.general.val_y, "y") == D.g


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.integers(2, 6))
def test_ad_divide_inverts_bracket(seed, n):
    rng = random.Random(seed)
    t = sum((e.expansion.scale(rng.randint(-3, 3)) for e in lyndon_basis(n)), Poly.zero())
    for letter in "xy":
        assert ad_divide(lie_bracket(Poly.word(letter), t), letter) == t


def test_poisson_examples(f3):
    assert poisson_bracket(f3, f3) == Poly.zero()
    f5 = ds_basis(5)[0].poly
    b = poisson_bracket(f3, f5)
    assert b and b.is_homogeneous() and b.degree == 8 and is_lie(b)
    assert poisson_bracket(f5, f3) == -b
    with pytest.raises(ValueError):
        poisson_bracket(P("xy"), f3)


def test_poisson_bilinear():
    rng = random.Random(2)
    f, g, h = (sum((e.expansion.scale(rng.randint(-2, 2)) for e in lyndon_basis(n)), Poly.zero()) for n in (3, 4, 4))
    assert poisson_bracket(f, g + h) == poisson_bracket(f, g) + poisson_bracket(f, h)
    assert poisson_bracket(f.scale(3), g) == poisson_bracket(f, g).scale(3)


def test_poisson_matches_derivation_bracket(f3):
    # [D_f, D_g] = D_{f,g} for D_f: x -> 0, y -> [y, f]
    x, y = gens()
    f5 = ds_basis(5)[0].poly
    zero = Poly.zero()
    Df = GenDerivation(zero, lie_bracket(y, f3))
    Dg = GenDerivation(zero, lie_bracket(y, f5))
    assert derivation_bracket(Df, Dg) == GenDerivation(zero, lie_bracket(y, poisson_bracket(f3, f5)))
