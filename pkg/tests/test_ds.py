import itertools
from fractions import Fraction as F

import pytest
import sympy

from conftest import P
from dskrv.ds import (
    DsElement,
    chain_checks,
    depthwise_substitution,
    ds_basis,
    ds_matrix,
    is_ds,
    leading_coeff,
    minimal_depth,
    py_orbit_sums,
    star_correction,
    stuffle_defects,
    stuffle_pairs,
)
from dskrv.lie import ad, is_lie, lie_bracket, lyndon_basis, poisson_bracket
from dskrv.linalg import rank
from dskrv.ncpoly import Poly, depth_parts, gens, substitute

F3 = P("xxy - 2xyx + yxx + xyy - 2yxy + yyx")


# -- independent oracle: all words as unknowns, Friedrichs + stuffle equations ----


def _shuffles(u, v):
    if not u:
        return [v]
    if not v:
        return [u]
    return [u[0] + w for w in _shuffles(u[1:], v)] + [v[0] + w for w in _shuffles(u, v[1:])]


def _stuffles(u, v):
    if not u:
        return [v]
    if not v:
        return [u]
    return (
        [(u[0],) + w for w in _stuffles(u[1:], v)]
        + [(v[0],) + w for w in _stuffles(u, v[1:])]
        + [(u[0] + v[0],) + w for w in _stuffles(u[1:], v[1:])]
    )


def _enc(t):
    return "".join("x" * (i - 1) + "y" for i in t)


def _oracle_space(n):
    ws = ["".join(t) for t in itertools.product("xy", repeat=n)]
    idx = {w: i for i, w in enumerate(ws)}
    rows = []
    for k in range(1, n):
        for u in map("".join, itertools.product("xy", repeat=k)):
            for v in map("".join, itertools.product("xy", repeat=n - k)):
                row = [0] * len(ws)
                for w in _shuffles(u, v):
                    row[idx[w]] += 1
                rows.append(row)
    # corrected stuffle: f_* = (terms ending in y) + (-1)^(n-1)/n (f|x^(n-1)y) y^n
    for k in range(1, n):
        for u in _all_comps(k):
            for v in _all_comps(n - k):
                row = [sympy.Integer(0)] * len(ws)
                for w in _stuffles(u, v):
                    row[idx[_enc(w)]] += 1
                    if _enc(w) == "y" * n:
                        row[idx["x" * (n - 1) + "y"]] += sympy.Rational((-1) ** (n - 1), n)
                rows.append(row)
    M = sympy.Matrix(rows)
    return ws, M.nullspace()


def _all_comps(k):
    if k == 0:
        return [()]
    return [(i,) + r for i in range(1, k + 1) for r in _all_comps(k - i)]


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_solver_matches_independent_oracle(n):
    ws, kernel = _oracle_space(n)
    basis = ds_basis(n)
    assert len(basis) == len(kernel)
    if not kernel:
        return
    oracle_rows = [[F(int(c.p), int(c.q)) for c in v] for v in kernel]
    ours = [[f.poly.coeff(w) for w in ws] for f in basis]
    assert rank(oracle_rows) == rank(oracle_rows + ours)


# -- examples ----------------------------------------------------------------------


def test_weight3_basis_exact():
    (f,) = ds_basis(3)
    assert f.poly == F3
    assert f.weight == 3 and f.depth == 1 and f.leading_coeff == 1


def test_star_correction_weight3():
    assert star_correction(F3) == P("xxy + xyy - 2yxy") + P("yyy").scale(F(1, 3))


def test_star_correction_requires_homogeneous():
    with pytest.raises(ValueError):
        star_correction(P("xy + xxy"))


def test_defect_table_weight3():
    d = stuffle_defects(F3)
    assert set(d) == {((1,), (2,)), ((1,), (1, 1))}
    assert not any(d.values())


def test_uncorrected_system_kills_weight3():
    # st(y, yy) = 3 yyy, and (f|yyy) = 0, so only the correction term saves it
    raw = stuffle_defects(F3, corrected=False)
    assert raw[((1,), (2,))] == 0
    assert raw[((1,), (1, 1))] != 0


def test_stuffle_pairs_are_ordered():
    for u, v in stuffle_pairs(5):
        assert u <= v and sum(u) + sum(v) == 5


def test_is_ds_rejects():
    x, y = gens()
    assert not is_ds(ad(x, ad(x, y)))
    assert not is_ds(Poly.zero())
    assert not is_ds(lie_bracket(x, y))
    assert not is_ds(F3 + P("xxyx"))
    assert not is_ds(P("xxy"))


def test_from_poly_checks():
    with pytest.raises(ValueError):
        DsElement.from_poly(P("xxy"))
    assert DsElement.from_poly(F3).leading_coeff == 1


def test_leading_coeff_and_minimal_depth():
    assert leading_coeff(F3) == 1
    assert minimal_depth(F3) == 1
    with pytest.raises(ValueError):
        minimal_depth(Poly.zero())


def test_weight_range_enforced():
    for n in (2, 12):
        with pytest.raises(ValueError):
            ds_basis(n)


def test_orbit_sums_weight3():
    o = py_orbit_sums(F3)
    assert o.top == 0
    assert o.constant() == 1
    assert set(o.sums) == {"xx", "xy", "yx"}


def test_depthwise_substitution_matches_direct():
    x, y = gens()
    for f in (F3, ds_basis(5)[0].poly):
        G = substitute(f, y, x + y)
        direct = substitute(f, -(x + y), -y)
        assert depthwise_substitution(G) == depth_parts(direct)


# -- structure -------------------------------------------------------------------------


@pytest.mark.parametrize("n,dim", [(3, 1), (4, 0), (5, 1), (6, 0), (7, 1), (8, 1)])
def test_dimensions(n, dim):
    assert len(ds_basis(n)) == dim


@pytest.mark.parametrize("n", range(3, 9))
def test_basis_sound_and_normalized(n):
    basis = ds_basis(n)
    for f in basis:
        assert is_ds(f.poly) and is_lie(f.poly)
        assert f.depth % 2 == n % 2
    assert all(f.leading_coeff == 0 for f in basis[1:])
    if basis and basis[0].leading_coeff:
        assert basis[0].leading_coeff == 1


@pytest.mark.parametrize("n", range(3, 9))
def test_basis_complete(n):
    M = ds_matrix(n)
    assert M.ncols - rank(M) == len(ds_basis(n))
    assert len(lyndon_basis(n)) == M.ncols


def test_poisson_closure_weight8():
    f3, f5 = ds_basis(3)[0].poly, ds_basis(5)[0].poly
    br = poisson_bracket(f3, f5)
    assert br and is_ds(br)
    (f8,) = ds_basis(8)
    ws = sorted(br.words())
    assert rank([[br.coeff(w) for w in ws], [f8.poly.coeff(w) for w in ws]]) == 1


# -- chain checks ----------------------------------------------------------------------


@pytest.mark.parametrize("n", [3, 5, 7, 8])
def test_chain_checks_pass(n):
    for f in ds_basis(n):
        rep = chain_checks(f)
        assert rep.passed, rep.checks()
        assert rep.orbit_constant == f.leading_coeff
        assert rep.twisted_f_y_constant == -f.leading_coeff


def test_chain_checks_on_non_ds_lie_element():
    x, y = gens()
    rep = chain_checks(ad(x, ad(x, y)))
    assert not rep.f_y_minus_z_push_invariant
    assert not rep.passed


def test_chain_checks_rejects_non_lie():
    with pytest.raises(ValueError):
        chain_checks(P("xxy"))
