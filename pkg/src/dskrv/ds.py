"""The double shuffle Lie algebra: stuffle defects, membership and a graded basis solver."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .lie import is_lie, lie_bracket, lyndon_basis
from .linalg import RationalMatrix, nullspace
from .ncpoly import (
    Poly,
    decompose,
    depth_parts,
    epsilon,
    gens,
    is_push_constant,
    is_push_invariant,
    push_list,
    stuffle,
    substitute,
    word_to_yword,
    words,
    yword_to_word,
)

MIN_WEIGHT = 3
MAX_WEIGHT = 11

__all__ = [
    "MAX_WEIGHT",
    "MIN_WEIGHT",
    "ChainReport",
    "DsElement",
    "OrbitSums",
    "chain_checks",
    "ds_basis",
    "ds_matrix",
    "is_ds",
    "leading_coeff",
    "minimal_depth",
    "py_orbit_sums",
    "star_correction",
    "stuffle_defects",
    "stuffle_pairs",
]


def leading_coeff(f: Poly) -> Fraction:
    """Coefficient of ``x^(n-1) y`` for ``f`` homogeneous of degree ``n``."""
    n = f.degree
    a, b = f.alphabet
    return f.coeff(a * (n - 1) + b) if n >= 1 else Fraction(0)


def minimal_depth(f: Poly) -> int:
    parts = depth_parts(f)
    if not parts:
        raise ValueError("the zero polynomial has no minimal depth")
    return next(iter(parts))


def _require_homogeneous(f: Poly) -> int:
    degs = f.degrees()
    if len(degs) > 1:
        raise ValueError(f"expected a homogeneous polynomial, got degrees {degs}")
    return degs[0] if degs else 0


def star_correction(f: Poly, n: int | None = None) -> Poly:
    """Project onto words ending in ``y`` and add ``(-1)^(n-1)/n (f|x^(n-1)y) y^n``."""
    if n is None:
        n = _require_homogeneous(f)
    a, b = f.alphabet
    out = {w: c for w, c in f.items() if w.endswith(b)}
    c = f.coeff(a * (n - 1) + b)
    if c:
        top = b * n
        out[top] = out.get(top, 0) + Fraction((-1) ** (n - 1), n) * c
    return Poly(out, f.alphabet)


def _compositions(n: int) -> list[tuple[int, ...]]:
    if n == 0:
        return [()]
    return [(k,) + rest for k in range(1, n + 1) for rest in _compositions(n - k)]


@lru_cache(maxsize=None)
def stuffle_pairs(n: int) -> tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]:
    """Unordered pairs ``u <= v`` of nonempty depth-encoded words of total weight ``n``."""
    pairs = []
    for k in range(1, n):
        for u in _compositions(k):
            for v in _compositions(n - k):
                if u <= v:
                    pairs.append((u, v))
    return tuple(sorted(set(pairs), key=lambda p: (sum(p[0]), p)))


def stuffle_defects(f: Poly, corrected: bool = True) -> dict[tuple[tuple[int, ...], tuple[int, ...]], Fraction]:
    """``sum over w in st(u, v) of (f_*|w)`` for every pair; ``corrected=False`` uses ``f`` itself."""
    n = _require_homogeneous(f)
    target = star_correction(f, n) if corrected else f
    out = {}
    for u, v in stuffle_pairs(n):
        s = Fraction(0)
        for w, m in stuffle(u, v).items():
            s += m * target.coeff(yword_to_word(w, f.alphabet))
        out[(u, v)] = s
    return out


def is_ds(f: Poly) -> bool:
    if not f or not f.is_homogeneous() or f.degree < MIN_WEIGHT:
        return False
    if not is_lie(f):
        return False
    return not any(stuffle_defects(f).values())


@dataclass(frozen=True)
class DsElement:
    poly: Poly
    weight: int
    depth: int
    leading_coeff: Fraction

    @classmethod
    def from_poly(cls, f: Poly, check: bool = True) -> "DsElement":
        if check and not is_ds(f):
            raise ValueError("polynomial is not a double shuffle element")
        return cls(f, f.degree, minimal_depth(f), leading_coeff(f))


def _check_weight(n: int) -> None:
    if not MIN_WEIGHT <= n <= MAX_WEIGHT:
        raise ValueError(f"weight {n} outside the supported range {MIN_WEIGHT}..{MAX_WEIGHT}")


@lru_cache(maxsize=None)
def ds_matrix(n: int) -> RationalMatrix:
    """Stuffle constraints on the Lyndon coordinates of degree ``n``; one row per pair."""
    _check_weight(n)
    basis = lyndon_basis(n)
    corrected = [star_correction(e.expansion, n) for e in basis]
    # per column, coefficients on depth-encoded words
    cols = [{word_to_yword(w): c for w, c in p.items()} for p in corrected]
    rows = []
    for u, v in stuffle_pairs(n):
        st = stuffle(u, v)
        rows.append([sum((m * col.get(w, 0) for w, m in st.items()), Fraction(0)) for col in cols])
    return RationalMatrix(rows, len(basis))


def _combine(n: int, coords) -> Poly:
    out = Poly.zero()
    for c, e in zip(coords, lyndon_basis(n)):
        if c:
            out = out + e.expansion.scale(c)
    return out


@lru_cache(maxsize=None)
def ds_basis(n: int) -> tuple[DsElement, ...]:
    """Basis of the weight-``n`` part, normalized so that at most the first
    element has a nonzero ``(f|x^(n-1)y)``, and that one equals 1."""
    _check_weight(n)
    polys = [_combine(n, v) for v in nullspace(ds_matrix(n))]
    lead = next((i for i, p in enumerate(polys) if leading_coeff(p)), None)
    if lead is not None:
        first = polys.pop(lead)
        first = first.scale(1 / leading_coeff(first))
        polys = [first] + [p - first.scale(leading_coeff(p)) for p in polys]
    return tuple(DsElement(p, n, minimal_depth(p), leading_coeff(p)) for p in polys)


# -- consequences checked on each element ------------------------------------------


@dataclass(frozen=True)
class OrbitSums:
    """Signed push-orbit sums ``(-1)^r sum_{u' in Push(u)} (f_y|u')`` of ``f_y``."""

    sums: dict[str, Fraction]
    top: Fraction  # (f_y | y^(n-1))

    def constant(self) -> Fraction | None:
        values = set(self.sums.values())
        return values.pop() if len(values) == 1 else None


def py_orbit_sums(f: DsElement | Poly) -> OrbitSums:
    p = f.poly if isinstance(f, DsElement) else f
    n = _require_homogeneous(p)
    a, b = p.alphabet
    f_y = decompose(p)[1]
    top = b * (n - 1)
    sums = {}
    for u in words(n - 1, p.alphabet):
        if u == top:
            continue
        r = u.count(b)
        s = sum((f_y.coeff(w) for w in push_list(u, p.alphabet)), Fraction(0))
        sums[u] = s if r % 2 == 0 else -s
    return OrbitSums(sums, f_y.coeff(top))


def depthwise_substitution(G: Poly) -> dict[int, Poly]:
    """Depth parts of ``G(x, -x-y)`` assembled from the depth parts of ``G``.

    A word of depth ``s`` contributes ``(-1)^s eps^(s-r)/(s-r)!`` to depth ``r``.
    """
    parts = depth_parts(G)
    out: dict[int, Poly] = {}
    for s, piece in parts.items():
        term = piece.scale((-1) ** s)
        fact = 1
        for k in range(s + 1):
            r = s - k
            if k:
                term = epsilon(term)
                fact *= k
            if term:
                out[r] = out.get(r, Poly.zero(G.alphabet)) + term.scale(Fraction(1, fact))
    return {r: p for r, p in sorted(out.items()) if p}


@dataclass(frozen=True)
class ChainReport:
    weight: int
    leading_coeff: Fraction
    f_y_minus_z_push_invariant: bool
    f_z_minus_y_push_invariant: bool
    special_identity: bool
    depthwise_consistent: bool
    orbit_sums_constant: bool
    orbit_constant: Fraction | None
    twisted_f_y_push_constant: bool
    twisted_f_y_constant: Fraction | None
    g_y_minus_g_x_push_constant: bool
    g_y_minus_g_x_constant: Fraction | None

    @property
    def constants_agree(self) -> bool:
        return (
            self.twisted_f_y_constant is not None
            and self.twisted_f_y_constant == self.g_y_minus_g_x_constant
        )

    def checks(self) -> dict[str, bool]:
        return {
            "f(y,-z) push-invariant": self.f_y_minus_z_push_invariant,
            "f(z,-y) push-invariant": self.f_z_minus_y_push_invariant,
            "special identity [x,f(x,-z)]+[y,f(y,-z)]=0": self.special_identity,
            "depthwise substitution matches": self.depthwise_consistent,
            "signed orbit sums of f_y equal (f|x^(n-1)y)": self.orbit_sums_constant,
            "f(x,-y)_y push-constant": self.twisted_f_y_push_constant,
            "g_y-g_x push-constant": self.g_y_minus_g_x_push_constant,
            "push constants agree": self.constants_agree,
        }

    @property
    def passed(self) -> bool:
        return all(self.checks().values())


def chain_checks(f: DsElement | Poly) -> ChainReport:
    """Run the push-invariance and orbit-sum consequences of double shuffle on ``f``."""
    p = f.poly if isinstance(f, DsElement) else f
    n = _require_homogeneous(p)
    if n < MIN_WEIGHT or not is_lie(p):
        raise ValueError("chain_checks needs a homogeneous Lie element of degree >= 3")
    x, y = gens(p.alphabet)
    minus_z = x + y
    f_y_mz = substitute(p, y, minus_z)
    f_x_mz = substitute(p, x, minus_z)
    g = substitute(p, -minus_z, -y)
    special = lie_bracket(x, f_x_mz) + lie_bracket(y, f_y_mz)

    depthwise = depthwise_substitution(f_y_mz)
    direct = depth_parts(g)
    depthwise_ok = depthwise == direct and all(is_push_invariant(q) for q in depthwise.values())

    c = leading_coeff(p)
    orbit = py_orbit_sums(p)
    orbit_ok = orbit.top == 0 and orbit.constant() == c

    twisted = substitute(p, x, -y)
    ok1, c1 = is_push_constant(decompose(twisted)[1], n - 1)
    g_x, g_y, _, _ = decompose(g)
    ok2, c2 = is_push_constant(g_y - g_x, n - 1)

    return ChainReport(
        weight=n,
        leading_coeff=c,
        f_y_minus_z_push_invariant=is_push_invariant(f_y_mz),
        f_z_minus_y_push_invariant=is_push_invariant(g),
        special_identity=not special,
        depthwise_consistent=depthwise_ok,
        orbit_sums_constant=orbit_ok,
        orbit_constant=orbit.constant(),
        twisted_f_y_push_constant=ok1,
        twisted_f_y_constant=c1,
        g_y_minus_g_x_push_constant=ok2,
        g_y_minus_g_x_constant=c2,
    )
