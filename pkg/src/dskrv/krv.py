"""Special derivations, the divergence condition, and the map from double shuffle
elements to Kashiwara-Vergne derivations.

Also here: the substitution ``f(x, y) -> f(x, -y)`` and the derivation
``x -> [x, s(-x-y, x)], y -> [y, s(-x-y, y)]`` coming from the
Grothendieck-Teichmuller side, and the checks that tie all three maps
together.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ds import DsElement, is_ds
from .lie import TangentialDerivation, ad_divide, derivation_bracket, partner, poisson_bracket
from .ncpoly import CyclicPoly, Poly, decompose, gens, is_push_constant, is_push_invariant, substitute, trace, trace_target

__all__ = [
    "MORPHISM_SIGN",
    "TRIANGLE_WEIGHTS",
    "BridgeResult",
    "KrvCandidate",
    "at_map",
    "divergence",
    "ds_to_krv",
    "trace_bridge_check",
    "furusho_map",
    "is_krv",
    "is_special",
    "morphism_check",
    "recover_ds",
    "triangle_check",
]

# ds_to_krv({f, f'}) == MORPHISM_SIGN * [ds_to_krv(f), ds_to_krv(f')]
MORPHISM_SIGN = 1

# weights where the double shuffle space is spanned by the image of a known
# Grothendieck-Teichmuller generator
TRIANGLE_WEIGHTS = frozenset({3, 5, 7})


def _poly(f: DsElement | Poly) -> Poly:
    return f.poly if isinstance(f, DsElement) else f


def _degree(D: TangentialDerivation) -> int:
    degs = set(D.g.degrees()) | set(D.h.degrees())
    if len(degs) > 1:
        raise ValueError(f"derivation is not homogeneous: degrees {sorted(degs)}")
    return degs.pop() if degs else 0


def is_special(D: TangentialDerivation) -> bool:
    """``D(x + y) == 0``."""
    x, y = gens(D.g.alphabet)
    return not D(x + y)


def divergence(D: TangentialDerivation) -> CyclicPoly:
    """``tr(h_x x + g_y y)``."""
    _degree(D)
    x, y = gens(D.g.alphabet)
    h_x = decompose(D.h)[0] if D.h else D.h
    g_y = decompose(D.g)[1] if D.g else D.g
    return trace(h_x * x + g_y * y)


def is_krv(D: TangentialDerivation) -> tuple[bool, Fraction | None]:
    """Special and divergence proportional to ``tr((x+y)^n - x^n - y^n)``.

    Returns the proportionality scalar when it exists (also for non-special
    derivations, where the flag is still ``False``).
    """
    n = _degree(D)
    if n == 0:
        return True, Fraction(0)
    if n < 2:
        raise ValueError("the divergence condition needs degree >= 2")
    lam = divergence(D).ratio_to(trace_target(n, D.g.alphabet))
    return is_special(D) and lam is not None, lam


@dataclass(frozen=True)
class KrvCandidate:
    derivation: TangentialDerivation
    weight: int
    special: bool
    divergence_scalar: Fraction | None

    @property
    def g(self) -> Poly:
        return self.derivation.g

    @property
    def h(self) -> Poly:
        return self.derivation.h

    @property
    def in_krv(self) -> bool:
        return self.special and self.divergence_scalar is not None


def ds_to_krv(f: DsElement | Poly) -> KrvCandidate:
    """``g = f(-x-y, -y)``, ``h = -partner(g)``.

    Raises ``AssertionError`` if ``g`` is not push-invariant or the result is
    not special; for genuine double shuffle input either signals a bug.
    """
    p = _poly(f)
    x, y = gens(p.alphabet)
    g = substitute(p, -x - y, -y)
    assert is_push_invariant(g), "g = f(-x-y,-y) is not push-invariant"
    h = -partner(g)
    D = TangentialDerivation(g, h)
    n = p.degree
    special = is_special(D)
    assert special, "D_{g,h}(x+y) != 0"
    ok, lam = is_krv(D)
    return KrvCandidate(D, n, special, lam if ok else None)


def recover_ds(g: Poly) -> Poly:
    """Invert ``f -> f(-x-y, -y)`` via ``x -> y - x, y -> -y``."""
    x, y = gens(g.alphabet)
    return substitute(g, y - x, -y)


def furusho_map(f: Poly) -> Poly:
    """``f(x, y) -> f(x, -y)``."""
    x, y = gens(f.alphabet)
    return substitute(f, x, -y)


def at_map(s: Poly) -> TangentialDerivation:
    """``x -> [x, s(-x-y, x)]``, ``y -> [y, s(-x-y, y)]``."""
    x, y = gens(s.alphabet)
    z = -x - y
    return TangentialDerivation(g=substitute(s, z, y), h=substitute(s, z, x))


def triangle_check(f: DsElement | Poly) -> bool | None:
    """``at_map(furusho_map(f)) == ds_to_krv(f)``.

    Returns ``None`` (inconclusive) at weights where ``f`` is not known to
    come from the Grothendieck-Teichmuller side.
    """
    p = _poly(f)
    if p.degree not in TRIANGLE_WEIGHTS:
        return None
    lhs = at_map(furusho_map(p))
    rhs = ds_to_krv(p).derivation
    return lhs.g == rhs.g and lhs.h == rhs.h


def _extract(D) -> TangentialDerivation:
    """Read ``(g, h)`` back from generator values ``([x, h], [y, g])``."""
    a, b = D.val_x.alphabet
    return TangentialDerivation(g=ad_divide(D.val_y, b), h=ad_divide(D.val_x, a))


def morphism_check(f: DsElement | Poly, f2: DsElement | Poly) -> bool:
    """``ds_to_krv({f, f2}) == MORPHISM_SIGN * [ds_to_krv(f), ds_to_krv(f2)]``."""
    p, q = _poly(f), _poly(f2)
    bracket = poisson_bracket(p, q)
    if not bracket:
        lhs = TangentialDerivation(bracket, bracket)
    else:
        if not is_ds(bracket):
            raise ValueError("Poisson bracket left the double shuffle space")
        lhs = ds_to_krv(bracket).derivation
    rhs_gen = derivation_bracket(ds_to_krv(p).derivation, ds_to_krv(q).derivation).scale(MORPHISM_SIGN)
    if rhs_gen.is_zero():
        return not lhs.g and not lhs.h
    rhs = _extract(rhs_gen)
    return lhs.g == rhs.g and lhs.h == rhs.h


@dataclass(frozen=True)
class BridgeResult:
    push_constant: bool
    push_value: Fraction | None
    trace_proportional: bool
    trace_scalar: Fraction | None

    @property
    def agree(self) -> bool:
        return self.push_constant == self.trace_proportional


def trace_bridge_check(g: Poly) -> BridgeResult:
    """Compare push-constance of ``g^y - g^x`` with proportionality of
    ``tr((g^y - g^x) y)`` to ``tr((x+y)^n - x^n - y^n)``."""
    n = g.degree
    if n < 3 or not g.is_homogeneous():
        raise ValueError("needs a homogeneous polynomial of degree >= 3")
    _, y = gens(g.alphabet)
    _, _, gx, gy = decompose(g)
    diff = gy - gx
    ok, c = is_push_constant(diff, n - 1)
    lam = trace(diff * y).ratio_to(trace_target(n, g.alphabet))
    return BridgeResult(ok, c, lam is not None, lam)
