"""Free Lie algebra structure on top of :class:`~dskrv.ncpoly.Poly`.

Lie elements are stored by their expansion in the free associative algebra.
Derivations are represented by their values on the two generators.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Union

from .ncpoly import Poly, decompose, dx, gens, substitute, words

__all__ = [
    "GenDerivation",
    "LyndonBasis",
    "LyndonElement",
    "TangentialDerivation",
    "ad",
    "ad_divide",
    "apply_derivation",
    "ber",
    "bernoulli",
    "derivation_bracket",
    "dynkin",
    "embed",
    "is_lie",
    "lie_bracket",
    "lyndon_basis",
    "lyndon_words",
    "partner",
    "poisson_bracket",
    "standard_factorization",
    "t_elements",
    "witt_number",
]


def lie_bracket(p: Poly, q: Poly) -> Poly:
    return p * q - q * p


def ad(p: Poly, q: Poly, k: int = 1) -> Poly:
    """``ad(p)^k (q)``."""
    for _ in range(k):
        q = lie_bracket(p, q)
    return q


def dynkin(p: Poly) -> Poly:
    """Left-normed bracketing ``a1 a2 ... an -> [...[a1, a2], ..., an]``, extended linearly."""
    out = Poly.zero(p.alphabet)
    for n, part in p.graded_parts().items():
        out = out + _dynkin_homogeneous(part, n)
    return out


def _dynkin_homogeneous(p: Poly, n: int) -> Poly:
    if n <= 1:
        return p
    a, b = p.alphabet
    # split off the last letter: p = p_a a + p_b b
    p_a, p_b, _, _ = decompose(p)
    out = Poly.zero(p.alphabet)
    for rest, letter in ((p_a, a), (p_b, b)):
        if rest:
            out = out + lie_bracket(_dynkin_homogeneous(rest, n - 1), Poly.word(letter, p.alphabet))
    return out


def is_lie(p: Poly) -> bool:
    """Dynkin criterion on every homogeneous piece: ``theta(p_n) == n p_n``.

    Elements with a constant term are never Lie.
    """
    if p.coeff(""):
        return False
    return all(_dynkin_homogeneous(part, n) == part.scale(n) for n, part in p.graded_parts().items())


# -- Lyndon words ----------------------------------------------------------------


def lyndon_words(n: int, alphabet: str = "xy") -> list[str]:
    """Lyndon words of length exactly ``n`` in lexicographic order (Duval)."""
    if n < 1:
        return []
    k = len(alphabet)
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        if len(w) == n:
            out.append("".join(alphabet[i] for i in w))
        m = len(w)
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    return out


def _is_lyndon(w: str) -> bool:
    return all(w < w[i:] for i in range(1, len(w)))


def standard_factorization(w: str) -> tuple[str, str]:
    """``w = u v`` with ``v`` the longest proper Lyndon suffix."""
    if len(w) < 2:
        raise ValueError("single letters have no standard factorization")
    for i in range(1, len(w)):
        if _is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise AssertionError("unreachable: the last letter is always Lyndon")


Bracketing = Union[str, tuple]


def _bracketing(w: str) -> Bracketing:
    if len(w) == 1:
        return w
    u, v = standard_factorization(w)
    return (_bracketing(u), _bracketing(v))


def _bracketing_str(t: Bracketing) -> str:
    if isinstance(t, str):
        return t
    return f"[{_bracketing_str(t[0])},{_bracketing_str(t[1])}]"


@lru_cache(maxsize=None)
def _lyndon_expansion(w: str, alphabet: str) -> Poly:
    if len(w) == 1:
        return Poly.word(w, alphabet)
    u, v = standard_factorization(w)
    return lie_bracket(_lyndon_expansion(u, alphabet), _lyndon_expansion(v, alphabet))


@dataclass(frozen=True)
class LyndonElement:
    word: str
    bracketing: Bracketing
    expansion: Poly

    @property
    def bracket_string(self) -> str:
        return _bracketing_str(self.bracketing)


@dataclass(frozen=True)
class LyndonBasis:
    degree: int
    alphabet: str
    elements: tuple[LyndonElement, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i: int) -> LyndonElement:
        return self.elements[i]

    def to_table(self) -> str:
        """One ``lyndon_word<TAB>expansion`` line per element."""
        return "".join(f"{e.word}\t{e.expansion}\n" for e in self.elements)


@lru_cache(maxsize=None)
def lyndon_basis(n: int, alphabet: str = "xy") -> LyndonBasis:
    if n < 1:
        raise ValueError(f"degree must be >= 1, got {n}")
    elements = tuple(
        LyndonElement(w, _bracketing(w), _lyndon_expansion(w, alphabet)) for w in lyndon_words(n, alphabet)
    )
    return LyndonBasis(n, alphabet, elements)


def _mobius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    return -result if m > 1 else result


def witt_number(n: int, letters: int = 2) -> int:
    """Dimension of the degree-``n`` part of the free Lie algebra."""
    return sum(_mobius(d) * letters ** (n // d) for d in range(1, n + 1) if n % d == 0) // n


# -- Bernoulli series --------------------------------------------------------------


@lru_cache(maxsize=None)
def bernoulli(k: int) -> Fraction:
    """Bernoulli numbers with ``B_1 = -1/2`` (coefficients of ``t/(e^t - 1)``)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k == 0:
        return Fraction(1)
    if k > 1 and k % 2:
        return Fraction(0)
    # sum_{j=0}^{k} C(k+1, j) B_j = 0
    s = sum(comb(k + 1, j) * bernoulli(j) for j in range(k))
    return Fraction(-s, k + 1)


def ber(base: Poly, arg: Poly, N: int) -> Poly:
    """``sum_k B_k/k! ad(base)^k (arg)`` truncated to total degree ``N``."""
    if arg and N < arg.degree:
        raise ValueError(f"truncation degree {N} is below the degree {arg.degree} of the argument")
    out = arg.truncate(N)
    term = arg
    k = 0
    while True:
        k += 1
        term = lie_bracket(base, term).truncate(N)
        if not term:
            break
        c = bernoulli(k)
        if c:
            out = out + term.scale(c / factorial(k))
    return out


def t_elements(N: int) -> tuple[Poly, Poly, Poly]:
    """``(t01, t02, t12)`` in the alphabet ``ab`` through degree ``N``."""
    if N < 2:
        raise ValueError("truncation degree must be >= 2")
    a, b = gens("ab")
    return ber(b, -a, N), ber(-b, a, N), lie_bracket(a, b)


def embed(p: Poly, N: int) -> Poly:
    """Send ``x -> t01``, ``y -> t02`` and truncate at degree ``N``."""
    if p.degree > N:
        raise ValueError(f"truncation degree {N} is below the degree {p.degree} of the input")
    if p.coeff(""):
        raise ValueError("embed needs a polynomial without constant term")
    t01, t02, _ = t_elements(max(N, 2))
    return substitute(p, t01, t02, max_degree=N)


# -- derivations -------------------------------------------------------------------


@dataclass(frozen=True)
class GenDerivation:
    """Derivation of the free algebra given by its values on the generators."""

    val_x: Poly
    val_y: Poly

    def __call__(self, p: Poly) -> Poly:
        return apply_derivation(self, p)

    def __add__(self, other: "GenDerivation") -> "GenDerivation":
        other = as_general(other)
        return GenDerivation(self.val_x + other.val_x, self.val_y + other.val_y)

    def __neg__(self) -> "GenDerivation":
        return GenDerivation(-self.val_x, -self.val_y)

    def __sub__(self, other: "GenDerivation") -> "GenDerivation":
        return self + (-as_general(other))

    def scale(self, c) -> "GenDerivation":
        return GenDerivation(self.val_x.scale(c), self.val_y.scale(c))

    def is_zero(self) -> bool:
        return not self.val_x and not self.val_y


@dataclass(frozen=True)
class TangentialDerivation:
    """``x -> [x, h]``, ``y -> [y, g]``."""

    g: Poly
    h: Poly

    @property
    def general(self) -> GenDerivation:
        x, y = gens(self.g.alphabet)
        return GenDerivation(lie_bracket(x, self.h), lie_bracket(y, self.g))

    def __call__(self, p: Poly) -> Poly:
        return apply_derivation(self.general, p)

    def scale(self, c) -> "TangentialDerivation":
        return TangentialDerivation(self.g.scale(c), self.h.scale(c))


def as_general(D) -> GenDerivation:
    return D.general if isinstance(D, TangentialDerivation) else D


def apply_derivation(D, p: Poly) -> Poly:
    """Leibniz extension: each letter of each word is replaced, one at a time, by its image."""
    D = as_general(D)
    if p.coeff(""):
        raise ValueError("apply_derivation needs a polynomial without constant term")
    a, b = p.alphabet
    images = {a: D.val_x, b: D.val_y}
    out: dict[str, Fraction] = {}
    for w, c in p.items():
        for i, ch in enumerate(w):
            pre, post = w[:i], w[i + 1:]
            for u, k in images[ch].items():
                key = pre + u + post
                out[key] = out.get(key, 0) + c * k
    return Poly(out, p.alphabet)


def derivation_bracket(D1, D2) -> GenDerivation:
    """``D1 o D2 - D2 o D1`` as generator values."""
    D1, D2 = as_general(D1), as_general(D2)
    return GenDerivation(D1(D2.val_x) - D2(D1.val_x), D1(D2.val_y) - D2(D1.val_y))


def ad_divide(v: Poly, letter: str) -> Poly:
    """The unique ``t`` with ``[letter, t] == v``; ``v`` homogeneous of degree >= 3.

    Raises ``ValueError`` when ``v`` is not in the image of ``ad(letter)``.
    """
    if not v:
        return Poly.zero(v.alphabet)
    if not v.is_homogeneous():
        raise ValueError("ad_divide needs a homogeneous polynomial")
    n = v.degree
    if n < 3:
        raise ValueError("ad_divide needs degree >= 3 (ad is injective only from degree 2 up)")
    if letter not in v.alphabet:
        raise ValueError(f"letter {letter!r} not in alphabet {v.alphabet!r}")
    # coefficient of letter+w in v is t_w minus t_{letter+w[:-1]} when w ends in letter
    t: dict[str, Fraction] = {}
    top = letter * (n - 1)

    def solve(w: str) -> Fraction:
        if w not in t:
            if w == top:
                t[w] = Fraction(0)
            elif w.endswith(letter):
                t[w] = v.coeff(letter + w) + solve(letter + w[:-1])
            else:
                t[w] = v.coeff(letter + w)
        return t[w]

    for w in words(n - 1, v.alphabet):
        solve(w)
    result = Poly(t, v.alphabet)
    L = Poly.word(letter, v.alphabet)
    if lie_bracket(L, result) != v:
        raise ValueError(f"polynomial is not in the image of ad({letter})")
    return result


def partner(g: Poly) -> Poly:
    """``sum_i (-1)^(i-1)/i! x^i y dx^i(g_x)``  where ``g = g_x x + g_y y``."""
    if not g:
        return Poly.zero(g.alphabet)
    if not g.is_homogeneous():
        raise ValueError("partner needs a homogeneous polynomial")
    x, y = gens(g.alphabet)
    g_x = decompose(g)[0]
    out = Poly.zero(g.alphabet)
    term = g_x
    i = 0
    xi = Poly.one(g.alphabet)
    while term:
        sign = -1 if i % 2 == 0 else 1
        out = out + (xi * y * term).scale(Fraction(sign, factorial(i)))
        term = dx(term)
        xi = xi * x
        i += 1
    return out


def poisson_bracket(f: Poly, f2: Poly) -> Poly:
    """``D_f(f2) - D_f2(f) + [f, f2]`` with ``D_f: x -> 0, y -> [y, f]``."""
    if not (is_lie(f) and is_lie(f2)):
        raise ValueError("poisson_bracket needs Lie inputs")
    _, y = gens(f.alphabet)
    zero = Poly.zero(f.alphabet)
    D_f = GenDerivation(zero, lie_bracket(y, f))
    D_f2 = GenDerivation(zero, lie_bracket(y, f2))
    return D_f(f2) - D_f2(f) + lie_bracket(f, f2)
