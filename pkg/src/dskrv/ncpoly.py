"""Exact noncommutative polynomials on a two-letter alphabet.

Words are plain ``str`` objects over the alphabet ``"xy"`` (or ``"ab"``);
the first letter plays the role of ``x`` and the second of ``y`` everywhere
(push operator, depth, depth encoding).  Coefficients are
:class:`fractions.Fraction`.  A :class:`Poly` is an immutable sparse map
``word -> Fraction`` that never stores zeros.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import product
from numbers import Rational
from typing import Iterable, Iterator, Mapping

ALPHABETS = ("xy", "ab")

__all__ = [
    "ALPHABETS",
    "AlphabetError",
    "CyclicPoly",
    "Poly",
    "canonical_rotation",
    "coeff",
    "concat",
    "decompose",
    "depth",
    "depth_parts",
    "dx",
    "epsilon",
    "gens",
    "is_push_constant",
    "is_push_invariant",
    "push",
    "push_list",
    "push_orbit_sum",
    "push_poly",
    "reverse",
    "shuffle",
    "stuffle",
    "substitute",
    "trace",
    "trace_target",
    "word_to_yword",
    "words",
    "yword_to_word",
]


class AlphabetError(ValueError):
    """Operands live on different alphabets, or a word uses foreign letters."""


def _check_alphabet(alphabet: str) -> str:
    if alphabet not in ALPHABETS:
        raise AlphabetError(f"unsupported alphabet {alphabet!r}; expected one of {ALPHABETS}")
    return alphabet


def _to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"coefficient must be an exact rational, got {type(c).__name__}")


class Poly:
    """Sparse noncommutative polynomial with rational coefficients.

    ``p * q`` is concatenation when both sides are polynomials and scalar
    multiplication when one side is a number.
    """

    __slots__ = ("_terms", "_alphabet", "_hash")

    def __init__(self, terms: Mapping[str, object] | Iterable[tuple[str, object]] = (), alphabet: str = "xy"):
        self._alphabet = _check_alphabet(alphabet)
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[str, Fraction] = {}
        letters = set(alphabet)
        for w, c in items:
            if not set(w) <= letters:
                raise AlphabetError(f"word {w!r} is not over alphabet {alphabet!r}")
            acc[w] = acc.get(w, Fraction(0)) + _to_fraction(c)
        self._terms = {w: c for w, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[str, Fraction], alphabet: str) -> "Poly":
        # trusted constructor: terms already validated and zero-free
        p = cls.__new__(cls)
        p._terms = terms
        p._alphabet = alphabet
        p._hash = None
        return p

    @classmethod
    def word(cls, w: str, alphabet: str = "xy", coefficient=1) -> "Poly":
        return cls({w: coefficient}, alphabet)

    @classmethod
    def zero(cls, alphabet: str = "xy") -> "Poly":
        return cls._raw({}, _check_alphabet(alphabet))

    @classmethod
    def one(cls, alphabet: str = "xy") -> "Poly":
        return cls._raw({"": Fraction(1)}, _check_alphabet(alphabet))

    # -- accessors ---------------------------------------------------------

    @property
    def alphabet(self) -> str:
        return self._alphabet

    @property
    def terms(self) -> dict[str, Fraction]:
        """A copy of the coefficient map."""
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def words(self):
        return self._terms.keys()

    def coeff(self, w: str) -> Fraction:
        return self._terms.get(w, Fraction(0))

    __getitem__ = coeff

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[str]:
        return iter(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degrees(self) -> list[int]:
        return sorted({len(w) for w in self._terms})

    @property
    def degree(self) -> int:
        """Largest word length; ``-1`` for the zero polynomial."""
        return max((len(w) for w in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_part(self, n: int) -> "Poly":
        return Poly._raw({w: c for w, c in self._terms.items() if len(w) == n}, self._alphabet)

    def graded_parts(self) -> dict[int, "Poly"]:
        return {n: self.homogeneous_part(n) for n in self.degrees()}

    def truncate(self, n: int) -> "Poly":
        """Drop every term of degree above ``n``."""
        return Poly._raw({w: c for w, c in self._terms.items() if len(w) <= n}, self._alphabet)

    def map_coefficients(self, fn) -> "Poly":
        return Poly({w: fn(c) for w, c in self._terms.items()}, self._alphabet)

    def relabel(self, alphabet: str) -> "Poly":
        """Same polynomial written in another alphabet (first letter to first letter)."""
        _check_alphabet(alphabet)
        table = str.maketrans(self._alphabet, alphabet)
        return Poly._raw({w.translate(table): c for w, c in self._terms.items()}, alphabet)

    # -- arithmetic --------------------------------------------------------

    def _same(self, other: "Poly") -> None:
        if other._alphabet != self._alphabet:
            raise AlphabetError(f"mixed alphabets {self._alphabet!r} and {other._alphabet!r}")

    def __add__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            other = Poly.one(self._alphabet) * other
        if not isinstance(other, Poly):
            return NotImplemented
        self._same(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return Poly._raw(out, self._alphabet)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({w: -c for w, c in self._terms.items()}, self._alphabet)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = _to_fraction(c)
        if not c:
            return Poly.zero(self._alphabet)
        return Poly._raw({w: c * v for w, v in self._terms.items()}, self._alphabet)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return concat(self, other)
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self.scale(Fraction(1) / _to_fraction(other))
        return NotImplemented

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power")
        out = Poly.one(self._alphabet)
        for _ in range(k):
            out = out * self
        return out

    # -- comparison / display ----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._alphabet == other._alphabet and self._terms == other._terms
        if isinstance(other, (int, Rational)) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._alphabet, frozenset(self._terms.items())))
        return self._hash

    def sorted_items(self) -> list[tuple[str, Fraction]]:
        """Terms ordered by degree, then lexicographically."""
        return sorted(self._terms.items(), key=lambda t: (len(t[0]), t[0]))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for w, c in self.sorted_items():
            word = w or "1"
            sign = "-" if c < 0 else "+"
            a = abs(c)
            body = word if a == 1 else (f"{a}*{word}" if w else f"{a}")
            parts.append(f"{sign} {body}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self) -> str:
        return f"Poly({str(self)!r}, alphabet={self._alphabet!r})"


def gens(alphabet: str = "xy") -> tuple[Poly, Poly]:
    """The two generators as polynomials."""
    _check_alphabet(alphabet)
    return Poly.word(alphabet[0], alphabet), Poly.word(alphabet[1], alphabet)


def words(n: int, alphabet: str = "xy") -> list[str]:
    """All words of length ``n`` in lexicographic order."""
    return ["".join(t) for t in product(alphabet, repeat=n)]


def concat(p: Poly, q: Poly) -> Poly:
    p._same(q)
    out: dict[str, Fraction] = {}
    for u, a in p._terms.items():
        for v, b in q._terms.items():
            w = u + v
            out[w] = out.get(w, 0) + a * b
    return Poly._raw({w: c for w, c in out.items() if c}, p._alphabet)


def coeff(p: Poly, w: str) -> Fraction:
    return p.coeff(w)


def depth(w: str, alphabet: str = "xy") -> int:
    """Number of occurrences of the second letter."""
    return w.count(alphabet[1])


# -- shuffle / stuffle -------------------------------------------------------


@lru_cache(maxsize=None)
def _shuffle(u: str, v: str) -> tuple[tuple[str, int], ...]:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    out: Counter = Counter()
    for w, m in _shuffle(u[1:], v):
        out[u[0] + w] += m
    for w, m in _shuffle(u, v[1:]):
        out[v[0] + w] += m
    return tuple(out.items())


def shuffle(u: str, v: str) -> Counter:
    """Shuffle product of two words as a multiset (``Counter``)."""
    return Counter(dict(_shuffle(u, v)))


@lru_cache(maxsize=None)
def _stuffle(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], int], ...]:
    if not u:
        return ((v, 1),)
    if not v:
        return ((u, 1),)
    out: Counter = Counter()
    i, j = u[0], v[0]
    for w, m in _stuffle(u[1:], v):
        out[(i,) + w] += m
    for w, m in _stuffle(u, v[1:]):
        out[(j,) + w] += m
    for w, m in _stuffle(u[1:], v[1:]):
        out[(i + j,) + w] += m
    return tuple(out.items())


def stuffle(u: Iterable[int], v: Iterable[int]) -> Counter:
    """Stuffle (harmonic) product of two depth-encoded words, with multiplicity."""
    return Counter(dict(_stuffle(tuple(u), tuple(v))))


def yword_to_word(indices: Iterable[int], alphabet: str = "xy") -> str:
    """Decode ``[i1, ..., ir]`` into ``x^(i1-1) y ... x^(ir-1) y``."""
    a, b = alphabet
    parts = []
    for i in indices:
        if i < 1:
            raise ValueError(f"depth-encoding indices must be >= 1, got {i}")
        parts.append(a * (i - 1) + b)
    return "".join(parts)


def word_to_yword(w: str, alphabet: str = "xy") -> tuple[int, ...]:
    """Inverse of :func:`yword_to_word`; the word must end in the second letter."""
    a, b = alphabet
    if not w.endswith(b):
        raise ValueError(f"word {w!r} does not end in {b!r}")
    return tuple(len(block) + 1 for block in w.split(b)[:-1])


# -- push operator -------------------------------------------------------------


def push(w: str, alphabet: str = "xy") -> str:
    """Cyclically shift the blocks of first letters between second letters."""
    a, b = alphabet
    blocks = w.split(b)
    if len(blocks) == 1:
        return w
    return b.join(blocks[-1:] + blocks[:-1])


def push_list(w: str, alphabet: str = "xy") -> list[str]:
    """``[push(w), push^2(w), ..., push^(r+1)(w)]`` with repetitions, r = depth(w)."""
    out = []
    cur = w
    for _ in range(w.count(alphabet[1]) + 1):
        cur = push(cur, alphabet)
        out.append(cur)
    return out


def push_poly(p: Poly) -> Poly:
    return Poly._raw({push(w, p.alphabet): c for w, c in p.items()}, p.alphabet)


def is_push_invariant(p: Poly) -> bool:
    return push_poly(p) == p


def push_orbit_sum(w: str, alphabet: str = "xy") -> Poly:
    """Sum of the distinct words in the push-orbit of ``w``."""
    return Poly({u: 1 for u in set(push_list(w, alphabet))}, alphabet)


def is_push_constant(p: Poly, degree: int | None = None) -> tuple[bool, Fraction | None]:
    """Check whether all push-orbit sums of ``p`` are one constant.

    ``p`` must be homogeneous; pass ``degree`` when ``p`` may be zero.
    Returns ``(True, c)`` or ``(False, None)``.  The coefficient of the pure
    second-letter word must vanish, and ``c`` must be zero in odd degree.
    """
    degs = p.degrees()
    if len(degs) > 1:
        raise ValueError("is_push_constant needs a homogeneous polynomial")
    if degree is None:
        if not degs:
            raise ValueError("degree is required for the zero polynomial")
        degree = degs[0]
    elif degs and degs[0] != degree:
        raise ValueError(f"polynomial has degree {degs[0]}, not {degree}")
    a, b = p.alphabet
    top = b * degree
    if p.coeff(top):
        return False, None
    const = None
    seen: set[str] = set()
    for w in words(degree, p.alphabet):
        if w == top or w in seen:
            continue
        orbit = push_list(w, p.alphabet)
        seen.update(orbit)
        s = sum((p.coeff(u) for u in orbit), Fraction(0))
        if const is None:
            const = s
        elif s != const:
            return False, None
    if const is None:
        const = Fraction(0)
    if degree % 2 == 1 and const != 0:
        return False, None
    return True, const


# -- letter-level linear maps --------------------------------------------------


def reverse(p: Poly) -> Poly:
    return Poly._raw({w[::-1]: c for w, c in p.items()}, p.alphabet)


def decompose(p: Poly) -> tuple[Poly, Poly, Poly, Poly]:
    """Split ``p = p_x x + p_y y = x p^x + y p^y``.

    Returns ``(p_x, p_y, p^x, p^y)``.
    """
    if p.coeff(""):
        raise ValueError("decompose needs a polynomial without constant term")
    a, b = p.alphabet
    tails = {a: {}, b: {}}
    heads = {a: {}, b: {}}
    for w, c in p.items():
        tails[w[-1]][w[:-1]] = c
        heads[w[0]][w[1:]] = c
    mk = lambda d: Poly._raw(d, p.alphabet)  # noqa: E731
    return mk(tails[a]), mk(tails[b]), mk(heads[a]), mk(heads[b])


def dx(p: Poly) -> Poly:
    """Derivation of the free associative algebra with x -> 1, y -> 0."""
    a = p.alphabet[0]
    out: dict[str, Fraction] = {}
    for w, c in p.items():
        for i, ch in enumerate(w):
            if ch == a:
                u = w[:i] + w[i + 1:]
                out[u] = out.get(u, 0) + c
    return Poly(out, p.alphabet)


def epsilon(p: Poly) -> Poly:
    """Derivation with x -> 0, y -> x (replace one second letter by the first)."""
    a, b = p.alphabet
    out: dict[str, Fraction] = {}
    for w, c in p.items():
        for i, ch in enumerate(w):
            if ch == b:
                u = w[:i] + a + w[i + 1:]
                out[u] = out.get(u, 0) + c
    return Poly(out, p.alphabet)


def substitute(p: Poly, img_x: Poly, img_y: Poly, max_degree: int | None = None) -> Poly:
    """Apply the algebra morphism sending the generators to ``img_x``, ``img_y``.

    Images must have no constant term.  The output may live on a different
    alphabet from ``p`` (both images must share one).  With ``max_degree``
    every intermediate product is truncated, which is what one wants for
    power-series images.
    """
    img_x._same(img_y)
    if img_x.coeff("") or img_y.coeff(""):
        raise ValueError("substitution images must not have a constant term")
    a, b = p.alphabet
    images = {a: list(img_x.items()), b: list(img_y.items())}
    out_alpha = img_x.alphabet
    # state: (output prefix, unread input suffix) -> coefficient
    state: dict[tuple[str, str], Fraction] = {("", w): c for w, c in p.items()}
    result: dict[str, Fraction] = {}
    while state:
        nxt: dict[tuple[str, str], Fraction] = {}
        for (pre, rest), c in state.items():
            if not rest:
                result[pre] = result.get(pre, 0) + c
                continue
            tail = rest[1:]
            for u, k in images[rest[0]]:
                w = pre + u
                if max_degree is not None and len(w) > max_degree:
                    continue
                key = (w, tail)
                nxt[key] = nxt.get(key, 0) + c * k
        state = {k: v for k, v in nxt.items() if v}
    return Poly._raw({w: c for w, c in result.items() if c}, out_alpha)


def depth_parts(p: Poly) -> dict[int, Poly]:
    """Split ``p`` by the number of second letters; keys ascending.

    The smallest key is the minimal depth.  The zero polynomial gives ``{}``.
    """
    b = p.alphabet[1]
    parts: dict[int, dict[str, Fraction]] = {}
    for w, c in p.items():
        parts.setdefault(w.count(b), {})[w] = c
    return {r: Poly._raw(parts[r], p.alphabet) for r in sorted(parts)}


# -- trace space ---------------------------------------------------------------


def canonical_rotation(w: str) -> str:
    """Lexicographically least rotation of ``w``."""
    if len(w) < 2:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


class CyclicPoly:
    """Element of the trace space: coefficients on rotation classes of words."""

    __slots__ = ("_terms", "_alphabet")

    def __init__(self, terms: Mapping[str, object] = (), alphabet: str = "xy"):
        self._alphabet = _check_alphabet(alphabet)
        acc: dict[str, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            k = canonical_rotation(w)
            acc[k] = acc.get(k, 0) + _to_fraction(c)
        self._terms = {k: c for k, c in acc.items() if c}

    @property
    def alphabet(self) -> str:
        return self._alphabet

    @property
    def terms(self) -> dict[str, Fraction]:
        return dict(self._terms)

    def coeff(self, w: str) -> Fraction:
        return self._terms.get(canonical_rotation(w), Fraction(0))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, CyclicPoly):
            return self._alphabet == other._alphabet and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._alphabet, frozenset(self._terms.items())))

    def __add__(self, other: "CyclicPoly") -> "CyclicPoly":
        if other._alphabet != self._alphabet:
            raise AlphabetError("mixed alphabets")
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return CyclicPoly(out, self._alphabet)

    def __neg__(self) -> "CyclicPoly":
        return CyclicPoly({k: -c for k, c in self._terms.items()}, self._alphabet)

    def __sub__(self, other: "CyclicPoly") -> "CyclicPoly":
        return self + (-other)

    def scale(self, c) -> "CyclicPoly":
        c = _to_fraction(c)
        return CyclicPoly({k: c * v for k, v in self._terms.items()}, self._alphabet)

    def __rmul__(self, c):
        if isinstance(c, (int, Rational)):
            return self.scale(c)
        return NotImplemented

    def ratio_to(self, other: "CyclicPoly") -> Fraction | None:
        """The scalar ``lam`` with ``self == lam * other``, or ``None``.

        ``other`` must be nonzero.
        """
        if not other:
            raise ValueError("cannot take a ratio against the zero class")
        k0 = next(iter(sorted(other._terms)))
        lam = self.coeff(k0) / other._terms[k0]
        return lam if self == other.scale(lam) else None

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms, key=lambda w: (len(w), w)):
            c = self._terms[k]
            a = abs(c)
            parts.append(("- " if c < 0 else "+ ") + (f"[{k}]" if a == 1 else f"{a}*[{k}]"))
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self) -> str:
        return f"CyclicPoly({str(self)!r})"


def trace(p: Poly) -> CyclicPoly:
    return CyclicPoly(p.items(), p.alphabet)


def trace_target(n: int, alphabet: str = "xy") -> CyclicPoly:
    """Trace of ``(x+y)^n - x^n - y^n``."""
    if n < 2:
        raise ValueError(f"trace_target needs n >= 2, got {n}")
    a, b = alphabet
    counts: Counter = Counter()
    for w in words(n, alphabet):
        if w != a * n and w != b * n:
            counts[canonical_rotation(w)] += 1
    return CyclicPoly(counts, alphabet)
