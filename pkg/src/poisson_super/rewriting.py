"""Noncommutative polynomials over a graded alphabet and a generic PBW rewriter.

A word is a tuple of symbols.  Symbols are any hashable, totally ordered
values; an alphabet object supplies their parity and printed label.  A word is
*normal* when its symbols are weakly increasing and no odd symbol repeats.
Subclasses of :class:`RewriteEngine` supply two rules:

* ``commute(a, b)`` for a > b, returning ``(sign, corr)`` with
  ``ab = sign * ba + corr``;
* ``square(a)`` for odd a, returning the value of ``aa``.

Every rule must decrease a well-founded measure; the engines in this package
document theirs.
"""

from __future__ import annotations

import random
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Protocol

from .errors import DistinctAlgebraError, UnknownSymbolError
from .supercore import Parity, koszul


class Alphabet(Protocol):
    def parity(self, sym) -> Parity: ...

    def label(self, sym) -> str: ...

    def __contains__(self, sym) -> bool: ...


class NCPolynomial:
    """Exact-rational linear combination of words; zero coefficients are dropped."""

    __slots__ = ("alphabet", "_terms")

    def __init__(self, alphabet, terms: Mapping | None = None):
        self.alphabet = alphabet
        clean: dict = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            for s in w:
                if s not in alphabet:
                    raise UnknownSymbolError(f"symbol {s!r} is not in the alphabet")
            c = Fraction(c)
            v = clean.get(w, 0) + c
            if v:
                clean[w] = v
            else:
                clean.pop(w, None)
        self._terms = clean

    @classmethod
    def _raw(cls, alphabet, terms: dict) -> "NCPolynomial":
        p = cls.__new__(cls)
        p.alphabet = alphabet
        p._terms = terms
        return p

    @classmethod
    def word(cls, alphabet, word: Iterable, coeff=1) -> "NCPolynomial":
        return cls(alphabet, {tuple(word): coeff})

    @classmethod
    def const(cls, alphabet, c) -> "NCPolynomial":
        return cls(alphabet, {(): c})

    @classmethod
    def zero(cls, alphabet) -> "NCPolynomial":
        return cls._raw(alphabet, {})

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, word) -> Fraction:
        return self._terms.get(tuple(word), Fraction(0))

    def word_parity(self, word) -> Parity:
        return Parity(sum(int(self.alphabet.parity(s)) for s in word) % 2)

    @property
    def parity(self):
        """Common parity of all words; None when mixed.  Zero is even."""
        ps = {self.word_parity(w) for w in self._terms}
        if not ps:
            return Parity.EVEN
        return ps.pop() if len(ps) == 1 else None

    def _check(self, other: "NCPolynomial"):
        if other.alphabet != self.alphabet:
            raise DistinctAlgebraError("noncommutative polynomials over different alphabets")

    def _coerce(self, other):
        if isinstance(other, NCPolynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return NCPolynomial.const(self.alphabet, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for w, c in other._terms.items():
            v = out.get(w, 0) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return NCPolynomial._raw(self.alphabet, out)

    __radd__ = __add__

    def __neg__(self):
        return NCPolynomial._raw(self.alphabet, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "NCPolynomial":
        c = Fraction(c)
        if not c:
            return NCPolynomial.zero(self.alphabet)
        return NCPolynomial._raw(self.alphabet, {w: v * c for w, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                w = a + b
                v = out.get(w, 0) + ca * cb
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
        return NCPolynomial._raw(self.alphabet, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        out = NCPolynomial.const(self.alphabet, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCPolynomial.const(self.alphabet, other)
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self.alphabet == other.alphabet and self._terms == other._terms

    __hash__ = None

    def sorted_terms(self) -> list:
        """Length descending, then symbol order."""
        return sorted(self._terms.items(), key=lambda t: (-len(t[0]), t[0]))

    def format_word(self, word) -> str:
        return "".join(self.alphabet.label(s) for s in word) or "1"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, (w, c) in enumerate(self.sorted_terms()):
            body = "".join(self.alphabet.label(s) for s in w)
            mag = abs(c)
            text = str(mag) if not body else (body if mag == 1 else f"{mag}*{body}")
            if k == 0:
                parts.append(("-" if c < 0 else "") + text)
            else:
                parts.append((" - " if c < 0 else " + ") + text)
        return "".join(parts)

    def __repr__(self):
        return f"NCPolynomial({self})"


def supercommutator(a: NCPolynomial, b: NCPolynomial) -> NCPolynomial:
    """[a, b]_gr = ab - (-1)^{|a||b|} ba for homogeneous a, b."""
    pa, pb = a.parity, b.parity
    if pa is None or pb is None:
        raise ValueError("supercommutator needs homogeneous arguments")
    return a * b - (b * a).scale(koszul(pa, pb))


class RewriteEngine:
    """Leftmost-first (or randomized) rewriting to PBW normal form."""

    def __init__(self, alphabet):
        self.alphabet = alphabet

    # rules supplied by subclasses
    def commute(self, a, b):
        raise NotImplementedError

    def square(self, a) -> NCPolynomial:
        raise NotImplementedError

    def _reducible_at(self, w, k) -> bool:
        a, b = w[k], w[k + 1]
        return a > b or (a == b and self.alphabet.parity(a))

    def is_normal(self, word) -> bool:
        return not any(self._reducible_at(word, k) for k in range(len(word) - 1))

    def _step(self, w, k) -> NCPolynomial:
        """One rewrite of w at adjacent positions (k, k+1)."""
        a, b = w[k], w[k + 1]
        pre = NCPolynomial._raw(self.alphabet, {w[:k]: Fraction(1)})
        post = NCPolynomial._raw(self.alphabet, {w[k + 2:]: Fraction(1)})
        if a == b:
            middle = self.square(a)
        else:
            sign, corr = self.commute(a, b)
            middle = NCPolynomial._raw(self.alphabet, {(b, a): Fraction(sign)}) + corr
        return pre * middle * post

    def normalize(self, p: NCPolynomial, rng: random.Random | None = None) -> NCPolynomial:
        """Normal form of p.

        Without ``rng`` the leftmost reducible pair is rewritten first and
        results of sub-words are memoised for the duration of the call.  With
        ``rng`` a uniformly random reducible pair is chosen at every step.
        """
        if p.alphabet != self.alphabet:
            raise DistinctAlgebraError("polynomial is over a different alphabet")
        if rng is not None:
            return self._normalize_random(p, rng)
        memo: dict = {}
        out = NCPolynomial.zero(self.alphabet)
        for w, c in p:
            out = out + self._normal_word(w, memo).scale(c)
        return out

    def _normal_word(self, w, memo) -> NCPolynomial:
        hit = memo.get(w)
        if hit is not None:
            return hit
        for k in range(len(w) - 1):
            if self._reducible_at(w, k):
                break
        else:
            res = NCPolynomial._raw(self.alphabet, {w: Fraction(1)})
            memo[w] = res
            return res
        res = NCPolynomial.zero(self.alphabet)
        for w2, c2 in self._step(w, k):
            res = res + self._normal_word(w2, memo).scale(c2)
        memo[w] = res
        return res

    def _normalize_random(self, p: NCPolynomial, rng: random.Random) -> NCPolynomial:
        done: dict = {}
        work = dict(p.terms)
        while work:
            w = rng.choice(sorted(work))
            c = work.pop(w)
            spots = [k for k in range(len(w) - 1) if self._reducible_at(w, k)]
            if not spots:
                done[w] = done.get(w, 0) + c
                continue
            for w2, c2 in self._step(w, rng.choice(spots)):
                work[w2] = work.get(w2, 0) + c * c2
                if not work[w2]:
                    del work[w2]
        return NCPolynomial(self.alphabet, done)


def substitute_symbols(p: NCPolynomial, image, target) -> NCPolynomial:
    """Algebra map on words: each symbol s is replaced by the NCPolynomial image(s)."""
    out = NCPolynomial.zero(target)
    cache: dict = {}
    for w, c in p:
        term = NCPolynomial.const(target, c)
        for s in w:
            if s not in cache:
                cache[s] = image(s)
            term = term * cache[s]
        out = out + term
    return out
