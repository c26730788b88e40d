"""Exact arithmetic in finitely generated supercommutative superalgebras.

An algebra is a polynomial algebra in its even generators tensored with an
exterior algebra in its odd generators.  Monomials are exponent tuples indexed
by generator position; the canonical order of factors is generator order, and
the Koszul sign of a product is the parity of the number of transpositions of
odd factors needed to sort the concatenated factor sequence.

All coefficients are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Union

from .errors import (
    AlgebraError,
    DistinctAlgebraError,
    IncompleteDerivationError,
    ParityError,
)

Scalar = Union[int, Fraction]
SuperMonomial = tuple  # exponent tuple, one entry per generator


class Parity(IntEnum):
    EVEN = 0
    ODD = 1

    def __add__(self, other):
        return Parity((int(self) + int(other)) % 2)

    __radd__ = __add__

    def __str__(self) -> str:
        return self.name.lower()

    @classmethod
    def parse(cls, text: str) -> "Parity":
        try:
            return {"even": cls.EVEN, "odd": cls.ODD, "0": cls.EVEN, "1": cls.ODD}[
                str(text).strip().lower()
            ]
        except KeyError:
            raise ValueError(f"unknown parity {text!r}") from None


def koszul(a: int, b: int) -> int:
    """Return (-1)**(a*b) for parities a, b."""
    return -1 if (a and b) else 1


@dataclass(frozen=True)
class Generator:
    name: str
    index: int
    parity: Parity


@dataclass(frozen=True)
class SuperAlgebra:
    """k[even generators] tensor Lambda[odd generators], over the rationals."""

    generators: tuple
    _odd: tuple = field(init=False, repr=False, compare=False)
    _by_name: Mapping = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise AlgebraError(f"duplicate generator names in {names}")
        for i, g in enumerate(self.generators):
            if g.index != i:
                raise AlgebraError(f"generator {g.name} has index {g.index}, expected {i}")
        object.__setattr__(
            self, "_odd", tuple(g.index for g in self.generators if g.parity)
        )
        object.__setattr__(
            self, "_by_name", MappingProxyType({g.name: g for g in self.generators})
        )

    @classmethod
    def of(cls, *specs) -> "SuperAlgebra":
        """Build from ``(name, parity)`` pairs; parity may be a string."""
        gens = tuple(
            Generator(name, i, p if isinstance(p, Parity) else Parity.parse(p))
            for i, (name, p) in enumerate(specs)
        )
        return cls(gens)

    @property
    def n(self) -> int:
        return len(self.generators)

    @property
    def names(self) -> tuple:
        return tuple(g.name for g in self.generators)

    def __contains__(self, name) -> bool:
        return name in self._by_name

    def gen(self, name: str) -> Generator:
        try:
            return self._by_name[name]
        except KeyError:
            raise AlgebraError(f"unknown generator {name!r}") from None

    def index(self, name: str) -> int:
        return self.gen(name).index

    def parity(self, i: int) -> Parity:
        return self.generators[i].parity

    def monomial_parity(self, mono: SuperMonomial) -> Parity:
        return Parity(sum(mono[i] for i in self._odd) % 2)

    def unit_monomial(self) -> SuperMonomial:
        return (0,) * self.n

    def generator_monomial(self, i: int) -> SuperMonomial:
        e = [0] * self.n
        e[i] = 1
        return tuple(e)

    def factors(self, mono: SuperMonomial) -> list:
        """Generator indices of a monomial in canonical order, with repetition."""
        out = []
        for i, e in enumerate(mono):
            out.extend([i] * e)
        return out

    def monomial_from_factors(self, factors: Iterable[int]):
        """Sort a factor sequence; return (sign, monomial) or None if it vanishes."""
        seq = list(factors)
        e = [0] * self.n
        for i in seq:
            e[i] += 1
        if any(e[i] > 1 for i in self._odd):
            return None
        odd_seq = [i for i in seq if self.generators[i].parity]
        inversions = sum(
            1
            for a in range(len(odd_seq))
            for b in range(a + 1, len(odd_seq))
            if odd_seq[a] > odd_seq[b]
        )
        return (-1 if inversions % 2 else 1), tuple(e)

    def mono_mul(self, a: SuperMonomial, b: SuperMonomial):
        """Product of two canonical monomials: (sign, monomial) or None."""
        odd = self._odd
        for i in odd:
            if a[i] and b[i]:
                return None
        # odd factors of b must pass odd factors of a with larger index
        swaps = 0
        for j in odd:
            if b[j]:
                for i in odd:
                    if i > j and a[i]:
                        swaps += 1
        return (-1 if swaps % 2 else 1), tuple(x + y for x, y in zip(a, b))

    # element constructors
    def zero(self) -> "SuperPolynomial":
        return SuperPolynomial(self)

    def one(self) -> "SuperPolynomial":
        return SuperPolynomial(self, {self.unit_monomial(): 1})

    def const(self, c: Scalar) -> "SuperPolynomial":
        return SuperPolynomial(self, {self.unit_monomial(): c})

    def var(self, name: str) -> "SuperPolynomial":
        return SuperPolynomial(self, {self.generator_monomial(self.index(name)): 1})

    def vars(self) -> tuple:
        return tuple(self.var(g.name) for g in self.generators)

    def monomial(self, mono: SuperMonomial, coeff: Scalar = 1) -> "SuperPolynomial":
        return SuperPolynomial(self, {tuple(mono): coeff})

    def format_monomial(self, mono: SuperMonomial, sep: str = "*") -> str:
        parts = []
        for g, e in zip(self.generators, mono):
            if e == 1:
                parts.append(g.name)
            elif e > 1:
                parts.append(f"{g.name}^{e}")
        return sep.join(parts)


def monomial_sort_key(mono: SuperMonomial):
    """Degree descending, then lexicographic with earlier generators first."""
    return (-sum(mono), tuple(-e for e in mono))


class SuperPolynomial:
    """Immutable exact-rational linear combination of canonical monomials."""

    __slots__ = ("algebra", "_terms", "_hash")

    def __init__(self, algebra: SuperAlgebra, terms: Mapping | None = None):
        self.algebra = algebra
        clean = {}
        odd = algebra._odd
        for mono, c in (terms or {}).items():
            mono = tuple(mono)
            if len(mono) != algebra.n or any(e < 0 for e in mono):
                raise AlgebraError(f"bad exponent vector {mono} for {algebra.names}")
            if any(mono[i] > 1 for i in odd):
                continue
            c = Fraction(c)
            if c:
                clean[mono] = clean.get(mono, 0) + c
                if not clean[mono]:
                    del clean[mono]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, algebra, terms: dict) -> "SuperPolynomial":
        p = cls.__new__(cls)
        p.algebra = algebra
        p._terms = terms
        p._hash = None
        return p

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def __iter__(self) -> Iterator:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, mono: SuperMonomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient(self.algebra.unit_monomial())

    @property
    def parity(self):
        """Common parity of all monomials; None when mixed.  Zero is even."""
        ps = {self.algebra.monomial_parity(m) for m in self._terms}
        if not ps:
            return Parity.EVEN
        if len(ps) == 1:
            return ps.pop()
        return None

    def homogeneous_parity(self) -> Parity:
        p = self.parity
        if p is None:
            raise ParityError(f"{self} is not homogeneous")
        return p

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    # arithmetic
    def _coerce(self, other) -> "SuperPolynomial":
        if isinstance(other, SuperPolynomial):
            if other.algebra is not self.algebra and other.algebra != self.algebra:
                raise DistinctAlgebraError(
                    f"{self.algebra.names} vs {other.algebra.names}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.algebra.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return SuperPolynomial._raw(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return SuperPolynomial._raw(self.algebra, {m: -c for m, c in self._terms.items()})

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

    def scale(self, c: Scalar) -> "SuperPolynomial":
        c = Fraction(c)
        if not c:
            return self.algebra.zero()
        return SuperPolynomial._raw(self.algebra, {m: v * c for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = self.algebra.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.algebra.const(other)
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        return self.algebra == other.algebra and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.algebra.names, frozenset(self._terms.items())))
        return self._hash

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda t: monomial_sort_key(t[0]))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for k, (mono, c) in enumerate(self.sorted_terms()):
            body = self.algebra.format_monomial(mono)
            mag = abs(c)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            if k == 0:
                out.append(("-" if c < 0 else "") + text)
            else:
                out.append((" - " if c < 0 else " + ") + text)
        return "".join(out)

    def __repr__(self) -> str:
        return f"SuperPolynomial({self})"


def mul(p: SuperPolynomial, q: SuperPolynomial) -> SuperPolynomial:
    """Product in the supercommutative algebra, with Koszul signs."""
    if p.algebra is not q.algebra and p.algebra != q.algebra:
        raise DistinctAlgebraError(f"{p.algebra.names} vs {q.algebra.names}")
    alg = p.algebra
    out: dict = {}
    for a, ca in p._terms.items():
        for b, cb in q._terms.items():
            r = alg.mono_mul(a, b)
            if r is None:
                continue
            s, m = r
            v = out.get(m, 0) + s * ca * cb
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return SuperPolynomial._raw(alg, out)


class Superderivation:
    """Homogeneous superderivation determined by its values on generators.

    ``images`` maps generator names to polynomials.  A generator may be left
    out; applying the derivation to anything involving it raises
    :class:`IncompleteDerivationError`.
    """

    __slots__ = ("algebra", "parity", "images")

    def __init__(self, algebra: SuperAlgebra, parity, images: Mapping):
        self.algebra = algebra
        self.parity = parity if isinstance(parity, Parity) else Parity.parse(parity)
        imgs = {}
        for name, img in images.items():
            g = algebra.gen(name)
            if isinstance(img, (int, Fraction)):
                img = algebra.const(img)
            if img.algebra != algebra:
                raise DistinctAlgebraError(f"image of {name} lives in another algebra")
            if img:
                p = img.parity
                if p is None or p != g.parity + self.parity:
                    raise ParityError(
                        f"image of {name} ({img}) must have parity "
                        f"{g.parity + self.parity} for a {self.parity} derivation"
                    )
            imgs[name] = img
        self.images = MappingProxyType(imgs)

    def image(self, i: int) -> SuperPolynomial:
        name = self.algebra.generators[i].name
        try:
            return self.images[name]
        except KeyError:
            raise IncompleteDerivationError(f"no image for generator {name}") from None

    def __call__(self, p: SuperPolynomial) -> SuperPolynomial:
        return apply_derivation(self, p)

    def _combine(self, other: "Superderivation", sign: int) -> "Superderivation":
        if other.algebra != self.algebra:
            raise DistinctAlgebraError("derivations on different algebras")
        if other.parity != self.parity:
            raise ParityError("cannot add derivations of different parity")
        names = set(self.images) & set(other.images)
        return Superderivation(
            self.algebra,
            self.parity,
            {n: self.images[n] + other.images[n].scale(sign) for n in names},
        )

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, c: Scalar) -> "Superderivation":
        return Superderivation(
            self.algebra, self.parity, {n: v.scale(c) for n, v in self.images.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, Superderivation):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.parity == other.parity
            and dict(self.images) == dict(other.images)
        )

    def __repr__(self):
        body = ", ".join(f"{k} -> {v}" for k, v in self.images.items())
        return f"Superderivation({self.parity}: {body})"

    @classmethod
    def zero(cls, algebra: SuperAlgebra, parity=Parity.EVEN) -> "Superderivation":
        return cls(algebra, parity, {g.name: algebra.zero() for g in algebra.generators})


def apply_derivation(d: Superderivation, p: SuperPolynomial) -> SuperPolynomial:
    """Extend ``d`` from generators by the graded Leibniz rule.

    Each monomial is read as its canonical factor sequence f1...fn and
    d(f1...fn) = sum_i (-1)^{|d|(|f1|+...+|f_{i-1}|)} f1...f_{i-1} d(f_i) f_{i+1}...fn.
    """
    alg = p.algebra
    if alg != d.algebra:
        raise DistinctAlgebraError("derivation and polynomial live in different algebras")
    out = alg.zero()
    for mono, c in p:
        fs = alg.factors(mono)
        prefix_parity = 0
        for pos, g in enumerate(fs):
            img = d.image(g)
            if img:
                left = _factor_poly(alg, fs[:pos])
                right = _factor_poly(alg, fs[pos + 1:])
                term = left * img * right
                out = out + term.scale(c * koszul(d.parity, prefix_parity))
            prefix_parity ^= int(alg.generators[g].parity)
    return out


def _factor_poly(alg: SuperAlgebra, factors) -> SuperPolynomial:
    # sub-sequences of a canonical factor list are already sorted
    e = [0] * alg.n
    for i in factors:
        e[i] += 1
    return SuperPolynomial._raw(alg, {tuple(e): Fraction(1)})


class TensorElement:
    """Element of the super tensor product A (x) B, stored on monomial pairs."""

    __slots__ = ("left", "right", "_terms")

    def __init__(self, left: SuperAlgebra, right: SuperAlgebra | None = None, terms=None):
        self.left = left
        self.right = right if right is not None else left
        clean = {}
        for (a, b), c in (terms or {}).items():
            c = Fraction(c)
            if c:
                key = (tuple(a), tuple(b))
                v = clean.get(key, 0) + c
                if v:
                    clean[key] = v
                else:
                    clean.pop(key, None)
        self._terms = clean

    @classmethod
    def pure(cls, a: SuperPolynomial, b: SuperPolynomial) -> "TensorElement":
        terms: dict = {}
        for ma, ca in a:
            for mb, cb in b:
                terms[(ma, mb)] = terms.get((ma, mb), 0) + ca * cb
        return cls(a.algebra, b.algebra, terms)

    @classmethod
    def unit(cls, left: SuperAlgebra, right: SuperAlgebra | None = None) -> "TensorElement":
        right = right if right is not None else left
        return cls(left, right, {(left.unit_monomial(), right.unit_monomial()): 1})

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def _check(self, other: "TensorElement"):
        if other.left != self.left or other.right != self.right:
            raise DistinctAlgebraError("tensor factors live in different algebras")

    def __add__(self, other):
        self._check(other)
        t = dict(self._terms)
        for k, c in other._terms.items():
            t[k] = t.get(k, 0) + c
        return TensorElement(self.left, self.right, t)

    def __neg__(self):
        return TensorElement(self.left, self.right, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: Scalar) -> "TensorElement":
        return TensorElement(self.left, self.right, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return tensor_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (
            self.left == other.left
            and self.right == other.right
            and self._terms == other._terms
        )

    __hash__ = None

    @property
    def parity(self):
        ps = {
            self.left.monomial_parity(a) + self.right.monomial_parity(b)
            for (a, b) in self._terms
        }
        if not ps:
            return Parity.EVEN
        return ps.pop() if len(ps) == 1 else None

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (a, b), c in sorted(
            self._terms.items(),
            key=lambda t: (monomial_sort_key(t[0][0]), monomial_sort_key(t[0][1])),
        ):
            la = self.left.format_monomial(a) or "1"
            rb = self.right.format_monomial(b) or "1"
            parts.append(f"{c}*({la} @ {rb})")
        return " + ".join(parts)

    __repr__ = __str__


def tensor_mul(u: TensorElement, v: TensorElement) -> TensorElement:
    """(a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd, extended bilinearly."""
    u._check(v)
    L, R = u.left, u.right
    out: dict = {}
    for (a, b), c1 in u._terms.items():
        pb = R.monomial_parity(b)
        for (c, d), c2 in v._terms.items():
            ac = L.mono_mul(a, c)
            if ac is None:
                continue
            bd = R.mono_mul(b, d)
            if bd is None:
                continue
            sign = ac[0] * bd[0] * koszul(pb, L.monomial_parity(c))
            key = (ac[1], bd[1])
            out[key] = out.get(key, 0) + sign * c1 * c2
    return TensorElement(L, R, out)


def substitute(p: SuperPolynomial, images: Mapping, target: SuperAlgebra) -> SuperPolynomial:
    """Apply the algebra map sending each generator name to ``images[name]``.

    Images must be homogeneous of the generator's parity for the result to be
    a superalgebra homomorphism; this is checked.
    """
    src = p.algebra
    imgs = []
    for g in src.generators:
        if g.name not in images:
            raise AlgebraError(f"no image for generator {g.name}")
        img = images[g.name]
        if isinstance(img, (int, Fraction)):
            img = target.const(img)
        if img and img.parity != g.parity:
            raise ParityError(f"image of {g.name} must be {g.parity}, got {img}")
        imgs.append(img)
    out = target.zero()
    for mono, c in p:
        term = target.const(c)
        for i in src.factors(mono):
            term = term * imgs[i]
        out = out + term
    return out
