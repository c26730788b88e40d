"""Even Kahler superdifferentials of a polynomial superalgebra.

Over R = k[x | y] the module of even differentials is free on the generator
differentials dg, so an element is stored as a map g -> coefficient in R,
read as sum_g coeff_g * dg (coefficient on the left).  The Lie-Rinehart
bracket, its anchor rho(x df) = x{f, -}, and the semidirect product with the
abelian Lie superalgebra R are provided.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import DistinctAlgebraError, ParityError
from .poisson import BracketTable, bracket
from .supercore import Parity, SuperAlgebra, SuperPolynomial, Superderivation, koszul


class KahlerElement:
    """sum_g c_g dg with polynomial coefficients c_g."""

    __slots__ = ("algebra", "_coeffs")

    def __init__(self, algebra: SuperAlgebra, coeffs: Mapping | None = None):
        self.algebra = algebra
        clean = {}
        for g, c in (coeffs or {}).items():
            i = g if isinstance(g, int) else algebra.index(g)
            if isinstance(c, (int, Fraction)):
                c = algebra.const(c)
            if c.algebra != algebra:
                raise DistinctAlgebraError("coefficient lives in another algebra")
            c = clean.get(i, algebra.zero()) + c
            if c:
                clean[i] = c
            else:
                clean.pop(i, None)
        self._coeffs = clean

    @classmethod
    def basis(cls, algebra: SuperAlgebra, g) -> "KahlerElement":
        return cls(algebra, {g: 1})

    def coefficient(self, g) -> SuperPolynomial:
        i = g if isinstance(g, int) else self.algebra.index(g)
        return self._coeffs.get(i, self.algebra.zero())

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    @property
    def terms(self) -> dict:
        """{(coefficient monomial, generator index): rational}."""
        return {(mono, i): c for i, p in self._coeffs.items() for mono, c in p}

    def split(self):
        """Yield homogeneous one-term pieces (coefficient monomial poly, generator index)."""
        for i, p in sorted(self._coeffs.items()):
            for mono, c in p:
                yield self.algebra.monomial(mono, c), i

    @property
    def parity(self):
        ps = {
            self.algebra.monomial_parity(mono) + self.algebra.parity(i)
            for (mono, i) in self.terms
        }
        if not ps:
            return Parity.EVEN
        return ps.pop() if len(ps) == 1 else None

    def __bool__(self):
        return bool(self._coeffs)

    def __add__(self, other):
        if other.algebra != self.algebra:
            raise DistinctAlgebraError("differentials over different algebras")
        c = dict(self._coeffs)
        for i, p in other._coeffs.items():
            c[i] = c.get(i, self.algebra.zero()) + p
        return KahlerElement(self.algebra, c)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "KahlerElement":
        return KahlerElement(self.algebra, {i: p.scale(c) for i, p in self._coeffs.items()})

    def lmul(self, a: SuperPolynomial) -> "KahlerElement":
        """Module action a * (sum c_g dg) = sum (a c_g) dg."""
        return KahlerElement(self.algebra, {i: a * p for i, p in self._coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, KahlerElement):
            return NotImplemented
        return self.algebra == other.algebra and self._coeffs == other._coeffs

    __hash__ = None

    def __str__(self):
        if not self._coeffs:
            return "0"
        names = self.algebra.names
        return " + ".join(f"({p})*d{names[i]}" for i, p in sorted(self._coeffs.items()))

    __repr__ = __str__


def d_ev(p: SuperPolynomial) -> KahlerElement:
    """The even derivation d, with d(fg) = f dg + (-1)^{|f||g|} g df.

    On a monomial f1...fn this unrolls to
    sum_i (-1)^{|f_i|(|f_{i+1}|+...+|fn|)} (f1..f^_i..fn) d f_i.
    """
    alg = p.algebra
    coeffs: dict = {}
    for mono, c in p:
        fs = alg.factors(mono)
        pars = [int(alg.parity(g)) for g in fs]
        for i, g in enumerate(fs):
            rest = list(mono)
            rest[g] -= 1
            sign = koszul(pars[i], sum(pars[i + 1:]) % 2)
            term = alg.monomial(tuple(rest), c * sign)
            coeffs[g] = coeffs.get(g, alg.zero()) + term
    return KahlerElement(alg, coeffs)


def anchor_apply(T: BracketTable, u: KahlerElement, a: SuperPolynomial) -> SuperPolynomial:
    """rho(u)(a) with rho(x dg) = x {g, -}."""
    alg = T.algebra
    gens = alg.vars()
    out = alg.zero()
    for x, i in u.split():
        out = out + x * bracket(T, gens[i], a)
    return out


def anchor(T: BracketTable, u: KahlerElement) -> Superderivation:
    """rho(u) as a superderivation; u must be homogeneous."""
    par = u.parity
    if par is None:
        raise ParityError("anchor needs a homogeneous differential")
    alg = T.algebra
    gens = alg.vars()
    return Superderivation(alg, par, {g.name: anchor_apply(T, u, gens[g.index]) for g in alg.generators})


def lr_bracket(T: BracketTable, u: KahlerElement, v: KahlerElement) -> KahlerElement:
    """Lie-Rinehart bracket on differentials, bilinear from

    [x df, y dg] = (-1)^{|y||f|} xy d{f,g} + x{f,y} dg - (-1)^{(|x|+|f|)(|y|+|g|)} y{g,x} df.
    """
    alg = T.algebra
    if u.algebra != alg or v.algebra != alg:
        raise DistinctAlgebraError("differentials must live over the table's algebra")
    gens = alg.vars()
    out = KahlerElement(alg)
    for x, f in u.split():
        px, pf = x.homogeneous_parity(), alg.parity(f)
        for y, g in v.split():
            py, pg = y.homogeneous_parity(), alg.parity(g)
            t1 = d_ev(T.gen_bracket(f, g)).lmul((x * y).scale(koszul(py, pf)))
            t2 = KahlerElement(alg, {g: x * bracket(T, gens[f], y)})
            t3 = KahlerElement(alg, {f: y * bracket(T, gens[g], x)}).scale(-koszul(px + pf, py + pg))
            out = out + t1 + t2 + t3
    return out


def _elem_parity(a: SuperPolynomial, u: KahlerElement) -> Parity:
    pa = a.parity
    pu = u.parity
    if pa is None or pu is None:
        raise ParityError("semidirect elements must be homogeneous")
    if a and u and pa != pu:
        raise ParityError("semidirect element mixes parities")
    return pa if a else pu


def semidirect_bracket(T: BracketTable, left: tuple, right: tuple) -> tuple:
    """[a + x, b + y] = (rho(x)(b) - (-1)^{|a||y|} rho(y)(a)) + [x, y] on R x| Omega.

    R carries the trivial bracket, so [a, b] contributes nothing.  Elements are
    pairs (polynomial, KahlerElement).
    """
    a, x = left
    b, y = right
    py = _elem_parity(b, y)
    pa = _elem_parity(a, x)
    first = anchor_apply(T, x, b) - anchor_apply(T, y, a).scale(koszul(pa, py))
    return first, lr_bracket(T, x, y)


@dataclass(frozen=True)
class KahlerBasis:
    differentials: tuple  # generator names g, standing for dg
    witnesses: tuple  # Superderivation D_i with D_i(g_j) = delta_ij g_i


def kahler_basis(algebra: SuperAlgebra) -> KahlerBasis:
    """The free basis {dg} with the witness derivations D_i(g_j) = delta_ij g_i."""
    gens = algebra.vars()
    witnesses = tuple(
        Superderivation(
            algebra,
            Parity.EVEN,
            {h.name: (gens[g.index] if h.index == g.index else algebra.zero()) for h in algebra.generators},
        )
        for g in algebra.generators
    )
    return KahlerBasis(algebra.names, witnesses)


def witness_pairing(D: Superderivation, u: KahlerElement) -> SuperPolynomial:
    """The R-linear map Omega -> R induced by D, applied to u: sum c_g D(g)."""
    gens = u.algebra.vars()
    out = u.algebra.zero()
    for i, c in u.coeffs.items():
        out = out + c * D(gens[i])
    return out


def supersymmetric_count(algebra: SuperAlgebra, d_coeff: int, d_diff: int) -> int:
    """Monomials of S_R(Omega) = R (x) S(dg's) with every exponent capped.

    Each even generator contributes d+1 choices, each odd one 2, on both the
    coefficient and the differential side.
    """
    def side(d):
        return math.prod((min(d, 1) + 1 if g.parity else d + 1) for g in algebra.generators)

    return side(d_coeff) * side(d_diff)


@dataclass
class KahlerReport:
    ok: bool = True
    checked: dict = None
    failure: tuple | None = None  # (property, elements, residual)

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checked": dict(self.checked or {}),
            "failure": None if self.failure is None else list(self.failure),
        }

    def __str__(self):
        if self.ok:
            counts = ", ".join(f"{k} {v}" for k, v in (self.checked or {}).items())
            return f"kahler: pass ({counts})"
        prop, elems, res = self.failure
        return f"kahler: FAIL {prop} at {elems}: residual {res}"


def _small_elements(algebra: SuperAlgebra, d: int) -> list:
    """x dg for monomials x of degree <= d (odd exponents capped at 1)."""
    ranges = [range(2) if g.parity else range(d + 1) for g in algebra.generators]
    monos = [e for e in itertools.product(*ranges) if sum(e) <= d]
    monos.sort(key=lambda e: (sum(e), tuple(-k for k in e)))
    return [KahlerElement(algebra, {g.index: algebra.monomial(m)}) for m in monos for g in algebra.generators]


def lr_check(T: BracketTable, d_pairs: int = 1, d_triples: int = 0) -> KahlerReport:
    """Lie-Rinehart axioms of (R, Omega) on small homogeneous differentials.

    Pairs u, v run over x dg with deg x <= d_pairs: antisymmetry, the anchor
    being a bracket map, and [u, a v] = (-1)^{|u||a|} a[u, v] + rho(u)(a) v for
    generators a.  Jacobi runs over triples with deg x <= d_triples.
    """
    alg = T.algebra
    gens = alg.vars()
    checked = {"antisymmetry": 0, "anchor": 0, "leibniz": 0, "jacobi": 0}
    rep = KahlerReport(checked=checked)
    pairs = _small_elements(alg, d_pairs)
    cache: dict = {}

    def br(i, u, j, v):
        key = (i, j)
        if key not in cache:
            cache[key] = lr_bracket(T, u, v)
        return cache[key]

    def fail(prop, elems, res):
        rep.ok = False
        rep.failure = (prop, ", ".join(str(e) for e in elems), str(res))
        return rep

    for i, u in enumerate(pairs):
        pu = u.parity
        for j, v in enumerate(pairs):
            pv = v.parity
            uv = br(i, u, j, v)
            res = uv + br(j, v, i, u).scale(koszul(pu, pv))
            checked["antisymmetry"] += 1
            if res:
                return fail("antisymmetry", (u, v), res)
            for g in gens:
                lhs = anchor_apply(T, uv, g)
                rhs = anchor_apply(T, u, anchor_apply(T, v, g)) - anchor_apply(
                    T, v, anchor_apply(T, u, g)
                ).scale(koszul(pu, pv))
                checked["anchor"] += 1
                if lhs != rhs:
                    return fail("anchor", (u, v, g), lhs - rhs)
                pa = g.homogeneous_parity()
                res = lr_bracket(T, u, v.lmul(g)) - uv.lmul(g).scale(koszul(pu, pa)) - v.lmul(
                    anchor_apply(T, u, g)
                )
                checked["leibniz"] += 1
                if res:
                    return fail("leibniz", (u, g, v), res)
    triples = _small_elements(alg, d_triples)
    for u in triples:
        for v in triples:
            for w in triples:
                pu, pv, pw = u.parity, v.parity, w.parity
                j = (
                    lr_bracket(T, u, lr_bracket(T, v, w)).scale(koszul(pu, pw))
                    + lr_bracket(T, v, lr_bracket(T, w, u)).scale(koszul(pv, pu))
                    + lr_bracket(T, w, lr_bracket(T, u, v)).scale(koszul(pw, pv))
                )
                checked["jacobi"] += 1
                if j:
                    return fail("jacobi", (u, v, w), j)
    return rep
