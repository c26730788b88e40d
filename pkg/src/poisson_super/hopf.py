"""Hopf structure on U(A) induced by a Poisson Hopf superalgebra A.

A (x) A is realised as the polynomial superalgebra on doubled generators
``g@1`` (for g (x) 1) followed by ``1@g`` (for 1 (x) g); with the left copy
first, a (x) b is simply the product a_L b_R and the tensor Koszul rule is
the ordinary supercommutative one.  U(A (x) A) is then identified with
U(A) (x) U(A) by m_{g@1} -> m_g (x) 1, h_{g@1} -> h_g (x) 1 and likewise on
the right.  Coproduct, counit and antipode of U(A) are computed from their
values on m_a, h_a and extended (anti)multiplicatively.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import AlgebraError, NotPoissonError, ParityError
from .poisson import BracketTable, bracket, poisson_map_defect
from .rewriting import NCPolynomial, RewriteEngine, substitute_symbols, supercommutator
from .supercore import (
    Parity,
    SuperAlgebra,
    SuperPolynomial,
    TensorElement,
    koszul,
    substitute,
)
from .uea import H, M, UEA, UEASymbol, degree_basis, embed


# ---------------------------------------------------------------------------
# the tensor square


def doubled_algebra(algebra: SuperAlgebra) -> SuperAlgebra:
    return SuperAlgebra.of(
        *[(f"{g.name}@1", g.parity) for g in algebra.generators],
        *[(f"1@{g.name}", g.parity) for g in algebra.generators],
    )


def to_doubled(t: TensorElement, D: SuperAlgebra) -> SuperPolynomial:
    """a (x) b -> a_L b_R; left generators come first so no sign arises."""
    return SuperPolynomial(D, {a + b: c for (a, b), c in t})


def from_doubled(p: SuperPolynomial, algebra: SuperAlgebra) -> TensorElement:
    n = algebra.n
    return TensorElement(algebra, algebra, {(mono[:n], mono[n:]): c for mono, c in p})


def left_copy(p: SuperPolynomial, D: SuperAlgebra) -> SuperPolynomial:
    z = (0,) * p.algebra.n
    return SuperPolynomial(D, {mono + z: c for mono, c in p})


def right_copy(p: SuperPolynomial, D: SuperAlgebra) -> SuperPolynomial:
    z = (0,) * p.algebra.n
    return SuperPolynomial(D, {z + mono: c for mono, c in p})


def bracket_tensor_square(T: BracketTable) -> BracketTable:
    """Bracket on A (x) A: each copy carries T, the copies Poisson-commute.

    This realises {a (x) a', b (x) b'} = (-1)^{|a'||b|}({a,b} (x) a'b' + ab (x) {a',b'}).
    """
    alg = T.algebra
    D = doubled_algebra(alg)
    n = alg.n
    entries = {}
    for i in range(2 * n):
        for j in range(i, 2 * n):
            if i < n and j < n:
                entries[(i, j)] = left_copy(T.gen_bracket(i, j), D)
            elif i >= n and j >= n:
                entries[(i, j)] = right_copy(T.gen_bracket(i - n, j - n), D)
            else:
                entries[(i, j)] = D.zero()
    return BracketTable(D, entries)


def tensor_square_bracket_formula(
    T: BracketTable, a: SuperPolynomial, a2: SuperPolynomial, b: SuperPolynomial, b2: SuperPolynomial
) -> TensorElement:
    """{a (x) a2, b (x) b2} computed directly from the displayed formula."""
    s = koszul(a2.homogeneous_parity(), b.homogeneous_parity())
    return (
        TensorElement.pure(bracket(T, a, b), a2 * b2) + TensorElement.pure(a * b, bracket(T, a2, b2))
    ).scale(s)


# ---------------------------------------------------------------------------
# elements of U(A) (x) U(A)


class UEATensorElement:
    """sum c (u (x) v) over pairs of words in U(A); multiplication follows the Koszul rule."""

    __slots__ = ("alphabet", "_terms")

    def __init__(self, alphabet, terms: Mapping | None = None):
        self.alphabet = alphabet
        clean: dict = {}
        for (u, v), c in (terms or {}).items():
            key = (tuple(u), tuple(v))
            x = clean.get(key, 0) + Fraction(c)
            if x:
                clean[key] = x
            else:
                clean.pop(key, None)
        self._terms = clean

    @classmethod
    def pure(cls, a: NCPolynomial, b: NCPolynomial) -> "UEATensorElement":
        return cls(a.alphabet, {(u, v): ca * cb for u, ca in a for v, cb in b})

    @classmethod
    def unit(cls, alphabet) -> "UEATensorElement":
        return cls(alphabet, {((), ()): 1})

    @property
    def terms(self):
        return dict(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __bool__(self):
        return bool(self._terms)

    def _parity(self, word) -> int:
        return sum(int(self.alphabet.parity(s)) for s in word) % 2

    @property
    def parity(self):
        ps = {(self._parity(u) + self._parity(v)) % 2 for (u, v) in self._terms}
        if not ps:
            return Parity.EVEN
        return Parity(ps.pop()) if len(ps) == 1 else None

    def __add__(self, other):
        t = dict(self._terms)
        for k, c in other._terms.items():
            t[k] = t.get(k, 0) + c
        return UEATensorElement(self.alphabet, t)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "UEATensorElement":
        return UEATensorElement(self.alphabet, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        """(a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd, words concatenated."""
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        out: dict = {}
        for (a, b), c1 in self._terms.items():
            pb = self._parity(b)
            for (c, d), c2 in other._terms.items():
                key = (a + c, b + d)
                out[key] = out.get(key, 0) + koszul(pb, self._parity(c)) * c1 * c2
        return UEATensorElement(self.alphabet, out)

    def normalize(self, U: UEA) -> "UEATensorElement":
        """Normal form in each tensor factor."""
        memo: dict = {}

        def nf(w):
            if w not in memo:
                memo[w] = U.normalize(NCPolynomial.word(U.alphabet, w))
            return memo[w]

        out: dict = {}
        for (a, b), c in self._terms.items():
            for a2, ca in nf(a):
                for b2, cb in nf(b):
                    out[(a2, b2)] = out.get((a2, b2), 0) + c * ca * cb
        return UEATensorElement(self.alphabet, out)

    def __eq__(self, other):
        if not isinstance(other, UEATensorElement):
            return NotImplemented
        return self.alphabet == other.alphabet and self._terms == other._terms

    __hash__ = None

    def __str__(self):
        if not self._terms:
            return "0"
        lab = lambda w: "".join(self.alphabet.label(s) for s in w) or "1"  # noqa: E731
        return " + ".join(
            f"{c}*({lab(a)} @ {lab(b)})"
            for (a, b), c in sorted(self._terms.items(), key=lambda t: (len(t[0][0]) + len(t[0][1]), t[0]))
        )

    __repr__ = __str__


# ---------------------------------------------------------------------------
# Hopf data


@dataclass
class HopfData:
    """Coproduct, counit and antipode of A on generators.

    ``delta`` values are TensorElements over (A, A) or polynomials in the
    doubled algebra; ``epsilon`` values are rationals; ``antipode`` values are
    polynomials in A.  Construction checks parity and the Poisson
    compatibility of Delta (a Poisson map into A (x) A) and S (an
    anti-homomorphism of brackets).
    """

    table: BracketTable
    delta: Mapping
    epsilon: Mapping
    antipode: Mapping
    notes: list = field(default_factory=list)

    def __post_init__(self):
        T = self.table
        alg = T.algebra
        self.double = bracket_tensor_square(T)
        D = self.double.algebra
        dd, ee, ss = {}, {}, {}
        for g in alg.generators:
            for label, src in (("delta", self.delta), ("epsilon", self.epsilon), ("antipode", self.antipode)):
                if g.name not in src:
                    raise AlgebraError(f"{label} has no value on generator {g.name}")
            d = self.delta[g.name]
            if isinstance(d, TensorElement):
                d = to_doubled(d, D)
            elif isinstance(d, (int, Fraction)):
                d = D.const(d)
            if d and d.parity != g.parity:
                raise ParityError(f"delta({g.name}) = {d} must be {g.parity}")
            dd[g.name] = d
            e = Fraction(self.epsilon[g.name])
            if g.parity and e:
                raise ParityError(f"epsilon of odd generator {g.name} must be 0")
            ee[g.name] = e
            s = self.antipode[g.name]
            if isinstance(s, (int, Fraction)):
                s = alg.const(s)
            if s and s.parity != g.parity:
                raise ParityError(f"antipode({g.name}) = {s} must be {g.parity}")
            ss[g.name] = s
        self.delta_d, self.eps, self.S = dd, ee, ss
        defect = poisson_map_defect(T, self.double, dd)
        if defect is not None:
            (a, b), r = defect
            raise NotPoissonError(f"delta is not a Poisson map at ({a}, {b}): residual {r}")
        defect = poisson_map_defect(T, T, ss, anti=True)
        if defect is not None:
            (a, b), r = defect
            raise NotPoissonError(f"antipode is not a Poisson anti-map at ({a}, {b}): residual {r}")
        self.U = UEA(T)
        self.UU = UEA(self.double)

    # values on A
    def delta_of(self, p: SuperPolynomial) -> TensorElement:
        return from_doubled(substitute(p, self.delta_d, self.double.algebra), self.table.algebra)

    def epsilon_of(self, p: SuperPolynomial) -> Fraction:
        k = SuperAlgebra(())
        return substitute(p, {n: k.const(v) for n, v in self.eps.items()}, k).constant_term()

    def antipode_of(self, p: SuperPolynomial) -> SuperPolynomial:
        return substitute(p, self.S, self.table.algebra)


def primitive_hopf(T: BracketTable) -> HopfData:
    """Delta(g) = g (x) 1 + 1 (x) g, epsilon(g) = 0, S(g) = -g on every generator."""
    alg = T.algebra
    D = doubled_algebra(alg)
    gens = alg.vars()
    delta = {g.name: left_copy(gens[g.index], D) + right_copy(gens[g.index], D) for g in alg.generators}
    return HopfData(
        T,
        delta,
        {g.name: 0 for g in alg.generators},
        {g.name: -gens[g.index] for g in alg.generators},
    )


def uea_coproduct(Hd: HopfData, p: NCPolynomial) -> UEATensorElement:
    """U(Delta): m_a -> (m (x) m)Delta(a), h_a -> (m (x) h + h (x) m)Delta(a)."""
    UU, U = Hd.UU, Hd.U
    names = Hd.table.algebra.names
    n = len(names)

    def image(s):
        return embed(Hd.delta_d[names[s[1]]], s[0], UU.alphabet)

    nf = UU.normalize(substitute_symbols(p, image, UU.alphabet))
    out: dict = {}
    par = Hd.table.algebra.parity
    for w, c in nf:
        mL = tuple(UEASymbol(M, s[1]) for s in w if s[0] == M and s[1] < n)
        mR = tuple(UEASymbol(M, s[1] - n) for s in w if s[0] == M and s[1] >= n)
        hL = tuple(UEASymbol(H, s[1]) for s in w if s[0] == H and s[1] < n)
        hR = tuple(UEASymbol(H, s[1] - n) for s in w if s[0] == H and s[1] >= n)
        # (mL (x) mR)(hL (x) hR) = (-1)^{|mR||hL|} mL hL (x) mR hR
        pr = sum(int(par(s[1])) for s in mR) % 2
        pl = sum(int(par(s[1])) for s in hL) % 2
        key = (mL + hL, mR + hR)
        out[key] = out.get(key, 0) + c * koszul(pr, pl)
    return UEATensorElement(U.alphabet, out)


def uea_counit(Hd: HopfData, p: NCPolynomial) -> Fraction:
    """U(epsilon): m_a -> epsilon(a), h_a -> 0."""
    names = Hd.table.algebra.names
    total = Fraction(0)
    for w, c in p:
        v = c
        for s in w:
            if s[0] == H:
                v = 0
                break
            v *= Hd.eps[names[s[1]]]
        total += v
    return total


def uea_antipode(Hd: HopfData, p: NCPolynomial) -> NCPolynomial:
    """U(S), an algebra map into U(A)^op read back in U(A).

    Symbols go to m(S a), h(S a); a word s1...sn is sent to
    (-1)^{sum_{i<j}|s_i||s_j|} U(S)(sn)...U(S)(s1).  No further sign on h:
    the opposite algebra's h is the original h.
    """
    U = Hd.U
    names = Hd.table.algebra.names
    cache: dict = {}

    def image(s):
        if s not in cache:
            cache[s] = embed(Hd.S[names[s[1]]], s[0], U.alphabet)
        return cache[s]

    out = NCPolynomial.zero(U.alphabet)
    for w, c in p:
        odd = sum(int(U.alphabet.parity(s)) for s in w)
        sign = -1 if (odd * (odd - 1) // 2) % 2 else 1
        term = NCPolynomial.const(U.alphabet, c * sign)
        for s in reversed(w):
            term = term * image(s)
        out = out + term
    return U.normalize(out)


# ---------------------------------------------------------------------------
# axiom checks


@dataclass
class HopfReport:
    ok: bool = True
    checked: dict = field(default_factory=dict)
    failure: tuple | None = None  # (axiom, element, residual)
    notes: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def fail(self, axiom, element, residual):
        if self.ok:
            self.ok = False
            self.failure = (axiom, str(element), str(residual))

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checked": dict(self.checked),
            "failure": None if self.failure is None else list(self.failure),
            "notes": list(self.notes),
        }

    def __str__(self):
        if self.ok:
            counts = ", ".join(f"{k} {v}" for k, v in self.checked.items())
            return f"hopf: pass ({counts})"
        axiom, elem, res = self.failure
        return f"hopf: FAIL {axiom} at {elem}: residual {res}"


def _coproduct_words(Hd: HopfData, memo: dict, w) -> UEATensorElement:
    if w not in memo:
        memo[w] = uea_coproduct(Hd, NCPolynomial.word(Hd.U.alphabet, w))
    return memo[w]


def check_hopf_axioms(Hd: HopfData, d: int, multiplicative_pairs: int | None = None) -> HopfReport:
    """Coassociativity, counit and antipode laws on PBW monomials of degree <= d,
    and Delta(uv) = Delta(u)Delta(v) on pairs of those monomials.

    ``multiplicative_pairs`` limits the number of pairs checked (all by default).
    """
    U = Hd.U
    al = U.alphabet
    report = HopfReport(notes=list(Hd.notes))
    basis = [b.word() for b in degree_basis(Hd.table.algebra, d)]
    memo: dict = {}
    for key in ("coassociativity", "counit", "antipode", "multiplicativity"):
        report.checked[key] = 0
    for w in basis:
        u = NCPolynomial.word(al, w)
        label = NCPolynomial.word(al, w)
        delta = _coproduct_words(Hd, memo, w)
        # coassociativity
        lhs: dict = {}
        rhs: dict = {}
        for (a, b), c in delta:
            for (a1, a2), c1 in _coproduct_words(Hd, memo, a):
                k = (a1, a2, b)
                lhs[k] = lhs.get(k, 0) + c * c1
            for (b1, b2), c2 in _coproduct_words(Hd, memo, b):
                k = (a, b1, b2)
                rhs[k] = rhs.get(k, 0) + c * c2
        diff = {k: lhs.get(k, 0) - rhs.get(k, 0) for k in set(lhs) | set(rhs)}
        diff = {k: v for k, v in diff.items() if v}
        report.checked["coassociativity"] += 1
        if diff:
            report.fail("coassociativity", label, diff)
            return report
        # counit laws
        eps_left = NCPolynomial.zero(al)
        eps_right = NCPolynomial.zero(al)
        for (a, b), c in delta:
            eps_left = eps_left + NCPolynomial.word(al, b, c * uea_counit(Hd, NCPolynomial.word(al, a)))
            eps_right = eps_right + NCPolynomial.word(al, a, c * uea_counit(Hd, NCPolynomial.word(al, b)))
        report.checked["counit"] += 1
        for side, val in (("(eps (x) id)Delta", eps_left), ("(id (x) eps)Delta", eps_right)):
            r = U.normalize(val - u)
            if r:
                report.fail(f"counit law {side}", label, r)
                return report
        # antipode laws
        left = NCPolynomial.zero(al)
        right = NCPolynomial.zero(al)
        for (a, b), c in delta:
            A = NCPolynomial.word(al, a)
            B = NCPolynomial.word(al, b)
            left = left + (uea_antipode(Hd, A) * B).scale(c)
            right = right + (A * uea_antipode(Hd, B)).scale(c)
        target = NCPolynomial.const(al, uea_counit(Hd, u))
        report.checked["antipode"] += 1
        for side, val in (("mu(S (x) id)Delta", left), ("mu(id (x) S)Delta", right)):
            r = U.normalize(val - target)
            if r:
                report.fail(f"antipode law {side}", label, r)
                return report
    pairs = list(itertools.product(basis, repeat=2))
    if multiplicative_pairs is not None:
        pairs = pairs[:multiplicative_pairs]
    for w1, w2 in pairs:
        lhs = uea_coproduct(Hd, NCPolynomial.word(al, w1 + w2))
        rhs = (_coproduct_words(Hd, memo, w1) * _coproduct_words(Hd, memo, w2)).normalize(U)
        report.checked["multiplicativity"] += 1
        if lhs != rhs:
            report.fail("multiplicativity", f"{NCPolynomial.word(al, w1)} * {NCPolynomial.word(al, w2)}", lhs - rhs)
            return report
    return report


def relation_images(Hd: HopfData) -> list:
    """Images of every generator-pair defining relation under Delta, epsilon and S.

    Each entry is (pair, relation label, coproduct image, counit image, antipode image);
    all images vanish when the structure maps are well defined on U(A).
    """
    U = Hd.U
    gens = Hd.table.algebra.vars()
    names = Hd.table.algebra.names
    out = []
    for i, j in itertools.product(range(len(gens)), repeat=2):
        for label, r in U.defining_relations(gens[i], gens[j]):
            out.append(
                (
                    (names[i], names[j]),
                    label,
                    uea_coproduct(Hd, r),
                    uea_counit(Hd, r),
                    uea_antipode(Hd, r),
                )
            )
    return out


# ---------------------------------------------------------------------------
# Lie superalgebras, PS(L) and the semidirect product V x| L


@dataclass(frozen=True)
class LieSuperAlgebra:
    """Basis names with parities and brackets [e_i, e_j] = sum_k c_k e_k (given for i <= j)."""

    basis: tuple  # ((name, parity), ...)
    brackets: Mapping  # (i, j) -> {k: coefficient}

    def __post_init__(self):
        n = len(self.basis)
        par = [Parity.parse(p) if not isinstance(p, Parity) else p for _, p in self.basis]
        object.__setattr__(self, "basis", tuple((nm, p) for (nm, _), p in zip(self.basis, par)))
        full = {}
        for (i, j), v in dict(self.brackets).items():
            v = {k: Fraction(c) for k, c in v.items() if c}
            for k in v:
                if par[k] != par[i] + par[j]:
                    raise ParityError(f"[e{i+1}, e{j+1}] has a term of the wrong parity")
            full[(i, j)] = v
            if (j, i) not in self.brackets:
                s = -koszul(par[i], par[j])
                full[(j, i)] = {k: s * c for k, c in v.items()}
        for i in range(n):
            if not par[i]:
                full.setdefault((i, i), {})
        object.__setattr__(self, "brackets", full)

    @property
    def n(self) -> int:
        return len(self.basis)

    def parity(self, i) -> Parity:
        return self.basis[i][1]

    def br(self, i, j) -> dict:
        return self.brackets.get((i, j), {})


def poisson_supersymmetric(L: LieSuperAlgebra) -> BracketTable:
    """S(L) with {a, b} = [a, b] on L, extended by Leibniz."""
    alg = SuperAlgebra.of(*L.basis)
    gens = alg.vars()
    entries = {}
    for i in range(L.n):
        for j in range(i, L.n):
            v = alg.zero()
            for k, c in L.br(i, j).items():
                v = v + gens[k].scale(c)
            entries[(i, j)] = v
    return BracketTable(alg, entries)


def ps_hopf(L: LieSuperAlgebra) -> HopfData:
    """PS(L) with primitive generators.

    The coproduct is taken as Delta(a) = a (x) 1 + 1 (x) a; a printed form
    a (x) 1 + a (x) a is incompatible with epsilon(a) = 0 and is not used.
    """
    Hd = primitive_hopf(poisson_supersymmetric(L))
    Hd.notes.append("coproduct on L is primitive: a (x) 1 + 1 (x) a")
    return Hd


@dataclass(frozen=True)
class SemidirectAlphabet:
    """Basis of V x| L: (0, i) = v_i, (1, i) = x_i; parities copied from L."""

    L: LieSuperAlgebra

    def parity(self, s) -> Parity:
        return self.L.parity(s[1])

    def label(self, s) -> str:
        return f"{'vx'[s[0]]}({self.L.basis[s[1]][0]})"

    def __contains__(self, s) -> bool:
        return isinstance(s, tuple) and len(s) == 2 and s[0] in (0, 1) and 0 <= s[1] < self.L.n


class SemidirectEnvelope(RewriteEngine):
    """U(V x|_ad L) with V an abelian copy of L: ab = (-1)^{|a||b|} ba + [a, b]."""

    def __init__(self, L: LieSuperAlgebra):
        super().__init__(SemidirectAlphabet(L))
        self.L = L

    def lie(self, a, b) -> NCPolynomial:
        """[a, b] in V x| L as a linear combination of symbols."""
        al = self.alphabet
        if a[0] == 0 and b[0] == 0:
            return NCPolynomial.zero(al)
        if a[0] == 1 and b[0] == 1:
            kind = 1
        else:
            kind = 0  # [x, v] = ad(x)(v) lands in V
        terms = {((kind, k),): c for k, c in self.L.br(a[1], b[1]).items()}
        return NCPolynomial(al, terms)

    def commute(self, a, b):
        return koszul(self.alphabet.parity(a), self.alphabet.parity(b)), self.lie(a, b)

    def square(self, a) -> NCPolynomial:
        return self.lie(a, a).scale(Fraction(1, 2))

    def basis(self, d: int) -> list:
        syms = [(0, i) for i in range(self.L.n)] + [(1, i) for i in range(self.L.n)]
        ranges = [range(2) if self.alphabet.parity(s) else range(d + 1) for s in syms]
        out = []
        for e in itertools.product(*ranges):
            if sum(e) <= d:
                out.append(tuple(s for s, k in zip(syms, e) for _ in range(k)))
        out.sort(key=lambda w: (len(w), w))
        return out


@dataclass
class PhiReport:
    ok: bool
    lie_relations_checked: int
    source_count: int
    target_count: int
    image_rank: int
    failure: str | None = None

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def semidirect_phi_check(L: LieSuperAlgebra, d: int) -> PhiReport:
    """Phi: U(V x| L) -> U(PS(L)), v -> m_v, x -> h_x.

    Checks that Phi respects the Lie bracket on basis pairs and that Phi sends
    the PBW basis of degree <= d onto linearly independent normal forms,
    matching the PBW count of U(PS(L)).
    """
    from .linalg import RowSpace

    E = SemidirectEnvelope(L)
    T = poisson_supersymmetric(L)
    U = UEA(T)

    def image(s):
        return NCPolynomial.word(U.alphabet, [UEASymbol(M if s[0] == 0 else H, s[1])])

    syms = [(0, i) for i in range(L.n)] + [(1, i) for i in range(L.n)]
    checked = 0
    for a, b in itertools.product(syms, repeat=2):
        A = NCPolynomial.word(E.alphabet, [a])
        B = NCPolynomial.word(E.alphabet, [b])
        lhs = substitute_symbols(E.lie(a, b), image, U.alphabet)
        rhs = supercommutator(image(a), image(b))
        checked += 1
        r = U.normalize(lhs - rhs)
        if r:
            return PhiReport(False, checked, 0, 0, 0, f"[{A}, {B}] -> {r}")
    src = E.basis(d)
    tgt = degree_basis(T.algebra, d)
    space = RowSpace()
    for w in src:
        nf = U.normalize(substitute_symbols(NCPolynomial.word(E.alphabet, w), image, U.alphabet))
        space.add(dict(nf.terms))
    ok = len(src) == len(tgt) == space.rank
    return PhiReport(ok, checked, len(src), len(tgt), space.rank)
