"""Poisson-Ore extensions R[x; alpha, delta]_p by an even variable x.

The bracket on R[x] is {x, r} = alpha(r) x + delta(r).  Its enveloping algebra
is compared with the iterated Ore extension R^e[m_x; s1, e1][h_x; s2, e2] of
the enveloping algebra of R, where (on r in R)

    s1(m_r) = m_r        s1(h_r) = h_r + m(alpha r)
    e1(m_r) = 0          e1(h_r) = m(delta r)
    s2 = s1 on R^e,      s2(m_x) = m_x
    e2(m_r) = m(alpha r) m_x + m(delta r)
    e2(h_r) = (h(alpha r) + m(alpha^2 r)) m_x + m(delta alpha r) + h(delta r)
    e2(m_x) = 0,

s1, s2 are algebra maps and e1, e2 skew-derivations: e(uv) = s(u) e(v) + e(u) v.

Elements of the iterated extension are stored left-normal as
{(R^e normal word, i, j): c}, meaning word * m_x^i * h_x^j.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import AlgebraError, UnvalidatedOreError
from .linalg import RowSpace
from .poisson import BracketTable, bracket, skew_super_bracket
from .rewriting import NCPolynomial
from .supercore import (
    Parity,
    SuperAlgebra,
    SuperPolynomial,
    Superderivation,
    substitute,
)
from .uea import H, M, UEA, UEASymbol, degree_basis, embed


# ---------------------------------------------------------------------------
# Ore data and validation


@dataclass
class OreData:
    """Base table with even superderivations alpha, delta and the new variable's name.

    ``position`` is where x is inserted among the generators of R[x]
    (default: last).  ``validated`` is set only by :func:`validate_ore`.
    """

    base: BracketTable
    alpha: Superderivation
    delta: Superderivation
    var: str = "x"
    position: int | None = None
    validated: bool = field(default=False, init=False)

    def __post_init__(self):
        alg = self.base.algebra
        for label, d in (("alpha", self.alpha), ("delta", self.delta)):
            if d.algebra != alg:
                raise AlgebraError(f"{label} acts on another algebra")
            if d.parity != Parity.EVEN:
                raise AlgebraError(f"{label} must be an even superderivation")
            for g in alg.generators:
                d.image(g.index)  # raises if incomplete
        if self.var in alg:
            raise AlgebraError(f"variable name {self.var!r} already used")
        if self.position is None:
            self.position = alg.n
        if not 0 <= self.position <= alg.n:
            raise AlgebraError("position out of range")

    @classmethod
    def from_images(cls, base: BracketTable, alpha: Mapping, delta: Mapping, var="x", position=None):
        """Build from generator images; missing generators map to 0."""
        alg = base.algebra
        a = {g.name: alpha.get(g.name, alg.zero()) for g in alg.generators}
        d = {g.name: delta.get(g.name, alg.zero()) for g in alg.generators}
        return cls(base, Superderivation(alg, Parity.EVEN, a), Superderivation(alg, Parity.EVEN, d), var, position)


@dataclass
class OreReport:
    ok: bool
    condition: str | None = None
    pair: tuple = ()
    residual: SuperPolynomial | None = None
    checked: int = 0

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "failure": self.condition,
            "generators": list(self.pair),
            "residual": None if self.residual is None else str(self.residual),
            "checked": self.checked,
        }

    def __str__(self):
        if self.ok:
            return f"ore: pass ({self.checked} checks)"
        return f"ore: FAIL {self.condition} at ({', '.join(self.pair)}), residual {self.residual}"


def validate_ore(O: OreData) -> OreReport:
    """Check on all generator pairs (r, s):

    alpha{r,s} = {alpha r, s} + {r, alpha s}, and
    delta{r,s} = alpha(r)delta(s) - delta(r)alpha(s) + {r, delta s} + {delta r, s}.
    Generators suffice for derivations.  Sets ``O.validated`` on success.
    """
    T = O.base
    alg = T.algebra
    gens = alg.vars()
    names = alg.names
    checked = 0
    for i, j in itertools.product(range(alg.n), repeat=2):
        r, s = gens[i], gens[j]
        rs = T.gen_bracket(i, j)
        ar, as_ = O.alpha(r), O.alpha(s)
        dr, ds = O.delta(r), O.delta(s)
        res = O.alpha(rs) - bracket(T, ar, s) - bracket(T, r, as_)
        checked += 1
        if res:
            O.validated = False
            return OreReport(False, "alpha is not a Poisson superderivation", (names[i], names[j]), res, checked)
        res = O.delta(rs) - (ar * ds - dr * as_ + bracket(T, r, ds) + bracket(T, dr, s))
        checked += 1
        if res:
            O.validated = False
            return OreReport(False, "delta compatibility", (names[i], names[j]), res, checked)
    O.validated = True
    return OreReport(True, checked=checked)


def _require(O: OreData):
    if not O.validated:
        raise UnvalidatedOreError("run validate_ore first")


def extended_algebra(O: OreData) -> SuperAlgebra:
    specs = [(g.name, g.parity) for g in O.base.algebra.generators]
    specs.insert(O.position, (O.var, Parity.EVEN))
    return SuperAlgebra.of(*specs)


def include(O: OreData, p: SuperPolynomial, A: SuperAlgebra | None = None) -> SuperPolynomial:
    """R -> R[x]."""
    A = A or extended_algebra(O)
    return substitute(p, {n: A.var(n) for n in O.base.algebra.names}, A)


def extend_ore(O: OreData) -> BracketTable:
    """Bracket table of R[x; alpha, delta]_p: R's brackets plus {x, g} = alpha(g)x + delta(g)."""
    _require(O)
    A = extended_algebra(O)
    alg = O.base.algebra
    x = A.var(O.var)
    gens = alg.vars()
    entries = {}
    for i in range(alg.n):
        for j in range(i, alg.n):
            entries[(alg.names[i], alg.names[j])] = include(O, O.base.gen_bracket(i, j), A)
        g = gens[i]
        entries[(O.var, alg.names[i])] = include(O, O.alpha(g), A) * x + include(O, O.delta(g), A)
    entries[(O.var, O.var)] = A.zero()
    return BracketTable(A, entries)


def ore_monomial_bracket(O: OreData, r: SuperPolynomial, i: int, s: SuperPolynomial, j: int) -> SuperPolynomial:
    """Closed form {r x^i, s x^j} =
    ({r,s} - j alpha(r) s + i r alpha(s)) x^{i+j} + (i r delta(s) - j delta(r) s) x^{i+j-1}."""
    A = extended_algebra(O)
    T = O.base
    x = A.var(O.var)
    inc = lambda p: include(O, p, A)  # noqa: E731
    top = inc(bracket(T, r, s) - (O.alpha(r) * s).scale(j) + (r * O.alpha(s)).scale(i)) * x ** (i + j)
    low = A.zero()
    if i + j >= 1:
        low = inc((r * O.delta(s)).scale(i) - (O.delta(r) * s).scale(j)) * x ** (i + j - 1)
    return top + low


def ore_data_from_table(T: BracketTable, var: str) -> OreData:
    """Read alpha, delta back from a table on R[x] of the shape {x, g} = alpha(g)x + delta(g).

    R is the subalgebra on the other generators; its bracket must close on R.
    """
    A = T.algebra
    pos = A.index(var)
    R = SuperAlgebra.of(*[(g.name, g.parity) for g in A.generators if g.name != var])
    k = pos

    def restrict(p: SuperPolynomial, what: str) -> SuperPolynomial:
        terms = {}
        for mono, c in p:
            if mono[k]:
                raise AlgebraError(f"{what} involves {var}")
            terms[mono[:k] + mono[k + 1:]] = c
        return SuperPolynomial(R, terms)

    entries = {}
    alpha, delta = {}, {}
    for g in R.generators:
        for h in R.generators[g.index:]:
            entries[(g.name, h.name)] = restrict(T(g.name, h.name), f"{{{g.name},{h.name}}}")
        val = T(var, g.name)
        hi = {m: c for m, c in val if m[k] == 1}
        lo = {m: c for m, c in val if m[k] == 0}
        if any(m[k] > 1 for m, _ in val):
            raise AlgebraError(f"{{{var},{g.name}}} is not linear in {var}")
        alpha[g.name] = restrict(
            SuperPolynomial(A, {m[:k] + (0,) + m[k + 1:]: c for m, c in hi.items()}), "alpha"
        )
        delta[g.name] = restrict(SuperPolynomial(A, lo), "delta")
    base = BracketTable(R, entries)
    return OreData.from_images(base, alpha, delta, var, pos)


# ---------------------------------------------------------------------------
# Example tower: k[y | ...] extended one even variable at a time


def skew_tower(lam: Sequence[Sequence], mu: Sequence[Sequence], xi: Sequence[Sequence]) -> list:
    """Build k[x_1..x_n | y_1..y_m] with the skew brackets by successive Ore extensions.

    Stage r adds x_{r+1} with alpha(x_k) = lam_{r+1,k} x_k (k <= r),
    alpha(y_l) = xi_{r+1,l} y_l and delta = 0.  Returns the list of
    (OreData, OreReport, extended table) for every stage; the base is
    Lambda(y_1..y_m) with the mu bracket.
    """
    n, m = len(lam), len(mu)
    table = skew_super_bracket([], mu, [])
    stages = []
    for r in range(n):
        alg = table.algebra
        alpha = {}
        for k in range(r):
            alpha[f"x{k + 1}"] = alg.var(f"x{k + 1}").scale(lam[r][k])
        for l in range(m):
            alpha[f"y{l + 1}"] = alg.var(f"y{l + 1}").scale(xi[r][l])
        O = OreData.from_images(table, alpha, {}, var=f"x{r + 1}", position=r)
        rep = validate_ore(O)
        if not rep:
            stages.append((O, rep, None))
            return stages
        table = extend_ore(O)
        stages.append((O, rep, table))
    return stages


# ---------------------------------------------------------------------------
# the iterated Ore extension R^e[m_x; s1, e1][h_x; s2, e2]


class SkewPolynomial:
    """{(word, i, j): c} meaning word * m_x^i * h_x^j, word a normal word of R^e."""

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: "IteratedOre", terms: Mapping | None = None):
        self.ring = ring
        clean: dict = {}
        for k, c in (terms or {}).items():
            v = clean.get(k, 0) + Fraction(c)
            if v:
                clean[k] = v
            else:
                clean.pop(k, None)
        self._terms = clean

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other):
        t = dict(self._terms)
        for k, c in other._terms.items():
            t[k] = t.get(k, 0) + c
        return SkewPolynomial(self.ring, t)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SkewPolynomial":
        return SkewPolynomial(self.ring, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return self.ring.mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, SkewPolynomial):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None

    def __str__(self):
        if not self._terms:
            return "0"
        al = self.ring.Re.alphabet
        parts = []
        for (w, i, j), c in sorted(self._terms.items(), key=lambda t: (-len(t[0][0]) - t[0][1] - t[0][2], t[0])):
            body = "".join(al.label(s) for s in w)
            if i:
                body += "m_x" + (f"^{i}" if i > 1 else "")
            if j:
                body += "h_x" + (f"^{j}" if j > 1 else "")
            parts.append(f"{c}*{body or '1'}")
        return " + ".join(parts)

    __repr__ = __str__


class IteratedOre:
    """Arithmetic in R^e[m_x; s1, e1][h_x; s2, e2] for validated Ore data."""

    def __init__(self, O: OreData):
        _require(O)
        self.O = O
        self.Re = UEA(O.base)
        self.alg = O.base.algebra
        al = self.Re.alphabet
        self._alpha_m = {}
        self._alpha_h = {}
        self._delta_m = {}
        self._delta_h = {}
        self._alpha2_m = {}
        self._deltaalpha_m = {}
        for g in self.alg.generators:
            v = self.alg.vars()[g.index]
            a = O.alpha(v)
            d = O.delta(v)
            self._alpha_m[g.index] = embed(a, M, al)
            self._alpha_h[g.index] = embed(a, H, al)
            self._delta_m[g.index] = embed(d, M, al)
            self._delta_h[g.index] = embed(d, H, al)
            self._alpha2_m[g.index] = embed(O.alpha(a), M, al)
            self._deltaalpha_m[g.index] = embed(O.delta(a), M, al)
        self._mx_memo: dict = {}
        self._hx_memo: dict = {}
        self._nf_memo: dict = {}

    # helpers on R^e
    def _nf(self, w) -> NCPolynomial:
        if w not in self._nf_memo:
            self._nf_memo[w] = self.Re.normalize(NCPolynomial.word(self.Re.alphabet, w))
        return self._nf_memo[w]

    def re(self, p: NCPolynomial, i: int = 0, j: int = 0) -> SkewPolynomial:
        """Embed an element of R^e (any word form) times m_x^i h_x^j."""
        out: dict = {}
        for w, c in p:
            for w2, c2 in self._nf(w):
                out[(w2, i, j)] = out.get((w2, i, j), 0) + c * c2
        return SkewPolynomial(self, out)

    def mx(self, i: int = 1) -> SkewPolynomial:
        return SkewPolynomial(self, {((), i, 0): 1})

    def hx(self, j: int = 1) -> SkewPolynomial:
        return SkewPolynomial(self, {((), 0, j): 1})

    def one(self) -> SkewPolynomial:
        return SkewPolynomial(self, {((), 0, 0): 1})

    def zero(self) -> SkewPolynomial:
        return SkewPolynomial(self)

    # s1, e1 on R^e
    def sigma1_symbol(self, s) -> NCPolynomial:
        al = self.Re.alphabet
        base = NCPolynomial.word(al, [s])
        if s[0] == M:
            return base
        return base + self._alpha_m[s[1]]

    def sigma1_inverse_symbol(self, s) -> NCPolynomial:
        al = self.Re.alphabet
        base = NCPolynomial.word(al, [s])
        if s[0] == M:
            return base
        return base - self._alpha_m[s[1]]

    def eta1_symbol(self, s) -> NCPolynomial:
        if s[0] == M:
            return NCPolynomial.zero(self.Re.alphabet)
        return self._delta_m[s[1]]

    def sigma1(self, p: NCPolynomial) -> NCPolynomial:
        out = NCPolynomial.zero(self.Re.alphabet)
        for w, c in p:
            term = NCPolynomial.const(self.Re.alphabet, c)
            for s in w:
                term = term * self.sigma1_symbol(s)
            out = out + term
        return self.Re.normalize(out)

    def eta1(self, p: NCPolynomial) -> NCPolynomial:
        """sigma1-derivation: e1(s z) = s1(s) e1(z) + e1(s) z, unrolled over the word."""
        al = self.Re.alphabet
        out = NCPolynomial.zero(al)
        for w, c in p:
            for k, s in enumerate(w):
                pre = self.sigma1(NCPolynomial.word(al, w[:k]))
                out = out + (pre * self.eta1_symbol(s) * NCPolynomial.word(al, w[k + 1:])).scale(c)
        return self.Re.normalize(out)

    # m_x past R^e
    def _mx_word(self, w) -> SkewPolynomial:
        """m_x * w = s1(w) m_x + e1(w) for an R^e word w."""
        if w not in self._mx_memo:
            p = NCPolynomial.word(self.Re.alphabet, w)
            self._mx_memo[w] = self.re(self.sigma1(p), 1) + self.re(self.eta1(p), 0)
        return self._mx_memo[w]

    def _mx_power_word(self, i: int, w) -> SkewPolynomial:
        """m_x^i * w, left-normal, h-exponent 0."""
        cur = SkewPolynomial(self, {(w, 0, 0): 1})
        for _ in range(i):
            nxt: dict = {}
            for (w2, k, _j), c in cur:
                for (w3, k3, _), c3 in self._mx_word(w2):
                    key = (w3, k3 + k, 0)
                    nxt[key] = nxt.get(key, 0) + c * c3
            cur = SkewPolynomial(self, nxt)
        return cur

    def mul_b(self, u: SkewPolynomial, v: SkewPolynomial) -> SkewPolynomial:
        """Product in B = R^e[m_x; s1, e1]; both arguments must have h-exponent 0."""
        out: dict = {}
        for (a, i, j1), c1 in u:
            for (b, k, j2), c2 in v:
                if j1 or j2:
                    raise AlgebraError("mul_b takes elements of R^e[m_x]")
                for (w, t, _), c3 in self._mx_power_word(i, b):
                    for w2, c4 in self._nf(a + w):
                        key = (w2, t + k, 0)
                        out[key] = out.get(key, 0) + c1 * c2 * c3 * c4
        return SkewPolynomial(self, out)

    # s2, e2 on B
    def sigma2(self, u: SkewPolynomial) -> SkewPolynomial:
        out = self.zero()
        for (w, i, j), c in u:
            if j:
                raise AlgebraError("sigma2 acts on R^e[m_x]")
            out = out + self.re(self.sigma1(NCPolynomial.word(self.Re.alphabet, w)), i).scale(c)
        return out

    def eta2_symbol(self, s) -> SkewPolynomial:
        g = s[1]
        if s[0] == M:
            return self.re(self._alpha_m[g], 1) + self.re(self._delta_m[g], 0)
        return (
            self.re(self._alpha_h[g] + self._alpha2_m[g], 1)
            + self.re(self._deltaalpha_m[g] + self._delta_h[g], 0)
        )

    def eta2(self, u: SkewPolynomial) -> SkewPolynomial:
        """sigma2-derivation with e2(m_x) = 0, so e2(w m_x^i) = e2(w) m_x^i."""
        out = self.zero()
        for (w, i, j), c in u:
            if j:
                raise AlgebraError("eta2 acts on R^e[m_x]")
            for k, s in enumerate(w):
                pre = self.sigma2(SkewPolynomial(self, {(w[:k], 0, 0): 1}))
                post = SkewPolynomial(self, {(w[k + 1:], i, 0): 1})
                out = out + self.mul_b(self.mul_b(pre, self.eta2_symbol(s)), post).scale(c)
        return out

    def _hx_elem(self, w, i) -> SkewPolynomial:
        """h_x * (w m_x^i) = s2(w m_x^i) h_x + e2(w m_x^i)."""
        key = (w, i)
        if key not in self._hx_memo:
            b = SkewPolynomial(self, {(w, i, 0): 1})
            s = self.sigma2(b)
            shifted = SkewPolynomial(self, {(w2, i2, j2 + 1): c for (w2, i2, j2), c in s})
            self._hx_memo[key] = shifted + self.eta2(b)
        return self._hx_memo[key]

    def _hx_power(self, j: int, w, i) -> SkewPolynomial:
        """h_x^j * (w m_x^i), left-normal."""
        cur = SkewPolynomial(self, {(w, i, 0): 1})
        for _ in range(j):
            nxt = self.zero()
            for (w2, i2, j2), c in cur:
                step = self._hx_elem(w2, i2)
                nxt = nxt + SkewPolynomial(self, {(w3, i3, j3 + j2): c * c3 for (w3, i3, j3), c3 in step})
            cur = nxt
        return cur

    def mul(self, u: SkewPolynomial, v: SkewPolynomial) -> SkewPolynomial:
        out: dict = {}
        for (a, i, j), c1 in u:
            left = SkewPolynomial(self, {(a, i, 0): 1})
            for (b, k, l), c2 in v:
                moved = self._hx_power(j, b, k)
                for (w, t, s), c3 in moved:
                    prod = self.mul_b(left, SkewPolynomial(self, {(w, t, 0): 1}))
                    for (w2, t2, _), c4 in prod:
                        key = (w2, t2, s + l)
                        out[key] = out.get(key, 0) + c1 * c2 * c3 * c4
        return SkewPolynomial(self, out)

    def power(self, u: SkewPolynomial, k: int) -> SkewPolynomial:
        out = self.one()
        for _ in range(k):
            out = self.mul(out, u)
        return out


def sigma_eta(O: OreData, which: str, p) -> SkewPolynomial:
    """Apply one of 'sigma1', 'eta1', 'sigma2', 'eta2'.

    ``p`` is an NCPolynomial over R^e for the first two and for the last two
    either that or a SkewPolynomial of h-exponent 0.
    """
    S = IteratedOre(O)
    if which == "sigma1":
        return S.re(S.sigma1(p))
    if which == "eta1":
        return S.re(S.eta1(p))
    if isinstance(p, NCPolynomial):
        p = S.re(p)
    if which == "sigma2":
        return S.sigma2(p)
    if which == "eta2":
        return S.eta2(p)
    raise ValueError(f"unknown map {which!r}")


def skew_mul(O: OreData, u: SkewPolynomial, v: SkewPolynomial) -> SkewPolynomial:
    _require(O)
    return u.ring.mul(u, v)


# ---------------------------------------------------------------------------
# phi: U(R[x]) -> R^e[m_x][h_x]


class PhiMap:
    """phi(m_r) = m_r, phi(h_r) = h_r, phi(m_x) = m_x, phi(h_x) = h_x, multiplicatively."""

    def __init__(self, O: OreData, S: IteratedOre | None = None):
        _require(O)
        self.O = O
        self.S = S or IteratedOre(O)
        self.A_table = extend_ore(O)
        self.Ae = UEA(self.A_table)
        A = self.A_table.algebra
        self._xi = A.index(O.var)
        # generator index of A -> generator index of R
        self._to_r = {A.index(n): O.base.algebra.index(n) for n in O.base.algebra.names}
        self._memo: dict = {}

    def symbol(self, s) -> SkewPolynomial:
        S = self.S
        if s[1] == self._xi:
            return S.mx() if s[0] == M else S.hx()
        r = UEASymbol(s[0], self._to_r[s[1]])
        return S.re(NCPolynomial.word(S.Re.alphabet, [r]))

    def word(self, w) -> SkewPolynomial:
        if w not in self._memo:
            if not w:
                self._memo[w] = self.S.one()
            else:
                self._memo[w] = self.S.mul(self.word(w[:-1]), self.symbol(w[-1]))
        return self._memo[w]

    def __call__(self, p: NCPolynomial) -> SkewPolynomial:
        out = self.S.zero()
        for w, c in p:
            out = out + self.word(w).scale(c)
        return out

    def closed_m(self, a: SuperPolynomial) -> SkewPolynomial:
        """Phi(m_a) = sum_i m_{c_i} m_x^i for a = sum_i c_i x^i."""
        S = self.S
        out = S.zero()
        for i, c in self._coefficients(a).items():
            out = out + S.re(embed(c, M, S.Re.alphabet), i)
        return out

    def closed_h(self, a: SuperPolynomial) -> SkewPolynomial:
        """Phi(h_a) = sum_i (i m_{c_i} m_x^{i-1} h_x + m_x^i h_{c_i})."""
        S = self.S
        out = S.zero()
        for i, c in self._coefficients(a).items():
            if i:
                out = out + S.re(embed(c, M, S.Re.alphabet), i - 1, 1).scale(i)
            out = out + S.mul(S.mx(i), S.re(embed(c, H, S.Re.alphabet)))
        return out

    def _coefficients(self, a: SuperPolynomial) -> dict:
        R = self.O.base.algebra
        k = self._xi
        out: dict = {}
        for mono, c in a:
            i = mono[k]
            out[i] = out.get(i, R.zero()) + R.monomial(mono[:k] + mono[k + 1:], c)
        return out


@dataclass
class PhiIsoReport:
    ok: bool
    relations_checked: int = 0
    failed_relation: str | None = None
    residual: str | None = None
    source_count: int = 0
    target_count: int = 0
    image_rank: int = 0

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        return dict(self.__dict__)

    def __str__(self):
        if self.failed_relation:
            return f"phi: FAIL {self.failed_relation} -> {self.residual}"
        status = "pass" if self.ok else "FAIL"
        return (
            f"phi: {status} ({self.relations_checked} relations, basis {self.source_count} -> "
            f"{self.target_count}, image rank {self.image_rank})"
        )


def _monomials(alg: SuperAlgebra, d: int) -> list:
    ranges = [range(2) if g.parity else range(d + 1) for g in alg.generators]
    return [alg.monomial(e) for e in itertools.product(*ranges) if sum(e) <= d]


def phi_iso_check(O: OreData, d: int) -> PhiIsoReport:
    """phi kills the defining relations of U(R[x]) on monomial pairs of total degree <= d,
    and maps the PBW basis of degree <= d onto independent elements, matching the
    count of R^e-basis x m_x^i h_x^j in the same degree."""
    _require(O)
    phi = PhiMap(O)
    Ae = phi.Ae
    A = phi.A_table.algebra
    report = PhiIsoReport(ok=True)
    monos = _monomials(A, d)
    for a, b in itertools.product(monos, repeat=2):
        if a.degree() + b.degree() > d:
            continue
        for label, rel in Ae.defining_relations(a, b):
            img = phi(rel)
            report.relations_checked += 1
            if img:
                report.ok = False
                report.failed_relation = f"{label} at x={a}, y={b}"
                report.residual = str(img)
                return report
    src = degree_basis(A, d)
    rb = degree_basis(O.base.algebra, d)
    tgt = [(b, i, j) for b in rb for i in range(d + 1) for j in range(d + 1) if b.degree + i + j <= d]
    space = RowSpace()
    for b in src:
        space.add(phi(NCPolynomial.word(Ae.alphabet, b.word())).terms)
    report.source_count = len(src)
    report.target_count = len(tgt)
    report.image_rank = space.rank
    report.ok = len(src) == len(tgt) == space.rank
    return report
