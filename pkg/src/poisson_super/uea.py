"""Universal enveloping algebras of Poisson superalgebras as rewriting systems.

U(R) is generated by symbols m_g and h_g, one pair per generator g of R.  The
defining relations, read as rewrite rules on adjacent symbols, are

* h_x m_y -> (-1)^{|x||y|} m_y h_x + m({x,y})
* m_x m_y -> (-1)^{|x||y|} m_y m_x            (x > y)
* h_x h_y -> (-1)^{|x||y|} h_y h_x + h({x,y})  (x > y)
* m_g m_g -> 0 and h_g h_g -> 1/2 h({g,g})      (g odd)

where m(-) and h(-) of a polynomial are expanded by :func:`embed`.  Normal
words list all m-symbols before all h-symbols, each block in generator order.
Each rule lowers (number of h-symbols, length, inversions) lexicographically.

The Weyl superalgebra, the quadratic presentations and the Weyl isomorphism
check for the symplectic superalgebra live here as well.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, NamedTuple, Sequence

from .errors import NotPoissonError, UnknownSymbolError
from .linalg import RowSpace, annihilator
from .poisson import (
    BracketTable,
    StructureConstants,
    dual_bracket,
    poisson_map_defect,
    quadratic_bracket,
    symplectic_super,
)
from .rewriting import NCPolynomial, RewriteEngine, substitute_symbols, supercommutator
from .supercore import Parity, SuperAlgebra, SuperPolynomial, koszul

M, H = 0, 1


class UEASymbol(NamedTuple):
    kind: int  # M = 0 sorts before H = 1
    index: int


@dataclass(frozen=True)
class UEAAlphabet:
    """The symbols m_g, h_g over the generators of an algebra."""

    algebra: SuperAlgebra

    def parity(self, s) -> Parity:
        return self.algebra.parity(s[1])

    def label(self, s) -> str:
        return f"{'mh'[s[0]]}({self.algebra.generators[s[1]].name})"

    def __contains__(self, s) -> bool:
        return (
            isinstance(s, tuple)
            and len(s) == 2
            and s[0] in (M, H)
            and isinstance(s[1], int)
            and 0 <= s[1] < self.algebra.n
        )

    def m(self, name) -> UEASymbol:
        return UEASymbol(M, name if isinstance(name, int) else self.algebra.index(name))

    def h(self, name) -> UEASymbol:
        return UEASymbol(H, name if isinstance(name, int) else self.algebra.index(name))


def embed(p: SuperPolynomial, kind: int, alphabet: UEAAlphabet | None = None) -> NCPolynomial:
    """m(p) or h(p) as a combination of words in generator-level symbols.

    m is multiplicative, so a monomial becomes its factor word.  h obeys
    h(xy) = m(x)h(y) + (-1)^{|x||y|} m(y)h(x); unrolled, h(f1...fn) is
    sum_i (-1)^{|f_i|(|f_{i+1}|+...+|fn|)} m(f1..f^_i..fn) h_{f_i}.
    h of a scalar is 0: h(1) = h(1*1) = 2 m(1)h(1) = 2 h(1).
    """
    alg = p.algebra
    alphabet = alphabet or UEAAlphabet(alg)
    out: dict = {}

    def add(w, c):
        v = out.get(w, 0) + c
        if v:
            out[w] = v
        else:
            out.pop(w, None)

    for mono, c in p:
        fs = alg.factors(mono)
        if kind == M:
            add(tuple(UEASymbol(M, g) for g in fs), c)
            continue
        pars = [int(alg.parity(g)) for g in fs]
        for i, g in enumerate(fs):
            after = sum(pars[i + 1:]) % 2
            w = tuple(UEASymbol(M, f) for f in fs[:i] + fs[i + 1:]) + (UEASymbol(H, g),)
            add(w, c * koszul(pars[i], after))
    return NCPolynomial._raw(alphabet, out)


class PBWMonomial(NamedTuple):
    m: tuple
    h: tuple

    @property
    def degree(self) -> int:
        return sum(self.m) + sum(self.h)

    @property
    def m_degree(self) -> int:
        return sum(self.m)

    @property
    def h_degree(self) -> int:
        return sum(self.h)

    def word(self) -> tuple:
        w = []
        for i, e in enumerate(self.m):
            w.extend([UEASymbol(M, i)] * e)
        for i, e in enumerate(self.h):
            w.extend([UEASymbol(H, i)] * e)
        return tuple(w)

    def format(self, algebra: SuperAlgebra) -> str:
        parts = []
        for tag, exps in (("m", self.m), ("h", self.h)):
            for g, e in zip(algebra.generators, exps):
                if e:
                    parts.append(f"{tag}({g.name})" + (f"^{e}" if e > 1 else ""))
        return "".join(parts) or "1"


def pbw_sort_key(b: PBWMonomial):
    return (b.degree, tuple(-e for e in b.m + b.h))


def word_to_pbw(word, n: int) -> PBWMonomial:
    m, h = [0] * n, [0] * n
    for s in word:
        (m if s[0] == M else h)[s[1]] += 1
    return PBWMonomial(tuple(m), tuple(h))


class UEA(RewriteEngine):
    """U(R) for a bracket table, with normal forms on the PBW basis."""

    def __init__(self, table: BracketTable):
        super().__init__(UEAAlphabet(table.algebra))
        self.table = table
        self.algebra = table.algebra

    def commute(self, a, b):
        alg = self.algebra
        sign = koszul(alg.parity(a[1]), alg.parity(b[1]))
        if a[0] == H and b[0] == M:
            return sign, embed(self.table.gen_bracket(a[1], b[1]), M, self.alphabet)
        if a[0] == M:
            return sign, NCPolynomial.zero(self.alphabet)
        return sign, embed(self.table.gen_bracket(a[1], b[1]), H, self.alphabet)

    def square(self, a) -> NCPolynomial:
        if a[0] == M:
            return NCPolynomial.zero(self.alphabet)
        return embed(self.table.gen_bracket(a[1], a[1]), H, self.alphabet).scale(Fraction(1, 2))

    # constructors
    def _poly(self, x) -> SuperPolynomial:
        if isinstance(x, SuperPolynomial):
            return x
        if isinstance(x, (int, Fraction)):
            return self.algebra.const(x)
        return self.algebra.var(x)

    def m(self, x) -> NCPolynomial:
        return embed(self._poly(x), M, self.alphabet)

    def h(self, x) -> NCPolynomial:
        return embed(self._poly(x), H, self.alphabet)

    def one(self) -> NCPolynomial:
        return NCPolynomial.const(self.alphabet, 1)

    def to_pbw(self, p: NCPolynomial) -> dict:
        """Normal form as {PBWMonomial: coefficient}."""
        nf = self.normalize(p)
        return {word_to_pbw(w, self.algebra.n): c for w, c in nf}

    def from_pbw(self, terms: Mapping) -> NCPolynomial:
        return NCPolynomial(self.alphabet, {b.word(): c for b, c in terms.items()})

    def defining_relations(self, x: SuperPolynomial, y: SuperPolynomial) -> list:
        """The five relation families of U(R) evaluated at homogeneous x, y."""
        px, py = x.homogeneous_parity(), y.homogeneous_parity()
        s = koszul(px, py)
        m, h = self.m, self.h
        b = self.table(x, y)
        return [
            ("m(x)m(y) - m(xy)", m(x) * m(y) - m(x * y)),
            ("h(x)m(y) - s m(y)h(x) - m({x,y})", h(x) * m(y) - (m(y) * h(x)).scale(s) - m(b)),
            ("m(1) - 1", m(1) - self.one()),
            ("h(x)h(y) - s h(y)h(x) - h({x,y})", h(x) * h(y) - (h(y) * h(x)).scale(s) - h(b)),
            ("m(x)h(y) + s m(y)h(x) - h(xy)", m(x) * h(y) + (m(y) * h(x)).scale(s) - h(x * y)),
        ]


def normalize(T: BracketTable, p: NCPolynomial) -> dict:
    """Normal form of p in U(R) as {PBWMonomial: coefficient}."""
    return UEA(T).to_pbw(p)


def _exponent_vectors(algebra: SuperAlgebra, cap: int, total: bool):
    ranges = [range(min(cap, 1) + 1) if g.parity else range(cap + 1) for g in algebra.generators]
    for e in itertools.product(*ranges):
        if not total or sum(e) <= cap:
            yield e


def pbw_basis(algebra: SuperAlgebra, d_m: int, d_h: int, bound: str = "generator") -> list:
    """PBW monomials with bounded m- and h-parts, sorted by degree then lexicographically.

    ``bound="generator"`` caps every exponent separately (m-exponents by d_m,
    h-exponents by d_h); ``bound="total"`` caps the total m- and h-degrees.
    Odd generators always have exponent at most 1.
    """
    if bound not in ("generator", "total"):
        raise ValueError("bound must be 'generator' or 'total'")
    total = bound == "total"
    ms = list(_exponent_vectors(algebra, d_m, total))
    hs = list(_exponent_vectors(algebra, d_h, total))
    out = [PBWMonomial(m, h) for m in ms for h in hs]
    out.sort(key=pbw_sort_key)
    return out


def degree_basis(algebra: SuperAlgebra, d: int) -> list:
    """PBW monomials of total degree at most d."""
    return [b for b in pbw_basis(algebra, d, d) if b.degree <= d]


# ---------------------------------------------------------------------------
# Weyl superalgebras


X, Y = 0, 1


class WeylSymbol(NamedTuple):
    kind: int  # X = 0 sorts before Y = 1
    index: int


@dataclass(frozen=True)
class WeylAlphabet:
    """X_1..X_N, Y_1..Y_N; the first p of each are even, the last q odd."""

    p: int
    q: int

    @property
    def N(self) -> int:
        return self.p + self.q

    def parity(self, s) -> Parity:
        return Parity.ODD if s[1] >= self.p else Parity.EVEN

    def label(self, s) -> str:
        return f"{'XY'[s[0]]}{s[1] + 1}"

    def __contains__(self, s) -> bool:
        return (
            isinstance(s, tuple)
            and len(s) == 2
            and s[0] in (X, Y)
            and isinstance(s[1], int)
            and 0 <= s[1] < self.N
        )

    def symbol(self, label: str) -> WeylSymbol:
        label = label.strip()
        try:
            kind = "XY".index(label[0])
            i = int(label[1:]) - 1
        except (ValueError, IndexError):
            raise UnknownSymbolError(f"not a Weyl generator: {label!r}") from None
        s = WeylSymbol(kind, i)
        if s not in self:
            raise UnknownSymbolError(f"not a Weyl generator: {label!r}")
        return s

    def word(self, *labels) -> NCPolynomial:
        return NCPolynomial.word(self, [self.symbol(t) for t in labels])


class WeylRewriter(RewriteEngine):
    """C_{p|q}: [X_i, Y_j]_gr = delta_ij, [X_i, X_j]_gr = [Y_i, Y_j]_gr = 0."""

    def __init__(self, p: int, q: int):
        if p < 0 or q < 0 or p + q < 1:
            raise ValueError("Weyl superalgebra needs p, q >= 0 and p + q >= 1")
        super().__init__(WeylAlphabet(p, q))

    def commute(self, a, b):
        al = self.alphabet
        s = koszul(al.parity(a), al.parity(b))
        corr = NCPolynomial.zero(al)
        if a[0] == Y and b[0] == X and a[1] == b[1]:
            # X_i Y_i - s Y_i X_i = 1
            corr = NCPolynomial.const(al, -s)
        return s, corr

    def square(self, a) -> NCPolynomial:
        return NCPolynomial.zero(self.alphabet)

    def relations(self, include_diagonal: bool = False) -> list:
        """Defining supercommutators of C_{p|q}, labelled.

        All pairs [X_i, Y_j] are listed, and [X_i, X_j], [Y_i, Y_j] for i < j
        (i <= j with ``include_diagonal``).
        """
        al = self.alphabet
        N = al.N
        out = []
        xs = [NCPolynomial.word(al, [WeylSymbol(X, i)]) for i in range(N)]
        ys = [NCPolynomial.word(al, [WeylSymbol(Y, i)]) for i in range(N)]
        for i in range(N):
            for j in range(N):
                out.append((f"[X{i+1},Y{j+1}]", supercommutator(xs[i], ys[j]) - (1 if i == j else 0)))
        for kind, gens in (("X", xs), ("Y", ys)):
            for i in range(N):
                for j in range(i if include_diagonal else i + 1, N):
                    out.append((f"[{kind}{i+1},{kind}{j+1}]", supercommutator(gens[i], gens[j])))
        return out

    def basis(self, d: int) -> list:
        """Ordered monomials X^r Y^s of total degree at most d."""
        al = self.alphabet
        syms = [WeylSymbol(X, i) for i in range(al.N)] + [WeylSymbol(Y, i) for i in range(al.N)]
        ranges = [range(2) if al.parity(s) else range(d + 1) for s in syms]
        out = []
        for e in itertools.product(*ranges):
            if sum(e) <= d:
                out.append(tuple(s for s, k in zip(syms, e) for _ in range(k)))
        out.sort(key=lambda w: (len(w), tuple(-k for k in _counts(w, syms))))
        return out


def _counts(w, syms):
    return [w.count(s) for s in syms]


def weyl_normalize(p: int, q: int, w: NCPolynomial) -> NCPolynomial:
    return WeylRewriter(p, q).normalize(w)


@dataclass
class IsoReport:
    ok: bool
    relations_checked: int = 0
    failed_relation: str | None = None
    residual: object = None
    source_count: int = 0
    target_count: int = 0
    image_rank: int = 0
    notes: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "relations_checked": self.relations_checked,
            "failed_relation": self.failed_relation,
            "residual": None if self.residual is None else str(self.residual),
            "source_count": self.source_count,
            "target_count": self.target_count,
            "image_rank": self.image_rank,
            "notes": list(self.notes),
        }

    def __str__(self):
        if self.failed_relation:
            return f"FAIL relation {self.failed_relation} -> {self.residual}"
        status = "pass" if self.ok else "FAIL"
        return (
            f"{status}: {self.relations_checked} relations, basis {self.source_count} -> "
            f"{self.target_count}, image rank {self.image_rank}"
        )


def symplectic_weyl_map(n: int, table: BracketTable):
    """phi: C_{2n} -> U(P_n); X_i -> m_{x_i}, X_{i+n} -> m_{y_i}, Y_i -> h_{y_i}, Y_{i+n} -> h_{x_i}."""
    ua = UEAAlphabet(table.algebra)

    def image(s):
        i = s[1]
        if s[0] == X:
            sym = UEASymbol(M, i)  # x_i is generator i, y_i is generator n + i
        else:
            sym = UEASymbol(H, i + n if i < n else i - n)
        return NCPolynomial.word(ua, [sym])

    return image


def symplectic_iso_check(n: int, d: int, table: BracketTable | None = None) -> IsoReport:
    """Check that phi: C_{2n} -> U(P_n) kills the relations and matches bases up to degree d."""
    table = table or symplectic_super(n)
    weyl = WeylRewriter(0, 2 * n)
    U = UEA(table)
    image = symplectic_weyl_map(n, table)
    report = IsoReport(ok=True)
    for label, rel in weyl.relations(include_diagonal=True):
        nf = U.normalize(substitute_symbols(rel, image, U.alphabet))
        report.relations_checked += 1
        if nf:
            report.ok = False
            report.failed_relation = label
            report.residual = nf
            return report
    src = weyl.basis(d)
    tgt = degree_basis(table.algebra, d)
    report.source_count = len(src)
    report.target_count = len(tgt)
    space = RowSpace()
    tgt_words = {b.word() for b in tgt}
    for w in src:
        nf = U.normalize(substitute_symbols(NCPolynomial.word(weyl.alphabet, w), image, U.alphabet))
        if any(v not in tgt_words for v, _ in nf):
            report.ok = False
            report.notes.append(f"image of {w} leaves degree {d}")
        space.add(dict(nf.terms))
    report.image_rank = space.rank
    if not (len(src) == len(tgt) == space.rank):
        report.ok = False
    return report


# ---------------------------------------------------------------------------
# quadratic presentations


@dataclass(frozen=True)
class Relation:
    family: str
    indices: tuple
    poly: NCPolynomial

    def __str__(self):
        return f"{self.family}{tuple(i + 1 for i in self.indices)}: {self.poly}"


def present_quadratic(C: StructureConstants, names: Sequence[str] | None = None) -> list:
    """Generating relations of U(k[x_1..x_n]) for the quadratic bracket with constants C.

    Three families over all (i, j), as
    m_i m_j - m_j m_i,  h_i m_j - m_j h_i - sum C m_k m_l,
    h_i h_j - h_j h_i - sum C (m_k h_l + m_l h_k).  Zero relations are omitted.
    """
    T = quadratic_bracket(C, names)
    al = UEAAlphabet(T.algebra)
    n = C.n
    mm = [NCPolynomial.word(al, [UEASymbol(M, i)]) for i in range(n)]
    hh = [NCPolynomial.word(al, [UEASymbol(H, i)]) for i in range(n)]
    out = []
    for fam in ("mm", "hm", "hh"):
        for i in range(n):
            for j in range(n):
                if fam == "mm":
                    r = mm[i] * mm[j] - mm[j] * mm[i]
                elif fam == "hm":
                    r = hh[i] * mm[j] - mm[j] * hh[i]
                    for k, l in itertools.product(range(n), repeat=2):
                        r = r - (mm[k] * mm[l]).scale(C(i, j, k, l))
                else:
                    r = hh[i] * hh[j] - hh[j] * hh[i]
                    for k, l in itertools.product(range(n), repeat=2):
                        r = r - (mm[k] * hh[l] + mm[l] * hh[k]).scale(C(i, j, k, l))
                if r:
                    out.append(Relation(fam, (i, j), r))
    return out


def present_exterior(C: StructureConstants, names: Sequence[str] | None = None) -> list:
    """Generating relations of U(Lambda(t_1..t_n)) for the dual bracket.

    m_k m_l + m_l m_k,  h_k m_l + m_l h_k - sum C^{ij}_{kl} m_j m_i,
    h_k h_l + h_l h_k - sum C^{ij}_{kl} (m_j h_i - m_i h_j).  Zero relations are omitted.
    """
    T = dual_bracket(C, names)
    al = UEAAlphabet(T.algebra)
    n = C.n
    mm = [NCPolynomial.word(al, [UEASymbol(M, i)]) for i in range(n)]
    hh = [NCPolynomial.word(al, [UEASymbol(H, i)]) for i in range(n)]
    out = []
    for fam in ("mm", "hm", "hh"):
        for k in range(n):
            for l in range(n):
                if fam == "mm":
                    r = mm[k] * mm[l] + mm[l] * mm[k]
                elif fam == "hm":
                    r = hh[k] * mm[l] + mm[l] * hh[k]
                    for i, j in itertools.product(range(n), repeat=2):
                        r = r - (mm[j] * mm[i]).scale(C(i, j, k, l))
                else:
                    r = hh[k] * hh[l] + hh[l] * hh[k]
                    for i, j in itertools.product(range(n), repeat=2):
                        r = r - (mm[j] * hh[i] - mm[i] * hh[j]).scale(C(i, j, k, l))
                if r:
                    out.append(Relation(fam, (k, l), r))
    return out


def present_uea(T: BracketTable) -> list:
    """Generator-level relations of U(R) for any table, i <= j.

    [m_i, m_j]_gr, [h_i, m_j]_gr - m({g_i,g_j}) (all i, j), [h_i, h_j]_gr - h({g_i,g_j}).
    """
    U = UEA(T)
    n = T.algebra.n
    ms = [U.m(i_name) for i_name in T.algebra.names]
    hs = [U.h(i_name) for i_name in T.algebra.names]
    out = []
    for i in range(n):
        for j in range(i, n):
            r = supercommutator(ms[i], ms[j])
            if r:
                out.append(Relation("mm", (i, j), r))
    for i in range(n):
        for j in range(n):
            r = supercommutator(hs[i], ms[j]) - embed(T.gen_bracket(i, j), M, U.alphabet)
            if r:
                out.append(Relation("hm", (i, j), r))
    for i in range(n):
        for j in range(i, n):
            r = supercommutator(hs[i], hs[j]) - embed(T.gen_bracket(i, j), H, U.alphabet)
            if r:
                out.append(Relation("hh", (i, j), r))
    return out


@dataclass
class DualityReport:
    ok: bool
    quadratic_rank: int
    exterior_rank: int
    annihilator_dim: int
    pairing_defect: tuple | None = None

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "quadratic_rank": self.quadratic_rank,
            "exterior_rank": self.exterior_rank,
            "annihilator_dim": self.annihilator_dim,
        }


def _pair_vector(poly: NCPolynomial) -> dict:
    return {w: c for w, c in poly}


def _dual_coords(poly: NCPolynomial) -> dict:
    """Rewrite a degree-2 dual relation in the coordinates of the pairing."""
    return {tuple(UEASymbol(1 - s[0], s[1]) for s in w): c for w, c in poly}


def quadratic_duality_check(C: StructureConstants) -> DualityReport:
    """Is the exterior relation space the annihilator of the quadratic one?

    Dual generators cross over: m_{t_i} pairs with h_{x_i} and h_{t_i} with
    m_{x_i}, and <a (x) b, u (x) v> = <a, u><b, v> on degree-2 words.  (The
    same-letter pairing does not annihilate; the m-commutator would pair
    nontrivially with the symmetric m-part of the h-m relations.)
    """
    n = C.n
    quad = [_pair_vector(r.poly) for r in present_quadratic(C)]
    ext = [_dual_coords(r.poly) for r in present_exterior(C)]
    gens = [UEASymbol(k, i) for k in (M, H) for i in range(n)]
    coords = [(a, b) for a in gens for b in gens]
    qspace, espace = RowSpace(quad), RowSpace(ext)
    ann = annihilator(qspace.basis(), coords)
    defect = None
    for a in qspace.basis():
        for b in espace.basis():
            if sum(c * b.get(k, 0) for k, c in a.items()):
                defect = (a, b)
                break
        if defect:
            break
    ok = defect is None and espace.rank == len(ann)
    return DualityReport(ok, qspace.rank, espace.rank, len(ann), defect)


# ---------------------------------------------------------------------------
# opposite algebra and functoriality


def opposite_uea(p: NCPolynomial) -> NCPolynomial:
    """Image under U(R) -> U(R)^op: m_x -> m_x, h_x -> -h_x, words reversed.

    Reversing s1...sn in the super-opposite algebra costs
    (-1)^{sum_{i<j} |s_i||s_j|}.
    """
    al = p.alphabet
    out: dict = {}
    for w, c in p:
        pars = [int(al.parity(s)) for s in w]
        odd = sum(pars)
        sign = -1 if (odd * (odd - 1) // 2) % 2 else 1
        hcount = sum(1 for s in w if s[0] == H)
        if hcount % 2:
            sign = -sign
        out[tuple(reversed(w))] = out.get(tuple(reversed(w)), 0) + sign * c
    return NCPolynomial(al, out)


def uea_functor(
    phi: Mapping,
    source: BracketTable,
    target: BracketTable,
    p: NCPolynomial,
) -> NCPolynomial:
    """U(phi) for a Poisson map phi given on generator names; m_a -> m(phi a), h_a -> h(phi a)."""
    defect = poisson_map_defect(source, target, phi)
    if defect is not None:
        (a, b), residual = defect
        raise NotPoissonError(f"phi{{{a},{b}}} - {{phi {a}, phi {b}}} = {residual}")
    ta = UEAAlphabet(target.algebra)
    names = source.algebra.names

    def image(s):
        v = phi[names[s[1]]]
        if not isinstance(v, SuperPolynomial):
            v = target.algebra.const(v)
        return embed(v, s[0], ta)

    return substitute_symbols(p, image, ta)


def lift_relations(U: UEA, pairs: Sequence | None = None) -> list:
    """All five-family relations on generator pairs (for well-definedness checks)."""
    gens = U.algebra.vars()
    pairs = pairs or [(a, b) for a in range(U.algebra.n) for b in range(U.algebra.n)]
    out = []
    for i, j in pairs:
        for label, r in U.defining_relations(gens[i], gens[j]):
            out.append(((U.algebra.names[i], U.algebra.names[j]), label, r))
    return out
