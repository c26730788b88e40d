"""Poisson superalgebra structures given by bracket tables on generators.

A :class:`BracketTable` records ``{g_i, g_j}`` for generator pairs; every
other bracket follows from super-antisymmetry and the graded Leibniz rule.
The example families used throughout the package (symplectic, quadratic and
dual-quadratic, skew-symmetric mixed) are constructed here.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, Sequence

from .errors import AlgebraError, IncompleteTableError, InvalidConstantsError, ParityError
from .supercore import (
    SuperAlgebra,
    SuperPolynomial,
    Superderivation,
    apply_derivation,
    koszul,
)


class BracketTable:
    """Generator-level Poisson bracket on a :class:`SuperAlgebra`.

    ``entries`` maps generator pairs (names or indices) to polynomials.  Only
    one orientation of each pair is needed.  Supplying both orientations is
    allowed; :func:`verify_poisson` then checks that they agree under
    super-antisymmetry.  ``{g, g}`` is forced to zero for even ``g``; for odd
    ``g`` it is an input and defaults to zero with a warning when omitted.
    """

    def __init__(self, algebra: SuperAlgebra, entries: Mapping, *, default_diagonal=True):
        self.algebra = algebra
        raw = {}
        for (a, b), value in entries.items():
            i, j = self._idx(a), self._idx(b)
            if isinstance(value, (int, Fraction)):
                value = algebra.const(value)
            if value.algebra != algebra:
                raise AlgebraError(f"bracket value for ({a}, {b}) lives in another algebra")
            want = algebra.parity(i) + algebra.parity(j)
            if value and value.parity != want:
                raise ParityError(
                    f"{{{algebra.generators[i].name}, {algebra.generators[j].name}}} = {value} "
                    f"must be {want}"
                )
            if i == j and not algebra.parity(i) and value:
                raise AlgebraError(
                    f"{{{algebra.generators[i].name}, {algebra.generators[i].name}}} must vanish "
                    "for an even generator"
                )
            raw[(i, j)] = value
        defaulted = []
        if default_diagonal:
            for g in algebra.generators:
                if g.parity and (g.index, g.index) not in raw:
                    raw[(g.index, g.index)] = algebra.zero()
                    defaulted.append(g.name)
        if defaulted:
            warnings.warn(
                f"odd diagonal brackets defaulted to 0 for {defaulted}", stacklevel=2
            )
        self.defaulted_diagonals = tuple(defaulted)
        self._raw = raw
        full = {}
        for i in range(algebra.n):
            for j in range(algebra.n):
                v = self._resolve(i, j)
                if v is not None:
                    full[(i, j)] = v
        self._full = full
        self._adjoints: dict = {}
        self._gen_mono: dict = {}

    def _idx(self, a) -> int:
        return a if isinstance(a, int) else self.algebra.index(a)

    def _resolve(self, i, j):
        if (i, j) in self._raw:
            return self._raw[(i, j)]
        if (j, i) in self._raw:
            return self._raw[(j, i)].scale(-koszul(self.algebra.parity(i), self.algebra.parity(j)))
        if i == j and not self.algebra.parity(i):
            return self.algebra.zero()
        return None

    @property
    def raw_entries(self) -> Mapping:
        return MappingProxyType(self._raw)

    @property
    def entries(self) -> Mapping:
        """Canonical entries ``(i, j) -> {g_i, g_j}`` for ``i <= j``."""
        return MappingProxyType({k: v for k, v in self._full.items() if k[0] <= k[1]})

    def missing_pairs(self) -> list:
        n = self.algebra.n
        return [(i, j) for i in range(n) for j in range(i, n) if (i, j) not in self._full]

    def is_complete(self) -> bool:
        return not self.missing_pairs()

    def gen_bracket(self, i: int, j: int) -> SuperPolynomial:
        try:
            return self._full[(i, j)]
        except KeyError:
            g = self.algebra.generators
            raise IncompleteTableError(
                f"no bracket for ({g[i].name}, {g[j].name})"
            ) from None

    def __call__(self, a, b) -> SuperPolynomial:
        """Bracket of two generator names, or of two polynomials."""
        if isinstance(a, SuperPolynomial):
            return bracket(self, a, b)
        return self.gen_bracket(self._idx(a), self._idx(b))

    def with_entry(self, a, b, value) -> "BracketTable":
        """Copy with a raw entry set; the reverse orientation is kept as is."""
        entries = dict(self._raw)
        entries[(self._idx(a), self._idx(b))] = value
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return BracketTable(self.algebra, entries)

    def adjoint(self, i: int) -> Superderivation:
        """The superderivation {g_i, -} of parity |g_i| (cached; tables are immutable)."""
        if i not in self._adjoints:
            alg = self.algebra
            self._adjoints[i] = Superderivation(
                alg,
                alg.parity(i),
                {g.name: self.gen_bracket(i, g.index) for g in alg.generators},
            )
        return self._adjoints[i]

    def __eq__(self, other):
        if not isinstance(other, BracketTable):
            return NotImplemented
        return self.algebra == other.algebra and self._full == other._full

    __hash__ = None

    def __repr__(self):
        g = self.algebra.generators
        body = ", ".join(
            f"{{{g[i].name},{g[j].name}}}={v}" for (i, j), v in sorted(self.entries.items()) if v
        )
        return f"BracketTable({', '.join(self.algebra.names)}; {body})"


def trivial_bracket(algebra: SuperAlgebra) -> BracketTable:
    n = algebra.n
    return BracketTable(
        algebra, {(i, j): algebra.zero() for i in range(n) for j in range(i, n)}
    )


def _generator_bracket_with(T: BracketTable, i: int, v: tuple) -> SuperPolynomial:
    """{g_i, v} for a monomial v: Leibniz expansion in the second argument, memoised."""
    key = (i, v)
    hit = T._gen_mono.get(key)
    if hit is None:
        hit = apply_derivation(T.adjoint(i), T.algebra.monomial(v))
        T._gen_mono[key] = hit
    return hit


def bracket(T: BracketTable, p: SuperPolynomial, q: SuperPolynomial) -> SuperPolynomial:
    """Poisson bracket of two polynomials, extended from the generator table.

    The second argument is expanded by {x, yz} = (-1)^{|x||y|} y{x, z} + {x, y}z.
    The first uses the mirror rule {f1...fn, v} =
    sum_i (-1)^{|v|(|f_{i+1}|+...+|fn|)} f1...f_{i-1} {f_i, v} f_{i+1}...fn.
    """
    alg = T.algebra
    if p.algebra != alg or q.algebra != alg:
        raise AlgebraError("bracket arguments must live in the table's algebra")
    out = alg.zero()
    for v, cv in q:
        vpar = alg.monomial_parity(v)
        for u, cu in p:
            fs = alg.factors(u)
            for pos, g in enumerate(fs):
                inner = _generator_bracket_with(T, g, v)
                if not inner:
                    continue
                suffix_parity = sum(int(alg.parity(f)) for f in fs[pos + 1:]) % 2
                left = alg.monomial(_count(alg, fs[:pos]))
                right = alg.monomial(_count(alg, fs[pos + 1:]))
                term = left * inner * right
                out = out + term.scale(cu * cv * koszul(vpar, suffix_parity))
    return out


def _count(alg: SuperAlgebra, factors) -> tuple:
    e = [0] * alg.n
    for i in factors:
        e[i] += 1
    return tuple(e)


def jacobiator(T: BracketTable, x: SuperPolynomial, y: SuperPolynomial, z: SuperPolynomial):
    """(-1)^{|x||z|}{x,{y,z}} + (-1)^{|x||y|}{y,{z,x}} + (-1)^{|y||z|}{z,{x,y}}."""
    px, py, pz = x.homogeneous_parity(), y.homogeneous_parity(), z.homogeneous_parity()
    b = lambda a, c: bracket(T, a, c)  # noqa: E731
    return (
        b(x, b(y, z)).scale(koszul(px, pz))
        + b(y, b(z, x)).scale(koszul(px, py))
        + b(z, b(x, y)).scale(koszul(py, pz))
    )


@dataclass
class PoissonReport:
    ok: bool
    kind: str | None = None  # "incomplete" | "antisymmetry" | "jacobi"
    generators: tuple = ()
    residual: SuperPolynomial | None = None
    checked: int = 0
    warnings: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "failure": self.kind,
            "generators": list(self.generators),
            "residual": None if self.residual is None else str(self.residual),
            "checked": self.checked,
            "warnings": list(self.warnings),
        }

    def __str__(self):
        if self.ok:
            return f"poisson: pass ({self.checked} checks)"
        return (
            f"poisson: FAIL {self.kind} at ({', '.join(self.generators)}), "
            f"residual {self.residual}"
        )


def verify_poisson(T: BracketTable) -> PoissonReport:
    """Check super-antisymmetry of the table and super Jacobi on generator triples.

    Triples are scanned in lexicographic index order and the first failure is
    reported.  Generator triples suffice because the Leibniz extension makes
    the Jacobiator a derivation in each argument.
    """
    alg = T.algebra
    names = alg.names
    notes = [f"odd diagonal {{{g},{g}}} defaulted to 0" for g in T.defaulted_diagonals]
    missing = T.missing_pairs()
    if missing:
        i, j = missing[0]
        return PoissonReport(False, "incomplete", (names[i], names[j]), warnings=notes)
    checked = 0
    raw = T.raw_entries
    for i in range(alg.n):
        for j in range(i, alg.n):
            if (i, j) in raw and (j, i) in raw and i != j:
                s = koszul(alg.parity(i), alg.parity(j))
                residual = raw[(i, j)] + raw[(j, i)].scale(s)
                checked += 1
                if residual:
                    return PoissonReport(
                        False, "antisymmetry", (names[i], names[j]), residual, checked, notes
                    )
    gens = alg.vars()
    for i, j, k in itertools.product(range(alg.n), repeat=3):
        residual = jacobiator(T, gens[i], gens[j], gens[k])
        checked += 1
        if residual:
            return PoissonReport(
                False, "jacobi", (names[i], names[j], names[k]), residual, checked, notes
            )
    return PoissonReport(True, checked=checked, warnings=notes)


# ---------------------------------------------------------------------------
# example families


def symplectic_super(n: int) -> BracketTable:
    """Exterior algebra on odd x1..xn, y1..yn with {x_i, y_j} = delta_ij = {y_j, x_i}."""
    if n < 1:
        raise ValueError("symplectic superalgebra needs n >= 1")
    alg = SuperAlgebra.of(
        *[(f"x{i}", "odd") for i in range(1, n + 1)],
        *[(f"y{i}", "odd") for i in range(1, n + 1)],
    )
    entries = {}
    for a in range(2 * n):
        for b in range(a, 2 * n):
            value = 1 if (a < n <= b and b - n == a) else 0
            entries[(a, b)] = alg.const(value)
    return BracketTable(alg, entries)


@dataclass(frozen=True)
class StructureConstants:
    """Scalars C[i, j, k, l] (0-based) with C^{ij}_{kl} = C^{ij}_{lk} = -C^{ji}_{lk} = -C^{ji}_{kl}.

    Validation happens at construction.
    """

    n: int
    C: Mapping

    def __post_init__(self):
        clean = {}
        for key, v in dict(self.C).items():
            if len(key) != 4 or any(not 0 <= t < self.n for t in key):
                raise InvalidConstantsError(f"index {key} out of range for n={self.n}")
            v = Fraction(v)
            if v:
                clean[tuple(key)] = v
        object.__setattr__(self, "C", MappingProxyType(clean))
        for (i, j, k, l) in clean:
            c = self(i, j, k, l)
            if self(i, j, l, k) != c:
                raise InvalidConstantsError(
                    f"C^{{{i+1}{j+1}}}_{{{k+1}{l+1}}} = C^{{ij}}_{{lk}} violated"
                )
            if self(j, i, l, k) != -c:
                raise InvalidConstantsError(
                    f"C^{{{i+1}{j+1}}}_{{{k+1}{l+1}}} = -C^{{ji}}_{{lk}} violated"
                )
            if self(j, i, k, l) != -c:
                raise InvalidConstantsError(
                    f"C^{{{i+1}{j+1}}}_{{{k+1}{l+1}}} = -C^{{ji}}_{{kl}} violated"
                )

    def __call__(self, i, j, k, l) -> Fraction:
        return self.C.get((i, j, k, l), Fraction(0))

    @classmethod
    def from_skew(cls, lam: Sequence[Sequence]) -> "StructureConstants":
        """Constants of {x_i, x_j} = lam_ij x_i x_j."""
        _check_skew(lam, "lambda")
        n = len(lam)
        C = {}
        for i in range(n):
            for j in range(n):
                if i != j and lam[i][j]:
                    half = Fraction(lam[i][j]) / 2
                    C[(i, j, i, j)] = half
                    C[(i, j, j, i)] = half
        return cls(n, C)

    @classmethod
    def from_quadratic_table(cls, T: BracketTable) -> "StructureConstants":
        """Recover C from a quadratic bracket on an all-even algebra."""
        alg = T.algebra
        n = alg.n
        if any(g.parity for g in alg.generators):
            raise InvalidConstantsError("quadratic brackets live on all-even algebras")
        C = {}
        for i in range(n):
            for j in range(n):
                for mono, c in T.gen_bracket(i, j):
                    if sum(mono) != 2:
                        raise InvalidConstantsError(
                            f"{{{alg.names[i]},{alg.names[j]}}} is not homogeneous quadratic"
                        )
                    fs = alg.factors(mono)
                    k, l = fs
                    if k == l:
                        C[(i, j, k, k)] = c
                    else:
                        C[(i, j, k, l)] = c / 2
                        C[(i, j, l, k)] = c / 2
        return cls(n, C)

    @classmethod
    def from_dual_table(cls, T: BracketTable) -> "StructureConstants":
        """Recover C from a dual bracket {t_k, t_l} = sum C^{ij}_{kl} t_j t_i."""
        alg = T.algebra
        n = alg.n
        if any(not g.parity for g in alg.generators):
            raise InvalidConstantsError("dual brackets live on all-odd algebras")
        C = {}
        for k in range(n):
            for l in range(n):
                for mono, c in T.gen_bracket(k, l):
                    if sum(mono) != 2:
                        raise InvalidConstantsError(
                            f"{{{alg.names[k]},{alg.names[l]}}} is not homogeneous quadratic"
                        )
                    a, b = alg.factors(mono)  # a < b; t_a t_b = -t_b t_a
                    C[(a, b, k, l)] = -c / 2
                    C[(b, a, k, l)] = c / 2
        return cls(n, C)


def _check_skew(m, label):
    n = len(m)
    for i in range(n):
        if len(m[i]) != n:
            raise InvalidConstantsError(f"{label} must be square")
        for j in range(n):
            if Fraction(m[i][j]) != -Fraction(m[j][i]):
                raise InvalidConstantsError(f"{label} is not skew-symmetric at ({i+1},{j+1})")


def quadratic_bracket(C: StructureConstants, names: Sequence[str] | None = None) -> BracketTable:
    """k[x1..xn], all even, with {x_i, x_j} = sum_{k,l} C^{ij}_{kl} x_k x_l."""
    names = list(names or [f"x{i}" for i in range(1, C.n + 1)])
    alg = SuperAlgebra.of(*[(nm, "even") for nm in names])
    xs = alg.vars()
    entries = {}
    for i in range(C.n):
        for j in range(i, C.n):
            v = alg.zero()
            for k in range(C.n):
                for l in range(C.n):
                    c = C(i, j, k, l)
                    if c:
                        v = v + (xs[k] * xs[l]).scale(c)
            entries[(i, j)] = v
    return BracketTable(alg, entries)


def dual_bracket(C: StructureConstants, names: Sequence[str] | None = None) -> BracketTable:
    """Lambda(t1..tn), all odd, with {t_k, t_l} = sum_{i,j} C^{ij}_{kl} t_j t_i.

    Note the reversed order t_j t_i of the product.
    """
    names = list(names or [f"t{i}" for i in range(1, C.n + 1)])
    alg = SuperAlgebra.of(*[(nm, "odd") for nm in names])
    ts = alg.vars()
    entries = {}
    for k in range(C.n):
        for l in range(k, C.n):
            v = alg.zero()
            for i in range(C.n):
                for j in range(C.n):
                    c = C(i, j, k, l)
                    if c:
                        v = v + (ts[j] * ts[i]).scale(c)
            entries[(k, l)] = v
    return BracketTable(alg, entries)


def skew_super_bracket(
    lam: Sequence[Sequence],
    mu: Sequence[Sequence],
    xi: Sequence[Sequence],
    x_names: Sequence[str] | None = None,
    y_names: Sequence[str] | None = None,
) -> BracketTable:
    """k[x1..xn | y1..ym] with {x_i,x_j} = lam_ij x_i x_j, {y_i,y_j} = mu_ij y_i y_j,
    {x_i,y_j} = xi_ij x_i y_j."""
    _check_skew(lam, "lambda")
    _check_skew(mu, "mu")
    n, m = len(lam), len(mu)
    if n and (len(xi) != n or any(len(row) != m for row in xi)):
        raise InvalidConstantsError("xi must be n x m")
    x_names = list(x_names or [f"x{i}" for i in range(1, n + 1)])
    y_names = list(y_names or [f"y{j}" for j in range(1, m + 1)])
    alg = SuperAlgebra.of(*[(s, "even") for s in x_names], *[(s, "odd") for s in y_names])
    xs, ys = alg.vars()[:n], alg.vars()[n:]
    entries = {}
    for i in range(n):
        for j in range(i, n):
            entries[(i, j)] = (xs[i] * xs[j]).scale(lam[i][j])
        for j in range(m):
            entries[(i, n + j)] = (xs[i] * ys[j]).scale(xi[i][j])
    for i in range(m):
        for j in range(i, m):
            entries[(n + i, n + j)] = (ys[i] * ys[j]).scale(mu[i][j])
    return BracketTable(alg, entries)


def matrix_coordinate_bracket() -> BracketTable:
    """Standard quadratic bracket on O(M_2) = k[a, b, c, d]."""
    alg = SuperAlgebra.of(("a", "even"), ("b", "even"), ("c", "even"), ("d", "even"))
    a, b, c, d = alg.vars()
    z = alg.zero()
    return BracketTable(
        alg,
        {
            ("a", "a"): z, ("b", "b"): z, ("c", "c"): z, ("d", "d"): z,
            ("a", "b"): a * b, ("a", "c"): a * c, ("a", "d"): (b * c).scale(2),
            ("b", "c"): z, ("b", "d"): b * d, ("c", "d"): c * d,
        },
    )


def poisson_map_defect(
    source: BracketTable, target: BracketTable, images: Mapping, anti: bool = False
):
    """First generator pair (a, b) where phi{a,b} != +-{phi a, phi b}, with residual.

    Returns None when the map is a super Poisson (anti-)homomorphism on generators.
    """
    from .supercore import substitute

    sign = -1 if anti else 1
    alg = source.algebra
    imgs = {name: images[name] for name in alg.names}
    for i in range(alg.n):
        for j in range(alg.n):
            lhs = substitute(source.gen_bracket(i, j), imgs, target.algebra)
            rhs = bracket(target, _as_poly(imgs[alg.names[i]], target), _as_poly(imgs[alg.names[j]], target))
            residual = lhs - rhs.scale(sign)
            if residual:
                return (alg.names[i], alg.names[j]), residual
    return None


def _as_poly(v, T: BracketTable) -> SuperPolynomial:
    if isinstance(v, (int, Fraction)):
        return T.algebra.const(v)
    return v
