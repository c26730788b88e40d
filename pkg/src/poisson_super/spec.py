"""Line-oriented text format for Poisson superalgebras and their extra data.

::

    # comment
    name = P1
    [generators]
    x1 = odd
    y1 = odd
    [bracket]
    {x1, y1} = 1
    [hopf]
    delta x1 = x1 @ 1 + 1 @ x1
    epsilon x1 = 0
    antipode x1 = -x1
    [ore]
    var = x2
    position = 0
    alpha x1 = 2*x1
    delta x1 = 0

Every line stands alone, so diagnostics cite one line and column.  Several
``[ore]`` sections form a tower: each one's images live in the algebra
extended by all earlier sections.  Bracket pairs not listed are zero.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field

from .errors import SpecError
from .expr import parse_poly, parse_tensor
from .poisson import BracketTable
from .supercore import Parity, SuperAlgebra, SuperPolynomial

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_PAIR = re.compile(r"\{?\s*([^,{}\s]+)\s*,\s*([^,{}\s]+)\s*\}?$")
SECTIONS = ("generators", "bracket", "hopf", "ore")


@dataclass
class OreSpec:
    var: str = ""
    position: int | None = None
    alpha: dict = field(default_factory=dict)  # generator -> expression text
    delta: dict = field(default_factory=dict)
    line: int = field(default=0, compare=False)


@dataclass
class HopfSpec:
    delta: dict = field(default_factory=dict)
    epsilon: dict = field(default_factory=dict)
    antipode: dict = field(default_factory=dict)


@dataclass
class AlgebraSpec:
    name: str = ""
    generators: list = field(default_factory=list)  # (name, Parity)
    bracket: list = field(default_factory=list)  # (a, b, expression text)
    hopf: HopfSpec | None = None
    ore: list = field(default_factory=list)  # OreSpec per tower stage

    # ---- construction
    def algebra(self) -> SuperAlgebra:
        return SuperAlgebra.of(*self.generators)

    def table(self) -> BracketTable:
        """Bracket table; unlisted pairs (including odd diagonals) are zero."""
        alg = self.algebra()
        n = alg.n
        entries = {(i, j): alg.zero() for i in range(n) for j in range(i, n)}
        for a, b, text in self.bracket:
            i, j = alg.index(a), alg.index(b)
            entries.pop((min(i, j), max(i, j)), None)
            entries[(i, j)] = parse_poly(text, alg)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return BracketTable(alg, entries)

    def stage_algebra(self, k: int) -> SuperAlgebra:
        """Algebra after the first k Ore stages."""
        specs = list(self.generators)
        for st in self.ore[:k]:
            pos = len(specs) if st.position is None else st.position
            specs.insert(pos, (st.var, Parity.EVEN))
        return SuperAlgebra.of(*specs)

    def hopf_values(self) -> tuple:
        """(delta, epsilon, antipode) dicts of parsed values, or None without a [hopf] section."""
        if self.hopf is None:
            return None
        alg = self.algebra()
        delta = {g: parse_tensor(t, alg) for g, t in self.hopf.delta.items()}
        eps = {g: parse_poly(t, SuperAlgebra.of()).constant_term() for g, t in self.hopf.epsilon.items()}
        anti = {g: parse_poly(t, alg) for g, t in self.hopf.antipode.items()}
        return delta, eps, anti

    # ---- printing
    def to_text(self) -> str:
        lines = []
        if self.name:
            lines.append(f"name = {self.name}")
        lines.append("[generators]")
        lines += [f"{n} = {p}" for n, p in self.generators]
        lines.append("[bracket]")
        lines += [f"{{{a}, {b}}} = {t}" for a, b, t in self.bracket]
        if self.hopf is not None:
            lines.append("[hopf]")
            for label in ("delta", "epsilon", "antipode"):
                lines += [f"{label} {g} = {t}" for g, t in getattr(self.hopf, label).items()]
        for st in self.ore:
            lines.append("[ore]")
            lines.append(f"var = {st.var}")
            if st.position is not None:
                lines.append(f"position = {st.position}")
            lines += [f"alpha {g} = {t}" for g, t in st.alpha.items()]
            lines += [f"delta {g} = {t}" for g, t in st.delta.items()]
        return "\n".join(lines) + "\n"


def spec_from_table(T: BracketTable, name: str = "") -> AlgebraSpec:
    """Spec listing every nonzero canonical entry of a table."""
    alg = T.algebra
    gens = [(g.name, g.parity) for g in alg.generators]
    br = [(alg.names[i], alg.names[j], str(v)) for (i, j), v in sorted(T.entries.items()) if v]
    return AlgebraSpec(name, gens, br)


def _split(line: str, lineno: int):
    if "=" not in line:
        raise SpecError("expected 'key = value'", lineno, 1)
    key, _, value = line.partition("=")
    vcol = len(key) + 2 + (len(value) - len(value.lstrip()))
    return key.strip(), value.strip(), vcol


def _poly_at(text: str, alg: SuperAlgebra, lineno: int, col: int) -> SuperPolynomial:
    try:
        return parse_poly(text, alg)
    except SpecError as e:
        raise e.at_line(lineno, col - 1) from None


def parse_spec(document: str) -> AlgebraSpec:
    """Parse and validate a spec document; errors are :class:`SpecError` with line/column."""
    spec = AlgebraSpec()
    section = None
    seen_pairs: dict = {}
    seen_names: set = set()
    alg = None
    opened: set = set()
    for lineno, raw in enumerate(document.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        line = line.strip()
        if line.startswith("["):
            if not line.endswith("]") or line[1:-1].strip() not in SECTIONS:
                raise SpecError(f"unknown section {line}; expected one of {', '.join(SECTIONS)}", lineno, indent + 1)
            new = line[1:-1].strip()
            if new != "ore" and new in opened:
                raise SpecError(f"section [{new}] appears twice", lineno, indent + 1)
            opened.add(new)
            if new in ("bracket", "hopf", "ore") and alg is None:
                alg = spec.algebra()
            if new == "hopf":
                spec.hopf = HopfSpec()
            if new == "ore":
                if spec.ore and not spec.ore[-1].var:
                    raise SpecError("previous [ore] section has no var", spec.ore[-1].line, 1)
                spec.ore.append(OreSpec(line=lineno))
            section = new
            continue
        key, value, vcol = _split(line, lineno)
        vcol += indent
        if section is None:
            if key != "name":
                raise SpecError(f"unexpected key {key!r} before any section", lineno, indent + 1)
            spec.name = value
        elif section == "generators":
            if alg is not None:
                raise SpecError("generators must be declared before other sections", lineno, indent + 1)
            if not _NAME.match(key):
                raise SpecError(f"invalid generator name {key!r}", lineno, indent + 1)
            if key in seen_names or key in ("m", "h"):
                raise SpecError(f"duplicate or reserved generator name {key!r}", lineno, indent + 1)
            try:
                par = Parity.parse(value)
            except ValueError as e:
                raise SpecError(str(e), lineno, vcol) from None
            seen_names.add(key)
            spec.generators.append((key, par))
        elif section == "bracket":
            m = _PAIR.match(key)
            if not m:
                raise SpecError("expected '{a, b} = value'", lineno, indent + 1)
            a, b = m.groups()
            for g in (a, b):
                if g not in alg:
                    raise SpecError(f"unknown generator {g!r}", lineno, indent + 1 + key.index(g))
            pair = frozenset((a, b))
            if pair in seen_pairs:
                raise SpecError(f"duplicate bracket entry for {{{a}, {b}}} (first on line {seen_pairs[pair]})", lineno, indent + 1)
            seen_pairs[pair] = lineno
            p = _poly_at(value, alg, lineno, vcol)
            want = alg.gen(a).parity + alg.gen(b).parity
            if p and p.parity != want:
                raise SpecError(f"{{{a}, {b}}} = {p} must be {want}", lineno, vcol)
            if a == b and not alg.gen(a).parity and p:
                raise SpecError(f"{{{a}, {a}}} must vanish for an even generator", lineno, vcol)
            spec.bracket.append((a, b, value))
        elif section == "hopf":
            label, _, g = key.partition(" ")
            g = g.strip()
            if label not in ("delta", "epsilon", "antipode"):
                raise SpecError("expected 'delta g', 'epsilon g' or 'antipode g'", lineno, indent + 1)
            if g not in alg:
                raise SpecError(f"unknown generator {g!r}", lineno, indent + 1 + key.index(g) if g else indent + 1)
            store = getattr(spec.hopf, label)
            if g in store:
                raise SpecError(f"duplicate {label} value for {g}", lineno, indent + 1)
            try:
                if label == "delta":
                    parse_tensor(value, alg)
                elif label == "epsilon":
                    parse_poly(value, SuperAlgebra.of())
                else:
                    p = parse_poly(value, alg)
                    if p and p.parity != alg.gen(g).parity:
                        raise SpecError(f"antipode of {g} must be {alg.gen(g).parity}", column=1)
            except SpecError as e:
                raise e.at_line(lineno, vcol - 1) from None
            store[g] = value
        elif section == "ore":
            st = spec.ore[-1]
            if key == "var":
                if st.var:
                    raise SpecError("var given twice", lineno, indent + 1)
                if not _NAME.match(value):
                    raise SpecError(f"invalid variable name {value!r}", lineno, vcol)
                if value in spec.stage_algebra(len(spec.ore) - 1):
                    raise SpecError(f"variable name {value!r} already used", lineno, vcol)
                st.var = value
            elif key == "position":
                if not value.isdigit():
                    raise SpecError("position must be a non-negative integer", lineno, vcol)
                pos = int(value)
                if pos > spec.stage_algebra(len(spec.ore) - 1).n:
                    raise SpecError("position out of range", lineno, vcol)
                st.position = pos
            else:
                label, _, g = key.partition(" ")
                g = g.strip()
                if label not in ("alpha", "delta"):
                    raise SpecError("expected var, position, 'alpha g' or 'delta g'", lineno, indent + 1)
                base = spec.stage_algebra(len(spec.ore) - 1)
                if g not in base:
                    raise SpecError(f"unknown generator {g!r}", lineno, indent + 1)
                store = st.alpha if label == "alpha" else st.delta
                if g in store:
                    raise SpecError(f"duplicate {label} value for {g}", lineno, indent + 1)
                p = _poly_at(value, base, lineno, vcol)
                if p and p.parity != base.gen(g).parity:
                    raise SpecError(f"{label}({g}) must be {base.gen(g).parity} (even derivation)", lineno, vcol)
                store[g] = value
    if spec.ore and not spec.ore[-1].var:
        raise SpecError("[ore] section has no var", spec.ore[-1].line, 1)
    return spec


def load_spec(path) -> AlgebraSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read())

