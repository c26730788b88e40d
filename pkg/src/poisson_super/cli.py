"""Command line front end: ``poissonsuper COMMAND [SPEC] [options]``.

Exit codes: 0 when every check passes, 1 on a mathematical failure, 2 on
bad input.  Reports go to stdout, diagnostics to stderr.  Output is
deterministic: terms are listed by degree (highest first) and then in
generator order, with rationals printed as p/q in lowest terms.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .errors import AlgebraError, NotPoissonError, SpecError
from .expr import parse_poly, parse_uea
from .hopf import HopfData, check_hopf_axioms, primitive_hopf, relation_images
from .kahler import lr_check, supersymmetric_count
from .ore import OreData, extend_ore, phi_iso_check, validate_ore
from .poisson import StructureConstants, verify_poisson
from .spec import AlgebraSpec, load_spec, spec_from_table
from .uea import (
    UEA,
    WeylRewriter,
    pbw_basis,
    present_exterior,
    present_quadratic,
    present_uea,
    symplectic_iso_check,
    word_to_pbw,
)

OK, FAIL, INPUT = 0, 1, 2


class Outcome:
    """Collected report lines, JSON payload and exit code of one command."""

    def __init__(self):
        self.lines: list = []
        self.data: dict = {}
        self.code = OK

    def say(self, text: str = ""):
        self.lines.append(text)

    def fail(self):
        self.code = FAIL


# ---------------------------------------------------------------------------
# formatting


def format_coeff(c) -> str:
    return str(Fraction(c))


def format_terms(terms) -> str:
    """terms: ordered (coefficient, label) pairs; an empty label is a constant."""
    if not terms:
        return "0"
    out = []
    for k, (c, label) in enumerate(terms):
        c = Fraction(c)
        if k == 0:
            out.append(format_coeff(c) + (f" {label}" if label else ""))
        else:
            sign = " - " if c < 0 else " + "
            out.append(sign + format_coeff(abs(c)) + (f" {label}" if label else ""))
    return "".join(out)


def nc_terms(p) -> list:
    """(coefficient, word label) ordered by word length descending, then symbol order."""
    items = sorted(p.terms.items(), key=lambda t: (-len(t[0]), t[0]))
    return [(c, p.format_word(w) if w else "") for w, c in items]


def format_nc(p) -> str:
    return format_terms(nc_terms(p))


def format_pbw(p, alg) -> str:
    """Normal form with exponents, e.g. ``-2 m(x1)^2h(x2) + 1``."""
    items = sorted(p.terms.items(), key=lambda t: (-len(t[0]), t[0]))
    terms = []
    for w, c in items:
        b = word_to_pbw(w, alg.n)
        terms.append((c, b.format(alg) if w else ""))
    return format_terms(terms)


def pbw_json(p, n: int) -> list:
    items = sorted(p.terms.items(), key=lambda t: (-len(t[0]), t[0]))
    out = []
    for w, c in items:
        b = word_to_pbw(w, n)
        out.append({"coeff": format_coeff(c), "m": list(b.m), "h": list(b.h)})
    return out


# ---------------------------------------------------------------------------
# commands


def cmd_check(spec: AlgebraSpec, args, out: Outcome):
    rep = verify_poisson(spec.table())
    out.say(str(rep))
    out.data = rep.to_dict()
    if not rep:
        out.fail()


def cmd_normalize(spec: AlgebraSpec, args, out: Outcome):
    U = UEA(spec.table())
    try:
        p = parse_uea(args.expr, U)
    except SpecError as e:
        raise SpecError(f"in expression: {e.message}", column=e.column) from None
    nf = U.normalize(p)
    out.say(format_pbw(nf, U.algebra))
    out.data = {"input": args.expr, "terms": pbw_json(nf, U.algebra.n)}


def cmd_basis(spec: AlgebraSpec, args, out: Outcome):
    alg = spec.algebra()
    basis = pbw_basis(alg, args.dm, args.dh, bound=args.bound)
    out.say(f"count {len(basis)}")
    if args.dm == args.dh and args.bound == "generator":
        sym = supersymmetric_count(alg, args.dm, args.dh)
        out.say(f"supersymmetric count {sym}")
        out.data["supersymmetric_count"] = sym
    for b in basis:
        out.say(b.format(alg))
    out.data.update({"count": len(basis), "basis": [{"m": list(b.m), "h": list(b.h)} for b in basis]})


def _constants(spec: AlgebraSpec):
    T = spec.table()
    alg = T.algebra
    if alg.n and all(not g.parity for g in alg.generators):
        return StructureConstants.from_quadratic_table(T), "quadratic"
    if alg.n and all(g.parity for g in alg.generators):
        return StructureConstants.from_dual_table(T), "exterior"
    raise SpecError("quadratic/exterior presentations need an all-even or all-odd algebra")


def cmd_present(spec: AlgebraSpec, args, out: Outcome):
    if args.kind == "uea":
        rels = present_uea(spec.table())
    else:
        C, native = _constants(spec)
        names = spec.algebra().names if native == args.kind else None
        rels = (present_quadratic if args.kind == "quadratic" else present_exterior)(C, names)
    out.say(f"relations {len(rels)}")
    for r in rels:
        idx = ",".join(str(i + 1) for i in r.indices)
        out.say(f"{r.family}({idx}): {format_nc(r.poly)}")
    out.data = {
        "kind": args.kind,
        "relations": [
            {"family": r.family, "indices": [i + 1 for i in r.indices], "poly": format_nc(r.poly)} for r in rels
        ],
    }


def cmd_weyl(spec, args, out: Outcome):
    n = args.check_symplectic
    p, q = args.p, args.q
    if n is not None:
        p = 0 if p is None else p
        q = 2 * n if q is None else q
        if (p, q) != (0, 2 * n):
            raise SpecError(f"--check-symplectic {n} compares with C(0|{2 * n})")
    if p is None or q is None:
        raise SpecError("give --p and --q, or --check-symplectic N")
    try:
        W = WeylRewriter(p, q)
    except ValueError as e:
        raise SpecError(str(e)) from None
    rels = W.relations()
    basis = W.basis(args.degree)
    out.say(f"weyl C({p}|{q}): {len(rels)} relations, {len(basis)} normal forms of degree <= {args.degree}")
    out.data = {"p": p, "q": q, "relations": len(rels), "basis": len(basis)}
    if n is not None:
        rep = symplectic_iso_check(n, args.degree)
        out.say(f"symplectic {n}: {rep}")
        out.data["symplectic"] = rep.to_dict()
        if not rep:
            out.fail()


def cmd_hopf_check(spec: AlgebraSpec, args, out: Outcome):
    T = spec.table()
    try:
        if spec.hopf is None:
            Hd = primitive_hopf(T)
            out.say("no [hopf] section: primitive coproduct")
        else:
            Hd = HopfData(T, *spec.hopf_values())
    except NotPoissonError as e:
        out.say(f"hopf: FAIL structure maps are not Poisson: {e}")
        out.data = {"ok": False, "failure": ["poisson", str(e)]}
        out.fail()
        return
    rep = check_hopf_axioms(Hd, args.degree)
    out.say(str(rep))
    out.data = rep.to_dict()
    if not rep:
        out.fail()
        return
    bad = None
    for pair, label, cop, cou, anti in relation_images(Hd):
        if cop or cou or anti:
            bad = (pair, label)
            break
    if bad:
        out.say(f"relations: FAIL {bad[1]} at {bad[0]} is not preserved")
        out.data["relations_ok"] = False
        out.fail()
    else:
        out.say("relations: pass")
        out.data["relations_ok"] = True


def _tower(spec: AlgebraSpec, out: Outcome):
    """Validate the Ore stages in order; returns (validated OreData list, final table or None)."""
    if not spec.ore:
        raise SpecError("spec has no [ore] section")
    T = spec.table()
    stages = []
    for k, st in enumerate(spec.ore):
        alg = T.algebra
        alpha = {g: parse_poly(t, alg) for g, t in st.alpha.items()}
        delta = {g: parse_poly(t, alg) for g, t in st.delta.items()}
        O = OreData.from_images(T, alpha, delta, st.var, st.position)
        rep = validate_ore(O)
        out.say(f"stage {k + 1} ({st.var}): {rep}")
        out.data.setdefault("stages", []).append({"var": st.var, **rep.to_dict()})
        if not rep:
            out.fail()
            return stages, None
        stages.append(O)
        T = extend_ore(O)
    return stages, T


def cmd_ore_validate(spec: AlgebraSpec, args, out: Outcome):
    _tower(spec, out)


def cmd_ore_extend(spec: AlgebraSpec, args, out: Outcome):
    quiet = Outcome()
    _, T = _tower(spec, quiet)
    if T is None:
        out.lines += quiet.lines
        out.data = quiet.data
        out.fail()
        return
    rep = verify_poisson(T)
    text = spec_from_table(T, spec.name).to_text().rstrip("\n")
    out.say(text)
    out.data = {"spec": text, "poisson": rep.to_dict()}
    if not rep:
        out.say(f"# {rep}")
        out.fail()


def cmd_ore_iso(spec: AlgebraSpec, args, out: Outcome):
    stages, _ = _tower(spec, out)
    if out.code:
        return
    for k, O in enumerate(stages):
        rep = phi_iso_check(O, args.degree)
        out.say(f"stage {k + 1} ({O.var}): {rep}")
        out.data["stages"][k]["phi"] = rep.to_dict()
        if not rep:
            out.fail()
            return


def cmd_kahler_check(spec: AlgebraSpec, args, out: Outcome):
    T = spec.table()
    rep = lr_check(T, args.pairs, args.triples)
    out.say(str(rep))
    out.data = rep.to_dict()
    if not rep:
        out.fail()
        return
    alg = T.algebra
    d = args.degree
    count = len(pbw_basis(alg, d, d))
    sym = supersymmetric_count(alg, d, d)
    ok = count == sym
    out.say(f"pbw {count} vs supersymmetric {sym}: {'pass' if ok else 'FAIL'}")
    out.data["pbw_count"] = count
    out.data["supersymmetric_count"] = sym
    if not ok:
        out.fail()


COMMANDS = {
    "check": (cmd_check, "verify the Poisson superalgebra axioms"),
    "normalize": (cmd_normalize, "PBW normal form of an m(...)/h(...) expression"),
    "basis": (cmd_basis, "list PBW normal forms with capped exponents"),
    "present": (cmd_present, "print a presentation of the enveloping algebra"),
    "weyl": (cmd_weyl, "Weyl superalgebra relations and the symplectic comparison"),
    "hopf-check": (cmd_hopf_check, "check the Hopf axioms on the enveloping algebra"),
    "ore-validate": (cmd_ore_validate, "validate the [ore] data stage by stage"),
    "ore-extend": (cmd_ore_extend, "print the spec of the extended algebra"),
    "ore-iso": (cmd_ore_iso, "compare U(R[x]) with the iterated Ore extension"),
    "kahler-check": (cmd_kahler_check, "Lie-Rinehart axioms and PBW count on differentials"),
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="poissonsuper", description="Poisson superalgebras and their enveloping algebras")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text)
        if name != "weyl":
            sp.add_argument("spec", help="spec file")
        sp.add_argument("--json", action="store_true", help="emit the report as JSON")
        if name == "normalize":
            sp.add_argument("expr", help='expression such as "h(x1)*m(y1)"')
        elif name == "basis":
            sp.add_argument("--dm", type=int, required=True)
            sp.add_argument("--dh", type=int, required=True)
            sp.add_argument("--bound", choices=["generator", "total"], default="generator")
        elif name == "present":
            sp.add_argument("--kind", choices=["quadratic", "exterior", "uea"], required=True)
        elif name == "weyl":
            sp.add_argument("--p", type=int)
            sp.add_argument("--q", type=int)
            sp.add_argument("--degree", type=int, default=2)
            sp.add_argument("--check-symplectic", type=int, metavar="N")
        elif name in ("hopf-check", "ore-iso"):
            sp.add_argument("--degree", type=int, default=2 if name == "hopf-check" else 3)
        elif name == "kahler-check":
            sp.add_argument("--degree", type=int, default=2, help="exponent cap for the PBW count")
            sp.add_argument("--pairs", type=int, default=1, help="coefficient degree for pair checks")
            sp.add_argument("--triples", type=int, default=0, help="coefficient degree for Jacobi")
    return ap


def run(argv) -> tuple:
    """Run one command; returns (exit code, stdout text, stderr text)."""
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return (INPUT if e.code else OK), "", ""
    out = Outcome()
    try:
        spec = None
        if args.command != "weyl":
            try:
                spec = load_spec(args.spec)
            except OSError as e:
                raise SpecError(f"cannot read {args.spec}: {e.strerror}") from None
        for v in ("dm", "dh", "degree", "pairs", "triples"):
            if getattr(args, v, 0) is not None and getattr(args, v, 0) < 0:
                raise SpecError(f"--{v} must be non-negative")
        COMMANDS[args.command][0](spec, args, out)
    except (SpecError, AlgebraError) as e:
        where = f"{args.spec}: " if getattr(args, "spec", None) else ""
        return INPUT, "", f"error: {where}{e}\n"
    if args.json:
        payload = {"command": args.command, "exit": out.code, **out.data}
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        text = "\n".join(out.lines) + "\n"
    return out.code, text, ""


def main(argv=None) -> int:
    code, text, err = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(text)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
