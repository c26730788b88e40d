import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from poisson_super.errors import AlgebraError, UnvalidatedOreError
from poisson_super.ore import (
    IteratedOre,
    OreData,
    PhiMap,
    SkewPolynomial,
    extend_ore,
    include,
    ore_data_from_table,
    ore_monomial_bracket,
    phi_iso_check,
    sigma_eta,
    skew_mul,
    skew_tower,
    validate_ore,
)
from poisson_super.poisson import (
    BracketTable,
    bracket,
    skew_super_bracket,
    trivial_bracket,
    verify_poisson,
)
from poisson_super.rewriting import NCPolynomial
from poisson_super.supercore import Parity, SuperAlgebra, Superderivation
from poisson_super.uea import H, M, UEASymbol, embed

LAM = [[0, 2], [-2, 0]]
MU = [[0, 3], [-3, 0]]
XI = [[1, Fraction(1, 2)], [-1, 2]]


def validated(O):
    assert validate_ore(O)
    return O


def delta_example():
    """R = k[a | y], {a, y} = y, alpha(y) = y, delta(y) = a y."""
    alg = SuperAlgebra.of(("a", "even"), ("y", "odd"))
    a, y = alg.vars()
    T = BracketTable(alg, {("a", "a"): 0, ("a", "y"): y, ("y", "y"): 0})
    return validated(OreData.from_images(T, {"y": y}, {"y": a * y}))


def line_example(xi=1):
    """Lambda(y1) extended by x1 with alpha(y1) = xi y1."""
    T = skew_super_bracket([], [[0]], [])
    y = T.algebra.var("y1")
    return validated(OreData.from_images(T, {"y1": y.scale(xi)}, {}, var="x1", position=0))


def weyl_example():
    """k[a] with alpha(a) = a, delta(a) = 1 over the trivial bracket."""
    alg = SuperAlgebra.of(("a", "even"))
    a = alg.var("a")
    return validated(OreData.from_images(trivial_bracket(alg), {"a": a}, {"a": alg.one()}))


EXAMPLES = {"delta": delta_example, "line": line_example, "weyl": weyl_example}


# ---------------------------------------------------------------- validation


def test_zero_derivations_validate():
    T = skew_super_bracket(LAM, MU, XI)
    O = OreData.from_images(T, {}, {})
    assert validate_ore(O) and O.validated
    A = extend_ore(O)
    assert all(not A(O.var, g) for g in T.algebra.names)


def test_tower_stages_validate():
    stages = skew_tower(LAM, MU, XI)
    assert len(stages) == 2
    for O, rep, table in stages:
        assert rep and table is not None
        assert verify_poisson(table)


def test_tower_equals_direct_table():
    *_, (O, rep, table) = skew_tower(LAM, MU, XI)
    direct = skew_super_bracket(LAM, MU, XI)
    assert table.algebra == direct.algebra
    assert dict(table.entries) == dict(direct.entries)


def test_single_step_example():
    O = line_example(xi=Fraction(5, 2))
    A = extend_ore(O)
    x1, y1 = A.algebra.vars()
    assert A(x1, y1) == (x1 * y1).scale(Fraction(5, 2))
    assert verify_poisson(A)


def test_invalid_alpha_rejected():
    alg = SuperAlgebra.of(("a", "even"), ("b", "even"))
    a, b = alg.vars()
    T = BracketTable(alg, {("a", "b"): 1})
    O = OreData.from_images(T, {"a": a}, {})
    rep = validate_ore(O)
    assert not rep and not O.validated
    assert rep.condition and rep.pair
    with pytest.raises(UnvalidatedOreError):
        extend_ore(O)


def test_invalid_delta_rejected():
    alg = SuperAlgebra.of(("a", "even"), ("y", "odd"))
    a, y = alg.vars()
    T = BracketTable(alg, {("a", "a"): 0, ("a", "y"): y, ("y", "y"): 0})
    # alpha fine, delta(y) = y breaks the compatibility identity
    O = OreData.from_images(T, {"y": y}, {"a": a})
    assert not validate_ore(O)


def test_odd_alpha_rejected():
    T = skew_super_bracket([[0]], [[0]], [[0]])
    x1, y1 = T.algebra.vars()
    with pytest.raises(Exception):
        OreData.from_images(T, {"x1": y1}, {})
    with pytest.raises(AlgebraError):
        OreData(T, Superderivation(T.algebra, Parity.ODD, {"x1": y1, "y1": x1}),
                Superderivation(T.algebra, Parity.EVEN, {"x1": 0, "y1": 0}), var="z")


def test_variable_name_clash():
    T = trivial_bracket(SuperAlgebra.of(("x", "even")))
    with pytest.raises(AlgebraError):
        OreData.from_images(T, {}, {}, var="x")


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_extension_is_poisson(name):
    assert verify_poisson(extend_ore(EXAMPLES[name]()))


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_converse_recovers_data(name):
    O = EXAMPLES[name]()
    A = extend_ore(O)
    back = ore_data_from_table(A, O.var)
    assert validate_ore(back)
    for g in O.base.algebra.vars():
        assert back.alpha(g) == O.alpha(g) and back.delta(g) == O.delta(g)


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_closed_bracket_formula(name):
    O = EXAMPLES[name]()
    A = extend_ore(O)
    R = O.base.algebra
    x = A.algebra.var(O.var)
    elems = [R.one()] + list(R.vars()) + [a * b for a, b in itertools.combinations(R.vars(), 2)]
    for r, s in itertools.product(elems, repeat=2):
        for i, j in itertools.product(range(3), repeat=2):
            r_, s_ = include(O, r, A.algebra), include(O, s, A.algebra)
            direct = bracket(A, r_ * x**i, s_ * x**j)
            assert direct == ore_monomial_bracket(O, r, i, s, j)


# ---------------------------------------------------------------- sigma / eta


def test_sigma_eta_generator_values():
    O = delta_example()
    S = IteratedOre(O)
    al = S.Re.alphabet
    mr = NCPolynomial.word(al, [UEASymbol(M, 1)])
    hr = NCPolynomial.word(al, [UEASymbol(H, 1)])
    y = O.base.algebra.var("y")
    a = O.base.algebra.var("a")
    assert sigma_eta(O, "sigma1", mr) == S.re(mr)
    assert not sigma_eta(O, "eta1", mr)
    assert sigma_eta(O, "eta2", mr) == S.re(embed(y, M, al), 1) + S.re(embed(a * y, M, al))
    assert sigma_eta(O, "sigma1", hr) == S.re(hr + embed(y, M, al))
    assert sigma_eta(O, "eta1", hr) == S.re(embed(a * y, M, al))
    # e2(h_y) = (h(alpha y) + m(alpha^2 y)) m_x + m(delta alpha y) + h(delta y)
    want = S.re(embed(y, H, al) + embed(y, M, al), 1) + S.re(embed(a * y, M, al) + embed(a * y, H, al))
    assert sigma_eta(O, "eta2", hr) == want
    assert sigma_eta(O, "sigma2", S.mx()) == S.mx()
    assert not sigma_eta(O, "eta2", S.mx())
    with pytest.raises(ValueError):
        sigma_eta(O, "tau", mr)


def test_sigma1_inverse():
    O = delta_example()
    S = IteratedOre(O)
    al = S.Re.alphabet
    for s in [UEASymbol(k, i) for k in (M, H) for i in range(2)]:
        img = S.sigma1_symbol(s)
        back = NCPolynomial.zero(al)
        for w, c in img:
            term = NCPolynomial.const(al, c)
            for t in w:
                term = term * S.sigma1_inverse_symbol(t)
            back = back + term
        assert S.Re.normalize(back) == NCPolynomial.word(al, [s])


def test_skew_mul_examples():
    O = delta_example()
    S = IteratedOre(O)
    al = S.Re.alphabet
    mr = S.re(NCPolynomial.word(al, [UEASymbol(M, 1)]))
    hr_word = NCPolynomial.word(al, [UEASymbol(H, 1)])
    assert skew_mul(O, S.mx(), mr) == S.re(NCPolynomial.word(al, [UEASymbol(M, 1)]), 1) + S.re(
        S.eta1(NCPolynomial.word(al, [UEASymbol(M, 1)]))
    )
    assert skew_mul(O, S.hx(), S.mx()) == SkewPolynomial(S, {((), 1, 1): 1})
    got = skew_mul(O, S.hx(), S.re(hr_word))
    sig = S.sigma2(S.re(hr_word))
    want = SkewPolynomial(S, {(w, i, j + 1): c for (w, i, j), c in sig}) + S.eta2(S.re(hr_word))
    assert got == want


def test_skew_mul_m_x_commutes_on_m():
    O = line_example()
    S = IteratedOre(O)
    mr = S.re(NCPolynomial.word(S.Re.alphabet, [UEASymbol(M, 0)]))
    assert skew_mul(O, S.mx(), mr) == skew_mul(O, mr, S.mx())


def _random_element(S, rng, terms=2):
    al = S.Re.alphabet
    syms = [UEASymbol(k, i) for k in (M, H) for i in range(S.alg.n)]
    out = S.zero()
    for _ in range(terms):
        w = [rng.choice(syms) for _ in range(rng.randint(0, 2))]
        i, j = rng.randint(0, 1), rng.randint(0, 1)
        out = out + S.re(NCPolynomial.word(al, w), i, j).scale(rng.randint(-2, 2))
    return out


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_skew_mul_associative(seed):
    O = delta_example()
    S = IteratedOre(O)
    rng = random.Random(seed)
    u, v, w = (_random_element(S, rng) for _ in range(3))
    assert S.mul(S.mul(u, v), w) == S.mul(u, S.mul(v, w))


def _random_base(S, rng):
    al = S.Re.alphabet
    syms = [UEASymbol(k, i) for k in (M, H) for i in range(S.alg.n)]
    out = S.zero()
    for _ in range(2):
        w = [rng.choice(syms) for _ in range(rng.randint(0, 2))]
        out = out + S.re(NCPolynomial.word(al, w), rng.randint(0, 1)).scale(rng.randint(-2, 2))
    return out


def test_skew_derivation_laws():
    O = delta_example()
    S = IteratedOre(O)
    al = S.Re.alphabet
    syms = [UEASymbol(k, i) for k in (M, H) for i in range(S.alg.n)]
    rng = random.Random(11)
    for _ in range(100):
        u = NCPolynomial.word(al, [rng.choice(syms) for _ in range(rng.randint(0, 2))])
        v = NCPolynomial.word(al, [rng.choice(syms) for _ in range(rng.randint(0, 2))])
        uv = S.Re.normalize(u * v)
        assert S.re(S.eta1(uv)) == S.re(S.Re.normalize(S.sigma1(u) * S.eta1(v) + S.eta1(u) * v))
        bu, bv = _random_base(S, rng), _random_base(S, rng)
        lhs = S.eta2(S.mul_b(bu, bv))
        rhs = S.mul_b(S.sigma2(bu), S.eta2(bv)) + S.mul_b(S.eta2(bu), bv)
        assert lhs == rhs


# ---------------------------------------------------------------- phi


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_phi_iso(name):
    rep = phi_iso_check(EXAMPLES[name](), 3)
    assert rep, str(rep)
    assert rep.source_count == rep.target_count == rep.image_rank


def test_phi_iso_trivial():
    O = validated(OreData.from_images(trivial_bracket(SuperAlgebra.of(("y", "odd"))), {}, {}))
    assert phi_iso_check(O, 3)


def test_phi_closed_forms():
    O = delta_example()
    phi = PhiMap(O)
    A = phi.A_table.algebra
    a, y, x = A.var("a"), A.var("y"), A.var("x")
    rx = a * x
    assert phi(embed(rx, M, phi.Ae.alphabet)) == phi.closed_m(rx)
    S = phi.S
    assert phi.closed_m(rx) == S.re(NCPolynomial.word(S.Re.alphabet, [UEASymbol(M, 0)]), 1)
    for p in [rx, y * x * x, a * a * x + y, a * y * x**3, x * x]:
        assert phi(embed(p, M, phi.Ae.alphabet)) == phi.closed_m(p)
        assert phi(embed(p, H, phi.Ae.alphabet)) == phi.closed_h(p)


def test_phi_detects_forced_invalid_data():
    alg = SuperAlgebra.of(("a", "even"), ("b", "even"))
    a, b = alg.vars()
    T = BracketTable(alg, {("a", "b"): 1})
    O = OreData.from_images(T, {"a": a}, {})
    assert not validate_ore(O)
    O.validated = True  # bypass on purpose
    assert not phi_iso_check(O, 3)
