import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import MIXED, homogeneous
from poisson_super.kahler import (
    KahlerElement,
    anchor,
    anchor_apply,
    d_ev,
    kahler_basis,
    lr_bracket,
    lr_check,
    semidirect_bracket,
    witness_pairing,
)
from poisson_super.poisson import (
    BracketTable,
    bracket,
    skew_super_bracket,
    symplectic_super,
    trivial_bracket,
)
from poisson_super.supercore import SuperAlgebra, koszul

XY = SuperAlgebra.of(("x", "even"), ("y", "odd"))
P1 = symplectic_super(1)
SKEW = skew_super_bracket([[0, 2], [-2, 0]], [[0, 3], [-3, 0]], [[1, Fraction(1, 2)], [-1, 2]])


def dk(alg, name, coeff=1):
    return KahlerElement(alg, {name: coeff})


def test_d_of_square():
    x, _ = XY.vars()
    assert d_ev(x * x) == dk(XY, "x", x.scale(2))


def test_d_of_unit():
    assert not d_ev(XY.one())


def test_d_of_mixed_product():
    x, y = XY.vars()
    assert d_ev(x * y) == dk(XY, "y", x) + dk(XY, "x", y)


@given(homogeneous(), homogeneous())
def test_d_is_even_derivation(f, g):
    s = koszul(f.homogeneous_parity(), g.homogeneous_parity())
    assert d_ev(f * g) == d_ev(g).lmul(f) + d_ev(f).lmul(g).scale(s)


def test_bracket_of_exact_differentials():
    T = SKEW
    names = T.algebra.names
    for a, b in itertools.product(names, repeat=2):
        fa, fb = T.algebra.var(a), T.algebra.var(b)
        assert lr_bracket(T, dk(T.algebra, a), dk(T.algebra, b)) == d_ev(bracket(T, fa, fb))


def test_trivial_bracket_gives_zero():
    T = trivial_bracket(XY)
    for a, b in itertools.product(XY.names, repeat=2):
        assert not lr_bracket(T, dk(XY, a), dk(XY, b))


def test_p1_anchor_leibniz_example():
    alg = P1.algebra
    x1, y1 = alg.vars()
    u = dk(alg, "x1")
    v = dk(alg, "y1")
    # [u, x1 v] = (-1)^{|x1||u|} x1 [u, v] + rho(u)(x1) v
    lhs = lr_bracket(P1, u, v.lmul(x1))
    rhs = lr_bracket(P1, u, v).lmul(x1).scale(koszul(1, u.parity)) + v.lmul(anchor_apply(P1, u, x1))
    assert lhs == rhs
    # {x1, x1} = 0 and {x1, y1} = 1 leave only the anchor-free part
    assert lhs == KahlerElement(alg, {})


def test_anchor_of_exact_is_hamiltonian():
    T = SKEW
    f = T.algebra.var("x1") * T.algebra.var("y2")
    rho = anchor(T, d_ev(f))
    for g in T.algebra.vars():
        assert rho(g) == bracket(T, f, g)


def test_semidirect_collapses():
    T = SKEW
    alg = T.algebra
    x1, y1 = alg.var("x1"), alg.var("y1")
    zero = KahlerElement(alg)
    first, second = semidirect_bracket(T, (x1, zero), (y1, zero))
    assert not first and not second
    u, v = dk(alg, "x1", y1), dk(alg, "y2")
    first, second = semidirect_bracket(T, (alg.zero(), u), (alg.zero(), v))
    assert not first and second == lr_bracket(T, u, v)


def test_semidirect_jacobi_on_p1():
    T = P1
    alg = T.algebra
    x1, y1 = alg.vars()
    zero = KahlerElement(alg)
    elems = [(x1, zero), (alg.zero(), dk(alg, "y1")), (y1, zero), (alg.zero(), dk(alg, "x1", x1))]

    def br(a, b):
        return semidirect_bracket(T, a, b)

    def par(e):
        a, u = e
        return a.parity if a else u.parity

    for a, b, c in itertools.permutations(elems, 3):
        pa, pb, pc = par(a), par(b), par(c)
        terms = [
            (koszul(pa, pc), br(a, br(b, c))),
            (koszul(pa, pb), br(b, br(c, a))),
            (koszul(pb, pc), br(c, br(a, b))),
        ]
        first = alg.zero()
        second = KahlerElement(alg)
        for s, (f, k) in terms:
            first = first + f.scale(s)
            second = second + k.scale(s)
        assert not first and not second


def test_kahler_basis():
    B = kahler_basis(XY)
    assert B.differentials == ("x", "y")
    assert kahler_basis(SuperAlgebra.of()).differentials == ()
    E = SuperAlgebra.of(("x1", "even"), ("x2", "even"))
    D1, D2 = kahler_basis(E).witnesses
    x1, x2 = E.vars()
    assert D1(x2) == E.zero() and D1(x1) == x1
    # the witnesses separate the basis differentials
    assert witness_pairing(D1, dk(E, "x1")) == x1
    assert witness_pairing(D1, dk(E, "x2")) == E.zero()


@pytest.mark.parametrize(
    "T",
    [P1, symplectic_super(2), SKEW, skew_super_bracket([[0]], [[0]], [[1]])],
    ids=["P1", "P2", "skew22", "skew11"],
)
def test_lie_rinehart_axioms(T):
    rep = lr_check(T, d_pairs=1, d_triples=0)
    assert rep, str(rep)


def test_lie_rinehart_jacobi_degree_one_p1():
    assert lr_check(P1, d_pairs=1, d_triples=1)


def test_lr_check_rejects_non_poisson():
    alg = SuperAlgebra.of(("a", "even"), ("b", "even"), ("c", "even"))
    a, b, c = alg.vars()
    T = BracketTable(alg, {("a", "b"): c, ("b", "c"): a, ("c", "a"): c})
    assert not lr_check(T, d_pairs=0)


# sampled Jacobi with monomial coefficients of degree <= 2 over the mixed family

_coeff = st.sampled_from(
    [MIXED.one()] + list(MIXED.vars()) + [a * b for a, b in itertools.combinations(MIXED.vars(), 2)]
)


@given(st.lists(st.tuples(_coeff, st.integers(0, 3)), min_size=3, max_size=3))
def test_lr_jacobi_sampled(items):
    T = skew_super_bracket(
        [[0, 2], [-2, 0]], [[0, 3], [-3, 0]], [[1, Fraction(1, 2)], [-1, 2]],
    )
    alg = T.algebra
    u, v, w = (KahlerElement(alg, {g: c}) for c, g in items)
    pu, pv, pw = u.parity, v.parity, w.parity
    b = lambda p, q: lr_bracket(T, p, q)  # noqa: E731
    total = (
        b(u, b(v, w)).scale(koszul(pu, pw))
        + b(v, b(w, u)).scale(koszul(pu, pv))
        + b(w, b(u, v)).scale(koszul(pv, pw))
    )
    assert not total


@given(st.lists(st.tuples(_coeff, st.integers(0, 3)), min_size=2, max_size=2), homogeneous(max_terms=2))
def test_anchor_is_homomorphism(items, f):
    T = SKEW
    alg = T.algebra
    assert alg == MIXED
    u, v = (KahlerElement(alg, {g: c}) for c, g in items)
    s = koszul(u.parity, v.parity)
    lhs = anchor_apply(T, lr_bracket(T, u, v), f)
    rhs = anchor_apply(T, u, anchor_apply(T, v, f)) - anchor_apply(T, v, anchor_apply(T, u, f)).scale(s)
    assert lhs == rhs
