import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import MIXED, homogeneous, monomials
from oracle import oracle_bracket
from poisson_super.errors import IncompleteTableError, InvalidConstantsError, ParityError
from poisson_super.poisson import (
    BracketTable,
    StructureConstants,
    bracket,
    dual_bracket,
    jacobiator,
    matrix_coordinate_bracket,
    quadratic_bracket,
    skew_super_bracket,
    symplectic_super,
    trivial_bracket,
    verify_poisson,
)
from poisson_super.supercore import SuperAlgebra, Superderivation, apply_derivation, koszul

P1 = symplectic_super(1)
x1, y1 = P1.algebra.vars()

MIXED_TABLE = skew_super_bracket(
    [[0, 2], [-2, 0]], [[0, 3], [-3, 0]], [[1, Fraction(1, 2)], [-1, 2]]
)


def test_symplectic_generator_bracket():
    assert bracket(P1, x1, y1) == P1.algebra.one()
    assert bracket(P1, y1, x1) == P1.algebra.one()
    P2 = symplectic_super(2)
    a = P2.algebra
    assert bracket(P2, a.var("x1"), a.var("y2")) == a.zero()
    assert a.n == 4 and all(g.parity for g in a.generators)


def test_unit_is_central():
    one = P1.algebra.one()
    assert bracket(P1, one, x1 * y1) == P1.algebra.zero()
    assert bracket(P1, x1, one) == P1.algebra.zero()


def test_leibniz_in_second_slot():
    assert bracket(P1, x1, x1 * y1) == -x1


def test_symplectic_needs_positive_n():
    with pytest.raises(ValueError):
        symplectic_super(0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_symplectic_passes(n):
    assert verify_poisson(symplectic_super(n))


def test_trivial_bracket_passes():
    assert verify_poisson(trivial_bracket(MIXED))


def test_antisymmetry_override_fails():
    alg = P1.algebra
    T = BracketTable(
        alg,
        {("x1", "x1"): 0, ("y1", "y1"): 0, ("x1", "y1"): 1, ("y1", "x1"): -1},
    )
    rep = verify_poisson(T)
    assert not rep and rep.kind == "antisymmetry"
    assert rep.generators == ("x1", "y1")


def test_corrupted_jacobi_names_triple():
    alg = SuperAlgebra.of(("a", "even"), ("b", "even"), ("c", "even"))
    a, b, c = alg.vars()
    # {a,b}=c, {b,c}=a, {c,a}=c is not a Lie bracket
    T = BracketTable(alg, {("a", "b"): c, ("b", "c"): a, ("c", "a"): c})
    rep = verify_poisson(T)
    assert not rep and rep.kind == "jacobi"
    assert len(rep.generators) == 3 and rep.residual


def test_incomplete_table():
    alg = SuperAlgebra.of(("a", "even"), ("b", "even"))
    T = BracketTable(alg, {})
    assert not T.is_complete()
    rep = verify_poisson(T)
    assert not rep and rep.kind == "incomplete"
    with pytest.raises(IncompleteTableError):
        bracket(T, alg.var("a"), alg.var("b"))


def test_entry_parity_checked():
    with pytest.raises(ParityError):
        BracketTable(P1.algebra, {("x1", "y1"): x1})


def test_skew_family_examples():
    T = skew_super_bracket([], [], [])
    assert T.algebra.n == 0 and verify_poisson(T)
    T = skew_super_bracket([[0]], [[0]], [[1]])
    x, y = T.algebra.vars()
    assert T.gen_bracket(0, 1) == x * y and verify_poisson(T)
    T = skew_super_bracket([[0, 2], [-2, 0]], [], [[], []])
    a, b = T.algebra.vars()
    assert T.gen_bracket(0, 1) == (a * b).scale(2) and verify_poisson(T)
    with pytest.raises(InvalidConstantsError):
        skew_super_bracket([[1]], [], [[]])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_dual_from_skew_passes(n):
    rng = random.Random(n)
    lam = [[0] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        lam[i][j] = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
        lam[j][i] = -lam[i][j]
    C = StructureConstants.from_skew(lam)
    D = dual_bracket(C)
    Q = quadratic_bracket(C)
    assert verify_poisson(D) and verify_poisson(Q)
    t = D.algebra.vars()
    for k, l in itertools.combinations(range(n), 2):
        assert D.gen_bracket(k, l) == (t[l] * t[k]).scale(lam[k][l])


def test_zero_constants_give_trivial_dual():
    D = dual_bracket(StructureConstants(2, {}))
    assert all(not v for v in D.entries.values())


def test_constants_symmetry_validated():
    with pytest.raises(InvalidConstantsError):
        StructureConstants(2, {(0, 1, 0, 1): 1})


def test_matrix_coordinates_pass():
    T = matrix_coordinate_bracket()
    assert verify_poisson(T)
    assert verify_poisson(dual_bracket(StructureConstants.from_quadratic_table(T)))


def test_mixed_family_passes():
    assert verify_poisson(MIXED_TABLE)


# ---------------------------------------------------------------- properties


@given(homogeneous(max_terms=2), homogeneous(max_terms=2))
def test_bracket_matches_oracle(p, q):
    assert dict(bracket(MIXED_TABLE, p, q).terms) == oracle_bracket(MIXED_TABLE, p, q)


@given(homogeneous(), homogeneous())
def test_super_antisymmetry(p, q):
    s = koszul(p.homogeneous_parity(), q.homogeneous_parity())
    assert bracket(MIXED_TABLE, p, q) == -bracket(MIXED_TABLE, q, p).scale(s)


@given(homogeneous(), homogeneous(), homogeneous())
def test_bracket_is_superderivation(p, q, r):
    lhs = bracket(MIXED_TABLE, p, q * r)
    s = koszul(p.homogeneous_parity(), q.homogeneous_parity())
    assert lhs == bracket(MIXED_TABLE, p, q) * r + (q * bracket(MIXED_TABLE, p, r)).scale(s)


@given(homogeneous(), homogeneous(), homogeneous())
def test_hamiltonian_matches_derivation(p, q, r):
    # {p, -} agrees with the derivation defined by its generator values
    par = p.homogeneous_parity()
    d = Superderivation(
        MIXED, par, {g.name: bracket(MIXED_TABLE, p, MIXED.var(g.name)) for g in MIXED.generators}
    )
    assert apply_derivation(d, q * r) == bracket(MIXED_TABLE, p, q * r)


@given(st.lists(monomials(max_even=2), min_size=3, max_size=3))
def test_jacobi_on_monomials(ms):
    x, y, z = (MIXED.monomial(m) for m in ms)
    assert not jacobiator(MIXED_TABLE, x, y, z)


@pytest.mark.parametrize("T", [symplectic_super(2), matrix_coordinate_bracket()], ids=["P2", "mat2"])
def test_jacobi_sweep_degree_four(T):
    rng = random.Random(7)
    alg = T.algebra
    for _ in range(40):
        ms = []
        for _ in range(3):
            e = [0] * alg.n
            for _ in range(rng.randint(0, 2)):
                e[rng.randrange(alg.n)] += 1
            if any(e[i] > 1 and alg.parity(i) for i in range(alg.n)):
                e = [min(v, 1) if alg.parity(i) else v for i, v in enumerate(e)]
            ms.append(alg.monomial(tuple(e)))
        assert not jacobiator(T, *ms)
