#!/usr/bin/env python3
"""Short tour of the library: brackets, normal forms, Weyl comparison, Hopf and Ore checks."""

from fractions import Fraction

from poisson_super.hopf import LieSuperAlgebra, check_hopf_axioms, ps_hopf
from poisson_super.ore import phi_iso_check, skew_tower
from poisson_super.poisson import bracket, skew_super_bracket, symplectic_super, verify_poisson
from poisson_super.uea import UEA, pbw_basis, symplectic_iso_check


def main():
    P1 = symplectic_super(1)
    x1, y1 = P1.algebra.vars()
    print("{x1, x1*y1} =", bracket(P1, x1, x1 * y1))
    print(verify_poisson(P1))

    U = UEA(P1)
    print("h(x1) m(y1) =", U.normalize(U.h("x1") * U.m("y1")))
    print("PBW monomials of U(P1):", len(pbw_basis(P1.algebra, 1, 1)))
    print("Weyl comparison n=2:", symplectic_iso_check(2, 8))

    T = skew_super_bracket([[0, 2], [-2, 0]], [[0, 3], [-3, 0]], [[1, Fraction(1, 2)], [-1, 2]])
    print("mixed family:", verify_poisson(T))
    stages = skew_tower([[0, 2], [-2, 0]], [[0, 3], [-3, 0]], [[1, Fraction(1, 2)], [-1, 2]])
    for O, rep, _ in stages:
        print(f"Ore stage {O.var}:", rep)
    (O, _, _), = skew_tower([[0]], [[0]], [[1]])
    print("phi to the iterated Ore extension:", phi_iso_check(O, 3))

    L = LieSuperAlgebra(basis=(("x", "even"), ("y", "odd")), brackets={(1, 1): {0: 1}})
    print("PS(L) with [y, y] = x:", check_hopf_axioms(ps_hopf(L), 2))


if __name__ == "__main__":
    main()
