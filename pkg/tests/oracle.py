"""Independent reference implementations used only by the tests.

Products are computed on explicit factor lists with a bubble sort that
counts transpositions of odd factors; brackets of monomials move the two
active factors next to each other before applying the table.
"""

from fractions import Fraction


def sort_factors(alg, factors):
    """Return (sign, sorted factors) or (0, None) if an odd factor repeats."""
    f = list(factors)
    sign = 1
    for i in range(len(f)):
        for j in range(len(f) - 1 - i):
            if f[j] > f[j + 1]:
                if alg.parity(f[j]) and alg.parity(f[j + 1]):
                    sign = -sign
                f[j], f[j + 1] = f[j + 1], f[j]
    for a, b in zip(f, f[1:]):
        if a == b and alg.parity(a):
            return 0, None
    return sign, f


def factors_of(alg, mono):
    out = []
    for i, e in enumerate(mono):
        out += [i] * e
    return out


def to_dict(alg, factors, coeff, into):
    sign, f = sort_factors(alg, factors)
    if not sign:
        return
    mono = [0] * alg.n
    for i in f:
        mono[i] += 1
    key = tuple(mono)
    into[key] = into.get(key, Fraction(0)) + sign * coeff


def oracle_mul(p, q):
    alg = p.algebra
    out = {}
    for a, ca in p:
        for b, cb in q:
            to_dict(alg, factors_of(alg, a) + factors_of(alg, b), ca * cb, out)
    return {k: v for k, v in out.items() if v}


def _par(alg, fs):
    return sum(int(alg.parity(i)) for i in fs) % 2


def oracle_bracket(T, p, q):
    """{A f B, C g D} = sum (-1)^{|f||B| + |g||C|} A B {f, g} C D."""
    alg = T.algebra
    out = {}
    for u, cu in p:
        fu = factors_of(alg, u)
        for v, cv in q:
            fv = factors_of(alg, v)
            for i, f in enumerate(fu):
                A, B = fu[:i], fu[i + 1:]
                for j, g in enumerate(fv):
                    C, D = fv[:j], fv[j + 1:]
                    s = (-1) ** (int(alg.parity(f)) * _par(alg, B) + int(alg.parity(g)) * _par(alg, C))
                    for w, cw in T.gen_bracket(f, g):
                        to_dict(alg, A + B + factors_of(alg, w) + C + D, s * cu * cv * cw, out)
    return {k: v for k, v in out.items() if v}
