"""Exact Gaussian elimination over the rationals on sparse row vectors.

Vectors are dicts from arbitrary hashable coordinates to Fractions.  Only what
the rank, span-membership and annihilator computations need is implemented.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping

Vector = Mapping[Hashable, Fraction]


def _clean(v: Mapping) -> dict:
    return {k: Fraction(c) for k, c in v.items() if c}


class RowSpace:
    """Incrementally built row space in reduced echelon form."""

    def __init__(self, rows: Iterable[Vector] = ()):
        self._pivots: dict = {}  # pivot coordinate -> row with coefficient 1 there
        for r in rows:
            self.add(r)

    def reduce(self, v: Vector) -> dict:
        v = _clean(v)
        for p, row in self._pivots.items():
            c = v.get(p)
            if c:
                for k, a in row.items():
                    x = v.get(k, 0) - c * a
                    if x:
                        v[k] = x
                    else:
                        v.pop(k, None)
        return v

    def add(self, v: Vector) -> bool:
        """Insert v; return True if it was independent of the current rows."""
        r = self.reduce(v)
        if not r:
            return False
        p = min(r, key=repr)
        inv = 1 / r[p]
        r = {k: a * inv for k, a in r.items()}
        for q, row in self._pivots.items():
            c = row.get(p)
            if c:
                for k, a in r.items():
                    x = row.get(k, 0) - c * a
                    if x:
                        row[k] = x
                    else:
                        row.pop(k, None)
        self._pivots[p] = r
        return True

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def basis(self) -> list:
        return [dict(r) for r in self._pivots.values()]


def rank(rows: Iterable[Vector]) -> int:
    return RowSpace(rows).rank


def annihilator(rows: Iterable[Vector], coords: list) -> list:
    """Basis of {w : sum_k v[k] w[k] = 0 for every row v}, over the given coordinates."""
    space = RowSpace(rows)
    pivots = {p: r for p, r in space._pivots.items()}
    free = [k for k in coords if k not in pivots]
    out = []
    for f in free:
        w = {f: Fraction(1)}
        for p, r in pivots.items():
            c = r.get(f)
            if c:
                w[p] = -c
        out.append(w)
    return out
