"""Exact linear algebra over the rationals.

Vectors are tuples of ``int`` or ``Fraction``. Rank uses fraction-free
(Bareiss) elimination on integer rows; echelon forms use ``Fraction``.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = Sequence  # of int | Fraction


def primitive(v: Vector) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    den = 1
    for x in v:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def canonical_ray(v: Vector) -> tuple[int, ...]:
    """Primitive integer vector with first nonzero entry positive (line key)."""
    p = primitive(v)
    for x in p:
        if x:
            if x < 0:
                p = tuple(-y for y in p)
            break
    return p


def rank(rows: Iterable[Vector]) -> int:
    m = [list(primitive(r)) for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        for i in range(r + 1, len(m)):
            row = m[i]
            a = row[c]
            for k in range(c + 1, ncols):
                row[k] = (pr[c] * row[k] - a * pr[k]) // prev
            row[c] = 0
        prev = pr[c]
        r += 1
        if r == len(m):
            break
    return r


class Echelon:
    """Reduced row echelon basis of a row space, supporting membership tests.

    >>> e = Echelon([(1, 1, 0), (0, 1, 1)])
    >>> e.contains((1, 2, 1)), e.contains((1, 0, 0))
    (True, False)
    """

    def __init__(self, rows: Iterable[Vector] = (), ncols: int | None = None):
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []
        self.ncols = ncols
        for r in rows:
            self.add(r)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: Vector) -> list[Fraction]:
        w = [Fraction(x) for x in v]
        for row, p in zip(self.rows, self.pivots):
            a = w[p]
            if a:
                for k in range(len(w)):
                    if row[k]:
                        w[k] -= a * row[k]
        return w

    def contains(self, v: Vector) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Vector) -> bool:
        """Adjoin ``v``; return True if the rank grew."""
        if self.ncols is None:
            self.ncols = len(v)
        w = self.reduce(v)
        p = next((k for k, x in enumerate(w) if x), None)
        if p is None:
            return False
        inv = 1 / w[p]
        w = [x * inv for x in w]
        for row in self.rows:
            a = row[p]
            if a:
                for k in range(len(row)):
                    row[k] -= a * w[k]
        # keep pivots sorted for a canonical form
        pos = 0
        while pos < len(self.pivots) and self.pivots[pos] < p:
            pos += 1
        self.rows.insert(pos, w)
        self.pivots.insert(pos, p)
        return True

    def copy(self) -> "Echelon":
        e = Echelon(ncols=self.ncols)
        e.rows = [list(r) for r in self.rows]
        e.pivots = list(self.pivots)
        return e

    def nullspace(self) -> list[list[Fraction]]:
        """Basis of ``{x : row . x = 0 for all rows}``."""
        n = self.ncols or 0
        free = [c for c in range(n) if c not in self.pivots]
        basis = []
        for f in free:
            x = [Fraction(0)] * n
            x[f] = Fraction(1)
            for row, p in zip(self.rows, self.pivots):
                x[p] = -row[f]
            basis.append(x)
        return basis


def nullspace(rows: Sequence[Vector], ncols: int) -> list[list[Fraction]]:
    return Echelon(rows, ncols=ncols).nullspace()


def dot(u: Vector, v: Vector):
    return sum(a * b for a, b in zip(u, v))


def intersect_spans(a: Sequence[Vector], b: Sequence[Vector], ncols: int) -> list[list[Fraction]]:
    """Basis of span(a) ∩ span(b), via the orthogonal complement of the sum."""
    na = nullspace(a, ncols)
    nb = nullspace(b, ncols)
    return nullspace(list(na) + list(nb), ncols)
