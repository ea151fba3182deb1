"""Exact central hyperplane arrangements and their intersection lattices.

A hyperplane is stored as a primitive integer normal vector. A flat is named
by the bitset of hyperplanes containing it (its closed hyperplane set), which
is exact and basis independent. Subspace bases are computed only when sums or
restrictions need them.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg
from .linalg import Echelon

__all__ = [
    "Arrangement",
    "Flat",
    "FlatLattice",
    "ArrangementError",
    "FlatBudgetExceeded",
    "DEFAULT_FLAT_BUDGET",
    "from_ideal",
    "build_lattice",
    "characteristic_polynomial",
    "localization",
    "restriction",
    "restrict_to_subspace",
    "flat_basis",
    "is_modular",
    "is_supersolvable",
    "supersolvable_exponents",
    "product",
    "poly_str",
    "integer_roots",
    "split_over_integers",
]

DEFAULT_FLAT_BUDGET = int(os.environ.get("IDEALTYPE_FLAT_BUDGET", 5_000_000))


class ArrangementError(ValueError):
    pass


class FlatBudgetExceeded(RuntimeError):
    def __init__(self, level: int, count: int, budget: int):
        super().__init__(
            f"flat budget {budget} exceeded while building rank-{level} flats ({count} so far)")
        self.level = level
        self.count = count
        self.budget = budget


class Arrangement:
    """Central arrangement in ``Q^dim`` given by hyperplane normals."""

    def __init__(self, dim: int, normals: Iterable[Sequence], labels: Sequence | None = None):
        self.dim = dim
        prim = []
        seen = {}
        for k, v in enumerate(normals):
            if len(v) != dim:
                raise ArrangementError(f"normal {tuple(v)} has length {len(v)}, expected {dim}")
            ray = linalg.canonical_ray(v)
            if not any(ray):
                raise ArrangementError("zero normal vector")
            if ray in seen:
                raise ArrangementError(f"normals {seen[ray]} and {k} are proportional")
            seen[ray] = k
            prim.append(ray)
        self.normals: tuple[tuple[int, ...], ...] = tuple(prim)
        self.labels = tuple(labels) if labels is not None else None

    def __len__(self) -> int:
        return len(self.normals)

    def __repr__(self) -> str:
        return f"Arrangement(dim={self.dim}, hyperplanes={len(self)})"

    @cached_property
    def rank(self) -> int:
        return linalg.rank(self.normals) if self.normals else 0

    def subset(self, mask: int) -> "Arrangement":
        idx = [i for i in range(len(self)) if mask >> i & 1]
        labels = [self.labels[i] for i in idx] if self.labels else None
        return Arrangement(self.dim, [self.normals[i] for i in idx], labels)

    def deletion(self, k: int) -> "Arrangement":
        return self.subset(((1 << len(self)) - 1) & ~(1 << k))

    def lattice(self, flat_budget: int | None = None) -> "FlatLattice":
        lat = self.__dict__.get("_lattice")
        if lat is None:
            lat = build_lattice(self, flat_budget)
            self.__dict__["_lattice"] = lat
        return lat

    def closure(self, mask: int) -> int:
        """All hyperplanes whose normals lie in the span of those in ``mask``."""
        rows = [self.normals[i] for i in range(len(self)) if mask >> i & 1]
        return self._closure_of_rows(rows)

    def _closure_of_rows(self, rows) -> int:
        ann = [linalg.primitive(w) for w in linalg.nullspace(rows, self.dim)] if rows else None
        out = 0
        for i, g in enumerate(self.normals):
            if ann is None:
                continue
            if all(not _idot(g, w) for w in ann):
                out |= 1 << i
        return out

    def mask_rank(self, mask: int) -> int:
        cache = self.__dict__.setdefault("_rank_cache", {})
        r = cache.get(mask)
        if r is None:
            r = linalg.rank([self.normals[i] for i in range(len(self)) if mask >> i & 1]) if mask else 0
            cache[mask] = r
        return r

    def containing(self, subspace_basis: Sequence[Sequence]) -> int:
        """Bitset of hyperplanes containing the subspace spanned by the given vectors."""
        out = 0
        for i, g in enumerate(self.normals):
            if all(not linalg.dot(g, b) for b in subspace_basis):
                out |= 1 << i
        return out


def _idot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


@dataclass(frozen=True)
class Flat:
    hyperplane_set: int
    rank: int

    def __le__(self, other: "Flat") -> bool:
        return self.hyperplane_set & ~other.hyperplane_set == 0

    def __lt__(self, other: "Flat") -> bool:
        return self != other and self <= other


@dataclass
class FlatLattice:
    """Intersection lattice ordered by reverse inclusion; ``levels[k]`` holds rank-k flats."""

    arrangement: Arrangement
    levels: list[list[Flat]]
    mobius: dict[int, int] = field(default_factory=dict)

    @cached_property
    def by_mask(self) -> dict[int, Flat]:
        return {f.hyperplane_set: f for lev in self.levels for f in lev}

    @property
    def flats(self) -> list[Flat]:
        return [f for lev in self.levels for f in lev]

    @property
    def bottom(self) -> Flat:
        return self.levels[0][0]

    @property
    def center(self) -> Flat:
        (top,) = self.levels[-1]
        return top

    @property
    def rank(self) -> int:
        return len(self.levels) - 1

    def __len__(self) -> int:
        return sum(len(lev) for lev in self.levels)

    def __contains__(self, X: Flat) -> bool:
        return self.by_mask.get(X.hyperplane_set) == X

    def flat(self, mask: int) -> Flat:
        """Flat with exactly this hyperplane set; raises if the set is not closed."""
        f = self.by_mask.get(mask)
        if f is None:
            raise ArrangementError(f"hyperplane set {mask:#x} is not a flat")
        return f

    def meet(self, X: Flat, Y: Flat) -> Flat:
        return self.by_mask[X.hyperplane_set & Y.hyperplane_set]

    def join(self, X: Flat, Y: Flat) -> Flat:
        u = X.hyperplane_set | Y.hyperplane_set
        for lev in self.levels[max(X.rank, Y.rank):]:
            for f in lev:
                if u & ~f.hyperplane_set == 0:
                    return f
        raise AssertionError("lattice has no top")

    def covers(self, X: Flat) -> list[Flat]:
        if X.rank + 1 >= len(self.levels):
            return []
        return [f for f in self.levels[X.rank + 1] if X <= f]

    def cover_pairs(self) -> list[tuple[Flat, Flat]]:
        return [(x, y) for lev in self.levels[:-1] for x in lev for y in self.covers(x)]

    def interval(self, top: Flat) -> "FlatLattice":
        """The lower interval [0̂, top], i.e. the lattice of the localization at ``top``."""
        levels = [[f for f in lev if f <= top] for lev in self.levels[: top.rank + 1]]
        return FlatLattice(self.arrangement, levels,
                           {f.hyperplane_set: self.mobius[f.hyperplane_set]
                            for lev in levels for f in lev})


def from_ideal(rs, I) -> Arrangement:
    """A_I: hyperplanes orthogonal to the roots of the complement of ``I``.

    Normals are written in the coordinates of ``V = R ⊗ ZΦ`` dual to the
    simple roots, so ``dim`` is the rank of the root system.
    """
    idx = [i for i in range(rs.size) if I.complement_mask >> i & 1]
    return Arrangement(rs.rank, [rs.normals[i] for i in idx], labels=idx)


def build_lattice(arr: Arrangement, flat_budget: int | None = None) -> FlatLattice:
    budget = DEFAULT_FLAT_BUDGET if flat_budget is None else flat_budget
    n = len(arr)
    levels = [[Flat(0, 0)]]
    count = 1
    while True:
        nxt: dict[int, Flat] = {}
        k = len(levels)
        for X in levels[-1]:
            rows = [arr.normals[i] for i in range(n) if X.hyperplane_set >> i & 1]
            done = X.hyperplane_set
            for h in range(n):
                if done >> h & 1:
                    continue
                mask = arr._closure_of_rows(rows + [arr.normals[h]])
                done |= mask
                if mask not in nxt:
                    nxt[mask] = Flat(mask, k)
                    count += 1
                    if count > budget:
                        raise FlatBudgetExceeded(k, count, budget)
        if not nxt:
            break
        levels.append(sorted(nxt.values(), key=lambda f: f.hyperplane_set))
    lat = FlatLattice(arr, levels)
    _fill_mobius(lat)
    return lat


def _fill_mobius(lat: FlatLattice) -> None:
    mu = {0: 1}
    below: list[Flat] = [lat.bottom]
    for lev in lat.levels[1:]:
        for X in lev:
            s = 0
            xm = X.hyperplane_set
            for Y in below:
                if Y.hyperplane_set & ~xm == 0:
                    s += mu[Y.hyperplane_set]
            mu[xm] = -s
        below.extend(lev)
    lat.mobius = mu


def characteristic_polynomial(lat: FlatLattice) -> tuple[int, ...]:
    """Coefficients of chi(A, t), constant term first (length dim + 1)."""
    d = lat.arrangement.dim
    coeffs = [0] * (d + 1)
    for lev in lat.levels:
        for X in lev:
            coeffs[d - X.rank] += lat.mobius[X.hyperplane_set]
    return tuple(coeffs)


def poly_str(coeffs: Sequence[int], var: str = "t") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        body = str(a) if (a != 1 or k == 0) else ""
        terms.append((sign, body + mono))
    if not terms:
        return "0"
    first = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    return " ".join([first] + [f"{s} {b}" for s, b in terms[1:]])


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    k = 1
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            out.append(n // k)
        k += 1
    return sorted(set(out))


def _synthetic_div(coeffs: list[int], r: int) -> list[int] | None:
    """Divide by (t - r); coeffs constant-first. None if r is not a root."""
    hi = coeffs[::-1]
    out = [hi[0]]
    for c in hi[1:]:
        out.append(c + r * out[-1])
    if out[-1] != 0:
        return None
    return out[:-1][::-1]


def integer_roots(coeffs: Sequence[int]) -> list[int]:
    """Integer roots with multiplicity (rational root test over divisors)."""
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    roots = []
    while len(c) > 1 and c[0] == 0:
        roots.append(0)
        c = c[1:]
    progress = True
    while len(c) > 1 and progress:
        progress = False
        for d in _divisors(c[0]):
            for r in (d, -d):
                q = _synthetic_div(c, r)
                if q is not None:
                    roots.append(r)
                    c = q
                    progress = True
                    break
            if progress:
                break
    return sorted(roots)


def split_over_integers(coeffs: Sequence[int]) -> list[int] | None:
    """Roots of a monic polynomial if it splits into integer linear factors."""
    deg = max((k for k, c in enumerate(coeffs) if c), default=0)
    roots = integer_roots(coeffs)
    return roots if len(roots) == deg else None


def localization(arr: Arrangement, X: Flat) -> Arrangement:
    if arr.closure(X.hyperplane_set) != X.hyperplane_set:
        raise ArrangementError("localization needs a flat of the arrangement")
    return arr.subset(X.hyperplane_set)


def flat_basis(arr: Arrangement, X: Flat) -> list[list]:
    rows = [arr.normals[i] for i in range(len(arr)) if X.hyperplane_set >> i & 1]
    if not rows:
        return [[int(i == j) for j in range(arr.dim)] for i in range(arr.dim)]
    return [list(linalg.primitive(v)) for v in linalg.nullspace(rows, arr.dim)]


def restrict_to_subspace(arr: Arrangement, basis: Sequence[Sequence]) -> Arrangement:
    """Traces of the hyperplanes not containing span(basis), written in that basis.

    Hyperplanes with equal traces are merged; labels keep the first index.
    """
    traces = {}
    for i, g in enumerate(arr.normals):
        v = [linalg.dot(g, b) for b in basis]
        if not any(v):
            continue
        traces.setdefault(linalg.canonical_ray(v), i)
    keys = sorted(traces, key=traces.get)
    return Arrangement(len(basis), keys, labels=[traces[k] for k in keys])


def restriction(arr: Arrangement, X: Flat) -> Arrangement:
    """A^X written in a basis of X."""
    if arr.closure(X.hyperplane_set) != X.hyperplane_set:
        raise ArrangementError("restriction needs a flat of the arrangement")
    return restrict_to_subspace(arr, flat_basis(arr, X))


def is_modular(lat: FlatLattice, X: Flat) -> bool:
    """X + Y is a flat for every flat Y, via r(X)+r(Y) = r(X∨Y)+r(X∧Y)."""
    arr = lat.arrangement
    xm = X.hyperplane_set
    for lev in lat.levels:
        for Y in lev:
            ym = Y.hyperplane_set
            if ym & ~xm == 0 or xm & ~ym == 0:
                continue
            meet_rank = lat.by_mask[xm & ym].rank
            if X.rank + Y.rank != arr.mask_rank(xm | ym) + meet_rank:
                return False
    return True


def _modular_coatom(lat: FlatLattice, X: Flat, lines: list[Flat]) -> bool:
    # a coatom is modular iff every line through two hyperplanes outside it
    # contains a hyperplane of it
    xm = X.hyperplane_set
    for L in lines:
        lm = L.hyperplane_set
        if not lm & xm and lm.bit_count() >= 2:
            return False
    return True


def is_supersolvable(lat: FlatLattice) -> list[Flat] | None:
    """A maximal chain of modular flats from the bottom to the center, or None."""
    r = lat.rank
    if r == 0:
        return [lat.bottom]
    lines = lat.levels[2] if r >= 2 else []

    def search(top: Flat) -> list[Flat] | None:
        if top.rank <= 2:
            # rank <= 2 lattices are supersolvable through any atom
            if top.rank == 0:
                return [lat.bottom]
            atom = next(f for f in lat.levels[1] if f <= top)
            return [lat.bottom, atom] + ([top] if top.rank == 2 else [])
        tm = top.hyperplane_set
        sub_lines = [L for L in lines if L.hyperplane_set & ~tm == 0]
        for X in lat.levels[top.rank - 1]:
            if not X <= top:
                continue
            if _modular_coatom(lat, X, sub_lines):
                rest = search(X)
                if rest is not None:
                    return rest + [top]
        return None

    return search(lat.center)


def supersolvable_exponents(lat: FlatLattice, chain: Sequence[Flat]) -> list[int]:
    """Hyperplane counts added at each step of a modular chain (the exponents)."""
    return [(b.hyperplane_set & ~a.hyperplane_set).bit_count() for a, b in zip(chain, chain[1:])]


def product(a: Arrangement, b: Arrangement) -> Arrangement:
    normals = [tuple(v) + (0,) * b.dim for v in a.normals]
    normals += [(0,) * a.dim + tuple(v) for v in b.normals]
    return Arrangement(a.dim + b.dim, normals)
