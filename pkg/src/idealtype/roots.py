"""Irreducible reduced root systems, the root poset and standard parabolics.

Simple roots follow the Bourbaki planches. Positive roots are generated from
the simple roots by root strings and indexed by ``(height, simple_coords)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from . import linalg

__all__ = [
    "Root",
    "RootSystem",
    "ParabolicSubsystem",
    "Component",
    "RootSystemError",
    "build_root_system",
    "leq",
    "maximal_parabolic",
    "irreducible_components",
    "parse_root_label",
    "root_label",
    "COXETER_NUMBER",
    "weyl_exponents",
]

VALID_RANGES = "A_n (n>=1), B_n/C_n (n>=2), D_n (n>=4), E_6, E_7, E_8, F_4, G_2"


class RootSystemError(ValueError):
    pass


@dataclass(frozen=True)
class Root:
    """A positive root: coefficients over the simple roots plus exact coordinates."""

    index: int
    simple_coords: tuple[int, ...]
    euclid_coords: tuple[Fraction, ...] = field(repr=False)
    system: tuple[str, int] = field(repr=False, default=("?", 0))

    @property
    def height(self) -> int:
        return sum(self.simple_coords)


def _e(dim: int, *pairs) -> tuple[Fraction, ...]:
    v = [Fraction(0)] * dim
    for i, c in pairs:
        v[i] += Fraction(c)
    return tuple(v)


def _simple_roots(t: str, n: int) -> list[tuple[Fraction, ...]]:
    # 0-based coordinates; e_1 of the planches is index 0
    if t == "A":
        return [_e(n + 1, (i, 1), (i + 1, -1)) for i in range(n)]
    if t in "BCD":
        base = [_e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)]
        last = {"B": _e(n, (n - 1, 1)),
                "C": _e(n, (n - 1, 2)),
                "D": _e(n, (n - 2, 1), (n - 1, 1))}[t]
        return base + [last]
    if t == "E":
        h = Fraction(1, 2)
        e8 = [
            _e(8, (0, h), (7, h), *[(i, -h) for i in range(1, 7)]),
            _e(8, (0, 1), (1, 1)),
            _e(8, (0, -1), (1, 1)),
            _e(8, (1, -1), (2, 1)),
            _e(8, (2, -1), (3, 1)),
            _e(8, (3, -1), (4, 1)),
            _e(8, (4, -1), (5, 1)),
            _e(8, (5, -1), (6, 1)),
        ]
        return e8[:n]
    if t == "F":
        h = Fraction(1, 2)
        return [_e(4, (1, 1), (2, -1)), _e(4, (2, 1), (3, -1)), _e(4, (3, 1)),
                _e(4, (0, h), (1, -h), (2, -h), (3, -h))]
    if t == "G":
        return [_e(3, (0, 1), (1, -1)), _e(3, (0, -2), (1, 1), (2, 1))]
    raise RootSystemError(f"unknown type {t!r}; allowed: {VALID_RANGES}")


COXETER_NUMBER = {
    "A": lambda n: n + 1,
    "B": lambda n: 2 * n,
    "C": lambda n: 2 * n,
    "D": lambda n: 2 * n - 2,
    "E": lambda n: {6: 12, 7: 18, 8: 30}[n],
    "F": lambda n: 12,
    "G": lambda n: 6,
}


def weyl_exponents(t: str, n: int) -> tuple[int, ...]:
    """Tabulated exponents of the Weyl group (used only as a cross-check)."""
    if t == "A":
        return tuple(range(1, n + 1))
    if t in "BC":
        return tuple(range(1, 2 * n, 2))
    if t == "D":
        return tuple(sorted(list(range(1, 2 * n - 2, 2)) + [n - 1]))
    return {
        ("E", 6): (1, 4, 5, 7, 8, 11),
        ("E", 7): (1, 5, 7, 9, 11, 13, 17),
        ("E", 8): (1, 7, 11, 13, 17, 19, 23, 29),
        ("F", 4): (1, 5, 7, 11),
        ("G", 2): (1, 5),
    }[(t, n)]


def validate_type(t: str, n: int) -> None:
    ok = (
        (t == "A" and n >= 1)
        or (t in ("B", "C") and n >= 2)
        or (t == "D" and n >= 4)
        or (t == "E" and n in (6, 7, 8))
        or (t == "F" and n == 4)
        or (t == "G" and n == 2)
    )
    if not ok:
        raise RootSystemError(f"no irreducible root system {t}_{n}; allowed: {VALID_RANGES}")


class RootSystem:
    """An irreducible reduced root system with its positive roots.

    Positive roots carry bitset bookkeeping: ``up[i]`` is the mask of roots
    ``>= root i`` and ``down[i]`` of roots ``<= root i``.
    """

    def __init__(self, type_label: str, rank: int):
        validate_type(type_label, rank)
        self.type_label = type_label
        self.rank = rank
        simple = _simple_roots(type_label, rank)
        self._simple_euclid = simple
        n = rank
        norms = [linalg.dot(a, a) for a in simple]
        self.cartan = tuple(
            tuple(int(2 * linalg.dot(simple[i], simple[j]) / norms[i]) for j in range(n))
            for i in range(n)
        )
        coords = _generate(self.cartan)
        coords.sort(key=lambda c: (sum(c), c))
        key = (type_label, rank)
        self.positive_roots: tuple[Root, ...] = tuple(
            Root(i, c, tuple(sum((ci * s[k] for ci, s in zip(c, simple)), Fraction(0))
                             for k in range(len(simple[0]))), key)
            for i, c in enumerate(coords)
        )
        self.index_of = {r.simple_coords: r.index for r in self.positive_roots}
        self.simple_roots = tuple(
            self.positive_roots[self.index_of[tuple(int(i == j) for j in range(n))]]
            for i in range(n)
        )
        self.size = len(self.positive_roots)
        self.full_mask = (1 << self.size) - 1
        up, down = [], []
        for a in self.positive_roots:
            u = d = 0
            for b in self.positive_roots:
                if all(x <= y for x, y in zip(a.simple_coords, b.simple_coords)):
                    u |= 1 << b.index
                if all(y <= x for x, y in zip(a.simple_coords, b.simple_coords)):
                    d |= 1 << b.index
            up.append(u)
            down.append(d)
        self.up = tuple(up)
        self.down = tuple(down)
        self.heights = tuple(r.height for r in self.positive_roots)

    def __repr__(self) -> str:
        return f"RootSystem({self.type_label}{self.rank})"

    @property
    def name(self) -> str:
        return f"{self.type_label}{self.rank}"

    @property
    def coxeter_number(self) -> int:
        return COXETER_NUMBER[self.type_label](self.rank)

    @property
    def ambient_dim(self) -> int:
        return len(self._simple_euclid[0])

    @cached_property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        s = self._simple_euclid
        return tuple(tuple(linalg.dot(a, b) for b in s) for a in s)

    @cached_property
    def normals(self) -> tuple[tuple[int, ...], ...]:
        """Primitive integer normal of each root hyperplane in simple-root coordinates of V.

        The functional ``x -> (root, x)`` evaluated on the simple roots; this is
        the root's Euclidean vector written in the basis dual to the simple roots.
        """
        g = self.gram
        n = self.rank
        return tuple(
            linalg.primitive([sum(g[i][k] * r.simple_coords[k] for k in range(n)) for i in range(n)])
            for r in self.positive_roots
        )

    @cached_property
    def highest_root(self) -> Root:
        maxes = [r for r in self.positive_roots if self.up[r.index] == 1 << r.index]
        assert len(maxes) == 1
        return maxes[0]

    def root(self, coords: Sequence[int]) -> Root:
        try:
            return self.positive_roots[self.index_of[tuple(coords)]]
        except KeyError:
            raise RootSystemError(f"{tuple(coords)} is not a positive root of {self.name}") from None

    @cached_property
    def _euclid_index(self) -> dict:
        return {r.euclid_coords: r.index for r in self.positive_roots}

    def root_from_euclid(self, vec: Sequence) -> Root:
        """Look up a positive root by its Bourbaki coordinates (e.g. ``e_1 + e_n``)."""
        key = tuple(Fraction(x) for x in vec)
        try:
            return self.positive_roots[self._euclid_index[key]]
        except KeyError:
            raise RootSystemError(f"{vec} is not a positive root of {self.name}") from None

    def e(self, *signed: int) -> Root:
        """Root ``±e_i ± e_j`` given 1-based signed indices, e.g. ``e(1, -4)``."""
        v = [Fraction(0)] * self.ambient_dim
        for s in signed:
            v[abs(s) - 1] += 1 if s > 0 else -1
        return self.root_from_euclid(v)

    def roots_of(self, mask: int) -> list[Root]:
        return [self.positive_roots[i] for i in iter_bits(mask)]

    def mask_of(self, roots) -> int:
        m = 0
        for r in roots:
            m |= 1 << self._own(r).index
        return m

    def _own(self, r: Root) -> Root:
        if r.system != (self.type_label, self.rank) or self.positive_roots[r.index] != r:
            raise RootSystemError(f"root {r.simple_coords} does not belong to {self.name}")
        return r

    @cached_property
    def cover_edges(self) -> tuple[tuple[int, int], ...]:
        """Covering pairs ``(i, j)`` of the root poset (``j`` covers ``i``)."""
        edges = []
        for i in range(self.size):
            for j in iter_bits(self.up[i] & ~(1 << i)):
                if self.heights[j] == self.heights[i] + 1:
                    edges.append((i, j))
        return tuple(edges)


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _generate(cartan) -> list[tuple[int, ...]]:
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for b in layer:
            for i in range(n):
                # q: how far b - k a_i stays a root; p - q = -<b, a_i^vee>
                q = 0
                c = list(b)
                while True:
                    c[i] -= 1
                    if tuple(c) in roots:
                        q += 1
                    else:
                        break
                pairing = sum(b[j] * cartan[i][j] for j in range(n))
                p = q - pairing
                if p > 0:
                    new = list(b)
                    new[i] += 1
                    new = tuple(new)
                    if new not in roots:
                        roots.add(new)
                        nxt.append(new)
        layer = nxt
    return list(roots)


@lru_cache(maxsize=None)
def build_root_system(type_label: str, rank: int) -> RootSystem:
    return RootSystem(type_label.upper(), int(rank))


def leq(rs: RootSystem, a: Root, b: Root) -> bool:
    a = rs._own(a)
    b = rs._own(b)
    return bool(rs.up[a.index] >> b.index & 1)


@dataclass(frozen=True)
class ParabolicSubsystem:
    system: RootSystem = field(repr=False)
    removed_simple: int
    member_mask: int
    complement_mask: int

    @cached_property
    def components(self) -> tuple["Component", ...]:
        return tuple(irreducible_components(self))


def maximal_parabolic(rs: RootSystem, j: int) -> ParabolicSubsystem:
    if not 0 <= j < rs.rank:
        raise RootSystemError(f"simple root index {j} out of range 0..{rs.rank - 1}")
    return _maximal_parabolic(rs, j)


@lru_cache(maxsize=None)
def _maximal_parabolic(rs: RootSystem, j: int) -> ParabolicSubsystem:
    member = 0
    for r in rs.positive_roots:
        if r.simple_coords[j] == 0:
            member |= 1 << r.index
    return ParabolicSubsystem(rs, j, member, rs.full_mask & ~member)


@dataclass(frozen=True)
class Component:
    """An irreducible component of a standard parabolic, identified by type.

    ``embedding[k]`` is the ambient simple-root index of Bourbaki node ``k``
    of the component type. ``root_map[i]`` is the ambient index of the
    component's positive root ``i``.
    """

    type_label: str
    rank: int
    embedding: tuple[int, ...]
    root_map: tuple[int, ...] = field(repr=False)

    @property
    def system(self) -> RootSystem:
        return build_root_system(self.type_label, self.rank)

    def pull(self, ambient_mask: int) -> int:
        """Ambient positive-root bitset -> bitset over the component's roots."""
        m = 0
        for i, a in enumerate(self.root_map):
            if ambient_mask >> a & 1:
                m |= 1 << i
        return m

    def push(self, mask: int) -> int:
        m = 0
        for i in iter_bits(mask):
            m |= 1 << self.root_map[i]
        return m


def _candidates(m: int):
    yield "A", m
    if m >= 2:
        yield "B", m
    if m >= 3:
        yield "C", m
    if m >= 4:
        yield "D", m
    if m in (6, 7, 8):
        yield "E", m
    if m == 4:
        yield "F", m
    if m == 2:
        yield "G", m


def _match_cartan(target, sub, nodes) -> tuple[int, ...] | None:
    """Find ``sigma`` with ``target[k][l] == sub[sigma k][sigma l]``."""
    m = len(nodes)
    assign: list[int] = []
    used = set()

    def extend(k):
        if k == m:
            return True
        for v in nodes:
            if v in used or sub[v][v] != target[k][k]:
                continue
            if all(target[k][l] == sub[v][assign[l]] and target[l][k] == sub[assign[l]][v]
                   for l in range(k)):
                assign.append(v)
                used.add(v)
                if extend(k + 1):
                    return True
                assign.pop()
                used.discard(v)
        return False

    return tuple(assign) if extend(0) else None


def _identify(rs: RootSystem, nodes: tuple[int, ...]) -> Component:
    m = len(nodes)
    for t, k in _candidates(m):
        canon = build_root_system(t, k)
        emb = _match_cartan(canon.cartan, rs.cartan, nodes)
        if emb is None:
            continue
        root_map = []
        for r in canon.positive_roots:
            c = [0] * rs.rank
            for node, coeff in zip(emb, r.simple_coords):
                c[node] = coeff
            root_map.append(rs.index_of[tuple(c)])
        return Component(t, k, emb, tuple(root_map))
    raise AssertionError(f"unidentified subdiagram {nodes} of {rs.name}")


def irreducible_components(p: ParabolicSubsystem) -> list[Component]:
    return list(_components(p.system, p.removed_simple))


@lru_cache(maxsize=None)
def _components(rs: RootSystem, j: int) -> tuple[Component, ...]:
    rest = [i for i in range(rs.rank) if i != j]
    seen: set[int] = set()
    comps = []
    for start in rest:
        if start in seen:
            continue
        stack, block = [start], []
        seen.add(start)
        while stack:
            v = stack.pop()
            block.append(v)
            for w in rest:
                if w not in seen and rs.cartan[v][w] != 0:
                    seen.add(w)
                    stack.append(w)
        comps.append(_identify(rs, tuple(sorted(block))))
    return tuple(comps)


def _e_layout(rank: int) -> list[int]:
    # top row of the E-type display lists nodes 1,3,4,...,n; node 2 hangs below
    return [0] + list(range(2, rank))


def parse_root_label(rs: RootSystem, label: str) -> Root:
    """Parse a coefficient string such as ``"0122"`` (F4) or ``"00111/0"`` (E6)."""
    text = label.strip().replace(" ", "")
    n = rs.rank
    if rs.type_label == "E":
        if "/" not in text:
            raise RootSystemError(
                f"E-type label {label!r} must read 'top/bottom', e.g. {'0' * (n - 1)}/1")
        top, bottom = text.split("/", 1)
        if len(top) != n - 1 or len(bottom) != 1:
            raise RootSystemError(f"E{n} label needs {n - 1} digits, '/', 1 digit; got {label!r}")
        coeffs = [0] * n
        for pos, d in zip(_e_layout(n), top):
            coeffs[pos] = _digit(d, label)
        coeffs[1] = _digit(bottom, label)
    else:
        if len(text) != n:
            raise RootSystemError(f"{rs.name} label needs {n} digits; got {label!r}")
        coeffs = [_digit(d, label) for d in text]
    key = tuple(coeffs)
    if key not in rs.index_of:
        h = sum(coeffs)
        heights = sorted(set(rs.heights), key=lambda x: (abs(x - h), x))[:3]
        near = ", ".join(
            f"height {x}: " + " ".join(root_label(rs, r) for r in rs.positive_roots if r.height == x)
            for x in sorted(heights)
        )
        raise RootSystemError(f"{label!r} is not a positive root of {rs.name}; nearest {near}")
    return rs.positive_roots[rs.index_of[key]]


def _digit(d: str, label: str) -> int:
    if not d.isdigit():
        raise RootSystemError(f"bad coefficient {d!r} in label {label!r}")
    return int(d)


def root_label(rs: RootSystem, r: Root) -> str:
    c = r.simple_coords
    if rs.type_label == "E":
        return "".join(str(c[i]) for i in _e_layout(rs.rank)) + "/" + str(c[1])
    return "".join(map(str, c))
