"""Combinatorial K(pi,1) certificates for arrangements of ideal type.

A certificate is a recursion tree. At each level a maximal standard parabolic
``Φ₀`` is chosen such that either no root of the complement ``Iᶜ`` lies
outside ``Φ₀``, or the roots of ``Iᶜ`` outside ``Φ₀`` form a chain in which
every pair is linearly dependent with some root of ``Φ₀⁺``. The problem then
descends to ``I₀ = I ∩ Φ₀⁺``, split over the irreducible components of ``Φ₀``.
The leaves are the full Weyl arrangement, the empty arrangement and
arrangements of rank at most two.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from . import kernels, linalg
from .ideals import Ideal, ideal_masks
from .roots import (
    ParabolicSubsystem,
    RootSystem,
    RootSystemError,
    build_root_system,
    iter_bits,
    maximal_parabolic,
    root_label,
)

__all__ = [
    "ConditionReport",
    "Certificate",
    "check_condition",
    "certify",
    "count_certified",
    "dependence_table",
    "DnClass",
    "classify_Dn",
    "TABLE1",
]

FULL_WEYL = "FullWeyl"
EMPTY = "EmptyArrangement"
RANK2 = "RankAtMost2"
PRODUCT = "Product"
FIBRATION = "Fibration"
EMPTY_STEP = "EmptyComplementStep"
FAILURE = "Failure"

# golden constants per exceptional type:
# (all ideals, ideals certified through the parabolic recursion)
TABLE1 = {
    "E6": (833, 771),
    "E7": (4160, 3433),
    "E8": (25080, 18902),
    "F4": (105, 85),
    "G2": (8, 8),
}


@dataclass(frozen=True)
class ConditionReport:
    parabolic: int
    intersection: int
    is_empty: bool
    is_chain: bool
    unique_heights: bool
    dependence_ok: bool
    witness_failures: tuple[tuple[int, int], ...] = ()

    @property
    def holds(self) -> bool:
        return (not self.is_empty) and self.is_chain and self.unique_heights and self.dependence_ok

    def to_json(self, rs: RootSystem | None = None) -> dict:
        d = {
            "parabolic": self.parabolic,
            "intersection": _labels(rs, self.intersection) if rs else self.intersection,
            "is_empty": self.is_empty,
            "is_chain": self.is_chain,
            "unique_heights": self.unique_heights,
            "dependence_ok": self.dependence_ok,
            "holds": self.holds,
        }
        if self.witness_failures:
            d["witness_failures"] = [
                [root_label(rs, rs.positive_roots[a]), root_label(rs, rs.positive_roots[b])]
                if rs else [a, b]
                for a, b in self.witness_failures
            ]
        return d


def _labels(rs: RootSystem, mask: int) -> list[str]:
    return [root_label(rs, rs.positive_roots[i]) for i in iter_bits(mask)]


@dataclass(frozen=True)
class Certificate:
    kind: str
    system: str
    ideal_mask: int
    parabolic: int | None = None
    report: ConditionReport | None = None
    children: tuple["Certificate", ...] = ()
    reports: tuple[ConditionReport, ...] = field(default=(), repr=False)

    @property
    def positive(self) -> bool:
        return self.kind != FAILURE and all(c.positive for c in self.children)

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)

    def walk(self) -> Iterable["Certificate"]:
        yield self
        for c in self.children:
            yield from c.walk()

    def fibration_chain(self) -> list[str]:
        """System names along the first-child path, e.g. ``['E8', 'E7', 'E6', 'D5']``."""
        out = [self.system]
        node = self
        while node.children:
            node = node.children[0]
            if node.kind != PRODUCT:
                out.append(node.system)
        return out

    def to_json(self) -> dict:
        d: dict = {"kind": self.kind, "system": self.system}
        if self.kind == PRODUCT:
            d["children"] = [c.to_json() for c in self.children]
            return d
        rs = _system(self.system)
        d["generators"] = _generator_labels(rs, self.ideal_mask)
        if self.parabolic is not None:
            d["parabolic"] = self.parabolic
        if self.report is not None:
            d["condition"] = self.report.to_json(rs)
        if self.kind == FAILURE:
            d["reports"] = [r.to_json(rs) for r in self.reports]
        if self.children:
            d["children"] = [c.to_json() for c in self.children]
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def _system(name: str) -> RootSystem:
    return build_root_system(name[0], int(name[1:]))


def _generator_labels(rs: RootSystem, mask: int) -> list[str]:
    return Ideal(rs, mask).labels()


@lru_cache(maxsize=None)
def dependence_table(rs: RootSystem) -> tuple[tuple[int, ...], ...]:
    """``table[a][b]``: bitset of positive roots in the plane spanned by roots a, b.

    Planes are keyed by the primitive Plücker vector of the spanning pair, in
    simple-root coordinates (a linear image of the Euclidean coordinates, so
    ranks agree).
    """
    n = rs.size
    coords = [r.simple_coords for r in rs.positive_roots]
    rk = rs.rank
    key_of = {}
    planes: dict[tuple[int, ...], int] = {}
    for a in range(n):
        u = coords[a]
        for b in range(a + 1, n):
            v = coords[b]
            k = linalg.canonical_ray(
                [u[i] * v[j] - u[j] * v[i] for i in range(rk) for j in range(i + 1, rk)])
            key_of[a, b] = k
            planes[k] = planes.get(k, 0) | (1 << a) | (1 << b)
    table = [[0] * n for _ in range(n)]
    for (a, b), k in key_of.items():
        table[a][b] = table[b][a] = planes[k]
    for a in range(n):
        table[a][a] = 1 << a
    return tuple(tuple(row) for row in table)


@lru_cache(maxsize=None)
def _comparable(rs: RootSystem) -> tuple[int, ...]:
    return tuple(u | d for u, d in zip(rs.up, rs.down))


def check_condition(rs: RootSystem, I: Ideal, p: ParabolicSubsystem) -> ConditionReport:
    if I.is_empty:
        raise RootSystemError("the chain condition is stated for nonempty ideals")
    if p.system is not rs:
        raise RootSystemError("parabolic belongs to a different root system")
    return _check(rs, I.member_mask, p.removed_simple)


def _check(rs: RootSystem, mask: int, j: int) -> ConditionReport:
    p = maximal_parabolic(rs, j)
    inter = p.complement_mask & ~mask
    if not inter:
        return ConditionReport(j, 0, True, True, True, True)
    is_chain, unique, failures = kernels.condition_flags(
        inter, rs.heights, _comparable(rs), dependence_table(rs), p.member_mask)
    return ConditionReport(j, inter, False, bool(is_chain), bool(unique), not failures,
                           tuple(tuple(f) for f in failures))


def arrangement_rank(rs: RootSystem, complement_mask: int) -> int:
    """Rank of A_I: the complement is a lower set, so its span is that of its simple roots."""
    return sum(1 for s in rs.simple_roots if complement_mask >> s.index & 1)


_CACHE: dict[tuple[str, int, int], Certificate] = {}


def certify(rs: RootSystem, I: Ideal) -> Certificate:
    if I.system is not rs:
        raise RootSystemError("ideal belongs to a different root system")
    return _certify(rs, I.member_mask)


def _certify(rs: RootSystem, mask: int) -> Certificate:
    key = (rs.type_label, rs.rank, mask)
    hit = _CACHE.get(key)
    if hit is not None:
        return hit
    name = rs.name
    if mask == rs.full_mask:
        cert = Certificate(EMPTY, name, mask)
    elif mask == 0:
        cert = Certificate(FULL_WEYL, name, mask)
    elif arrangement_rank(rs, rs.full_mask & ~mask) <= 2:
        cert = Certificate(RANK2, name, mask)
    else:
        cert = None
        reports = []
        for j in range(rs.rank):
            rep = _check(rs, mask, j)
            reports.append(rep)
            if rep.is_empty:
                kind = EMPTY_STEP
            elif rep.holds:
                kind = FIBRATION
            else:
                continue
            child = _descend(rs, mask, j)
            if child.positive:
                cert = Certificate(kind, name, mask, j, rep if kind == FIBRATION else None, (child,))
                break
        if cert is None:
            cert = Certificate(FAILURE, name, mask, reports=tuple(reports))
    _CACHE[key] = cert
    return cert


def _descend(rs: RootSystem, mask: int, j: int) -> Certificate:
    p = maximal_parabolic(rs, j)
    parts = [(c.system, c.pull(mask)) for c in p.components]
    kids = tuple(_certify(s, m) for s, m in parts)
    if len(kids) == 1:
        return kids[0]
    return Certificate(PRODUCT, "+".join(k.system for k in kids), mask & p.member_mask, children=kids)


def count_certified(rs: RootSystem) -> tuple[int, int]:
    total = certified = 0
    for m in ideal_masks(rs):
        total += 1
        certified += _certify(rs, m).positive
    return total, certified


@dataclass(frozen=True)
class DnClass:
    """Case of a D_n ideal in the generator-shape case analysis.

    ``kind`` is one of ``FullWeyl`` (I = ∅), ``ThmMainCase``,
    ``PrincipalCase``, ``TypeI``, ``TypeII``, ``TypeIII`` or ``Hole``.
    """

    kind: str
    params: tuple[int, ...] = ()

    def __str__(self) -> str:
        return f"{self.kind}{self.params}" if self.params else self.kind


def _e_pair(rs: RootSystem, root) -> tuple[int, int] | None:
    """``(s, t)`` (1-based) when ``root = e_s + e_t``, else None."""
    pos = [i + 1 for i, x in enumerate(root.euclid_coords) if x]
    if len(pos) == 2 and all(root.euclid_coords[i - 1] == 1 for i in pos):
        return pos[0], pos[1]
    return None


def classify_Dn(rs: RootSystem, I: Ideal) -> DnClass:
    if rs.type_label != "D":
        raise RootSystemError(f"classify_Dn needs a type D system, got {rs.name}")
    n = rs.rank
    if I.is_empty:
        return DnClass("FullWeyl")
    plus, minus = rs.e(1, n), rs.e(1, -n)
    comp = I.complement_mask
    if not (comp >> plus.index & 1 and comp >> minus.index & 1):
        return DnClass("ThmMainCase")
    pairs = [_e_pair(rs, g) for g in I.generators()]
    if None in pairs:
        return DnClass("Hole", ())
    pairs.sort()
    if pairs == [(n - 2, n - 1)]:
        return DnClass("PrincipalCase")
    if len(pairs) == 1:
        s, t = pairs[0]
        if t == n - 1 and 1 <= s < n - 2:
            return DnClass("TypeI", (s,))
        if 1 <= s < t < n - 1:
            return DnClass("TypeII", (s, t))
    if len(pairs) == 2:
        (r, t1), (s, t) = pairs
        if t1 == n - 1 and 1 <= r < n - 2 and r < s < t < n - 1:
            return DnClass("TypeIII", (r, s, t))
    return DnClass("Hole", tuple(x for p in pairs for x in p))
