"""Upper order ideals of the positive-root poset."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import prod
from fractions import Fraction
from typing import Iterable, Iterator

from . import kernels
from .roots import (
    Component,
    ParabolicSubsystem,
    Root,
    RootSystem,
    RootSystemError,
    iter_bits,
    root_label,
    weyl_exponents,
)

__all__ = [
    "Ideal",
    "HeightPartition",
    "enumerate_ideals",
    "ideal_generated_by",
    "exponents",
    "restrict_ideal",
    "is_upper_closed",
    "is_additively_closed",
    "catalan_number",
    "dual_partition",
]


@dataclass(frozen=True)
class Ideal:
    system: RootSystem = field(repr=False, compare=False, hash=False)
    member_mask: int
    key: tuple[str, int] = field(default=("", 0), repr=False)

    def __post_init__(self):
        if not self.key[0]:
            object.__setattr__(self, "key", (self.system.type_label, self.system.rank))

    @property
    def complement_mask(self) -> int:
        return self.system.full_mask & ~self.member_mask

    @property
    def is_empty(self) -> bool:
        return self.member_mask == 0

    @property
    def is_full(self) -> bool:
        return self.member_mask == self.system.full_mask

    def __len__(self) -> int:
        return self.member_mask.bit_count()

    def __contains__(self, r: Root) -> bool:
        return bool(self.member_mask >> self.system._own(r).index & 1)

    def roots(self) -> list[Root]:
        return self.system.roots_of(self.member_mask)

    def complement(self) -> list[Root]:
        return self.system.roots_of(self.complement_mask)

    def generators(self) -> list[Root]:
        """Minimal elements of the ideal (its antichain of generators)."""
        rs = self.system
        gens = []
        for i in iter_bits(self.member_mask):
            if not (rs.down[i] & ~(1 << i)) & self.member_mask:
                gens.append(rs.positive_roots[i])
        return gens

    def labels(self) -> list[str]:
        return [root_label(self.system, r) for r in self.generators()]


def is_upper_closed(rs: RootSystem, mask: int) -> bool:
    return all(rs.up[i] & ~mask == 0 for i in iter_bits(mask))


def is_additively_closed(rs: RootSystem, mask: int) -> bool:
    """alpha in I, beta in Phi+, alpha + beta in Phi+  =>  alpha + beta in I."""
    for i in iter_bits(mask):
        a = rs.positive_roots[i].simple_coords
        for b in rs.positive_roots:
            s = tuple(x + y for x, y in zip(a, b.simple_coords))
            k = rs.index_of.get(s)
            if k is not None and not mask >> k & 1:
                return False
    return True


@lru_cache(maxsize=None)
def _comparable(rs: RootSystem) -> tuple[int, ...]:
    return tuple(u | d for u, d in zip(rs.up, rs.down))


@lru_cache(maxsize=64)
def _all_masks(rs: RootSystem) -> tuple[int, ...]:
    return tuple(kernels.antichain_ideals(list(rs.up), list(_comparable(rs)), rs.size))


def enumerate_ideals(rs: RootSystem) -> Iterator[Ideal]:
    """Yield every upper ideal of ``rs`` once, the empty ideal first."""
    for m in _all_masks(rs):
        yield Ideal(rs, m)


def ideal_masks(rs: RootSystem) -> tuple[int, ...]:
    return _all_masks(rs)


def ideal_generated_by(rs: RootSystem, gens: Iterable[Root]) -> Ideal:
    m = 0
    for g in gens:
        m |= rs.up[rs._own(g).index]
    return Ideal(rs, m)


def ideal_from_mask(rs: RootSystem, mask: int) -> Ideal:
    if mask & ~rs.full_mask or not is_upper_closed(rs, mask):
        raise RootSystemError(f"mask {mask:#x} is not an upper ideal of {rs.name}")
    return Ideal(rs, mask)


def dual_partition(parts: Iterable[int]) -> tuple[int, ...]:
    parts = sorted((p for p in parts if p > 0), reverse=True)
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > k) for k in range(parts[0]))


@dataclass(frozen=True)
class HeightPartition:
    counts: dict[int, int]
    dual: tuple[int, ...]
    rank: int

    @property
    def exponents(self) -> tuple[int, ...]:
        """Dual partition padded with zeros to the rank."""
        return self.dual + (0,) * (self.rank - len(self.dual))


def exponents(rs: RootSystem, I: Ideal) -> HeightPartition:
    counts = Counter(rs.heights[i] for i in iter_bits(I.complement_mask))
    ordered = [counts[h] for h in sorted(counts)]
    return HeightPartition(dict(sorted(counts.items())), dual_partition(ordered), rs.rank)


def restrict_ideal(rs: RootSystem, I: Ideal, p: ParabolicSubsystem) -> list[tuple[Component, Ideal]]:
    """``I ∩ Φ₀⁺`` split over the irreducible components of the parabolic."""
    if p.system is not rs or I.system is not rs:
        raise RootSystemError("ideal and parabolic belong to different root systems")
    inter = I.member_mask & p.member_mask
    return [(c, Ideal(c.system, c.pull(inter))) for c in p.components]


def catalan_number(rs: RootSystem) -> int:
    h = rs.coxeter_number
    e = weyl_exponents(rs.type_label, rs.rank)
    value = prod(Fraction(x + h + 1, x + 1) for x in e)
    assert value.denominator == 1
    return int(value)
