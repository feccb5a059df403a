"""Brute-force enumeration of monomial ideals with a prescribed h-vector.

The search runs degree by degree. In degree ``d`` the piece ``I_d`` must
contain ``R_1 * I_{d-1}`` and have exactly ``dim R_d - h_d`` monomials; the
extra monomials are chosen one at a time, and a partial choice is abandoned
as soon as its multiples in degree ``d + 1`` outnumber the room available
there. Pieces are bitmasks over the monomials of each degree.

Only monomial ideals are enumerated. Two distinct socle-vectors prove
non-uniqueness; a single one proves nothing by itself outside codimension 3.
"""

from __future__ import annotations

import os
import time
from collections.abc import Iterator
from dataclasses import dataclass, field

from .monomial_algebra import MonomialIdeal, dim_r, monomial_positions, monomials, times_variable
from .vectors import HVector, SocleVector, max_socle_for_h

DEFAULT_MAX_NODES = int(os.environ.get("SOCLEVEC_MAX_NODES", 10**6))
DEFAULT_MAX_SECONDS = float(os.environ.get("SOCLEVEC_MAX_SECONDS", 60.0))


@dataclass
class Budget:
    """Node and wall-clock limits for one search; records whether they were hit."""

    max_nodes: int = DEFAULT_MAX_NODES
    max_seconds: float = DEFAULT_MAX_SECONDS
    nodes: int = 0
    exhausted: bool = False
    _start: float | None = field(default=None, repr=False)

    def tick(self) -> bool:
        if self._start is None:
            self._start = time.monotonic()
        self.nodes += 1
        if self.nodes > self.max_nodes or (
            self.nodes % 1024 == 0 and time.monotonic() - self._start > self.max_seconds
        ):
            self.exhausted = True
        return not self.exhausted


class _Tables:
    def __init__(self, r: int, top: int):
        self.r = r
        self.size = [dim_r(r, d) for d in range(top + 2)]
        self.full = [(1 << n) - 1 for n in self.size]
        # up[d][k]: bitmask in degree d+1 of the multiples of monomial k of degree d
        self.up = []
        for d in range(top + 1):
            pos = monomial_positions(r, d + 1)
            row = []
            for m in monomials(r, d):
                mask = 0
                for v in range(r):
                    mask |= 1 << pos[times_variable(m, v)]
                row.append(mask)
            self.up.append(row)

    def shadow(self, d: int, mask: int) -> int:
        out = 0
        row = self.up[d]
        while mask:
            low = mask & -mask
            out |= row[low.bit_length() - 1]
            mask ^= low
        return out

    def socle_count(self, d: int, piece: int, above: int) -> int:
        count = 0
        row = self.up[d]
        outside = self.full[d] & ~piece
        missing = ~above
        while outside:
            low = outside & -outside
            if not row[low.bit_length() - 1] & missing:
                count += 1
            outside ^= low
        return count


def _search(h: HVector, budget: Budget) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Yield ``(piece masks for degrees 0..e+1, socle counts for 0..e)``."""
    r, e = h.r, h.e
    tables = _Tables(r, e + 1)
    need = [tables.size[d] - h[d] for d in range(e + 2)]
    pieces = [0] * (e + 2)
    socle = [0] * (e + 1)

    def degree(d: int) -> Iterator:
        forced = tables.shadow(d - 1, pieces[d - 1])
        room = need[d] - forced.bit_count()
        if room < 0:
            return
        if d == e + 1:
            pieces[d] = tables.full[d]
            socle[e] = tables.socle_count(e, pieces[e], pieces[d])
            yield tuple(pieces), tuple(socle)
            return
        free = [k for k in range(tables.size[d]) if not forced >> k & 1]
        limit = need[d + 1]
        up = tables.up[d]
        start_shadow = tables.shadow(d, forced)
        if start_shadow.bit_count() > limit:
            return

        def choose(pos: int, remaining: int, mask: int, shadow: int) -> Iterator:
            if not budget.tick():
                return
            if remaining == 0:
                pieces[d] = mask
                socle[d - 1] = tables.socle_count(d - 1, pieces[d - 1], mask)
                yield from degree(d + 1)
                return
            for k in range(pos, len(free) - remaining + 1):
                bit = free[k]
                grown = shadow | up[bit]
                if grown.bit_count() > limit:
                    continue
                yield from choose(k + 1, remaining - 1, mask | 1 << bit, grown)
                if budget.exhausted:
                    return

        yield from choose(0, room, forced, start_shadow)

    if e < 1:
        return
    pieces[0] = 0
    yield from degree(1)


def _to_ideal(r: int, masks: tuple[int, ...]) -> MonomialIdeal:
    pieces = []
    for d, mask in enumerate(masks):
        ordered = monomials(r, d)
        pieces.append(frozenset(ordered[k] for k in range(len(ordered)) if mask >> k & 1))
    return MonomialIdeal(r, tuple(pieces))


def enumerate_monomial_ideals(h: HVector, budget: Budget | None = None) -> Iterator[MonomialIdeal]:
    """Every monomial ideal whose quotient has h-vector ``h``, each exactly once.

    Ideals are stored through degree ``e + 1``. If the budget runs out the
    stream simply ends early and ``budget.exhausted`` is set.
    """
    from .monomial_algebra import hilbert_function

    budget = budget or Budget()
    for masks, _ in _search(h, budget):
        ideal = _to_ideal(h.r, masks)
        if hilbert_function(ideal) != h:
            raise AssertionError(f"enumerated an ideal with the wrong h-vector for {h}")
        yield ideal


@dataclass
class SocleCatalog:
    h: HVector
    socle_vectors: set[SocleVector]
    ideal_count: int
    exhaustive: bool
    examples: dict[SocleVector, MonomialIdeal] = field(default_factory=dict)

    @property
    def is_singleton(self) -> bool:
        return len(self.socle_vectors) == 1

    def to_json(self) -> dict:
        return {
            "h": list(self.h),
            "exhaustive": self.exhaustive,
            "ideal_count": self.ideal_count,
            "scope": "monomial ideals only",
            "socle_vectors": [
                {"s": list(s), "example": self.examples[s].to_json()}
                for s in sorted(self.socle_vectors, key=lambda v: v.entries, reverse=True)
            ],
        }


def socle_catalog(h: HVector, budget: Budget | None = None, stop_at: int | None = None) -> SocleCatalog:
    """Socle-vectors achieved by monomial ideals with h-vector ``h``.

    With ``stop_at`` the search ends once that many distinct socle-vectors are
    known; the catalog is then marked non-exhaustive.
    """
    budget = budget or Budget()
    found: dict[SocleVector, MonomialIdeal] = {}
    count = 0
    stopped = False
    top = max_socle_for_h(h)
    for masks, counts in _search(h, budget):
        count += 1
        s = SocleVector(counts)
        if not s <= top:
            raise AssertionError(f"socle-vector {s} exceeds the maximum {top}")
        if s not in found:
            found[s] = _to_ideal(h.r, masks)
            if stop_at is not None and len(found) >= stop_at:
                stopped = True
                break
    return SocleCatalog(h, set(found), count, not (budget.exhausted or stopped), found)
