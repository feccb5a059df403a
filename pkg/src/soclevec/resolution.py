"""Graded Betti numbers of lex-segment ideals and what they force on the socle.

Betti tables are indexed in resolution coordinates: ``beta[(i, j)]`` is the
multiplicity of ``R(-j)`` in the i-th free module. The last module (i = r)
carries the socle, with ``beta[(r, j)] = s_{j-r}``.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import NamedTuple

from .macaulay import binom, macaulay_bound, min_prev
from .monomial_algebra import MonomialIdeal, lex_ideal_for_h, m_of
from .vectors import HVector, InvalidVector


class NotLexSegment(ValueError):
    pass


@dataclass(frozen=True)
class BettiTable:
    r: int
    beta: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.beta.get(key, 0)

    def shifts(self) -> list[int]:
        return sorted({j for (_, j), v in self.beta.items() if v})

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "beta": [[i, j, v] for (i, j), v in sorted(self.beta.items()) if v],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> BettiTable:
        beta = {}
        for i, j, v in data["beta"]:
            beta[(int(i), int(j))] = beta.get((int(i), int(j)), 0) + int(v)
        return cls(int(data["r"]), beta)

    def format_grid(self) -> str:
        """Rows i = 1..r, one column per shift j, zero entries left blank."""
        cols = self.shifts()
        if not cols:
            return "(empty table)"
        cells = [["i\\j"] + [str(j) for j in cols]]
        for i in range(1, self.r + 1):
            cells.append([str(i)] + [str(self[(i, j)]) if self[(i, j)] else "" for j in cols])
        widths = [max(len(row[c]) for row in cells) for c in range(len(cells[0]))]
        return "\n".join(
            "  ".join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip() for row in cells
        )


def ek_betti(ideal: MonomialIdeal) -> BettiTable:
    """Betti numbers of ``R/ideal`` for a lex-segment ideal, via Eliahou-Kervaire.

    ``beta[i, j]`` sums ``C(m(T) - 1, i - 1)`` over minimal generators ``T`` of
    degree ``j - i + 1``.
    """
    if not ideal.is_lex_segment():
        raise NotLexSegment("the Eliahou-Kervaire formula needs a lex-segment (stable) ideal")
    if not ideal.is_artinian:
        raise ValueError("ideal must be stored through a degree where it is all of R_d")
    r = ideal.r
    beta: dict[tuple[int, int], int] = {}
    for deg, gens in ideal.all_generators().items():
        for t in gens:
            m = m_of(t)
            for i in range(1, r + 1):
                c = binom(m - 1, i - 1)
                if c:
                    key = (i, deg + i - 1)
                    beta[key] = beta.get(key, 0) + c
    return BettiTable(r, beta)


def lex_betti(h: HVector) -> BettiTable:
    return ek_betti(lex_ideal_for_h(h))


class Eq1Result(NamedTuple):
    ok: bool
    residual: list[int]


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def eq1_check(h: HVector, table: BettiTable) -> Eq1Result:
    """Compare ``h(z) (1 - z)^r`` with ``1 + sum (-1)^i beta_{i,j} z^j``.

    ``residual`` is the coefficient list of left minus right, trailing zeros
    removed; it is empty exactly when the identity holds.
    """
    if h.e < 1:
        raise InvalidVector("the Betti identity needs e >= 1", degree=0)
    if table.r != h.r:
        raise ValueError(f"table has r = {table.r} but h has codimension {h.r}")
    lhs = list(h)
    for _ in range(h.r):
        lhs = _poly_mul(lhs, [1, -1])
    top = max([len(lhs) - 1] + [j for (_, j) in table.beta])
    rhs = [0] * (top + 1)
    rhs[0] = 1
    for (i, j), v in table.beta.items():
        rhs[j] += (-1) ** i * v
    lhs += [0] * (top + 1 - len(lhs))
    residual = [a - b for a, b in zip(lhs, rhs)]
    while residual and residual[-1] == 0:
        residual.pop()
    return Eq1Result(not residual, residual)


@dataclass(frozen=True)
class CancellationReport:
    """Shifts ``d`` where ``R(-d)`` appears in both of the last two lex modules."""

    r: int
    shifts: tuple[int, ...]
    multiplicities: tuple[int, ...] = ()

    @property
    def socle_degrees(self) -> tuple[int, ...]:
        return tuple(d - self.r for d in self.shifts)

    def __bool__(self):
        return bool(self.shifts)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "shifts": list(self.shifts),
            "socle_degrees": list(self.socle_degrees),
            "multiplicities": list(self.multiplicities),
        }


def maximal_growth_failures(h: HVector) -> list[int]:
    """Degrees ``i >= 2`` where the socle is nonzero in degree ``i - 1`` but
    ``h`` does not grow maximally from ``i`` to ``i + 1``.

    Each failing ``i`` marks a possible cancellation at shift ``i - 1 + r``
    when ``r <= 3``.
    """
    bad = []
    for i in range(2, h.e + 1):
        if min_prev(h[i], i) != h[i - 1] and macaulay_bound(h[i], i) != h[i + 1]:
            bad.append(i)
    return bad


def possible_cancellations(h: HVector) -> CancellationReport:
    """Common shifts of the last two modules in the lex-segment resolution of ``h``."""
    r = h.r
    if h.e < 1 or r < 2:
        return CancellationReport(max(r, 0), ())
    table = lex_betti(h)
    found = []
    for j in table.shifts():
        mult = min(table[(r, j)], table[(r - 1, j)])
        if mult > 0:
            found.append((j, mult))
    report = CancellationReport(r, tuple(j for j, _ in found), tuple(m for _, m in found))
    if r <= 3:
        arithmetic = tuple(i - 1 + r for i in maximal_growth_failures(h))
        if arithmetic != report.shifts:
            raise AssertionError(
                f"Betti-table cancellations {report.shifts} disagree with the "
                f"growth characterization {arithmetic} for h = {h}"
            )
    return report


def forced_socle_entry(h: HVector, d: int) -> int | None:
    """Socle entry in degree ``d - 1`` shared by every algebra with h-vector ``h``.

    Defined when ``h`` grows maximally from degree ``d`` to ``d + 1``; then the
    entry is ``h_{d-1} - min_prev(h_d, d)``. Returns ``None`` otherwise.
    """
    if not 2 <= d <= h.e:
        raise ValueError(f"degree d = {d} out of range 2..{h.e}")
    if macaulay_bound(h[d], d) != h[d + 1]:
        return None
    return h[d - 1] - min_prev(h[d], d)


def maximal_growth_into_entry(h: HVector, d: int) -> int | None:
    """The older, weaker forcing criterion.

    It also asks that the minimal predecessor ``min_prev(h_d, d)`` grow
    maximally into ``h_d``. Returns the forced entry or ``None`` when the
    criterion does not apply.
    """
    if not 2 <= d <= h.e:
        raise ValueError(f"degree d = {d} out of range 2..{h.e}")
    base = min_prev(h[d], d)
    if macaulay_bound(base, d - 1) != h[d] or macaulay_bound(h[d], d) != h[d + 1]:
        return None
    return h[d - 1] - base


def no_cancellation_uniqueness(h: HVector) -> bool:
    """Sufficient condition (any codimension) for a unique socle-vector."""
    return not maximal_growth_failures(h)
