"""Monomials in degree-lexicographic order, lex-segment ideals, and monomial quotients.

A monomial is a tuple of exponents ``(m_1, ..., m_r)``. Within a degree, the
order is lexicographic on exponent vectors, so ``x_1^d`` comes first and
``x_r^d`` last. "First" and "last" below always refer to this order, read from
the largest monomial down.

Ideals are stored degree by degree up to a bound, as frozensets of monomials.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import lru_cache

from .macaulay import binom
from .vectors import HVector, InvalidVector, SocleVector

Monomial = tuple[int, ...]


def degree(m: Monomial) -> int:
    return sum(m)


def deglex_key(m: Monomial):
    return (sum(m), m)


def deglex_cmp(a: Monomial, b: Monomial) -> int:
    """Return 1, 0 or -1 as ``a`` is greater than, equal to, or less than ``b``."""
    if len(a) != len(b):
        raise ValueError(f"monomials in different numbers of variables: {a}, {b}")
    ka, kb = deglex_key(a), deglex_key(b)
    return (ka > kb) - (ka < kb)


def m_of(t: Monomial) -> int:
    """Largest (1-based) index of a variable dividing ``t``."""
    for k in range(len(t) - 1, -1, -1):
        if t[k] > 0:
            return k + 1
    raise ValueError("m_of is undefined for the monomial 1")


def dim_r(r: int, d: int) -> int:
    """Number of monomials of degree ``d`` in ``r`` variables."""
    if d < 0:
        return 0
    return binom(r - 1 + d, d)


@lru_cache(maxsize=None)
def monomials(r: int, d: int) -> tuple[Monomial, ...]:
    """All monomials of degree ``d`` in ``r`` variables, largest first."""
    if d < 0:
        return ()
    out = []
    for combo in itertools.combinations_with_replacement(range(r), d):
        exps = [0] * r
        for k in combo:
            exps[k] += 1
        out.append(tuple(exps))
    out.sort(reverse=True)
    return tuple(out)


@lru_cache(maxsize=None)
def monomial_positions(r: int, d: int) -> dict[Monomial, int]:
    return {m: k for k, m in enumerate(monomials(r, d))}


def first_monomials(r: int, d: int, count: int) -> tuple[Monomial, ...]:
    return monomials(r, d)[:count]


def last_monomials(r: int, d: int, count: int) -> tuple[Monomial, ...]:
    if count <= 0:
        return ()
    return monomials(r, d)[-count:]


def times_variable(m: Monomial, k: int) -> Monomial:
    out = list(m)
    out[k] += 1
    return tuple(out)


def divide_variable(m: Monomial, k: int) -> Monomial | None:
    if m[k] == 0:
        return None
    out = list(m)
    out[k] -= 1
    return tuple(out)


def upper_shadow(monos: Iterable[Monomial], r: int) -> set[Monomial]:
    """``R_1 * monos``: every product of a monomial with a variable."""
    return {times_variable(m, k) for m in monos for k in range(r)}


def lower_shadow(monos: Iterable[Monomial]) -> set[Monomial]:
    """All monomials obtained by dividing one of ``monos`` by a variable it contains."""
    out = set()
    for m in monos:
        for k in range(len(m)):
            if m[k]:
                out.add(divide_variable(m, k))
    return out


def sort_desc(monos: Iterable[Monomial]) -> list[Monomial]:
    return sorted(monos, key=deglex_key, reverse=True)


# -- text format -----------------------------------------------------------

_ALIASES = {"x": 1, "y": 2, "z": 3}
_FACTOR = re.compile(r"([a-z])(\d*)(?:\^(\d+))?")


def format_monomial(m: Monomial, letter: str = "x") -> str:
    """Render ``m`` as ``x^a y^b z^c`` when r <= 3, else ``x1^a*x2^b``.

    ``letter`` selects the variable family (``x`` for the polynomial ring,
    ``y`` for its dual).
    """
    if sum(m) == 0:
        return "1"
    r = len(m)
    parts = []
    for k, a in enumerate(m):
        if a == 0:
            continue
        if r <= 3 and letter == "x":
            name = "xyz"[k]
        else:
            name = f"{letter}{k + 1}"
        parts.append(name if a == 1 else f"{name}^{a}")
    return " ".join(parts) if r <= 3 and letter == "x" else "*".join(parts)


def parse_monomial(text: str, r: int) -> Monomial:
    """Parse ``x1^2*x3``, ``x^2 z`` or ``y1*y2`` into an exponent tuple of length ``r``."""
    text = text.strip()
    exps = [0] * r
    if text == "1":
        return tuple(exps)
    for token in re.split(r"[*\s]+", text):
        if not token:
            continue
        match = _FACTOR.fullmatch(token)
        if not match:
            raise ValueError(f"cannot parse monomial factor {token!r} in {text!r}")
        letter, index, power = match.groups()
        if index:
            k = int(index)
        elif letter in _ALIASES:
            k = _ALIASES[letter]
        else:
            raise ValueError(f"unknown variable {letter!r} in {text!r}")
        if not 1 <= k <= r:
            raise ValueError(f"variable index {k} out of range for r={r}")
        exps[k - 1] += int(power) if power else 1
    return tuple(exps)


# -- ideals ----------------------------------------------------------------


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal of ``k[x_1..x_r]`` stored degree by degree through ``bound``."""

    r: int
    pieces: tuple[frozenset, ...]

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("need at least one variable")
        if self.pieces and self.pieces[0]:
            raise ValueError("a proper ideal cannot contain 1")
        for d in range(len(self.pieces) - 1):
            missing = upper_shadow(self.pieces[d], self.r) - self.pieces[d + 1]
            if missing:
                example = format_monomial(next(iter(missing)))
                raise ValueError(f"not an ideal: {example} missing from degree {d + 1}")

    @classmethod
    def from_pieces(cls, r: int, pieces: Mapping[int, Iterable[Monomial]], bound: int | None = None):
        if bound is None:
            bound = max(pieces, default=0)
        stored = []
        for d in range(bound + 1):
            piece = frozenset(tuple(m) for m in pieces.get(d, ()))
            for m in piece:
                if len(m) != r or sum(m) != d:
                    raise ValueError(f"monomial {m} does not belong in degree {d}")
            stored.append(piece)
        return cls(r, tuple(stored))

    @property
    def bound(self) -> int:
        return len(self.pieces) - 1

    @property
    def is_artinian(self) -> bool:
        """True when the top stored piece is all of ``R_bound``."""
        return len(self.pieces[-1]) == dim_r(self.r, self.bound)

    def piece(self, d: int) -> frozenset:
        if d < 0:
            return frozenset()
        if d <= self.bound:
            return self.pieces[d]
        if self.is_artinian:
            return frozenset(monomials(self.r, d))
        raise ValueError(f"degree {d} is beyond the stored bound {self.bound}")

    def generators(self, d: int) -> list[Monomial]:
        """Minimal generators of degree ``d``, largest first."""
        if d > self.bound:
            if self.is_artinian:
                return []
            raise ValueError(f"degree {d} is beyond the stored bound {self.bound}")
        below = upper_shadow(self.piece(d - 1), self.r) if d > 0 else set()
        return sort_desc(self.pieces[d] - below)

    def all_generators(self) -> dict[int, list[Monomial]]:
        out = {}
        for d in range(self.bound + 1):
            gens = self.generators(d)
            if gens:
                out[d] = gens
        return out

    def is_lex_segment(self) -> bool:
        for d, piece in enumerate(self.pieces):
            if set(piece) != set(first_monomials(self.r, d, len(piece))):
                return False
        return True

    def extended(self, bound: int) -> MonomialIdeal:
        """Same ideal stored through a larger bound (only for artinian ideals)."""
        if bound <= self.bound:
            return self
        return MonomialIdeal(self.r, self.pieces + tuple(self.piece(d) for d in range(self.bound + 1, bound + 1)))

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "bound": self.bound,
            "pieces": {
                str(d): [format_monomial(m) for m in sort_desc(piece)]
                for d, piece in enumerate(self.pieces)
                if piece
            },
        }

    @classmethod
    def from_json(cls, data: Mapping) -> MonomialIdeal:
        r = int(data["r"])
        pieces = {int(d): [parse_monomial(t, r) for t in monos] for d, monos in data["pieces"].items()}
        return cls.from_pieces(r, pieces, data.get("bound"))


def lex_ideal_for_h(h: HVector, bound: int | None = None) -> MonomialIdeal:
    """The lex-segment ideal whose quotient has h-vector ``h``, stored through ``bound``.

    The default bound ``e + 1`` is the first degree where the ideal is all of
    ``R_d``, so every minimal generator is present.
    """
    if h.e < 1:
        raise InvalidVector("the lex ideal needs at least one variable (e >= 1)", degree=0)
    r = h.r
    if bound is None:
        bound = h.e + 1
    if bound < h.e + 1:
        raise ValueError(f"bound must be at least e + 1 = {h.e + 1}")
    pieces = tuple(
        frozenset(first_monomials(r, d, dim_r(r, d) - h[d])) for d in range(bound + 1)
    )
    return MonomialIdeal(r, pieces)


def hilbert_function(ideal: MonomialIdeal, top: int | None = None) -> HVector:
    """h-vector of ``R/ideal`` read off through degree ``top``."""
    if top is None:
        top = ideal.bound
    if top > ideal.bound:
        raise ValueError(f"top {top} exceeds the stored bound {ideal.bound}")
    return HVector(tuple(dim_r(ideal.r, d) - len(ideal.pieces[d]) for d in range(top + 1)))


def socle_vector(ideal: MonomialIdeal, top: int | None = None) -> SocleVector:
    """Socle-vector of the artinian quotient ``R/ideal``.

    A standard monomial ``m`` of degree ``d`` lies in the socle exactly when
    ``x_j * m`` is in the ideal for every variable ``x_j``.
    """
    if not ideal.is_artinian:
        raise ValueError(
            f"the quotient is not artinian within the stored bound {ideal.bound}; "
            "store the ideal through a degree where it is all of R_d"
        )
    if top is None:
        top = ideal.bound - 1
    if top + 1 > ideal.bound:
        raise ValueError(f"need pieces through degree {top + 1}")
    r = ideal.r
    counts = []
    for d in range(top + 1):
        above = ideal.pieces[d + 1]
        inside = ideal.pieces[d]
        counts.append(sum(
            1
            for m in monomials(r, d)
            if m not in inside and all(times_variable(m, k) in above for k in range(r))
        ))
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return SocleVector(tuple(counts))


# -- monomial inverse systems ---------------------------------------------


def divisor_closure(generators: Mapping[int, Iterable[Monomial]]) -> dict[int, set[Monomial]]:
    """Every monomial dividing some generator, grouped by degree (degree 0 included).

    For monomial generators of an inverse system the derivatives are, up to
    scalars, exactly the divisors, so the sizes of the returned pieces are the
    h-vector of the annihilator quotient.
    """
    if not generators:
        return {}
    top = max(generators)
    closure: dict[int, set[Monomial]] = {}
    current: set[Monomial] = set()
    for d in range(top, -1, -1):
        current = set(generators.get(d, ())) | current
        for m in current:
            if sum(m) != d:
                raise ValueError(f"generator {m} listed under degree {d}")
        closure[d] = current
        current = lower_shadow(current)
    return dict(sorted(closure.items()))


def closure_h_vector(closure: Mapping[int, set[Monomial]]) -> HVector:
    top = max(closure)
    return HVector(tuple(len(closure.get(d, ())) for d in range(top + 1)))


def closure_socle_vector(closure: Mapping[int, set[Monomial]]) -> SocleVector:
    """Minimal generator counts of a divisor-closed monomial module."""
    top = max(closure)
    counts = []
    for d in range(top + 1):
        derived = lower_shadow(closure.get(d + 1, ()))
        counts.append(len(closure.get(d, set()) - derived))
    return SocleVector(tuple(counts))


def minimal_generators(closure: Mapping[int, set[Monomial]]) -> dict[int, list[Monomial]]:
    out = {}
    for d in sorted(closure):
        gens = closure[d] - lower_shadow(closure.get(d + 1, ()))
        if gens:
            out[d] = sort_desc(gens)
    return out


def ideal_of_closure(closure: Mapping[int, set[Monomial]], r: int) -> MonomialIdeal:
    """The annihilator of a monomial inverse system: all monomials outside the closure."""
    top = max(closure)
    pieces = {
        d: [m for m in monomials(r, d) if m not in closure.get(d, ())]
        for d in range(top + 2)
    }
    return MonomialIdeal.from_pieces(r, pieces, top + 1)


def lex_inverse_system(h: HVector) -> dict[int, set[Monomial]]:
    """Inverse system of the lex-segment ideal: the last ``h_d`` monomials in each degree."""
    r = h.r
    return {d: set(last_monomials(r, d, h[d])) for d in range(h.e + 1)}
