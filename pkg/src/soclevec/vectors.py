"""h-vectors, socle-vectors and the bijection between them.

An h-vector ``(1, h_1, ..., h_e)`` lists the dimensions of the graded pieces of
a standard graded artinian algebra; its socle-vector ``(0, s_1, ..., s_e)``
lists the dimensions of the graded pieces of the socle. For each socle-vector
there is an entrywise-minimal h-vector, for each h-vector an entrywise-maximal
socle-vector, and these two maps are mutually inverse.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .macaulay import binom, macaulay_bound, min_prev


class InvalidVector(ValueError):
    """Raised for sequences that are not h-vectors or socle-vectors.

    ``degree`` is the first offending degree when there is one.
    """

    def __init__(self, message: str, degree: int | None = None):
        super().__init__(message)
        self.degree = degree


class _Vector(Sequence):
    entries: tuple[int, ...]

    def __getitem__(self, index):
        if isinstance(index, slice):
            return self.entries[index]
        if index < 0:
            raise IndexError("negative degrees are not allowed")
        return self.entries[index] if index < len(self.entries) else 0

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def e(self) -> int:
        """Top degree (index of the last entry)."""
        return len(self.entries) - 1

    def __le__(self, other):
        n = max(len(self), len(other))
        return all(self[k] <= other[k] for k in range(n))

    def __str__(self):
        return " ".join(map(str, self.entries))


@dataclass(frozen=True, eq=True, repr=True)
class HVector(_Vector):
    """A finite O-sequence ``(1, h_1, ..., h_e)``.

    Indexing past the top degree returns 0, which is how the recursions below
    read ``h_{e+1}``. Construction validates; see :func:`validate_h`.
    """

    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(x) for x in self.entries)
        while len(entries) > 1 and entries[-1] == 0:
            entries = entries[:-1]
        object.__setattr__(self, "entries", entries)
        _check_o_sequence(entries)

    @property
    def r(self) -> int:
        """Codimension, i.e. the entry of degree 1."""
        return self[1]

    def to_json(self) -> dict:
        return {"h": list(self.entries)}


def _check_o_sequence(entries: tuple[int, ...]) -> None:
    if not entries or entries[0] != 1:
        raise InvalidVector("first entry must be 1", degree=0)
    for d, value in enumerate(entries):
        if value <= 0:
            raise InvalidVector(
                f"entry of degree {d} is {value}; interior entries must be positive",
                degree=d,
            )
    for d in range(1, len(entries) - 1):
        bound = macaulay_bound(entries[d], d)
        if entries[d + 1] > bound:
            raise InvalidVector(
                f"Macaulay bound violated at degree {d}: h_{d + 1} = {entries[d + 1]} "
                f"exceeds {bound}",
                degree=d,
            )


@dataclass(frozen=True, eq=True, repr=True)
class SocleVector(_Vector):
    """A tuple ``(0, s_1, ..., s_e)`` of non-negative integers with ``s_e > 0``."""

    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(x) for x in self.entries)
        object.__setattr__(self, "entries", entries)
        if len(entries) < 2:
            raise InvalidVector("a socle-vector needs top degree e >= 1")
        if entries[0] != 0:
            raise InvalidVector("entry of degree 0 must be 0", degree=0)
        for d, value in enumerate(entries):
            if value < 0:
                raise InvalidVector(f"negative entry {value} in degree {d}", degree=d)
        if entries[-1] <= 0:
            raise InvalidVector("last entry must be positive", degree=len(entries) - 1)

    @property
    def is_level(self) -> bool:
        return all(x == 0 for x in self.entries[:-1])

    @property
    def is_gorenstein(self) -> bool:
        return self.is_level and self.entries[-1] == 1

    def to_json(self) -> dict:
        return {"s": list(self.entries)}


def validate_h(seq: Iterable[int]) -> HVector:
    """Return ``seq`` as an :class:`HVector`, raising :class:`InvalidVector` if it is not one.

    Trailing zeros are dropped. The diagnostic names the first degree at which
    the sequence fails.
    """
    return HVector(tuple(seq))


def min_h_for_socle(s: SocleVector) -> HVector:
    """Entrywise-minimal h-vector among algebras with socle-vector ``s``."""
    e = s.e
    h = [0] * (e + 1)
    h[e] = s[e]
    for i in range(e - 1, 0, -1):
        h[i] = min_prev(h[i + 1], i + 1) + s[i]
    h[0] = 1
    return HVector(tuple(h))


def max_socle_for_h(h: HVector) -> SocleVector:
    """Entrywise-maximal socle-vector among algebras with h-vector ``h``."""
    e = h.e
    if e < 1:
        raise InvalidVector("h = (1) has no socle-vector (needs e >= 1)", degree=0)
    s = [0] * (e + 1)
    s[e] = h[e]
    for i in range(e - 1, 0, -1):
        s[i] = h[i] - min_prev(h[i + 1], i + 1)
    return SocleVector(tuple(s))


def min_codimension(s: SocleVector) -> int:
    """Least codimension of an artinian algebra with socle-vector ``s``."""
    return min_h_for_socle(s).r


def generic_index(h: HVector) -> int:
    """Largest ``t`` with ``h_t`` equal to the number of degree-``t`` monomials in ``r`` variables."""
    r = h.r
    t = 0
    for d in range(1, h.e + 1):
        if h[d] == binom(r - 1 + d, d):
            t = d
        else:
            break
    return t


# -- corpora for exhaustive checks --------------------------------------------

DEFAULT_CORPUS_MAX_E = 5
DEFAULT_CORPUS_MAX_ENTRY = 3


def all_socle_vectors(max_e: int = DEFAULT_CORPUS_MAX_E, max_entry: int = DEFAULT_CORPUS_MAX_ENTRY):
    """Every socle-vector with top degree ``1..max_e`` and entries at most ``max_entry``."""
    for e in range(1, max_e + 1):
        for middle in itertools.product(range(max_entry + 1), repeat=e - 1):
            for last in range(1, max_entry + 1):
                yield SocleVector((0,) + middle + (last,))


def all_h_vectors(r: int, max_e: int):
    """Every h-vector of codimension ``r`` with top degree ``1..max_e``."""

    def extend(prefix):
        yield HVector(tuple(prefix))
        d = len(prefix) - 1
        if d >= max_e:
            return
        for nxt in range(1, macaulay_bound(prefix[-1], d) + 1):
            yield from extend(prefix + [nxt])

    yield from extend([1, r])


def random_h_vector(rng, max_r: int, max_e: int) -> HVector:
    """A random h-vector with ``1 <= r <= max_r`` and ``1 <= e <= max_e``."""
    r = rng.randint(1, max_r)
    e = rng.randint(1, max_e)
    h = [1, r]
    for d in range(1, e):
        h.append(rng.randint(1, macaulay_bound(h[-1], d)))
    return HVector(tuple(h))
