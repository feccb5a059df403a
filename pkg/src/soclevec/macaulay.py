"""Macaulay binomial expansions and the growth bounds built from them.

Every value here is an exact Python integer; nothing touches floating point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def binom(n: int, k: int) -> int:
    """Return C(n, k), with C(n, k) = 0 when k > n or either argument is negative."""
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


@dataclass(frozen=True)
class BinomialExpansion:
    """The i-binomial expansion ``n = C(n_i, i) + C(n_{i-1}, i-1) + ... + C(n_j, j)``.

    ``terms`` holds the pairs ``(n_k, k)`` with ``k`` running from ``i`` down to
    ``j``. The expansion of 0 is the empty term list.
    """

    i: int
    terms: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.i < 1:
            raise ValueError(f"expansion index must be positive, got {self.i}")
        prev_top = None
        for pos, (top, bottom) in enumerate(self.terms):
            if bottom != self.i - pos:
                raise ValueError(f"bottoms must run i, i-1, ...: {self.terms}")
            if top < bottom or bottom < 1:
                raise ValueError(f"need n_k >= k >= 1: {self.terms}")
            if prev_top is not None and top >= prev_top:
                raise ValueError(f"tops must strictly decrease: {self.terms}")
            prev_top = top

    @property
    def value(self) -> int:
        return sum(binom(top, bottom) for top, bottom in self.terms)

    @property
    def last_index(self) -> int:
        """Smallest bottom index j, or ``i + 1`` for the empty expansion."""
        return self.terms[-1][1] if self.terms else self.i + 1

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"C({top},{bottom})" for top, bottom in self.terms)


def _largest_top(n: int, k: int) -> int:
    # Largest m with C(m, k) <= n, for n >= 1.
    lo = k
    hi = k + 1
    while binom(hi, k) <= n:
        lo = hi
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if binom(mid, k) <= n:
            lo = mid
        else:
            hi = mid
    return lo


def expand(n: int, i: int) -> BinomialExpansion:
    """Greedy i-binomial expansion of ``n``.

    >>> expand(9, 3).terms
    ((4, 3), (3, 2), (2, 1))
    """
    if n < 0:
        raise ValueError(f"cannot expand negative integer {n}")
    if i < 1:
        raise ValueError(f"expansion index must be positive, got {i}")
    terms = []
    k = i
    while n > 0:
        top = _largest_top(n, k)
        terms.append((top, k))
        n -= binom(top, k)
        k -= 1
    return BinomialExpansion(i, tuple(terms))


def shift(expansion: BinomialExpansion, a: int) -> int:
    """Return the sum of C(n_k + a, k + a) over the terms of ``expansion``."""
    if expansion.terms and a < -expansion.last_index:
        raise ValueError(
            f"shift {a} would give a negative lower index (smallest bottom is "
            f"{expansion.last_index})"
        )
    return sum(binom(top + a, bottom + a) for top, bottom in expansion.terms)


def macaulay_bound(h_d: int, d: int) -> int:
    """Largest admissible entry in degree ``d + 1`` after an entry ``h_d`` in degree ``d``."""
    if d < 1:
        raise ValueError(f"degree must be positive, got {d}")
    return shift(expand(h_d, d), 1)


def min_prev(a: int, b: int) -> int:
    """Smallest ``c`` such that ``a <= macaulay_bound(c, b - 1)``.

    Read through inverse systems: the least number of independent first
    derivatives that ``a`` independent forms of degree ``b`` can have.
    """
    if b < 2:
        raise ValueError(f"need b >= 2, got {b}")
    return shift(expand(a, b), -1)
