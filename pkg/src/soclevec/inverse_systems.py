"""Inverse systems over the rationals.

The dual ring ``S = Q[y_1..y_r]`` is a module over ``R = Q[x_1..x_r]`` with
``x_k`` acting as ``d/dy_k``. A finitely generated submodule ``M`` of ``S``
determines the artinian algebra ``R / Ann(M)``: its h-vector counts the
independent derivatives of the generators in each degree, and its
socle-vector counts the minimal generators of ``M`` in each degree.

All ranks are exact. Vectors are scaled to primitive integer rows and
eliminated by cross-multiplication, so no rational arithmetic happens inside
the elimination loop.
"""

from __future__ import annotations

import math
import random
import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .monomial_algebra import Monomial, format_monomial, monomial_positions, monomials, parse_monomial, sort_desc
from .vectors import HVector, SocleVector


@dataclass(frozen=True)
class Form:
    """A nonzero homogeneous polynomial in ``S`` with rational coefficients."""

    r: int
    coefficients: Mapping[Monomial, Fraction]

    def __post_init__(self):
        coeffs = {tuple(m): Fraction(c) for m, c in self.coefficients.items() if c}
        if not coeffs:
            raise ValueError("a Form needs at least one nonzero coefficient")
        degrees = {sum(m) for m in coeffs}
        if len(degrees) != 1:
            raise ValueError(f"form is not homogeneous: degrees {sorted(degrees)}")
        for m in coeffs:
            if len(m) != self.r:
                raise ValueError(f"monomial {m} has the wrong number of variables for r={self.r}")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return sum(next(iter(self.coefficients)))

    @classmethod
    def monomial(cls, m: Monomial, coefficient=1) -> Form:
        return cls(len(m), {tuple(m): Fraction(coefficient)})

    def __str__(self):
        return format_form(self)

    def __add__(self, other: Form) -> Form:
        coeffs = dict(self.coefficients)
        for m, c in other.coefficients.items():
            coeffs[m] = coeffs.get(m, 0) + c
        return Form(self.r, coeffs)


def differentiate(f: Form, variable_index: int) -> Form | None:
    """Partial derivative with respect to ``y_{variable_index}`` (1-based); ``None`` if zero."""
    if not 1 <= variable_index <= f.r:
        raise ValueError(f"variable index {variable_index} out of range 1..{f.r}")
    k = variable_index - 1
    out = {}
    for m, c in f.coefficients.items():
        if m[k]:
            target = m[:k] + (m[k] - 1,) + m[k + 1:]
            out[target] = out.get(target, 0) + c * m[k]
    out = {m: c for m, c in out.items() if c}
    return Form(f.r, out) if out else None


def format_form(f: Form) -> str:
    pieces = []
    for m in sort_desc(f.coefficients):
        c = f.coefficients[m]
        sign = "-" if c < 0 else "+"
        c = abs(c)
        mono = format_monomial(m, letter="y")
        if mono == "1":
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        text += f" {sign} {body}"
    return text


_TERM = re.compile(r"([+-]?)([^+-]+)")


def parse_form(text: str, r: int) -> Form:
    """Parse text such as ``3/2*y1^2*y2 - y3^3``."""
    compact = text.replace(" ", "")
    if not compact:
        raise ValueError("empty form")
    coeffs: dict[Monomial, Fraction] = {}
    pos = 0
    for match in _TERM.finditer(compact):
        if match.start() != pos:
            raise ValueError(f"cannot parse form {text!r}")
        pos = match.end()
        sign, body = match.groups()
        coef = Fraction(-1 if sign == "-" else 1)
        factors = []
        for factor in body.split("*"):
            if re.fullmatch(r"\d+(/\d+)?", factor):
                coef *= Fraction(factor)
            else:
                factors.append(factor)
        m = parse_monomial("*".join(factors) if factors else "1", r)
        coeffs[m] = coeffs.get(m, 0) + coef
    if pos != len(compact):
        raise ValueError(f"cannot parse form {text!r}")
    return Form(r, coeffs)


@dataclass(frozen=True)
class InverseSystemModule:
    """Submodule of ``S`` generated by finitely many forms, grouped by degree."""

    r: int
    generators: Mapping[int, tuple[Form, ...]] = field(default_factory=dict)

    def __post_init__(self):
        gens = {}
        for d, forms in self.generators.items():
            forms = tuple(forms)
            for f in forms:
                if f.r != self.r or f.degree != d:
                    raise ValueError(f"generator {f} does not belong in degree {d} with r={self.r}")
            if forms:
                gens[int(d)] = forms
        object.__setattr__(self, "generators", dict(sorted(gens.items())))

    @classmethod
    def from_monomials(cls, r: int, generators: Mapping[int, Iterable[Monomial]]) -> InverseSystemModule:
        return cls(r, {d: tuple(Form.monomial(m) for m in sort_desc(ms)) for d, ms in generators.items()})

    @property
    def top(self) -> int:
        return max(self.generators, default=-1)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "generators": {str(d): [format_form(f) for f in forms] for d, forms in self.generators.items()},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> InverseSystemModule:
        r = int(data["r"])
        return cls(r, {int(d): tuple(parse_form(t, r) for t in forms) for d, forms in data["generators"].items()})


def adjoin(module: InverseSystemModule, f: Form) -> InverseSystemModule:
    """A new module with ``f`` added to the generators."""
    if f.r != module.r:
        raise ValueError(f"form has r={f.r}, module has r={module.r}")
    gens = {d: tuple(forms) for d, forms in module.generators.items()}
    gens[f.degree] = gens.get(f.degree, ()) + (f,)
    return InverseSystemModule(module.r, gens)


# -- exact row spaces -------------------------------------------------------


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = math.gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def _integer_row(values: Mapping[int, Fraction], width: int) -> list[int]:
    den = 1
    for c in values.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    row = [0] * width
    for k, c in values.items():
        row[k] = c.numerator * (den // c.denominator)
    return _primitive(row)


class RowSpace:
    """Incrementally maintained echelon basis of a subspace of ``Q^width``."""

    def __init__(self, width: int):
        self.width = width
        self.rows: dict[int, list[int]] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def copy(self) -> RowSpace:
        other = RowSpace(self.width)
        other.rows = dict(self.rows)
        return other

    def add(self, row: list[int]) -> bool:
        """Insert ``row``; return True if it enlarged the space."""
        v = list(row)
        for col in sorted(self.rows):
            a = v[col]
            if not a:
                continue
            pivot_row = self.rows[col]
            p = pivot_row[col]
            g = math.gcd(a, p)
            fa, fp = p // g, a // g
            v = [fa * x - fp * y for x, y in zip(v, pivot_row)]
            v = _primitive(v)
        for col, x in enumerate(v):
            if x:
                self.rows[col] = v
                return True
        return False

    def basis(self) -> list[list[int]]:
        return [self.rows[c] for c in sorted(self.rows)]


@lru_cache(maxsize=None)
def _derivative_table(r: int, d: int, k: int) -> tuple[tuple[int, int], ...]:
    # For each monomial of degree d (by position): (position of m / y_k in degree d-1, exponent), or (-1, 0).
    lower = monomial_positions(r, d - 1)
    out = []
    for m in monomials(r, d):
        if m[k]:
            out.append((lower[m[:k] + (m[k] - 1,) + m[k + 1:]], m[k]))
        else:
            out.append((-1, 0))
    return tuple(out)


def _form_row(f: Form) -> list[int]:
    pos = monomial_positions(f.r, f.degree)
    return _integer_row({pos[m]: c for m, c in f.coefficients.items()}, len(pos))


@dataclass(frozen=True)
class GradedSpans:
    """Dimensions of ``M_d`` and of the derivative space ``d M_{d+1}`` in each degree."""

    dims: tuple[int, ...]
    derived: tuple[int, ...]


def graded_spans(module: InverseSystemModule) -> GradedSpans:
    """Compute ``dim M_d`` and ``dim (R_1 . M_{d+1})`` from the top degree down."""
    r = module.r
    top = module.top
    if top < 0:
        raise ValueError("module has no generators")
    dims = [0] * (top + 1)
    derived = [0] * (top + 1)
    above: list[list[int]] = []
    for d in range(top, -1, -1):
        width = len(monomials(r, d))
        space = RowSpace(width)
        if above:
            for k in range(r):
                table = _derivative_table(r, d + 1, k)
                for row in above:
                    out = [0] * width
                    nonzero = False
                    for src, x in enumerate(row):
                        if x:
                            target, mult = table[src]
                            if target >= 0:
                                out[target] += x * mult
                                nonzero = True
                    if nonzero:
                        space.add(_primitive(out))
        derived[d] = space.rank
        for f in module.generators.get(d, ()):
            space.add(_form_row(f))
        dims[d] = space.rank
        above = space.basis()
    return GradedSpans(tuple(dims), tuple(derived))


def module_h_vector(module: InverseSystemModule) -> HVector:
    """h-vector of ``R / Ann(module)``."""
    return HVector(graded_spans(module).dims)


def module_socle_vector(module: InverseSystemModule) -> SocleVector:
    """Minimal generator counts of ``module`` per degree, i.e. the socle-vector."""
    spans = graded_spans(module)
    return SocleVector(tuple(a - b for a, b in zip(spans.dims, spans.derived)))


# -- generic power sums -----------------------------------------------------


def random_rational(rng: random.Random, bound: int = 100) -> Fraction:
    """Nonzero rational with numerator in ``[-bound, bound]`` and denominator in ``[1, bound]``.

    Zero is excluded: a zero coefficient puts the linear form in a coordinate
    hyperplane, which is special position against monomial modules.
    """
    numerator = rng.randint(1, bound) * rng.choice((-1, 1))
    return Fraction(numerator, rng.randint(1, bound))


def _as_rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def linear_power(coeffs: tuple[Fraction, ...], d: int) -> dict[Monomial, Fraction]:
    """Coefficients of ``(sum_k b_k y_k)^d`` by the multinomial theorem."""
    r = len(coeffs)
    out = {}
    fact_d = math.factorial(d)
    for m in monomials(r, d):
        c = Fraction(fact_d)
        for b, a in zip(coeffs, m):
            c = c / math.factorial(a) * b**a
        if c:
            out[m] = c
    return out


def power_sum(m: int, d: int, r: int, seed=0, coeff_bound: int = 100) -> Form | None:
    """``L_1^d + ... + L_m^d`` for linear forms with random rational coefficients.

    ``seed`` is an int or a ``random.Random``. Returns ``None`` in the
    measure-zero event that the sum cancels to zero; the caller checks the
    h-vector and retries with a fresh seed on any degeneracy.
    """
    if m < 1:
        raise ValueError("need at least one linear form")
    rng = _as_rng(seed)
    total: dict[Monomial, Fraction] = {}
    for _ in range(m):
        b = tuple(random_rational(rng, coeff_bound) for _ in range(r))
        for mono, c in linear_power(b, d).items():
            total[mono] = total.get(mono, 0) + c
    total = {mono: c for mono, c in total.items() if c}
    return Form(r, total) if total else None
