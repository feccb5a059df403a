"""Deciding whether an h-vector admits a unique socle-vector.

In codimension at most 3 the answer is complete: the socle-vector is unique
exactly when the h-vector grows maximally after every degree that carries
socle in the lex-segment algebra. Otherwise each possible cancellation
(see :func:`soclevec.resolution.possible_cancellations`) is realized by an
explicit monomial ideal with a smaller socle.

In any codimension, three sufficient conditions for non-uniqueness are
checked, each with a constructed inverse-system witness.

Every witness is re-verified before it is returned; a construction that
does not verify raises :class:`WitnessError`.
"""

from __future__ import annotations

import random
from collections.abc import Mapping
from dataclasses import dataclass, field

from .inverse_systems import (
    Form,
    InverseSystemModule,
    adjoin,
    module_h_vector,
    module_socle_vector,
    power_sum,
)
from .macaulay import min_prev
from .monomial_algebra import (
    Monomial,
    MonomialIdeal,
    closure_h_vector,
    closure_socle_vector,
    dim_r,
    divide_variable,
    divisor_closure,
    hilbert_function,
    last_monomials,
    lex_ideal_for_h,
    lex_inverse_system,
    lower_shadow,
    m_of,
    minimal_generators,
    monomials,
    socle_vector,
    sort_desc,
    times_variable,
    upper_shadow,
)
from .oracle import socle_catalog
from .resolution import maximal_growth_failures, possible_cancellations
from .vectors import HVector, SocleVector, generic_index, max_socle_for_h

UNIQUE = "unique"
NON_UNIQUE = "non-unique"
UNDECIDED = "undecided"

# Sufficient conditions for more than one socle-vector.
GENERIC_EDGE = "generic-edge"  # socle in the two degrees right after the generic range
JUMP = "jump"  # consecutive socle where one more form in degree i+1 forces one more derivative
PENULTIMATE = "penultimate"  # socle in degree e-1
CONDITIONS = (GENERIC_EDGE, JUMP, PENULTIMATE)

DEFAULT_RETRIES = 5
DEFAULT_COEFF_BOUND = 100


class WitnessError(RuntimeError):
    """A witness failed verification or a construction invariant broke."""


class GenericityError(RuntimeError):
    """Random coefficients kept landing on a degenerate locus."""

    def __init__(self, message: str, seeds: list):
        super().__init__(f"{message} (seeds tried: {seeds})")
        self.seeds = seeds


@dataclass(frozen=True)
class Witness:
    """An algebra with h-vector ``claimed_h`` and a socle-vector below the maximum.

    ``payload`` is a :class:`MonomialIdeal` (kind ``monomial-ideal``) or an
    :class:`InverseSystemModule` (kind ``inverse-system``).
    """

    kind: str
    payload: MonomialIdeal | InverseSystemModule
    claimed_h: HVector
    claimed_s: SocleVector
    note: str = ""
    predicted: SocleVector | None = None

    @property
    def matches_prediction(self) -> bool:
        return self.predicted is None or self.predicted == self.claimed_s

    def to_json(self) -> dict:
        key = "ideal" if self.kind == "monomial-ideal" else "module"
        return {
            "kind": self.kind,
            "h": list(self.claimed_h),
            "s": list(self.claimed_s),
            "note": self.note,
            "predicted_s": list(self.predicted) if self.predicted is not None else None,
            key: self.payload.to_json(),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> Witness:
        kind = data["kind"]
        if kind == "monomial-ideal":
            payload = MonomialIdeal.from_json(data["ideal"])
        elif kind == "inverse-system":
            payload = InverseSystemModule.from_json(data["module"])
        else:
            raise ValueError(f"unknown witness kind {kind!r}")
        predicted = data.get("predicted_s")
        return cls(
            kind,
            payload,
            HVector(tuple(data["h"])),
            SocleVector(tuple(data["s"])),
            data.get("note", ""),
            SocleVector(tuple(predicted)) if predicted else None,
        )


def _is_monomial_module(module: InverseSystemModule) -> bool:
    return all(len(f.coefficients) == 1 for forms in module.generators.values() for f in forms)


def measure(witness: Witness, exact: bool = False) -> tuple[HVector, SocleVector]:
    """Recompute the h-vector and socle-vector of a witness payload.

    Monomial inverse systems go through divisor combinatorics unless
    ``exact`` asks for the rational rank computation.
    """
    payload = witness.payload
    if witness.kind == "monomial-ideal":
        return hilbert_function(payload), socle_vector(payload)
    if not exact and _is_monomial_module(payload):
        gens = {d: [next(iter(f.coefficients)) for f in forms] for d, forms in payload.generators.items()}
        closure = divisor_closure(gens)
        return closure_h_vector(closure), closure_socle_vector(closure)
    return module_h_vector(payload), module_socle_vector(payload)


def verify_witness(witness: Witness, exact: bool = False) -> None:
    """Raise :class:`WitnessError` unless the payload has the claimed vectors
    and the claimed socle-vector sits strictly below the maximum one."""
    h, s = measure(witness, exact=exact)
    if h != witness.claimed_h:
        raise WitnessError(f"payload has h-vector {h}, claimed {witness.claimed_h}")
    if s != witness.claimed_s:
        raise WitnessError(f"payload has socle-vector {s}, claimed {witness.claimed_s}")
    top = max_socle_for_h(h)
    if not s <= top or s == top:
        raise WitnessError(f"socle-vector {s} is not strictly below the maximum {top}")


@dataclass
class FiredCondition:
    kind: str
    index: int
    predicted: SocleVector

    def to_json(self) -> dict:
        return {"kind": self.kind, "index": self.index, "predicted_s": list(self.predicted)}

    def label(self) -> str:
        return f"{self.kind}@{self.index}"


@dataclass
class UniquenessVerdict:
    status: str
    reasons: list[str] = field(default_factory=list)
    witnesses: list[Witness] = field(default_factory=list)
    conditions: list[FiredCondition] = field(default_factory=list)

    def socle_vectors(self) -> set[SocleVector]:
        return {w.claimed_s for w in self.witnesses}

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "reasons": list(self.reasons),
            "witnesses": [w.to_json() for w in self.witnesses],
            "conditions": [c.to_json() for c in self.conditions],
        }


# -- realizing a possible cancellation (codimension 2 and 3) ----------------


def _swap_piece(piece: frozenset, removed: Monomial, added: Monomial) -> frozenset:
    if removed not in piece or added in piece:
        raise WitnessError(f"cannot swap {removed} -> {added} in piece")
    return (piece - {removed}) | {added}


def _cancellation_seed(ideal: MonomialIdeal, deg: int) -> tuple[Monomial, Monomial]:
    """Pick the monomial to drop from the lex piece ``I_deg`` and its replacement."""
    r = ideal.r
    last = r - 1
    ordered = monomials(r, deg)
    p = len(ideal.piece(deg))
    if p == 0 or p >= len(ordered):
        raise WitnessError(f"lex piece in degree {deg} has {p} of {len(ordered)} monomials")
    t_p = ordered[p - 1]
    divisible = [k for k in range(p) if ordered[k][last] > 0]
    if not divisible:
        raise WitnessError("no monomial of the lex piece is divisible by the last variable")
    q = divisible[-1] + 1
    if q == p:
        if divide_variable(t_p, last) in ideal.piece(deg - 1):
            raise WitnessError("T_p / z already lies in the ideal; T_p is not a generator")
        return t_p, ordered[p]
    if r == 2 or q != p - 1:
        raise WitnessError(f"unexpected position of the last z-divisible monomial: q={q}, p={p}")
    t_q = ordered[q - 1]
    a, c = t_q[0], t_q[2]
    if t_q != (a, 0, c) or t_p != (a - 1, c + 1, 0):
        raise WitnessError(f"lex piece does not have the expected tail: T_q={t_q}, T_p={t_p}")
    if divide_variable(t_q, last) in ideal.piece(deg - 1):
        raise WitnessError("T_q / z already lies in the ideal")
    if c > 1:
        if p + 1 >= len(ordered):
            raise WitnessError("no room for T_{p+2}")
        return t_q, ordered[p + 1]
    expected = {(deg, 0, 0), (deg - 1, 1, 0), (deg - 1, 0, 1), (deg - 2, 2, 0)}
    if set(ideal.piece(deg)) != expected or ideal.piece(deg - 1):
        raise WitnessError("case c = 1 expects I_{d-2} = <x^{d-2}, x^{d-3}y, x^{d-3}z, x^{d-4}y^2>")
    return (deg - 1, 1, 0), (deg - 2, 1, 1)


def construct_cancellation_witness(h: HVector, d: int) -> Witness:
    """Monomial ideal with h-vector ``h`` whose socle is smaller in degree ``d - r``.

    ``d`` is a shift from :func:`possible_cancellations`; codimension 2 or 3.
    The ideal agrees with the lex ideal below degree ``d - r + 1``; there one
    monomial of the lex piece is traded for a later one, and the trade is
    carried up by multiples of the last variable until the lex ideal acquires
    enough generators to absorb it.
    """
    r = h.r
    if r not in (2, 3):
        raise ValueError(f"cancellation witnesses are built for r = 2, 3 (got r = {r})")
    if d not in possible_cancellations(h).shifts:
        raise ValueError(f"shift {d} is not a possible cancellation for h = {h}")
    lex = lex_ideal_for_h(h)
    deg = d - r + 1
    removed, added = _cancellation_seed(lex, deg)

    pieces = list(lex.pieces[:deg])
    pieces.append(_swap_piece(lex.piece(deg), removed, added))
    last = r - 1
    for i in range(deg + 1, lex.bound + 1):
        below = upper_shadow(pieces[-1], r)
        target = lex.piece(i)
        if below <= target:
            pieces.extend(lex.pieces[i:])
            break
        removed = times_variable(removed, last)
        added = times_variable(added, last)
        piece = _swap_piece(target, removed, added)
        if not below <= piece:
            raise WitnessError(f"swapped piece in degree {i} does not contain R_1 J_{i - 1}")
        pieces.append(piece)
    ideal = MonomialIdeal(r, tuple(pieces))

    s = socle_vector(ideal)
    top = max_socle_for_h(h)
    if s[d - r] >= top[d - r]:
        raise WitnessError(f"socle in degree {d - r} did not drop: {s} vs {top}")
    witness = Witness("monomial-ideal", ideal, h, s, note=f"cancellation of R(-{d}), socle degree {d - r}")
    verify_witness(witness)
    return witness


# -- sufficient conditions in any codimension ------------------------------


def _lowered(s: SocleVector, index: int) -> SocleVector:
    entries = list(s)
    entries[index] -= 1
    return SocleVector(tuple(entries))


def _jumps(h: HVector, i: int) -> bool:
    return min_prev(h[i + 1] + 1, i + 1) > min_prev(h[i + 1], i + 1)


def nonuniqueness_conditions(h: HVector) -> list[FiredCondition]:
    """Which sufficient conditions for more than one socle-vector hold, each with
    the socle-vector its construction predicts."""
    e = h.e
    if e < 2:
        return []
    s = max_socle_for_h(h)
    t = generic_index(h)
    fired = []
    if t + 2 <= e and s[t + 1] and s[t + 2]:
        fired.append(FiredCondition(GENERIC_EDGE, t + 1, _lowered(s, t + 1)))
    for i in range(1, e):
        if s[i] and s[i + 1] and _jumps(h, i):
            fired.append(FiredCondition(JUMP, i, _lowered(s, i)))
    if s[e - 1]:
        fired.append(FiredCondition(PENULTIMATE, e - 1, _lowered(s, e - 1)))
    return fired


def _lex_generators(h: HVector) -> dict[int, list[Monomial]]:
    return minimal_generators(lex_inverse_system(h))


def _monomial_witness(h: HVector, gens: Mapping[int, list[Monomial]], predicted: SocleVector, note: str) -> Witness:
    module = InverseSystemModule.from_monomials(h.r, {d: g for d, g in gens.items() if g})
    witness = Witness("inverse-system", module, h, predicted, note=note)
    verify_witness(witness)
    return witness


def _below_top(h: HVector, gens: dict[int, list[Monomial]], new_piece: set[Monomial], degree: int) -> None:
    """Regenerate degree ``degree - 1`` so that the pieces below match the lex module."""
    old = lex_inverse_system(h)[degree - 1]
    derived = lower_shadow(new_piece)
    if not derived <= old:
        raise WitnessError(f"derivatives of the new degree-{degree} generators leave the lex module")
    gens[degree - 1] = sort_desc(old - derived)


def _jump_witness(h: HVector, i: int) -> Witness:
    s = max_socle_for_h(h)
    if not (s[i] and s[i + 1] and _jumps(h, i)):
        raise ValueError(f"the jump condition does not hold at i = {i} for h = {h}")
    r = h.r
    gens = _lex_generators(h)
    top_gens = gens[i + 1]
    first = top_gens[0]
    ordered = monomials(r, i + 1)
    pos = ordered.index(first)
    if pos == 0:
        raise WitnessError("no monomial precedes the first generator")
    gens[i + 1] = [ordered[pos - 1]] + top_gens[1:]
    # The new piece in degree i+1: generators plus the old derivatives from above.
    piece = set(gens[i + 1]) | lower_shadow(lex_inverse_system(h).get(i + 2, set()))
    _below_top(h, gens, piece, i + 1)
    if len(gens[i]) != s[i] - 1:
        raise WitnessError(f"expected {s[i] - 1} generators in degree {i}, got {len(gens[i])}")
    return _monomial_witness(h, gens, _lowered(s, i), note=f"{JUMP} at degree {i}")


def _penultimate_witness(h: HVector) -> Witness:
    e, r = h.e, h.r
    s = max_socle_for_h(h)
    if not s[e - 1]:
        raise ValueError(f"socle is zero in degree e - 1 for h = {h}")
    if _jumps(h, e - 1):
        return _jump_witness(h, e - 1)
    ordered = monomials(r, e)
    n = len(ordered)
    u = n - h[e]
    tail = list(ordered[u:])
    t_pos = next((k for k in range(u - 1, -1, -1) if ordered[k][r - 1] > 0), None)
    if t_pos is None:
        raise WitnessError("no monomial before U is divisible by the last variable")
    t = ordered[t_pos]
    lower = monomials(r, e - 1)
    u_prime = lower[len(lower) - (h[e - 1] - s[e - 1])]
    w = tail[1] if len(tail) > 1 else None
    if w is not None and divide_variable(w, m_of(w) - 1) == u_prime:
        chosen = [t] + tail[1:]
    else:
        t1 = ordered[t_pos + 1]
        y_last = tuple(0 for _ in range(r - 1)) + (e,)
        chosen = [t, t1] + [m for m in tail[1:] if m != y_last]
    if len(set(chosen)) != h[e]:
        raise WitnessError(f"chose {len(set(chosen))} top generators, need {h[e]}")
    gens = _lex_generators(h)
    gens[e] = sort_desc(chosen)
    _below_top(h, gens, set(chosen), e)
    return _monomial_witness(h, gens, _lowered(s, e - 1), note=f"{PENULTIMATE} socle, degree {e - 1}")


def _lex_module_gens(counts: list[int], r: int) -> dict[int, list[Monomial]]:
    """Generators of the lex-type inverse system with prescribed generator counts.

    In each degree the piece is the derivatives from above (always a final
    lex segment) followed by the next ``counts[d]`` monomials before it.
    """
    gens = {}
    size = 0
    for d in range(len(counts) - 1, 0, -1):
        derived = min_prev(size, d + 1) if size else 0
        total = derived + counts[d]
        if total > dim_r(r, d):
            raise WitnessError(f"degree {d} would need {total} monomials, only {dim_r(r, d)} exist")
        piece = last_monomials(r, d, total)
        if counts[d]:
            gens[d] = list(piece[: counts[d]])
        size = total
    return gens


def _generic_edge_witness(h: HVector, seed, retries: int, coeff_bound: int) -> Witness:
    """Lex module with one generator fewer in degrees t+1 and t+2, plus generic power(s) of degree t+2.

    The h-vector always comes out as ``h``. The socle drops by one in degree
    t+1; when ``s_t > 0`` the derivatives of the powers can also absorb
    generators in degree t, so the measured socle-vector is what the witness
    claims and ``predicted`` records the one-entry drop for comparison.
    """
    s = max_socle_for_h(h)
    t = generic_index(h)
    if not (t + 2 <= h.e and s[t + 1] and s[t + 2]):
        raise ValueError(f"the generic-edge condition does not hold for h = {h}")
    r = h.r
    counts = list(s)
    counts[t + 1] -= 1
    counts[t + 2] -= 1
    base = InverseSystemModule.from_monomials(r, _lex_module_gens(counts, r))
    # One power keeps the derivative count in degree t+1; two when it drops by one.
    drop = min_prev(h[t + 2] - 1, t + 2) != h[t + 1] - s[t + 1]
    forms = 2 if drop else 1
    predicted = _lowered(s, t + 1)
    gorenstein = compressed_gorenstein_h(forms, t + 2, r)
    tried = []
    for attempt in range(retries):
        trail = f"{seed}/{attempt}"
        tried.append(trail)
        f = power_sum(forms, t + 2, r, random.Random(trail), coeff_bound)
        if f is None or module_h_vector(InverseSystemModule(r, {t + 2: (f,)})) != gorenstein:
            continue
        module = adjoin(base, f)
        if module_h_vector(module) != h:
            continue
        got = module_socle_vector(module)
        for k in range(h.e + 1):
            if k != t and got[k] != predicted[k] or k == t and got[k] > predicted[k]:
                raise WitnessError(f"socle {got} departs from {predicted} outside degree {t}")
        matched = "matches" if got == predicted else f"also drops in degree {t}"
        witness = Witness(
            "inverse-system",
            module,
            h,
            got,
            note=f"{GENERIC_EDGE}: {forms} power(s) of degree {t + 2}, seed {trail}; socle {matched}",
            predicted=predicted,
        )
        verify_witness(witness, exact=True)
        return witness
    raise GenericityError(f"no generic {GENERIC_EDGE} witness for h = {h}", tried)


def construct_nonuniqueness_witness(
    h: HVector,
    condition: str,
    index: int | None = None,
    seed=0,
    retries: int = DEFAULT_RETRIES,
    coeff_bound: int = DEFAULT_COEFF_BOUND,
) -> Witness:
    """Build and verify a witness for one of the sufficient conditions.

    ``index`` selects the degree for the ``jump`` condition (defaults to the
    first one that holds). Only ``generic-edge`` is randomized; it retries
    with fresh seeds derived from ``seed`` up to ``retries`` times.
    """
    if condition == JUMP:
        if index is None:
            fired = [c.index for c in nonuniqueness_conditions(h) if c.kind == JUMP]
            if not fired:
                raise ValueError(f"the jump condition does not hold for h = {h}")
            index = fired[0]
        return _jump_witness(h, index)
    if condition == PENULTIMATE:
        return _penultimate_witness(h)
    if condition == GENERIC_EDGE:
        return _generic_edge_witness(h, seed, retries, coeff_bound)
    raise ValueError(f"unknown condition {condition!r}; expected one of {CONDITIONS}")


# -- compressed Gorenstein vectors -------------------------------------------


def compressed_gorenstein_h(m: int, d: int, r: int) -> HVector:
    """h-vector of the annihilator of a sum of ``m`` generic ``d``-th powers in ``r`` variables."""
    if m < 1 or d < 1 or r < 1:
        raise ValueError("m, d and r must be positive")
    return HVector((1,) + tuple(min(m, dim_r(r, j), dim_r(r, d - j)) for j in range(1, d + 1)))


def verified_power_sum(
    m: int, d: int, r: int, seed=0, retries: int = DEFAULT_RETRIES, coeff_bound: int = DEFAULT_COEFF_BOUND
) -> tuple[Form, str]:
    """A power sum whose principal inverse system has the compressed h-vector.

    Returns the form and the seed string that produced it.
    """
    expected = compressed_gorenstein_h(m, d, r)
    tried = []
    for attempt in range(retries):
        trail = f"{seed}/{attempt}"
        tried.append(trail)
        f = power_sum(m, d, r, random.Random(trail), coeff_bound)
        if f is not None and module_h_vector(InverseSystemModule(r, {d: (f,)})) == expected:
            return f, trail
    raise GenericityError(f"power sum of {m} {d}-th powers never reached {expected}", tried)


def power_sum_h_prediction(h: HVector, m: int, d: int, r: int | None = None) -> HVector:
    """h-vector predicted after adjoining ``m`` generic ``d``-th powers to a module with h-vector ``h``.

    Entry ``i`` is ``min(h_i + h_i(m, d), dim R_i)`` for ``i <= d``; entries
    above ``d`` are unchanged. ``r`` is the number of variables of the ambient
    ring and defaults to ``h_1``.
    """
    r = h.r if r is None else r
    g = compressed_gorenstein_h(m, d, r)
    top = max(h.e, d)
    out = [1]
    for i in range(1, top + 1):
        if i <= d:
            out.append(min(h[i] + g[i], dim_r(r, i)))
        else:
            out.append(h[i])
    return HVector(tuple(out))


# -- verdicts ---------------------------------------------------------------


def decide_r_le_3(h: HVector, construct: bool = True) -> UniquenessVerdict:
    """Complete answer in codimension at most 3, with one witness per possible cancellation."""
    r = h.r
    if r > 3:
        raise ValueError(f"codimension {r} > 3; use decide() for the partial answer")
    conditions = nonuniqueness_conditions(h) if h.e >= 1 else []
    failures = maximal_growth_failures(h) if h.e >= 1 else []
    if not failures:
        return UniquenessVerdict(UNIQUE, ["no-possible-cancellation"], [], conditions)
    verdict = UniquenessVerdict(NON_UNIQUE, [f"growth-fails@i={i}" for i in failures], [], conditions)
    if construct:
        for d in possible_cancellations(h).shifts:
            verdict.reasons.append(f"cancellation@d={d}")
            verdict.witnesses.append(construct_cancellation_witness(h, d))
    return verdict


def decide(h: HVector, seed=0, oracle_budget=None) -> UniquenessVerdict:
    """Best available answer in any codimension.

    Codimension <= 3 is decided completely. Above that: unique when the lex
    resolution admits no cancellation, non-unique when a sufficient condition
    holds (or the oracle finds two socle-vectors, if given a budget), and
    undecided otherwise.
    """
    if h.r <= 3:
        return decide_r_le_3(h)
    conditions = nonuniqueness_conditions(h)
    if not maximal_growth_failures(h):
        return UniquenessVerdict(UNIQUE, ["no-possible-cancellation"], [], conditions)
    if not possible_cancellations(h):
        return UniquenessVerdict(UNIQUE, ["lex-resolution-has-no-cancellation"], [], conditions)
    if conditions:
        verdict = UniquenessVerdict(NON_UNIQUE, [f"condition:{c.label()}" for c in conditions], [], conditions)
        seen = set()
        for c in conditions:
            key = (c.kind, c.index if c.kind == JUMP else None)
            if key in seen:
                continue
            seen.add(key)
            witness = construct_nonuniqueness_witness(h, c.kind, c.index, seed=seed)
            if all(w.payload != witness.payload for w in verdict.witnesses):
                verdict.witnesses.append(witness)
        return verdict
    if oracle_budget is not None:
        catalog = socle_catalog(h, oracle_budget, stop_at=2)
        if len(catalog.socle_vectors) >= 2:
            top = max_socle_for_h(h)
            verdict = UniquenessVerdict(NON_UNIQUE, ["oracle:two-monomial-socle-vectors"], [], conditions)
            for s, ideal in catalog.examples.items():
                if s != top:
                    verdict.witnesses.append(Witness("monomial-ideal", ideal, h, s, note="oracle"))
            return verdict
    return UniquenessVerdict(UNDECIDED, ["no-criterion-applies"], [], conditions)
