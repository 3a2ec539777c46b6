"""Galois ray operators, Dedekind cuts, and bounded-precision classification.

``upper_set``/``lower_set`` send a finite set of rationals to the ray of
elements strictly above/below all of it; applying the operators three times
collapses to one application, which is checked symbolically on rays.

``classify_cut`` takes a membership oracle for a downward-closed set and
descends the Stern-Brocot tree toward the cut boundary.  Mediant endpoints
stay unimodular, so whenever the descent interval's denominators exceed the
requested bound, no rational with a denominator within the bound remains
strictly inside: the boundary is either an endpoint (a principal cut, found
via a one-sided infinite run) or lies strictly between two consecutive
representable mediants (a gap at that precision).  Runs in one direction are
searched exponentially, so a boundary with denominator ``q`` is pinned after
roughly ``log``-many oracle queries per continued-fraction coefficient.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from fractions import Fraction

from .ordline import format_rational

UPWARD = "upward"
DOWNWARD = "downward"
ALL = "all"
EMPTY = "empty"


class CutError(ValueError):
    """Invalid oracle input (bad bounds or malformed arguments)."""


class NonMonotoneOracleError(CutError):
    """The oracle answered inconsistently with a downward-closed set."""


@dataclass(frozen=True)
class Ray:
    kind: str
    endpoint: Fraction | None = None
    closed: bool = False

    def __post_init__(self) -> None:
        if self.kind not in (UPWARD, DOWNWARD, ALL, EMPTY):
            raise ValueError(f"unknown ray kind {self.kind!r}")
        if self.kind in (UPWARD, DOWNWARD):
            if self.endpoint is None:
                raise ValueError(f"{self.kind} ray requires an endpoint")
            object.__setattr__(self, "endpoint", Fraction(self.endpoint))
        elif self.endpoint is not None:
            raise ValueError(f"{self.kind} ray admits no endpoint")

    def __contains__(self, x: Fraction) -> bool:
        if self.kind == ALL:
            return True
        if self.kind == EMPTY:
            return False
        assert self.endpoint is not None
        if self.kind == UPWARD:
            return x >= self.endpoint if self.closed else x > self.endpoint
        return x <= self.endpoint if self.closed else x < self.endpoint

    def is_subset(self, other: "Ray") -> bool:
        if self.kind == EMPTY or other.kind == ALL:
            return True
        if other.kind == EMPTY:
            return self.kind == EMPTY
        if self.kind == ALL:
            return False
        if self.kind != other.kind:
            return False
        assert self.endpoint is not None and other.endpoint is not None
        if self.closed and not other.closed:
            return (
                self.endpoint > other.endpoint
                if self.kind == UPWARD
                else self.endpoint < other.endpoint
            )
        if self.kind == UPWARD:
            return self.endpoint >= other.endpoint
        return self.endpoint <= other.endpoint

    def __str__(self) -> str:
        if self.kind == ALL:
            return "(-inf, inf)"
        if self.kind == EMPTY:
            return "{}"
        endpoint = format_rational(self.endpoint)
        if self.kind == UPWARD:
            return ("[" if self.closed else "(") + f"{endpoint}, inf)"
        return f"(-inf, {endpoint}" + ("]" if self.closed else ")")


def upper_set(points: Iterable[Fraction]) -> Ray:
    """Elements strictly greater than every point; all of the line if empty."""
    points = list(points)
    if not points:
        return Ray(ALL)
    return Ray(UPWARD, max(points), closed=False)


def lower_set(points: Iterable[Fraction]) -> Ray:
    points = list(points)
    if not points:
        return Ray(ALL)
    return Ray(DOWNWARD, min(points), closed=False)


def ray_upper(ray: Ray) -> Ray:
    """Elements strictly greater than every element of the ray."""
    if ray.kind == EMPTY:
        return Ray(ALL)
    if ray.kind in (ALL, UPWARD):
        return Ray(EMPTY)
    # downward ray: bounded above by its endpoint
    return Ray(UPWARD, ray.endpoint, closed=not ray.closed)


def ray_lower(ray: Ray) -> Ray:
    if ray.kind == EMPTY:
        return Ray(ALL)
    if ray.kind in (ALL, DOWNWARD):
        return Ray(EMPTY)
    return Ray(DOWNWARD, ray.endpoint, closed=not ray.closed)


@dataclass(frozen=True)
class GaloisReport:
    upper: Ray
    upper_lower: Ray
    upper_lower_upper: Ray
    lower: Ray
    lower_upper: Ray
    lower_upper_lower: Ray

    def passed(self) -> bool:
        return self.upper_lower_upper == self.upper and self.lower_upper_lower == self.lower


def galois_closure_check(points: Iterable[Fraction]) -> GaloisReport:
    """Verify that triple application collapses: X^{><>} = X^> and X^{<><} = X^<."""
    points = list(points)
    if not points:
        raise CutError("galois closure check requires a non-empty set")
    upper = upper_set(points)
    lower = lower_set(points)
    return GaloisReport(
        upper,
        ray_lower(upper),
        ray_upper(ray_lower(upper)),
        lower,
        ray_upper(lower),
        ray_lower(ray_upper(lower)),
    )


# --- cut oracles and classification ------------------------------------------------


@dataclass(frozen=True)
class CutOracle:
    """Decidable membership in a downward-closed set of rationals.

    ``lo`` must be a member and ``hi`` a non-member; ``total`` declares the
    predicate decidable everywhere, which licenses gap verdicts (otherwise
    exhausting the bound yields only "unresolved").
    """

    name: str
    member: Callable[[Fraction], bool] = field(compare=False)
    lo: Fraction
    hi: Fraction
    total: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo >= self.hi:
            raise CutError(f"oracle {self.name!r}: lo must be strictly below hi")


def oracle_lt(threshold: Fraction, name: str | None = None) -> CutOracle:
    threshold = Fraction(threshold)
    return CutOracle(
        name or f"lt {format_rational(threshold)}",
        lambda q: q < threshold,
        threshold - 1,
        threshold + 1,
    )


def oracle_le(threshold: Fraction, name: str | None = None) -> CutOracle:
    threshold = Fraction(threshold)
    return CutOracle(
        name or f"le {format_rational(threshold)}",
        lambda q: q <= threshold,
        threshold - 1,
        threshold + 1,
    )


def oracle_sq_lt(target: Fraction, name: str | None = None) -> CutOracle:
    """The lower class of the positive square root of ``target``."""
    target = Fraction(target)
    if target <= 0:
        raise CutError("sq-lt oracle requires a positive target")
    return CutOracle(
        name or f"sq-lt {format_rational(target)}",
        lambda q: q < 0 or q * q < target,
        Fraction(0),
        target + 1,
    )


PRINCIPAL = "principal"
GAP = "gap"
UNRESOLVED = "unresolved"


@dataclass(frozen=True)
class CutClass:
    """Verdict of a bounded-precision cut classification.

    ``principal`` carries the boundary point; ``gap`` and ``unresolved``
    carry the final bracketing pair, between which the boundary is trapped
    with no rational of denominator within the bound in between.
    """

    kind: str
    bound: int
    point: Fraction | None = None
    bracket: tuple[Fraction, Fraction] | None = None


class _Probe:
    """Query wrapper enforcing consistency with a downward-closed set."""

    def __init__(self, oracle: CutOracle):
        self.oracle = oracle
        self.max_true: Fraction | None = None
        self.min_false: Fraction | None = None

    def __call__(self, value: Fraction) -> bool:
        answer = bool(self.oracle.member(value))
        if answer:
            if self.max_true is None or value > self.max_true:
                self.max_true = value
        else:
            if self.min_false is None or value < self.min_false:
                self.min_false = value
        if self.max_true is not None and self.min_false is not None:
            if self.max_true >= self.min_false:
                raise NonMonotoneOracleError(
                    f"oracle {self.oracle.name!r} accepts {self.max_true} but rejects "
                    f"{self.min_false} below it"
                )
        return answer


def _value(pair: tuple[int, int]) -> Fraction:
    return Fraction(pair[0], pair[1])


def _verify_cap(bound: int) -> int:
    # probe denominators well past the reporting bound, so a boundary hiding
    # just beyond a candidate endpoint still produces a visible flip
    return max(bound * bound, 10_000)


def classify_cut(oracle: CutOracle, denominator_bound: int) -> CutClass:
    """Pin the cut boundary to a rational within the bound, or bracket it.

    Descends mediants between a known member and a known non-member.  A run
    that stays on one side while the probe denominators grow past the
    verification cap (the square of the bound) certifies the opposite
    endpoint as the boundary; the verdict is principal when that endpoint's
    denominator is within the reporting bound.  Flips on both sides past the
    cap leave the boundary strictly between two consecutive mediants with no
    representable rational in between: a gap (when the oracle is declared
    total) or unresolved.
    """
    if denominator_bound < 1:
        raise CutError("denominator bound must be >= 1")
    cap = _verify_cap(denominator_bound)
    probe = _Probe(oracle)
    if not probe(oracle.lo):
        raise NonMonotoneOracleError(f"oracle {oracle.name!r} rejects its declared member {oracle.lo}")
    if probe(oracle.hi):
        raise NonMonotoneOracleError(f"oracle {oracle.name!r} accepts its declared non-member {oracle.hi}")

    if probe(Fraction(0)):
        low, high = (0, 1), (1, 0)
    else:
        low, high = (-1, 0), (0, 1)

    while low[1] + high[1] <= cap:
        mediant = (low[0] + high[0], low[1] + high[1])
        if probe(_value(mediant)):
            # ascend: low moves toward high through low + k*high
            outcome, k = _run(probe, low, high, True, cap)
            if outcome == "flip":
                low = (low[0] + (k - 1) * high[0], low[1] + (k - 1) * high[1])
                high = (low[0] + high[0], low[1] + high[1])
            else:
                final_low = (low[0] + k * high[0], low[1] + k * high[1])
                if high[1] <= denominator_bound:
                    return CutClass(PRINCIPAL, denominator_bound, point=_value(high))
                return _exhausted(oracle, denominator_bound, final_low, high)
        else:
            # descend: high moves toward low through high + k*low
            outcome, k = _run(probe, high, low, False, cap)
            if outcome == "flip":
                high = (high[0] + (k - 1) * low[0], high[1] + (k - 1) * low[1])
                low = (low[0] + high[0], low[1] + high[1])
            else:
                final_high = (high[0] + k * low[0], high[1] + k * low[1])
                if low[1] <= denominator_bound:
                    return CutClass(PRINCIPAL, denominator_bound, point=_value(low))
                return _exhausted(oracle, denominator_bound, low, final_high)
    return _exhausted(oracle, denominator_bound, low, high)


def _exhausted(
    oracle: CutOracle, bound: int, low: tuple[int, int], high: tuple[int, int]
) -> CutClass:
    bracket = (_value(low), _value(high))
    return CutClass(GAP if oracle.total else UNRESOLVED, bound, bracket=bracket)


def _run(
    probe: _Probe,
    base: tuple[int, int],
    direction: tuple[int, int],
    expect: bool,
    bound: int,
) -> tuple[str, int]:
    """Search the maximal run of same-side answers along base + k*direction.

    Returns ("flip", k) for the least k whose answer breaks the run, or
    ("all", k) when answers hold through the last k with a representable
    denominator (direction infinite: until the consistency guard trips).
    k = 1 is the already-queried mediant, so runs start at k = 2.
    """

    def point(k: int) -> Fraction:
        return Fraction(base[0] + k * direction[0], base[1] + k * direction[1])

    if direction[1] > 0:
        k_cap = (bound - base[1]) // direction[1] + 1
    else:
        k_cap = None  # unbounded: the probe guard terminates the search

    def continuing(k: int) -> bool:
        return probe(point(k)) == expect

    last_good = 1
    k = 2
    while True:
        if k_cap is not None and k >= k_cap:
            if continuing(k_cap):
                return "all", k_cap
            k = k_cap
            break
        if not continuing(k):
            break
        last_good = k
        k *= 2
    # least breaking index lies in (last_good, k]
    lo, hi = last_good, k
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if continuing(mid):
            lo = mid
        else:
            hi = mid
    return "flip", hi


# --- connectivity ------------------------------------------------------------------

CONNECTED_EVIDENCE = "connected-evidence"
DISCONNECTED = "disconnected"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ProbeReport:
    verdict: str
    results: tuple[tuple[str, CutClass], ...]
    witness: str | None = None


def connectivity_probe(oracles: Iterable[CutOracle], denominator_bound: int) -> ProbeReport:
    """Classify a family of cuts; any gap witnesses a disconnection.

    All-principal families are evidence of connectedness relative to the
    family and the bound only, never a proof.  Unresolved cuts (from
    non-total oracles) make the probe inconclusive unless a gap appears.
    """
    oracles = list(oracles)
    if not oracles:
        raise CutError("connectivity probe requires at least one oracle")
    results = []
    witness = None
    saw_unresolved = False
    for oracle in oracles:
        verdict = classify_cut(oracle, denominator_bound)
        results.append((oracle.name, verdict))
        if verdict.kind == GAP and witness is None:
            witness = oracle.name
        if verdict.kind == UNRESOLVED:
            saw_unresolved = True
    if witness is not None:
        return ProbeReport(DISCONNECTED, tuple(results), witness)
    if saw_unresolved:
        return ProbeReport(INCONCLUSIVE, tuple(results))
    return ProbeReport(CONNECTED_EVIDENCE, tuple(results))
