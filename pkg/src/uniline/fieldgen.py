"""Field structure on the rational line from an arbitrary choice of 0 and 1.

Once a zero point ``z`` is chosen, each point ``x`` is identified with the
shift taking ``z`` to ``x``; composing shifts induces an addition with
identity ``z``.  Choosing a unit ``u`` then identifies each nonzero point
with a scaling automorphism of the shift group, which induces a
multiplication with identity ``u``.  The closed forms below realize both
inductions exactly:

    add(x, y) = x + y - z
    mul(x, y) = z + (x - z)(y - z)/(u - z)

Different choices of (zero, one) give isomorphic fields; the isomorphism is
the affine map matching the two localizations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ordline import AffineMap, Interval, Shift
from . import sampling


@dataclass(frozen=True)
class Localization:
    """A chosen (zero, one) pair; the two points must differ."""

    zero: Fraction
    one: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "zero", Fraction(self.zero))
        object.__setattr__(self, "one", Fraction(self.one))
        if self.zero == self.one:
            raise ValueError("localization requires distinct zero and one")


def loc_add(loc: Localization, x: Fraction, y: Fraction) -> Fraction:
    """Apply to y the shift taking the localized zero to x."""
    return x + y - loc.zero


def loc_neg(loc: Localization, x: Fraction) -> Fraction:
    return 2 * loc.zero - x


def loc_sub(loc: Localization, x: Fraction, y: Fraction) -> Fraction:
    return loc_add(loc, x, loc_neg(loc, y))


def loc_mul(loc: Localization, x: Fraction, y: Fraction) -> Fraction:
    """Apply to the shift reaching y the scaling that sends the unit shift
    to the shift reaching x, read back at the localized zero."""
    z = loc.zero
    return z + (x - z) * (y - z) / (loc.one - z)


def loc_inv(loc: Localization, x: Fraction) -> Fraction:
    if x == loc.zero:
        raise ZeroDivisionError("division by localized zero")
    z = loc.zero
    return z + (loc.one - z) ** 2 / (x - z)


def loc_div(loc: Localization, x: Fraction, y: Fraction) -> Fraction:
    return loc_mul(loc, x, loc_inv(loc, y))


def as_shift(loc: Localization, x: Fraction) -> Shift:
    """The shift corresponding to x under the localized zero."""
    return Shift(x - loc.zero)


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    passed: bool
    counterexample: tuple[Fraction, ...] | None


@dataclass(frozen=True)
class FieldReport:
    checks: tuple[AxiomCheck, ...]
    sample_count: int

    def all_passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failed(self) -> tuple[AxiomCheck, ...]:
        return tuple(check for check in self.checks if not check.passed)


def verify_field_axioms(loc: Localization, sample_count: int = 1000, seed: int = 0) -> FieldReport:
    """Check the field axioms on deterministic pseudo-random triples.

    All arithmetic is exact; a failure report carries the exact offending
    triple so it can be re-checked directly.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be >= 1")
    rng = sampling.rng(seed)
    triples = [tuple(sampling.rationals(rng, 3)) for _ in range(sample_count)]
    z, u = loc.zero, loc.one

    def add(x, y):
        return loc_add(loc, x, y)

    def mul(x, y):
        return loc_mul(loc, x, y)

    axioms = [
        ("add_associative", lambda x, y, w: add(add(x, y), w) == add(x, add(y, w))),
        ("add_commutative", lambda x, y, w: add(x, y) == add(y, x)),
        ("add_identity", lambda x, y, w: add(z, x) == x),
        ("add_inverse", lambda x, y, w: add(x, loc_neg(loc, x)) == z),
        ("mul_associative", lambda x, y, w: mul(mul(x, y), w) == mul(x, mul(y, w))),
        ("mul_commutative", lambda x, y, w: mul(x, y) == mul(y, x)),
        ("mul_identity", lambda x, y, w: mul(u, x) == x),
        ("mul_inverse", lambda x, y, w: x == z or mul(x, loc_inv(loc, x)) == u),
        ("distributive", lambda x, y, w: mul(x, add(y, w)) == add(mul(x, y), mul(x, w))),
    ]
    checks = []
    for name, law in axioms:
        bad = None
        for triple in triples:
            if not law(*triple):
                bad = triple
                break
        checks.append(AxiomCheck(name, bad is None, bad))
    return FieldReport(tuple(checks), sample_count)


def localization_iso(first: Localization, second: Localization) -> AffineMap:
    """The unique affine field isomorphism sending one localization to the other.

    Maps zero to zero and one to one, and carries the localized addition and
    multiplication of ``first`` onto those of ``second`` exactly.
    """
    scale = (second.one - second.zero) / (first.one - first.zero)
    return AffineMap(scale, second.zero - scale * first.zero)


def stretch_map(loc: Localization, a: Fraction) -> AffineMap:
    """Multiplication by ``a`` as an affine operator fixing the localized zero."""
    if a == loc.zero:
        raise ValueError("degenerate stretch: factor equals localized zero")
    z = loc.zero
    slope = (a - z) / (loc.one - z)
    return AffineMap(slope, z - slope * z)


def stretch_image(loc: Localization, a: Fraction, interval: Interval) -> Interval:
    """Image of a half-open interval under multiplication by ``a``.

    Order-preserving factors map [lo, hi) to [m(lo), m(hi)); order-reversing
    factors swap the endpoints (the pointwise image is then open on the left
    and closed on the right; the result is reported in the canonical
    left-closed form).
    """
    m = stretch_map(loc, a)
    lo, hi = m(interval.lo), m(interval.hi)
    if m.slope > 0:
        return Interval(lo, hi)
    return Interval(hi, lo)


@dataclass(frozen=True)
class OrderReport:
    positives_closed_add: AxiomCheck
    positives_closed_mul: AxiomCheck
    negation_reverses: AxiomCheck
    sample_count: int

    def all_passed(self) -> bool:
        return (
            self.positives_closed_add.passed
            and self.positives_closed_mul.passed
            and self.negation_reverses.passed
        )


def order_compatibility(loc: Localization, sample_count: int = 1000, seed: int = 0) -> OrderReport:
    """Positivity and sign-reversal checks for a positively oriented localization.

    The positives are the points above the localized zero; they must be
    closed under the localized addition and multiplication.  Multiplying by
    the additive inverse of the unit must reverse the order (an order
    anti-isomorphism).
    """
    if loc.one <= loc.zero:
        raise ValueError("order checks require a positively oriented localization (one > zero)")
    if sample_count < 1:
        raise ValueError("sample_count must be >= 1")
    rng = sampling.rng(seed)
    z = loc.zero
    neg_one = loc_neg(loc, loc.one)

    def positive_pair():
        x, y = sampling.rationals(rng, 2)
        return z + abs(x - z) + 1, z + abs(y - z) + 1

    closed_add = None
    closed_mul = None
    reverses = None
    for _ in range(sample_count):
        p, q = positive_pair()
        if closed_add is None and loc_add(loc, p, q) <= z:
            closed_add = (p, q)
        if closed_mul is None and loc_mul(loc, p, q) <= z:
            closed_mul = (p, q)
        x, y = sampling.rationals(rng, 2)
        if x == y:
            y = y + 1
        lo, hi = min(x, y), max(x, y)
        if reverses is None and not loc_mul(loc, neg_one, lo) > loc_mul(loc, neg_one, hi):
            reverses = (lo, hi)
    return OrderReport(
        AxiomCheck("positives_closed_add", closed_add is None, closed_add),
        AxiomCheck("positives_closed_mul", closed_mul is None, closed_mul),
        AxiomCheck("negation_reverses", reverses is None, reverses),
        sample_count,
    )
