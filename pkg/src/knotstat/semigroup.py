"""Exact arithmetic in the free abelian semigroup of knots under connected
sum, its Grothendieck group of formal differences, and the induced weight
function used by the type-III analysis.

Knots are multisets of prime-knot names (the unknot is the empty
multiset); group elements are reduced formal differences K (+) minus
K (-) with disjoint prime support.  All arithmetic is exact: weights
f(g) = q^(scale * total invariant weight) are arbitrary-precision
integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional

from .catalog import Catalog, KnotRecord
from .errors import DomainError
from .partition import threshold_beta_plus

__all__ = [
    "Knot",
    "GroupElement",
    "WeightFunction",
    "connected_sum",
    "divides",
    "groth_reduce",
    "invariants_additive",
    "omega",
    "lambda_multiplicative",
    "weight_of",
    "f_weight",
    "act_on_weight",
    "parse_knot",
    "parse_group_element",
    "format_knot",
    "format_group_element",
    "enumerate_knots",
    "enumerate_group_elements",
]


@dataclass(frozen=True)
class Knot:
    """A knot as the multiset of its prime factors; empty = unknot."""

    factors: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        seen = set()
        for name, mult in self.factors:
            if mult < 1:
                raise DomainError(f"factor multiplicity must be >= 1, got {name}:{mult}")
            if name in seen:
                raise DomainError(f"repeated factor name {name!r}")
            seen.add(name)
        object.__setattr__(self, "factors", tuple(sorted(self.factors)))

    @classmethod
    def unknot(cls) -> "Knot":
        return cls(())

    @classmethod
    def prime(cls, name: str, mult: int = 1) -> "Knot":
        return cls(((name, mult),))

    @classmethod
    def from_map(cls, mapping: Mapping[str, int]) -> "Knot":
        return cls(tuple((k, v) for k, v in mapping.items() if v))

    def as_map(self) -> dict[str, int]:
        return dict(self.factors)

    def is_unknot(self) -> bool:
        return not self.factors

    def multiplicity(self, name: str) -> int:
        return dict(self.factors).get(name, 0)

    def support(self) -> frozenset[str]:
        return frozenset(name for name, _ in self.factors)

    def __str__(self) -> str:
        return format_knot(self)


@dataclass(frozen=True)
class GroupElement:
    """A reduced formal difference positive (-) negative of knots."""

    positive: Knot
    negative: Knot

    def __post_init__(self):
        pos, neg = self.positive.as_map(), self.negative.as_map()
        common = set(pos) & set(neg)
        if common:
            # reduce eagerly: cancel shared prime factors
            for name in common:
                c = min(pos[name], neg[name])
                pos[name] -= c
                neg[name] -= c
            object.__setattr__(self, "positive", Knot.from_map(pos))
            object.__setattr__(self, "negative", Knot.from_map(neg))

    @classmethod
    def identity(cls) -> "GroupElement":
        return cls(Knot.unknot(), Knot.unknot())

    @classmethod
    def of(cls, positive: Knot, negative: Optional[Knot] = None) -> "GroupElement":
        return cls(positive, negative if negative is not None else Knot.unknot())

    def is_identity(self) -> bool:
        return self.positive.is_unknot() and self.negative.is_unknot()

    def inverse(self) -> "GroupElement":
        return GroupElement(self.negative, self.positive)

    def compose(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(
            connected_sum(self.positive, other.positive),
            connected_sum(self.negative, other.negative),
        )

    def __str__(self) -> str:
        return format_group_element(self)


@dataclass(frozen=True)
class WeightFunction:
    """The grading f(g) = q^(scale * total invariant weight of g).

    The exponent scale defaults to the smallest integer at or above the
    convergence threshold beta_plus, which evaluates to 10.
    """

    q: int = 2
    exponent_scale: Optional[int] = None

    def __post_init__(self):
        if self.q < 2:
            raise DomainError(f"weight base q must be >= 2, got {self.q}")
        if self.exponent_scale is None:
            object.__setattr__(
                self, "exponent_scale", math.ceil(threshold_beta_plus())
            )
        if self.exponent_scale < 1:
            raise DomainError(
                f"exponent scale must be >= 1, got {self.exponent_scale}"
            )


def connected_sum(k1: Knot, k2: Knot) -> Knot:
    """Multiplicity-wise union of prime factors; identity is the unknot."""
    out = k1.as_map()
    for name, mult in k2.factors:
        out[name] = out.get(name, 0) + mult
    return Knot.from_map(out)


def divides(k1: Knot, k2: Knot) -> bool:
    """True iff k1 is a connected summand of k2 (multiplicity-wise <=)."""
    m2 = k2.as_map()
    return all(m2.get(name, 0) >= mult for name, mult in k1.factors)


def groth_reduce(k1: Knot, k2: Knot) -> GroupElement:
    """The class of the pair (k1, k2) with common factors cancelled."""
    return GroupElement(k1, k2)


def _record_for(name: str, cat: Catalog) -> KnotRecord:
    return cat.get(name)


def invariants_additive(
    k: Knot, cat: Catalog, assume_cr_additive: bool = False
) -> tuple[int, int]:
    """(crossing number, genus) of a composite knot by additivity.

    Genus is additive on all connected sums.  Crossing-number additivity
    is only a theorem for alternating factors, so non-alternating factors
    are rejected unless ``assume_cr_additive`` accepts the conjectural
    extension.
    """
    cr = 0
    genus = 0
    for name, mult in k.factors:
        rec = _record_for(name, cat)
        if not rec.alternating and not assume_cr_additive:
            raise DomainError(
                f"crossing-number additivity needs alternating factors; "
                f"{name} is not alternating (pass assume_cr_additive=True "
                f"to use the conjectural extension)"
            )
        cr += mult * rec.crossing_number
        genus += mult * rec.genus
    return cr, genus


def weight_of(k: Knot, cat: Catalog, assume_cr_additive: bool = False) -> int:
    """Cr(K) + g(K), the additive invariant weight; 0 for the unknot."""
    cr, genus = invariants_additive(k, cat, assume_cr_additive)
    return cr + genus


def omega(k: Knot) -> int:
    """Number of distinct prime factors."""
    return len(k.factors)


def lambda_multiplicative(k: Knot, cat: Catalog) -> int:
    """Product over factors of |top Alexander coefficient|^multiplicity."""
    out = 1
    for name, mult in k.factors:
        out *= _record_for(name, cat).top_coefficient ** mult
    return out


def f_weight(
    g: GroupElement,
    w: WeightFunction,
    cat: Catalog,
    assume_cr_additive: bool = False,
) -> int:
    """Exact integer weight q^(scale * (weight(positive) + weight(negative))).

    Both halves of the formal difference contribute positively to the
    exponent, so f is 1 exactly at the identity and at least q^(4*scale)
    everywhere else.
    """
    total = weight_of(g.positive, cat, assume_cr_additive) + weight_of(
        g.negative, cat, assume_cr_additive
    )
    return w.q ** (w.exponent_scale * total)


def act_on_weight(h: GroupElement, g: GroupElement) -> GroupElement:
    """The translated index h^(-1) g, so that composing with f gives the
    pulled-back weight f(h^(-1) g)."""
    return h.inverse().compose(g)


# ---------------------------------------------------------------------------
# parsing and formatting
# ---------------------------------------------------------------------------


def parse_knot(text: str) -> Knot:
    """Parse a connected-sum expression like ``3_1 # 3_1 # 4_1``.

    ``unknot`` (or an empty string) denotes the identity.
    """
    text = text.strip()
    if not text or text.lower() == "unknot":
        return Knot.unknot()
    counts: dict[str, int] = {}
    for token in text.split("#"):
        name = token.strip()
        if not name:
            raise DomainError(f"empty factor in knot expression {text!r}")
        if name.lower() == "unknot":
            continue
        counts[name] = counts.get(name, 0) + 1
    return Knot.from_map(counts)


def parse_group_element(text: str) -> GroupElement:
    """Parse ``A -- B`` (the class of A minus B); a bare ``A`` means A alone."""
    parts = text.split("--")
    if len(parts) == 1:
        return GroupElement.of(parse_knot(parts[0]))
    if len(parts) == 2:
        return GroupElement(parse_knot(parts[0]), parse_knot(parts[1]))
    raise DomainError(f"group element needs at most one '--': {text!r}")


def format_knot(k: Knot) -> str:
    if k.is_unknot():
        return "unknot"
    parts: list[str] = []
    for name, mult in k.factors:
        parts.extend([name] * mult)
    return " # ".join(parts)


def format_group_element(g: GroupElement) -> str:
    return f"{format_knot(g.positive)} -- {format_knot(g.negative)}"


# ---------------------------------------------------------------------------
# truncated enumerations
# ---------------------------------------------------------------------------


def enumerate_knots(
    cat: Catalog,
    max_weight: int,
    assume_cr_additive: bool = False,
) -> list[tuple[Knot, int]]:
    """All composite knots of invariant weight <= max_weight, with weights.

    Deterministic order: ascending weight, then factor tuple.  Includes
    the unknot at weight 0.
    """
    recs = [
        (rec.name, rec.weight)
        for rec in cat
        if rec.alternating or assume_cr_additive
    ]
    out: list[tuple[Knot, int]] = []

    def extend(idx: int, acc: list[tuple[str, int]], used: int) -> None:
        out.append((Knot(tuple(acc)), used))
        for j in range(idx, len(recs)):
            name, wgt = recs[j]
            if used + wgt > max_weight:
                continue
            mult = 1
            while used + mult * wgt <= max_weight:
                extend(j + 1, acc + [(name, mult)], used + mult * wgt)
                mult += 1

    extend(0, [], 0)
    out.sort(key=lambda pair: (pair[1], pair[0].factors))
    return out


def enumerate_group_elements(
    cat: Catalog,
    max_weight: int,
    assume_cr_additive: bool = False,
) -> list[tuple[GroupElement, int]]:
    """All reduced formal differences of total invariant weight <= max_weight.

    Total weight is weight(positive) + weight(negative); supports are
    disjoint by reducedness.  Deterministic order: ascending weight, then
    the factor tuples.  Includes the identity at weight 0.
    """
    recs = [
        (rec.name, rec.weight)
        for rec in cat
        if rec.alternating or assume_cr_additive
    ]
    out: list[tuple[GroupElement, int]] = []

    def extend(
        idx: int,
        pos: list[tuple[str, int]],
        neg: list[tuple[str, int]],
        used: int,
    ) -> None:
        out.append((GroupElement(Knot(tuple(pos)), Knot(tuple(neg))), used))
        for j in range(idx, len(recs)):
            name, wgt = recs[j]
            if used + wgt > max_weight:
                continue
            mult = 1
            while used + mult * wgt <= max_weight:
                extend(j + 1, pos + [(name, mult)], neg, used + mult * wgt)
                extend(j + 1, pos, neg + [(name, mult)], used + mult * wgt)
                mult += 1

    extend(0, [], [], 0)
    out.sort(
        key=lambda pair: (pair[1], pair[0].positive.factors, pair[0].negative.factors)
    )
    return out
