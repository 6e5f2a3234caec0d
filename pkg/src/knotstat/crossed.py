"""Exact arithmetic for the semigroup actions on Q[Q/Z] and its pullbacks.

This module is the exact-rational core of the crossed-product machinery.
It provides

* ``QmodZ`` -- elements of Q/Z, identified with roots of unity;
* ``GroupRingElement`` -- finite Q-linear combinations of basis symbols,
  either ``e(r)`` with ``r`` in Q/Z or ``d(n_gamma, zeta)`` labelling the
  abelianized pullback group;
* the endomorphisms ``sigma_n`` (``e(r) -> e(nr)``), their partial inverses
  ``alpha_n`` (averages over n-th roots), and the idempotents ``e_n``;
* membership and action routines for the pullback group, where a group
  element is recorded by its abelianization exponent ``n_gamma`` together
  with a root of unity ``zeta`` whose ``n``-th power matches the image of
  ``gamma`` in the cyclic quotient of order ``n_rho``;
* a term-rewriting normal form ``mu_a . x . mu_b*`` for words in the
  isometries ``mu_n``, their adjoints, and group-ring elements, using the
  defining relations

      mu_n* mu_n = 1,     mu_n mu_n* = e_n,      mu_n mu_m = mu_{nm},
      mu_n e(r) mu_n* = alpha_n(e(r)),   mu_n* e(r) mu_n = sigma_n(e(r)).

Everything here is exact: no floating point enters this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

from .errors import DomainError

__all__ = [
    "QmodZ",
    "HatPiLabel",
    "GroupRingElement",
    "RhoContext",
    "BCNormalForm",
    "sigma_n",
    "alpha_n",
    "idempotent_e",
    "hatpi_member",
    "sigma_n_hatpi",
    "alpha_n_hatpi",
    "idempotent_e_hatpi",
    "congruence_inverse",
    "bc_normalize",
    "bc_relation_check",
    "parse_bc_word",
    "cyclic_tower_check",
]


@dataclass(frozen=True, order=True)
class QmodZ:
    """An element of Q/Z stored as an exact rational in [0, 1).

    ``Fraction`` keeps the value in lowest terms with a positive
    denominator, so both invariants hold by construction.
    """

    frac: Fraction

    def __post_init__(self) -> None:
        # reduce mod 1 on construction; callers may pass any rational
        object.__setattr__(self, "frac", self.frac % 1)

    @classmethod
    def of(cls, numerator: int, denominator: int = 1) -> "QmodZ":
        return cls(Fraction(numerator, denominator))

    @property
    def numerator(self) -> int:
        return self.frac.numerator

    @property
    def denominator(self) -> int:
        return self.frac.denominator

    def __add__(self, other: "QmodZ") -> "QmodZ":
        return QmodZ(self.frac + other.frac)

    def __neg__(self) -> "QmodZ":
        return QmodZ(-self.frac)

    def __sub__(self, other: "QmodZ") -> "QmodZ":
        return QmodZ(self.frac - other.frac)

    def scale(self, n: int) -> "QmodZ":
        """n * r mod 1, the n-th power of the corresponding root of unity."""
        return QmodZ(n * self.frac)

    def is_zero(self) -> bool:
        return self.frac == 0

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"

    @classmethod
    def parse(cls, text: str) -> "QmodZ":
        """Parse 'a/b' or a bare integer."""
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return cls(Fraction(int(num), int(den)))
        return cls(Fraction(int(text)))


class HatPiLabel(NamedTuple):
    """Basis label for the abelianized pullback group: (n_gamma, zeta)."""

    n_gamma: int
    zeta: QmodZ


Label = Union[QmodZ, HatPiLabel]


def _label_product(a: Label, b: Label) -> Label:
    # both label families are abelian; the group law is componentwise addition
    if isinstance(a, QmodZ) and isinstance(b, QmodZ):
        return a + b
    if isinstance(a, HatPiLabel) and isinstance(b, HatPiLabel):
        return HatPiLabel(a.n_gamma + b.n_gamma, a.zeta + b.zeta)
    raise TypeError("cannot multiply group-ring elements over different groups")


class GroupRingElement:
    """A finite Q-linear combination of group basis labels.

    Immutable; zero coefficients are never stored.  Supports +, -, scalar
    multiplication by rationals, and convolution product *.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Label, Fraction] | Iterable[tuple[Label, Fraction]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Label, Fraction] = {}
        for label, coeff in items:
            coeff = Fraction(coeff)
            if coeff:
                new = acc.get(label, Fraction(0)) + coeff
                if new:
                    acc[label] = new
                else:
                    acc.pop(label, None)
        self._terms = acc

    @staticmethod
    def basis(label: Label) -> "GroupRingElement":
        return GroupRingElement([(label, Fraction(1))])

    @staticmethod
    def e(r: QmodZ | Fraction | int) -> "GroupRingElement":
        """The basis element e(r) of Q[Q/Z]."""
        if not isinstance(r, QmodZ):
            r = QmodZ(Fraction(r))
        return GroupRingElement.basis(r)

    @staticmethod
    def one() -> "GroupRingElement":
        """The unit e(0) of Q[Q/Z]."""
        return GroupRingElement.e(0)

    @property
    def terms(self) -> dict[Label, Fraction]:
        return dict(self._terms)

    def coefficient(self, label: Label) -> Fraction:
        return self._terms.get(label, Fraction(0))

    def support(self) -> list[Label]:
        return sorted(self._terms, key=_label_sort_key)

    def is_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        acc = dict(self._terms)
        for label, coeff in other._terms.items():
            new = acc.get(label, Fraction(0)) + coeff
            if new:
                acc[label] = new
            else:
                acc.pop(label, None)
        return GroupRingElement(acc)

    def __neg__(self) -> "GroupRingElement":
        return GroupRingElement({l: -c for l, c in self._terms.items()})

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + (-other)

    def scale(self, scalar: Fraction | int) -> "GroupRingElement":
        scalar = Fraction(scalar)
        return GroupRingElement({l: scalar * c for l, c in self._terms.items()})

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        acc: dict[Label, Fraction] = {}
        for la, ca in self._terms.items():
            for lb, cb in other._terms.items():
                label = _label_product(la, lb)
                new = acc.get(label, Fraction(0)) + ca * cb
                if new:
                    acc[label] = new
                else:
                    acc.pop(label, None)
        return GroupRingElement(acc)

    def map_labels(self, fn) -> "GroupRingElement":
        """Relabel basis elements through fn, merging coefficients."""
        acc: dict[Label, Fraction] = {}
        for label, coeff in self._terms.items():
            new_label = fn(label)
            new = acc.get(new_label, Fraction(0)) + coeff
            if new:
                acc[new_label] = new
            else:
                acc.pop(new_label, None)
        return GroupRingElement(acc)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for label in self.support():
            coeff = self._terms[label]
            if isinstance(label, QmodZ):
                parts.append(f"{coeff}*e({label})")
            else:
                parts.append(f"{coeff}*d({label.n_gamma},{label.zeta})")
        return " + ".join(parts)


def _label_sort_key(label: Label):
    if isinstance(label, QmodZ):
        return (0, label.frac)
    return (1, label.n_gamma, label.zeta.frac)


@dataclass(frozen=True)
class RhoContext:
    """Order data of the cyclic target: n_rho >= 1 and the coprimality test.

    ``n_rho`` is the order of the root of unity hit by the surjection to the
    cyclic group; the admissible semigroup consists of the integers coprime
    to it.
    """

    n_rho: int

    def __post_init__(self) -> None:
        if self.n_rho < 1:
            raise DomainError(f"n_rho must be >= 1, got {self.n_rho}")

    def admits(self, n: int) -> bool:
        """Whether n lies in the semigroup N_rho."""
        return n >= 1 and math.gcd(n, self.n_rho) == 1


# ---------------------------------------------------------------------------
# sigma_n, alpha_n, idempotents on Q[Q/Z]
# ---------------------------------------------------------------------------


def _check_n(n: int) -> None:
    if n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")


def sigma_n(x: GroupRingElement, n: int) -> GroupRingElement:
    """sigma_n(e(r)) = e(nr), extended linearly."""
    _check_n(n)
    return x.map_labels(lambda r: r.scale(n))


def alpha_n(x: GroupRingElement, n: int) -> GroupRingElement:
    """alpha_n(e(r)) = (1/n) * sum of e(s) over the n preimages s with ns = r."""
    _check_n(n)
    acc: dict[Label, Fraction] = {}
    inv_n = Fraction(1, n)
    for label, coeff in x.terms.items():
        r = label.frac
        for k in range(n):
            s = QmodZ((r + k) / n)
            new = acc.get(s, Fraction(0)) + coeff * inv_n
            if new:
                acc[s] = new
            else:
                acc.pop(s, None)
    return GroupRingElement(acc)


def idempotent_e(n: int) -> GroupRingElement:
    """e_n = (1/n) * sum of e(s) over the n-torsion points s in Q/Z."""
    _check_n(n)
    inv_n = Fraction(1, n)
    return GroupRingElement([(QmodZ.of(k, n), inv_n) for k in range(n)])


# ---------------------------------------------------------------------------
# pullback-group labels: membership, sigma_n, alpha_n, idempotents
# ---------------------------------------------------------------------------


def hatpi_member(gamma_exp: int, zeta: QmodZ, ctx: RhoContext) -> bool:
    """Whether (gamma, zeta) lies in the pullback group.

    The group element gamma is recorded by its abelianization exponent, so
    its image in the cyclic quotient is the class gamma_exp / n_rho mod 1.
    Membership asks for some m coprime to n_rho with

        m * zeta = gamma_exp / n_rho  (mod 1).

    Since m * zeta mod 1 depends only on m mod b (b the denominator of
    zeta), and stepping m by b sweeps an entire congruence class mod
    gcd(b, n_rho)-fiber of residues mod n_rho, every residue pattern that
    can occur occurs for some m <= b * n_rho.  The search below is
    therefore exhaustive.
    """
    target = QmodZ.of(gamma_exp, ctx.n_rho)
    b = zeta.denominator
    for m in range(1, b * ctx.n_rho + 1):
        if math.gcd(m, ctx.n_rho) != 1:
            continue
        if zeta.scale(m) == target:
            return True
    return False


def sigma_n_hatpi(x: GroupRingElement, n: int, ctx: RhoContext) -> GroupRingElement:
    """sigma_n(gamma, zeta) = (gamma, zeta^n) on pullback labels; needs n in N_rho."""
    if not ctx.admits(n):
        raise DomainError(f"n={n} is not coprime to n_rho={ctx.n_rho}")
    return x.map_labels(lambda lab: HatPiLabel(lab.n_gamma, lab.zeta.scale(n)))


def alpha_n_hatpi(x: GroupRingElement, n: int, ctx: RhoContext) -> GroupRingElement:
    """alpha_n(d(gamma, zeta)) = (1/n) * sum over eta with eta^n = zeta."""
    if not ctx.admits(n):
        raise DomainError(f"n={n} is not coprime to n_rho={ctx.n_rho}")
    acc: dict[Label, Fraction] = {}
    inv_n = Fraction(1, n)
    for label, coeff in x.terms.items():
        z = label.zeta.frac
        for k in range(n):
            eta = QmodZ((z + k) / n)
            new_label = HatPiLabel(label.n_gamma, eta)
            new = acc.get(new_label, Fraction(0)) + coeff * inv_n
            if new:
                acc[new_label] = new
            else:
                acc.pop(new_label, None)
    return GroupRingElement(acc)


def idempotent_e_hatpi(n: int) -> GroupRingElement:
    """e_n = (1/n) * sum of d(1, xi) over xi with xi^n = 1 (identity group part)."""
    _check_n(n)
    inv_n = Fraction(1, n)
    return GroupRingElement([(HatPiLabel(0, QmodZ.of(k, n)), inv_n) for k in range(n)])


def congruence_inverse(n: int, n_rho: int) -> int:
    """The unique k in 1..n_rho with n*k = 1 mod n_rho, for gcd(n, n_rho) = 1.

    The inverse of a unit is a unit, so gcd(k, n_rho) = 1 automatically.
    """
    if n_rho < 1:
        raise DomainError(f"n_rho must be >= 1, got {n_rho}")
    if math.gcd(n, n_rho) != 1:
        raise DomainError(f"n={n} and n_rho={n_rho} are not coprime")
    k = pow(n, -1, n_rho) if n_rho > 1 else 0
    if k == 0:
        k = n_rho  # representative in 1..n_rho
    return k


# ---------------------------------------------------------------------------
# normal form mu_a . x . mu_b* for words in {mu_n, mu_n*, e(r)}
# ---------------------------------------------------------------------------

#: word tokens: ("mu", n), ("mu*", n), ("e", QmodZ)
Token = tuple


@dataclass(frozen=True)
class BCNormalForm:
    """A word reduced to mu_a . x . mu_b* with x in Q[Q/Z] and gcd(a, b) = 1."""

    a: int
    x: GroupRingElement
    b: int

    def __post_init__(self) -> None:
        if math.gcd(self.a, self.b) != 1:
            raise ValueError("normal form requires gcd(a, b) = 1")

    def is_identity(self) -> bool:
        return self.a == 1 and self.b == 1 and self.x == GroupRingElement.one()

    def __str__(self) -> str:
        return f"mu_{self.a} . ({self.x}) . mu*_{self.b}"


def _fold_token(state: BCNormalForm, token: Token) -> BCNormalForm:
    """Multiply the normal form on the right by one token.

    The rewriting rules follow from the defining relations:

    * ... mu_b* e(r)  =  ... sigma_b(e(r)) mu_b*            (pull e through mu*)
    * mu_b* mu_n  =  mu_{n/g} mu_{b/g}*  with g = gcd(b, n)  (cancel, commute)
      and then x mu_{n/g} = mu_{n/g} sigma_{n/g}(x)
    * mu_a x mu_{nb}*  =  mu_{a/g} alpha_g(x) mu_{nb/g}*  with g = gcd(a, n)
      (split mu_a, push through x via mu_g x = alpha_g(x) mu_g, absorb
      mu_g mu_g* = e_g into alpha_g(x))
    """
    kind = token[0]
    if kind == "e":
        r = token[1]
        if not isinstance(r, QmodZ):
            r = QmodZ(Fraction(r))
        return BCNormalForm(state.a, state.x * sigma_n(GroupRingElement.e(r.frac), state.b), state.b)
    if kind == "mu":
        n = int(token[1])
        _check_n(n)
        g = math.gcd(state.b, n)
        lift = n // g
        return BCNormalForm(state.a * lift, sigma_n(state.x, lift), state.b // g)
    if kind == "mu*":
        n = int(token[1])
        _check_n(n)
        g = math.gcd(state.a, n)
        return BCNormalForm(state.a // g, alpha_n(state.x, g), (n // g) * state.b)
    raise DomainError(f"unknown token kind {kind!r}")


def bc_normalize(word: Sequence[Token]) -> BCNormalForm:
    """Rewrite a word over {mu_n, mu_n*, e(r)} to the normal form mu_a . x . mu_b*."""
    state = BCNormalForm(1, GroupRingElement.one(), 1)
    for token in word:
        state = _fold_token(state, token)
    return state


def bc_combine(left: BCNormalForm, right: BCNormalForm) -> BCNormalForm:
    """Concatenate two normal forms (fold the right one token by token)."""
    state = _fold_token(left, ("mu", right.a))
    # a general middle element folds linearly: x contributes sigma_b(x)
    state = BCNormalForm(state.a, state.x * sigma_n(right.x, state.b), state.b)
    return _fold_token(state, ("mu*", right.b))


def bc_relation_check(
    word1: Sequence[Token], word2: Sequence[Token]
) -> tuple[BCNormalForm, BCNormalForm, bool]:
    """Normalize both words and report whether the normal forms coincide."""
    nf1 = bc_normalize(word1)
    nf2 = bc_normalize(word2)
    return nf1, nf2, nf1 == nf2


def parse_bc_word(tokens: Iterable[str]) -> list[Token]:
    """Parse whitespace-split tokens of the form mu:2, mu*:2, e:1/3."""
    word: list[Token] = []
    for tok in tokens:
        tok = tok.strip()
        if not tok:
            continue
        if ":" not in tok:
            raise DomainError(f"malformed token {tok!r}; expected kind:value")
        kind, value = tok.split(":", 1)
        if kind == "mu":
            word.append(("mu", int(value)))
        elif kind == "mu*":
            word.append(("mu*", int(value)))
        elif kind == "e":
            word.append(("e", QmodZ.parse(value)))
        else:
            raise DomainError(f"unknown token kind {kind!r}")
    return word


# ---------------------------------------------------------------------------
# cyclic tower compatibility
# ---------------------------------------------------------------------------


def cyclic_tower_check(n: int, m: int, x_max: int = 100) -> bool:
    """Verify sigma_m . rho_{nm} = rho_n on integers 0..max(nm, x_max).

    rho_k sends the abelianization generator's x-th power to the class
    x/k mod 1; raising to the m-th power must land in the order-n quotient.
    """
    if n < 1 or m < 1:
        raise DomainError("tower indices must be >= 1")
    for x in range(max(n * m, x_max) + 1):
        via_tower = QmodZ.of(x, n * m).scale(m)
        direct = QmodZ.of(x, n)
        if via_tower != direct:
            return False
    return True
