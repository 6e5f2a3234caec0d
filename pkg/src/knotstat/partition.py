"""Partition functions and convergence thresholds.

Covers the alternating-knot partition function Z_a(beta) (Euler product
and direct multiset sum), its convergence thresholds beta_plus,
beta_minus(q), beta_tilde_minus(q), the Grothendieck-group partition
function, the multiplicative-integers toy system with partition function
zeta(beta)^2/zeta(2 beta), the knots-times-integers system, and the
tensor-product partition function Z_tau(beta) over a truncation of the
Grothendieck group.

Numerical policy: direct sums run in deterministic ascending weight order
with compensated (Kahan) summation; every truncated series carries an
explicit tail bound; root-finding is bracketing bisection on functions
that are monotone on the bracket.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .catalog import Catalog, MultiplicityModel, weights_with_counts
from .errors import DivergenceError, DomainError
from .specfun import restricted_zeta, riemann_zeta

__all__ = [
    "SeriesResult",
    "ThresholdReport",
    "lambda_beta",
    "threshold_beta_plus",
    "threshold_beta_minus",
    "threshold_beta_tilde",
    "threshold_report",
    "beta_minus_rhs_constant",
    "crossover_x",
    "bound_gap_F",
    "figure_f_value",
    "figure_f_grid",
    "figure_H_value",
    "figure_H_grid",
    "z_alternating",
    "z_grothendieck",
    "qstar_euler_factor",
    "qstar_partition",
    "spectral_commutator_norm",
    "spectral_commutator_matrix",
    "z_knots_times_n",
    "z_tau",
    "primes_up_to",
]

_TINY_LOG = -745.0

Source = Union[Catalog, MultiplicityModel]


@dataclass(frozen=True)
class SeriesResult:
    """Value of a (possibly truncated) series with its convergence bookkeeping.

    ``converged`` is True only when the tail bound is below the requested
    tolerance; ``status`` distinguishes the guaranteed-convergent regime
    from the divergent one and from the band where the bounding method is
    silent.  ``details`` carries cross-check values (alternate evaluation
    routes, stabilization gaps) keyed by name.
    """

    value: float
    terms_used: int
    tail_bound: float
    converged: bool
    status: str = "converged"
    details: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.tail_bound < 0:
            raise DomainError("tail_bound must be nonnegative")


@dataclass(frozen=True)
class ThresholdReport:
    """The three convergence thresholds at a given weight base q."""

    beta_plus: float
    beta_minus: float
    beta_tilde_minus: float
    q: int

    def __post_init__(self):
        if not self.beta_tilde_minus < self.beta_minus < self.beta_plus:
            raise DomainError(
                "threshold ordering beta_tilde_minus < beta_minus < beta_plus "
                f"violated: {self.beta_tilde_minus}, {self.beta_minus}, "
                f"{self.beta_plus}"
            )


# ---------------------------------------------------------------------------
# thresholds
# ---------------------------------------------------------------------------


def lambda_beta(beta: float, q: float) -> float:
    """lambda_beta = q^(-beta) / (1 - q^(-beta)) for beta > 0, q >= 2."""
    if beta <= 0:
        raise DomainError(f"lambda_beta requires beta > 0, got {beta}")
    if q < 2:
        raise DomainError(f"lambda_beta requires q >= 2, got {q}")
    x = math.exp(-beta * math.log(q)) if -beta * math.log(q) >= _TINY_LOG else 0.0
    return x / (1.0 - x)


def threshold_beta_plus() -> float:
    """beta_plus = ln(2^20 / 3^6) - 6 ln ln 2, the guaranteed-convergence
    threshold (about 9.4704)."""
    return math.log(2**20 / 3**6) - 6.0 * math.log(math.log(2.0))


def beta_minus_rhs_constant() -> float:
    """The constant 2 ln 20 - 6 ln ln 2 (about 8.1905) defining beta_minus."""
    return 2.0 * math.log(20.0) - 6.0 * math.log(math.log(2.0))


def crossover_x() -> float:
    """The x solving ln 2 = (2 ln 20 - 6 ln ln 2) ln x (about 1.0883).

    Any integer q >= 2 exceeds x, which is why the divergence condition
    ln2/lnq < 2 ln 20 - 6 ln ln 2 holds for every admissible q.
    """
    return math.exp(math.log(2.0) / beta_minus_rhs_constant())


def bound_gap_F(q: float) -> float:
    """F(q) = beta_plus - 6 ln lambda_{beta_plus}(q) - (2 ln 20 - 6 ln ln 2).

    Positive and increasing in q; F(2) is about 40.6574, which certifies
    beta_minus < beta_plus.
    """
    bp = threshold_beta_plus()
    return bp - 6.0 * math.log(lambda_beta(bp, q)) - beta_minus_rhs_constant()


def _bisect(fn, lo: float, hi: float, name: str) -> float:
    """Bracketing bisection to argument width 1e-12; verifies |f(root)| < 1e-10."""
    flo, fhi = fn(lo), fn(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise DomainError(
            f"{name}: root not bracketed on [{lo}, {hi}] (f: {flo}, {fhi})"
        )
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        fmid = fn(mid)
        if fmid == 0.0:
            lo = hi = mid
            break
        if flo * fmid < 0:
            hi = mid
        else:
            lo, flo = mid, fmid
    root = 0.5 * (lo + hi)
    if abs(fn(root)) > 1e-10:
        raise DomainError(f"{name}: residual at root too large: {fn(root)}")
    return root


def threshold_beta_minus(q: int) -> float:
    """The unique beta > ln2/lnq with beta - 6 ln lambda_beta = 2 ln 20 - 6 ln ln 2.

    The partition series is divergent for beta below this value.
    """
    if q < 2:
        raise DomainError(f"threshold_beta_minus requires q >= 2, got {q}")
    rhs = beta_minus_rhs_constant()

    def fn(beta: float) -> float:
        return beta - 6.0 * math.log(lambda_beta(beta, q)) - rhs

    lo = math.log(2.0) / math.log(q) + 1e-9
    return _bisect(fn, lo, 60.0, "threshold_beta_minus")


def threshold_beta_tilde(q: int, C: float = 400.0) -> float:
    """The unique beta > ln2/lnq with
    beta - 6 ln lambda_beta + 6 ln beta = ln C - 6 ln ln q.

    Sits strictly below beta_minus(q); for beta below it the unique KMS
    state is of type III with ratio q^(-beta).
    """
    if q < 2:
        raise DomainError(f"threshold_beta_tilde requires q >= 2, got {q}")
    rhs = math.log(C) - 6.0 * math.log(math.log(q))

    def fn(beta: float) -> float:
        return beta - 6.0 * math.log(lambda_beta(beta, q)) + 6.0 * math.log(beta) - rhs

    lo = math.log(2.0) / math.log(q) + 1e-9
    root = _bisect(fn, lo, 60.0, "threshold_beta_tilde")
    upper = threshold_beta_minus(q)
    if not root < upper:
        raise DomainError(
            f"threshold ordering failed: beta_tilde {root} >= beta_minus {upper}"
        )
    return root


def threshold_report(q: int) -> ThresholdReport:
    """All three thresholds for the base q, with the ordering validated."""
    return ThresholdReport(
        beta_plus=threshold_beta_plus(),
        beta_minus=threshold_beta_minus(q),
        beta_tilde_minus=threshold_beta_tilde(q),
        q=q,
    )


# ---------------------------------------------------------------------------
# figure data
# ---------------------------------------------------------------------------


def figure_f_value(beta: float, q: float) -> float:
    """f(beta, q) = beta - 6 ln lambda_beta + 6 ln beta, monotone increasing
    on beta > ln2/lnq."""
    return beta - 6.0 * math.log(lambda_beta(beta, q)) + 6.0 * math.log(beta)


def figure_f_grid(
    q: float,
    beta_min: Optional[float] = None,
    beta_max: float = 20.0,
    n_points: int = 200,
) -> list[tuple[float, float]]:
    """Grid of (beta, f(beta, q)) for beta above ln2/lnq.

    A beta_min of None starts just above the left endpoint ln2/lnq where
    f has its logarithmic singularity.
    """
    if q < 2:
        raise DomainError(f"figure_f_grid requires q >= 2, got {q}")
    left = math.log(2.0) / math.log(q)
    if beta_min is None:
        beta_min = left + 1e-3
    if beta_min <= left:
        raise DomainError(
            f"beta_min must exceed ln2/lnq = {left:.6g}, got {beta_min}"
        )
    if beta_max <= beta_min or n_points < 2:
        raise DomainError("need beta_max > beta_min and n_points >= 2")
    step = (beta_max - beta_min) / (n_points - 1)
    return [
        (beta_min + i * step, figure_f_value(beta_min + i * step, q))
        for i in range(n_points)
    ]


def figure_H_value(q: float, C: float = 400.0) -> float:
    """H(q): f(beta, q) at beta = pi/ln q minus (ln C - 6 ln ln q)."""
    if q < 2:
        raise DomainError(f"figure_H_value requires q >= 2, got {q}")
    beta = math.pi / math.log(q)
    return figure_f_value(beta, q) - (math.log(C) - 6.0 * math.log(math.log(q)))


def figure_H_grid(q_grid: Iterable[float], C: float = 400.0) -> list[tuple[float, float]]:
    """Rows (q, H(q)); H must be positive everywhere on the grid."""
    rows = []
    for q in q_grid:
        h = figure_H_value(q, C)
        if not h > 0:
            raise DomainError(f"H(q) positivity failed at q={q}: H={h}")
        rows.append((float(q), h))
    return rows


# ---------------------------------------------------------------------------
# summation helpers
# ---------------------------------------------------------------------------


class _Kahan:
    """Compensated accumulator; deterministic for a fixed term order."""

    __slots__ = ("total", "_comp")

    def __init__(self) -> None:
        self.total = 0.0
        self._comp = 0.0

    def add(self, term: float) -> None:
        y = term - self._comp
        t = self.total + y
        self._comp = (t - self.total) - y
        self.total = t


def _pow_q(q: float, exponent: float) -> float:
    """q^exponent with graceful underflow to 0.0."""
    e = exponent * math.log(q)
    return math.exp(e) if e >= _TINY_LOG else 0.0


def primes_up_to(n: int) -> list[int]:
    """All primes <= n by sieve of Eratosthenes."""
    if n < 2:
        return []
    flags = bytearray([1]) * (n + 1)
    flags[0] = flags[1] = 0
    for p in range(2, int(n**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(flags[p * p :: p]))
    return [i for i in range(2, n + 1) if flags[i]]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1 if p == 2 else 2
    return True


# ---------------------------------------------------------------------------
# the alternating-knot partition function
# ---------------------------------------------------------------------------


def _multiset_weight_counts(cat: Catalog, max_weight: int) -> list[int]:
    """M[v] = number of prime multisets from the catalog with total weight v.

    Exact integer dynamic programming over the weight grid, one unbounded
    pass per prime record.
    """
    counts = [0] * (max_weight + 1)
    counts[0] = 1
    for rec in cat:
        w = rec.weight
        for v in range(w, max_weight + 1):
            counts[v] += counts[v - w]
    return counts


def _catalog_product(beta: float, q: int, cat: Catalog) -> float:
    """The finite Euler product over catalog primes at inverse temperature beta."""
    value = 1.0
    for w, mult in weights_with_counts(cat):
        x = _pow_q(q, -beta * w)
        if x >= 1.0:
            raise DivergenceError(
                f"Euler factor diverges: q^(-beta*w) >= 1 at weight {w}"
            )
        value *= (1.0 - x) ** -mult
    return value


def _model_regime(beta: float, q: int) -> str:
    if beta >= threshold_beta_plus():
        return "converged"
    if beta < threshold_beta_minus(q):
        return "diverged"
    return "unknown-band"


def _log_count_weight(model: MultiplicityModel, n: int) -> float:
    """ln of the model count of weight-n primes, stable far beyond float range.

    log-sum-exp over genus of g ln C - ln (6g)! + (6g-4) ln(n-g+1); the
    counts themselves overflow double precision past weight ~300.
    """
    if n < 2:
        return -math.inf
    logs = []
    log_c = math.log(model.C)
    for g in range(1, min(n, model.g_max) + 1):
        arg = n - g + 1
        logs.append(g * log_c - math.lgamma(6 * g + 1) + (6 * g - 4) * math.log(arg))
    top = max(logs)
    return top + math.log(sum(math.exp(v - top) for v in logs))


def _model_log_product(
    beta: float, q: int, model: MultiplicityModel, tol: float
) -> tuple[float, int, float]:
    """ln prod_w (1 - q^(-beta w))^(-N(w)) over the model multiplicities.

    Returns (log value, weights used, tail bound on the log).  The tail
    uses N(w) <= exp(C^(1/6) w), which follows from bounding each genus
    term by the even-order exponential series.  When the truncated sum
    itself escapes double range (possible in the unclassified band) the
    log value saturates at infinity.
    """
    log_x = -beta * math.log(q)
    rate = model.C ** (1.0 / 6.0)
    log_rho = rate + log_x
    acc = _Kahan()
    w = 4  # minimal prime weight: crossing number 3, genus 1
    used = 0
    w_cap = max(64, min(model.n_max, 4000))
    while w <= w_cap:
        log_n = _log_count_weight(model, w)
        xw = math.exp(log_x * w) if log_x * w >= _TINY_LOG else 0.0
        # N(w) * (-log1p(-x^w)) = exp(log N + w log x) * correction
        corr = -math.log1p(-xw) / xw if xw > 0.0 else 1.0
        t = log_n + log_x * w
        if t > 700.0:
            acc.total = math.inf
            used += 1
            break
        if t >= _TINY_LOG:
            acc.add(math.exp(t) * corr)
        used += 1
        if log_rho < 0.0 and w >= 16:
            log_tail = math.exp((w + 1) * log_rho) / (-math.expm1(log_rho))
            log_tail /= max(1e-300, -math.expm1(log_x))
            if log_tail < tol * 1e-3:
                return acc.total, used, log_tail
        w += 1
    if log_rho >= 0.0:
        return acc.total, used, math.inf
    log_tail = math.exp((w_cap + 1) * log_rho) / (-math.expm1(log_rho))
    log_tail /= max(1e-300, -math.expm1(log_x))
    return acc.total, used, log_tail


def z_alternating(
    beta: float,
    q: int,
    source: Source,
    tol: float = 1e-12,
    mode: str = "product",
    max_weight: int = 40,
) -> SeriesResult:
    """Z_a(beta): the sum over composite knots of q^(-beta (Cr + g)).

    With a catalog source the sum factors over the finite set of primes
    as an exact Euler product (``mode='product'``); ``mode='direct'``
    instead enumerates prime multisets up to ``max_weight`` and bounds the
    tail by sum_{v > W} M(v) x^v <= x^((W+1)/2) Z(beta/2); ``mode='both'``
    returns the product with the direct value recorded in details.

    With an asymptotic model source the product runs over weights with
    model multiplicities, and the result is classified against the
    canonical thresholds: guaranteed convergence at or above beta_plus,
    guaranteed divergence below beta_minus (raised as an error), silence
    in between (returned with status 'unknown-band').
    """
    if beta <= 0:
        raise DomainError(f"z_alternating requires beta > 0, got {beta}")
    if q < 2:
        raise DomainError(f"z_alternating requires q >= 2, got {q}")
    if isinstance(source, MultiplicityModel):
        regime = _model_regime(beta, q)
        if regime == "diverged":
            raise DivergenceError(
                f"partition series diverges: beta={beta} is below "
                f"beta_minus({q}) = {threshold_beta_minus(q):.6f} "
                "(regime: divergent)"
            )
        log_value, used, log_tail = _model_log_product(beta, q, source, tol)
        value = math.exp(log_value) if log_value < 700.0 else math.inf
        tail = value * math.expm1(log_tail) if math.isfinite(log_tail) else math.inf
        converged = regime == "converged" and tail < tol * max(1.0, value)
        return SeriesResult(
            value=value,
            terms_used=used,
            tail_bound=tail,
            converged=converged,
            status=regime,
            details={"log_value": log_value},
        )

    cat = source
    product = _catalog_product(beta, q, cat)
    if mode == "product":
        return SeriesResult(
            value=product,
            terms_used=len(weights_with_counts(cat)),
            tail_bound=0.0,
            converged=True,
            status="converged",
            details={},
        )
    if mode not in ("direct", "both"):
        raise DomainError(f"unknown mode {mode!r}")
    counts = _multiset_weight_counts(cat, max_weight)
    acc = _Kahan()
    used = 0
    for v, m_v in enumerate(counts):
        if m_v == 0:
            continue
        acc.add(m_v * _pow_q(q, -beta * v))
        used += 1
    tail = _pow_q(q, -beta * (max_weight + 1) / 2.0) * _catalog_product(
        beta / 2.0, q, cat
    )
    direct = acc.total
    if mode == "direct":
        return SeriesResult(
            value=direct,
            terms_used=used,
            tail_bound=tail,
            converged=tail < tol * max(1.0, direct),
            status="converged",
            details={"product": product},
        )
    return SeriesResult(
        value=product,
        terms_used=used,
        tail_bound=tail,
        converged=True,
        status="converged",
        details={"direct": direct, "agreement": abs(product - direct)},
    )


# ---------------------------------------------------------------------------
# Grothendieck-group partition function
# ---------------------------------------------------------------------------


def _groth_weight_counts(cat: Catalog, max_weight: int) -> list[int]:
    """G[v] = sum over weight-v prime multisets of 2^(number of distinct primes).

    Each catalog prime contributes the factor 1 + 2(x^w + x^{2w} + ...):
    multiplicity zero counts once, any positive multiplicity twice (once
    for each sign in a reduced formal difference).
    """
    counts = [0] * (max_weight + 1)
    counts[0] = 1
    for rec in cat:
        w = rec.weight
        new = counts[:]
        for k in range(1, max_weight // w + 1):
            shift = k * w
            for v in range(shift, max_weight + 1):
                new[v] += 2 * counts[v - shift]
        counts = new
    return counts


def z_grothendieck(
    beta: float,
    q: int,
    source: Source,
    tol: float = 1e-12,
    max_weight: int = 40,
) -> SeriesResult:
    """Partition function of the Grothendieck group: Z_a(beta)^2 / Z_a(2 beta).

    Equivalently the sum over reduced formal differences g of
    q^(-beta total weight(g)), i.e. sum over knots K of 2^omega(K)
    q^(-beta(Cr+g)(K)).  For a catalog source the direct truncated sum is
    recorded in details alongside the closed form.
    """
    if beta <= 0:
        raise DomainError(f"z_grothendieck requires beta > 0, got {beta}")
    if isinstance(source, MultiplicityModel):
        if beta < threshold_beta_plus():
            raise DivergenceError(
                f"z_grothendieck on a model source needs beta >= beta_plus = "
                f"{threshold_beta_plus():.6f}, got {beta}"
            )
        za = z_alternating(beta, q, source, tol)
        za2 = z_alternating(2 * beta, q, source, tol)
        value = za.value**2 / za2.value
        tail = value * (
            2 * za.tail_bound / max(za.value, 1e-300)
            + za2.tail_bound / max(za2.value, 1e-300)
        )
        return SeriesResult(
            value=value,
            terms_used=za.terms_used + za2.terms_used,
            tail_bound=tail,
            converged=za.converged and za2.converged,
            status="converged",
            details={"z_a_beta": za.value, "z_a_2beta": za2.value},
        )
    cat = source
    za = _catalog_product(beta, q, cat)
    za2 = _catalog_product(2 * beta, q, cat)
    value = za**2 / za2
    counts = _groth_weight_counts(cat, max_weight)
    acc = _Kahan()
    used = 0
    for v, g_v in enumerate(counts):
        if g_v == 0:
            continue
        acc.add(g_v * _pow_q(q, -beta * v))
        used += 1
    # two-temperature trick: G(v) x^v <= x^((W+1)/2) G(v) x^(v/2)
    half = z_grothendieck_closed(beta / 2.0, q, cat)
    tail = _pow_q(q, -beta * (max_weight + 1) / 2.0) * half
    return SeriesResult(
        value=value,
        terms_used=used,
        tail_bound=tail,
        converged=True,
        status="converged",
        details={
            "direct": acc.total,
            "agreement": abs(value - acc.total),
            "z_a_beta": za,
            "z_a_2beta": za2,
        },
    )


def z_grothendieck_closed(beta: float, q: int, cat: Catalog) -> float:
    """Z_a(beta)^2/Z_a(2 beta) for a finite catalog, as a bare float."""
    return _catalog_product(beta, q, cat) ** 2 / _catalog_product(2 * beta, q, cat)


# ---------------------------------------------------------------------------
# multiplicative-integers toy system
# ---------------------------------------------------------------------------


def qstar_euler_factor(p: int, beta: float) -> float:
    """(1 - p^(-2 beta)) / (1 - p^(-beta))^2, the local factor at the prime p."""
    if not _is_prime(p):
        raise DomainError(f"qstar_euler_factor requires a prime, got {p}")
    if beta <= 0:
        raise DomainError(f"qstar_euler_factor requires beta > 0, got {beta}")
    x = _pow_q(p, -beta)
    return (1.0 - x * x) / (1.0 - x) ** 2


def _omega_sieve(n_max: int) -> bytearray:
    """omega(n) (number of distinct prime factors) for 0 <= n <= n_max."""
    omega = bytearray(n_max + 1)
    for p in range(2, n_max + 1):
        if omega[p] == 0:  # p is prime: untouched by smaller primes
            for m in range(p, n_max + 1, p):
                omega[m] += 1
    return omega


def _squarefree_sieve(n_max: int) -> bytearray:
    flags = bytearray([1]) * (n_max + 1)
    p = 2
    while p * p <= n_max:
        for m in range(p * p, n_max + 1, p * p):
            flags[m] = 0
        p += 1
    return flags


def qstar_partition(
    beta: float,
    n_max: int = 1_000_000,
    mode: str = "closed",
    tol: float = 1e-12,
) -> SeriesResult:
    """Partition function of the multiplicative-integers system.

    Closed form zeta(beta)^2/zeta(2 beta) for beta > 1.  ``mode='direct'``
    computes sum_{n <= n_max} 2^omega(n) n^(-beta) with a sieve and an
    integral tail bound derived from 2^omega(n) = sum_{d | n} mu^2(d);
    ``mode='both'`` returns the closed form with the direct sum recorded.
    """
    if beta <= 1:
        raise DivergenceError(
            f"qstar partition function diverges for beta <= 1, got {beta}"
        )
    closed = riemann_zeta(beta) ** 2 / riemann_zeta(2 * beta)
    if mode == "closed":
        return SeriesResult(
            value=closed,
            terms_used=0,
            tail_bound=0.0,
            converged=True,
            status="converged",
            details={},
        )
    if mode not in ("direct", "both"):
        raise DomainError(f"unknown mode {mode!r}")
    omega = _omega_sieve(n_max)
    acc = _Kahan()
    for n in range(1, n_max + 1):
        acc.add(float(1 << omega[n]) * math.exp(-beta * math.log(n)) if n > 1 else 1.0)
    direct = acc.total

    # tail: sum_{n>N} 2^omega(n) n^-beta
    #     = sum_d mu^2(d) d^-beta sum_{m > N/d} m^-beta
    #    <= sum_{d<=N} mu^2(d) d^-beta T(N/d) + T(N) zeta(beta)
    # with T(M) = sum_{m>M} m^-beta <= M^(1-beta)/(beta-1) + M^-beta.
    def integral_tail(m_float: float) -> float:
        if m_float < 1.0:
            return riemann_zeta(beta)
        return m_float ** (1.0 - beta) / (beta - 1.0) + m_float**-beta

    squarefree = _squarefree_sieve(n_max)
    tail_acc = _Kahan()
    for d in range(1, n_max + 1):
        if squarefree[d]:
            tail_acc.add(math.exp(-beta * math.log(d)) * integral_tail(n_max / d))
    tail = tail_acc.total + integral_tail(float(n_max)) * riemann_zeta(beta)
    if mode == "direct":
        return SeriesResult(
            value=direct,
            terms_used=n_max,
            tail_bound=tail,
            converged=tail < tol * max(1.0, direct),
            status="converged",
            details={"closed": closed},
        )
    return SeriesResult(
        value=closed,
        terms_used=n_max,
        tail_bound=tail,
        converged=True,
        status="converged",
        details={"direct": direct, "agreement": abs(closed - direct)},
    )


def spectral_commutator_norm(p: int, m: int) -> float:
    """Operator norm |m| ln p of the commutator of the p-adic scaling
    generator with the shift by p^m."""
    if not _is_prime(p):
        raise DomainError(f"spectral_commutator_norm requires a prime, got {p}")
    return abs(m) * math.log(p)


def spectral_commutator_matrix(p: int, m: int, size: int):
    """Dense truncation of the commutator on the basis indexed by p powers.

    The scaling generator acts diagonally by n ln p and the shift moves
    basis vector n to n + m (annihilating when n + m is out of range), so
    the commutator has entries m ln p on the m-th diagonal.  Requires
    numpy; used to verify the closed-form norm.
    """
    import numpy as np

    if size < 1 or size <= abs(m):
        raise DomainError(f"size must exceed |m|, got size={size}, m={m}")
    d = np.diag([n * math.log(p) for n in range(size)])
    shift = np.zeros((size, size))
    for n in range(size):
        if 0 <= n + m < size:
            shift[n + m, n] = 1.0
    return d @ shift - shift @ d


# ---------------------------------------------------------------------------
# knots-times-integers system
# ---------------------------------------------------------------------------


def z_knots_times_n(
    beta: float,
    q: int,
    source: Source,
    tol: float = 1e-12,
) -> SeriesResult:
    """zeta(beta) Z_a(beta): partition function of the product system whose
    configurations pair a knot with a positive integer."""
    if beta <= 1:
        raise DivergenceError(
            f"z_knots_times_n requires beta > 1 (zeta factor diverges), got {beta}"
        )
    if isinstance(source, MultiplicityModel) and beta < threshold_beta_plus():
        raise DivergenceError(
            f"z_knots_times_n on a model source needs beta >= beta_plus, got {beta}"
        )
    za = z_alternating(beta, q, source, tol)
    zeta = riemann_zeta(beta)
    return SeriesResult(
        value=zeta * za.value,
        terms_used=za.terms_used,
        tail_bound=zeta * za.tail_bound,
        converged=za.converged,
        status=za.status,
        details={"zeta": zeta, "z_a": za.value},
    )


# ---------------------------------------------------------------------------
# tensor-product partition function over the Grothendieck group
# ---------------------------------------------------------------------------


def _log_restricted_zeta_prime_sum(s: float, n_rho: int) -> tuple[float, float]:
    """ln zeta_{n_rho}(s) as a truncated prime sum with its tail bound.

    Valid for s >= 2.  Sums -ln(1 - p^-s) over primes p not dividing
    n_rho up to a cutoff chosen so the remainder sum_{n > P} n^-s is
    below 1e-16; for 2 <= s < 8 that cutoff is out of reach and the
    Euler-Maclaurin zeta route is just as exact, so it is used instead.
    For arguments beyond double-precision reach the leading term p0^-s
    (p0 the least admissible prime) already underflows and the log-factor
    is exactly 0.0.
    """
    if s < 2:
        raise DomainError(f"prime-sum route requires s >= 2, got {s}")
    p0 = 2
    while n_rho % p0 == 0:
        p0 += 1
    if -s * math.log(p0) < _TINY_LOG:
        return 0.0, 0.0
    if s < 8.0:
        return math.log(restricted_zeta(s, n_rho)), 0.0
    cutoff = 100 if s >= 40 else 1000
    acc = _Kahan()
    for p in primes_up_to(cutoff):
        if n_rho % p == 0:
            continue
        e = -s * math.log(p)
        if e < _TINY_LOG:
            break
        acc.add(-math.log1p(-math.exp(e)))
    tail = cutoff ** (1.0 - s) / (s - 1.0) + cutoff**-s
    return acc.total, tail


def z_tau(
    beta: float,
    f_values: Sequence[int],
    n_rho: int = 1,
    tol: float = 1e-12,
) -> SeriesResult:
    """Z_tau(beta) = product over group elements g of zeta_{n_rho}(f(g) beta).

    ``f_values`` is the weight function evaluated over a truncation of the
    Grothendieck group; exactly one entry must equal 1 (the identity).
    Finite if and only if beta > 1.  Factors are accumulated in log space
    in ascending f order; stabilization is reported as |P_N - P_2N| with
    N = half the truncation.
    """
    if beta <= 1:
        raise DomainError(
            f"Z_tau is trace-class only for beta > 1, got beta = {beta}"
        )
    if n_rho < 1:
        raise DomainError(f"n_rho must be >= 1, got {n_rho}")
    values = sorted(int(f) for f in f_values)
    if not values:
        raise DomainError("f_values must be nonempty")
    ones = sum(1 for f in values if f == 1)
    if ones != 1:
        raise DomainError(
            f"expected exactly one weight equal to 1 (the identity), got {ones}"
        )
    if values[0] < 1:
        raise DomainError(f"weights must be >= 1, got {values[0]}")

    huge_cut = int(2.0 * -_TINY_LOG / (beta * math.log(2.0))) + 1
    log_acc = _Kahan()
    tail_acc = 0.0
    partials: list[float] = []
    for f in values:
        if f == 1:
            log_acc.add(math.log(restricted_zeta(beta, n_rho)))
        elif f > huge_cut:
            # s = f*beta so large that even 2^-s underflows: factor is 1.0
            pass
        else:
            log_f, tail_f = _log_restricted_zeta_prime_sum(float(f) * beta, n_rho)
            log_acc.add(log_f)
            tail_acc += tail_f
        partials.append(log_acc.total)

    n_half = len(values) // 2
    p_half = math.exp(partials[n_half - 1]) if n_half >= 1 else 1.0
    p_full = math.exp(partials[-1])
    stabilization = abs(p_full - p_half)
    value = p_full
    tail = value * math.expm1(tail_acc) if tail_acc < 1.0 else math.inf
    return SeriesResult(
        value=value,
        terms_used=len(values),
        tail_bound=tail,
        converged=tail < tol * max(1.0, value),
        status="converged",
        details={
            "stabilization": stabilization,
            "partial_half": p_half,
            "n_factors": len(values),
        },
    )
