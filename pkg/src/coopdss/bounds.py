"""Closed-form trade-off points, secure file-size bounds, and the NRBW tables.

All arithmetic is exact-rational (fractions.Fraction); decimals appear only
in table rendering, rounded half-up to four places.

Normalized units fix beta' = 1 at MBCR (beta = 2, alpha = gamma = 2d+t-1,
M = k(2d-k+t)) and beta = beta' = 1 at MSCR (alpha = d-k+t, M = k(d-k+t));
one unit is one field symbol.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class TradeoffPoint:
    """(alpha, beta, beta', gamma, M) of one operating point, exact rationals."""

    alpha: Fraction
    beta: Fraction
    beta_prime: Fraction
    gamma: Fraction
    file_size: Fraction
    normalized: bool


@dataclass(frozen=True)
class CutConfig:
    """One information-flow cut: group sizes u_i, type-1 counts m_i, and the
    eavesdropper allocation (l1_first[i] on type-1 cuts, l1_second[i] on
    type-2 cuts) for each repair group."""

    u: tuple[int, ...]
    m: tuple[int, ...]
    l1_first: tuple[int, ...]
    l1_second: tuple[int, ...]

    def validate(self, k: int, t: int, l1: int) -> None:
        if sum(self.u) != k or any(not 0 <= ui <= t for ui in self.u):
            raise ValueError("group sizes must lie in [0,t] and sum to k")
        if any(not 0 <= mi <= ui for mi, ui in zip(self.m, self.u)):
            raise ValueError("type-1 counts exceed group sizes")
        if any(a > mi for a, mi in zip(self.l1_first, self.m)):
            raise ValueError("allocation exceeds type-1 nodes")
        if any(b > ui - mi for b, mi, ui in zip(self.l1_second, self.m, self.u)):
            raise ValueError("allocation exceeds type-2 nodes")
        if sum(self.l1_first) + sum(self.l1_second) != l1:
            raise ValueError("allocation must place all l1 eavesdroppers")


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def mbcr_point(k: int, d: int, t: int, file_size=None) -> TradeoffPoint:
    """MBCR operating point; normalized integers when file_size is omitted."""
    _check_kdt(k, d, t)
    if file_size is None:
        return TradeoffPoint(alpha=Fraction(2 * d + t - 1), beta=Fraction(2),
                             beta_prime=Fraction(1), gamma=Fraction(2 * d + t - 1),
                             file_size=Fraction(k * (2 * d - k + t)), normalized=True)
    m = _frac(file_size)
    alpha = m / k * Fraction(2 * d + t - 1, 2 * d + t - k)
    return TradeoffPoint(alpha=alpha, beta=m / k * Fraction(2, 2 * d + t - k),
                         beta_prime=m / k * Fraction(1, 2 * d + t - k),
                         gamma=alpha, file_size=m, normalized=False)


def mscr_point(k: int, d: int, t: int, file_size=None) -> TradeoffPoint:
    """MSCR operating point; normalized integers when file_size is omitted."""
    _check_kdt(k, d, t)
    if file_size is None:
        return TradeoffPoint(alpha=Fraction(d - k + t), beta=Fraction(1),
                             beta_prime=Fraction(1),
                             gamma=Fraction(d + t - 1),
                             file_size=Fraction(k * (d - k + t)), normalized=True)
    m = _frac(file_size)
    beta = m / k * Fraction(1, d + t - k)
    return TradeoffPoint(alpha=m / k, beta=beta, beta_prime=beta,
                         gamma=m / k * Fraction(d + t - 1, d + t - k),
                         file_size=m, normalized=False)


def _check_kdt(k: int, d: int, t: int) -> None:
    if not (1 <= k <= d) or t < 1:
        raise ValueError(f"need 1 <= k <= d and t >= 1, got k={k} d={d} t={t}")


def coop_cutset_bound(k: int, d: int, t: int, point: TradeoffPoint,
                      u: Sequence[int]) -> Fraction:
    """Min-cut file-size bound for one choice of DC-contacted group sizes u."""
    if any(not 0 <= ui <= t for ui in u):
        raise ValueError("u entries must lie in [0, t]")
    if sum(u) != k:
        raise ValueError("u must sum to k")
    total = Fraction(0)
    seen = 0
    for ui in u:
        cut = (d - seen) * point.beta + (t - ui) * point.beta_prime
        total += ui * min(point.alpha, cut)
        seen += ui
    return total


def compositions(k: int, t: int) -> Iterator[tuple[int, ...]]:
    """All ordered compositions of k into parts in [1, t]."""
    if k == 0:
        yield ()
        return
    for first in range(1, min(k, t) + 1):
        for rest in compositions(k - first, t):
            yield (first,) + rest


def cutset_value(k: int, d: int, t: int, l1: int, point: TradeoffPoint,
                 config: CutConfig) -> Fraction:
    """Cut value of one fully specified cut configuration."""
    config.validate(k, t, l1)
    total = Fraction(0)
    seen = 0
    for ui, mi, a, b in zip(config.u, config.m, config.l1_first, config.l1_second):
        ci = (d - seen) * point.beta + (t - ui + mi) * point.beta_prime
        total += (mi - a) * point.alpha + (ui - mi - b) * ci
        seen += ui
    return total


def mbcr_secure_bound(k: int, d: int, t: int, l1: int) -> int:
    """Secrecy-capacity upper bound at the MBCR point, normalized units."""
    if not 0 <= l1 <= k:
        raise ValueError("need 0 <= l1 <= k")
    return (k - l1) * (2 * d + t - k - l1)


def eavesdropper_case_bounds(k: int, d: int, t: int, l1: int,
                             point: TradeoffPoint | None = None):
    """The three cut-scenario bounds (case1, case2 | None, case3 | None).

    case1: one DC-contacted node per group; case2 (t >= k): a single group;
    case3 (t < k): full groups of t plus a remainder group, with the
    eavesdropper allocation maximized (s_max).
    """
    if point is None:
        point = mbcr_point(k, d, t)
    beta, beta_p = point.beta, point.beta_prime
    case1 = Fraction(k - l1) * (2 * d - k - l1 + 1) / 2 * beta \
        + (k - l1) * (t - 1) * beta_p
    case2 = case3 = None
    if t >= k:
        case2 = (k - l1) * (d * beta + (t - k) * beta_p)
    if t < k:
        b = k - (k // t) * t
        base = beta * (Fraction(k * d) + Fraction((k - b) * (t - k - b), 2)) \
            + beta_p * b * (t - b)
        case3 = base - s_max(k, d, t, l1, point)
    return case1, case2, case3


def s_max(k: int, d: int, t: int, l1: int, point: TradeoffPoint | None = None) -> Fraction:
    """Worst-case eavesdropper allocation term S for the t < k cut scenario.

    Computed both from the two-branch closed form and by exhaustive search
    over allocations; raises if they ever disagree.
    """
    if t >= k:
        raise ValueError("S is defined for t < k")
    if point is None:
        point = mbcr_point(k, d, t)
    beta, beta_p = point.beta, point.beta_prime
    a = k // t
    b = k - a * t
    if l1 <= a * t:
        at = l1 // t
        closed = beta * l1 * (d - at * t) + Fraction(t * t, 2) * beta * at * (at + 1)
    else:
        closed = beta * l1 * (d - a * t) + Fraction(t * t, 2) * beta * a * (a + 1) \
            + (l1 - a * t) * (t - b) * beta_p
    exhaustive = max(
        sum(alloc[i] * (d - i * t) * beta for i in range(a))
        + alloc[a] * ((d - a * t) * beta + (t - b) * beta_p)
        for alloc in _allocations(a + 1, t, l1)
    )
    if closed != exhaustive:
        raise AssertionError(
            f"S closed form {closed} != exhaustive {exhaustive} at k={k} d={d} t={t} l1={l1}")
    return closed


def _allocations(groups: int, cap: int, total: int) -> Iterator[tuple[int, ...]]:
    for alloc in product(range(min(cap, total) + 1), repeat=groups):
        if sum(alloc) == total:
            yield alloc


def mscr_secure_bound(k: int, d: int, t: int, l1: int, l2: int) -> int:
    """Secure file-size upper bound at the MSCR point, normalized units."""
    if l1 < 0 or l2 < 0 or l1 + l2 > k:
        raise ValueError("need l1, l2 >= 0 and l1 + l2 <= k")
    alpha = d - k + t
    if l2 == 0:
        return (k - l1) * alpha
    return (k - l1 - l2) * (alpha - 1)  # beta = 1 normalized


def mscr_dk_achievable(k: int, t: int, l1: int, l2: int) -> int:
    """Achievable secure size of the d = k construction: (k-l1-l2)[t-l2]+."""
    if l1 < 0 or l2 < 0 or l1 + l2 > k:
        raise ValueError("need l1, l2 >= 0 and l1 + l2 <= k")
    return (k - l1 - l2) * max(0, t - l2)


def nrbw(k: int, d: int, t: int, l1: int) -> Fraction:
    """Normalized repair bandwidth gamma / Ms at the MBCR point."""
    ms = mbcr_secure_bound(k, d, t, l1)
    if ms <= 0:
        raise ZeroDivisionError("secure file size is zero")
    return Fraction(2 * d + t - 1, ms)


# ---------------------------------------------------------------------------
# NRBW tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NrbwRow:
    n: int
    k: int
    l1: int
    t: int
    d: int
    beta_over_ms: Fraction
    beta_prime_over_ms: Fraction
    gamma_over_ms: Fraction
    file_size: int
    secure_size: int

    def rendered(self) -> tuple:
        return (self.n, self.k, self.l1, self.t, self.d,
                render4(self.beta_over_ms), render4(self.beta_prime_over_ms),
                render4(self.gamma_over_ms), self.file_size, self.secure_size)


def render4(x: Fraction) -> str:
    """Fixed 4-decimal rendering, round half up (1/6 -> '0.1667')."""
    scaled = x * 10_000
    q, rem = divmod(scaled.numerator, scaled.denominator)
    if 2 * rem >= scaled.denominator:
        q += 1
    return f"{q // 10_000}.{q % 10_000:04d}"


def nrbw_table(max_n: int, constraint: str = "d+t=n") -> list[NrbwRow]:
    """MBCR NRBW rows for 4 <= n <= max_n, 2 <= k < n, d >= k, 0 <= l1 < k.

    constraint selects d + t = n (systems contacting every live node) or
    d + t <= n.  Rows are ordered by (n, k, l1), then d descending, then t
    ascending (the fixed rendering order).
    """
    if max_n < 4:
        raise ValueError("max_n must be at least 4")
    if constraint not in ("d+t=n", "d+t<=n"):
        raise ValueError("constraint must be 'd+t=n' or 'd+t<=n'")
    rows = []
    for n in range(4, max_n + 1):
        for k in range(2, n):
            for l1 in range(0, k):
                for d in range(n - 1, k - 1, -1):
                    ts = [n - d] if constraint == "d+t=n" else list(range(1, n - d + 1))
                    for t in ts:
                        ms = mbcr_secure_bound(k, d, t, l1)
                        if ms <= 0:
                            continue
                        point = mbcr_point(k, d, t)
                        rows.append(NrbwRow(
                            n=n, k=k, l1=l1, t=t, d=d,
                            beta_over_ms=Fraction(point.beta) / ms,
                            beta_prime_over_ms=Fraction(point.beta_prime) / ms,
                            gamma_over_ms=Fraction(point.gamma) / ms,
                            file_size=int(point.file_size), secure_size=ms))
    return rows


CSV_HEADER = "n,k,l,t,d,beta_over_Ms,betap_over_Ms,gamma_over_Ms,M,Ms"


def table_csv(rows: Iterable[NrbwRow]) -> str:
    lines = [CSV_HEADER]
    for row in rows:
        lines.append(",".join(str(v) for v in row.rendered()))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# case-bound dominance report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DominanceReport:
    checked: int
    violations: tuple[tuple, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def case_bound_dominance(max_k: int = 6, max_d: int = 8, max_t: int = 6) -> DominanceReport:
    """Verify that the case-1 bound dominates cases 2 and 3 at the MBCR point,
    including the predicted slack identities."""
    checked = 0
    violations = []
    for k in range(1, max_k + 1):
        for d in range(k, max_d + 1):
            for t in range(1, max_t + 1):
                for l1 in range(0, k):
                    case1, case2, case3 = eavesdropper_case_bounds(k, d, t, l1)
                    bound = mbcr_secure_bound(k, d, t, l1)
                    checked += 1
                    if case1 != bound:
                        violations.append((k, d, t, l1, "case1", case1, bound))
                    if case2 is not None:
                        slack = case2 - case1
                        if slack != (k - l1) * l1 or slack < 0:
                            violations.append((k, d, t, l1, "case2", case2, case1))
                    if case3 is not None:
                        a = k // t
                        b = k - a * t
                        bt = l1 - (l1 // t) * t if l1 <= a * t else l1 - a * t
                        expect = bt * (t - bt) if l1 <= a * t else bt * (b - bt)
                        slack = case3 - case1
                        if slack < 0 or slack != expect:
                            violations.append((k, d, t, l1, "case3", case3, case1))
    return DominanceReport(checked=checked, violations=tuple(violations))
