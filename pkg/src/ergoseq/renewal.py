"""Renewal sequences from lifetime distributions, and smoothness diagnostics.

A lifetime distribution f puts mass f_n on the positive integers; its
renewal sequence is u_0 = 1, u_n = sum_{k=1}^{n} f_k u_{n-k}.  The module
computes u in double or exact-rational precision, inverts the recursion,
and evaluates the tail statistics behind the sufficient smoothness
condition

    limsup_N  N*c_N / L(N)  <  1/(sqrt(5) + 1)

where c_N is the tail mass f([N, infinity)) and L(N) = c_1 + ... + c_N.
Companion diagnostics: the ratio against the truncated mean M(N) with
threshold 1/sqrt(5), total-variation ratios, squared-variation partial
sums, the truncated characteristic function with a rigorous tail bound,
a pointwise Fourier lower bound on |1 - f(theta)|, and a quadrature
estimate of the spectral integral int theta^2 / |1 - f(theta)|^2 dtheta.

"Kaluza" below means the standard log-convexity property: u_0 = 1 and
u_n^2 <= u_{n-1} u_{n+1} for all n, which classically forces u to be a
renewal sequence (checked here constructively by inverting the recursion).

The recursion itself is sequential in n by data dependence; per-theta
Fourier evaluations and per-N tail statistics are independent and safe to
parallelize.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy.special import zeta

from .errors import RangeError

__all__ = [
    "GOLDEN_TAIL_THRESHOLD",
    "MEAN_TAIL_THRESHOLD",
    "PowerTail",
    "LifetimeDistribution",
    "RenewalSequence",
    "TailStats",
    "TailRatioReport",
    "TailMeanReport",
    "DerivedLifetime",
    "KaluzaReport",
    "CharacteristicValue",
    "FourierBoundRow",
    "FourierBoundReport",
    "IntegralEstimate",
    "SquaredVariationReport",
    "delta_lifetime",
    "geometric_lifetime",
    "power_law_lifetime",
    "lifetime_from_masses",
    "lifetime_from_csv",
    "renewal_from_lifetime",
    "renewal_from_values",
    "harmonic_renewal",
    "power_renewal",
    "lifetime_from_renewal",
    "tail_stats",
    "tail_ratio_report",
    "tail_mean_report",
    "smoothness_ratios",
    "squared_variation",
    "characteristic_function",
    "aperiodicity_gap",
    "fourier_lower_bound_report",
    "spectral_integral_estimate",
    "kaluza_check",
]

# sufficient-condition threshold 1/(sqrt(5)+1) and its companion 1/sqrt(5)
GOLDEN_TAIL_THRESHOLD = 1.0 / (math.sqrt(5.0) + 1.0)
MEAN_TAIL_THRESHOLD = 1.0 / math.sqrt(5.0)

MASS_TOLERANCE = 1e-9


@dataclass(frozen=True)
class PowerTail:
    """Analytic continuation of a power-law lifetime beyond its stored prefix.

    Masses continue as n**-(1+alpha) / normalizer for n > prefix_len; the
    tail mass beyond any point is evaluated with the Hurwitz zeta function
    rather than truncated sums, so tail statistics are free of horizon
    bias.
    """

    alpha: float
    normalizer: float
    prefix_len: int

    def mass(self, n: int) -> float:
        return n ** -(1.0 + self.alpha) / self.normalizer

    def mass_from(self, n: int) -> float:
        """Sum of masses at indices >= n, for n > prefix_len."""
        return float(zeta(1.0 + self.alpha, n)) / self.normalizer


class LifetimeDistribution:
    """Probability masses on {1, 2, ...}, stored as a prefix plus optional tail.

    ``masses[n]`` is f_n for 1 <= n <= horizon (index 0 is padding).  Exact
    distributions store Fractions and must sum to exactly 1; double ones
    store a numpy array and must sum to 1 within a small tolerance, the
    analytic tail included when present.
    """

    def __init__(self,
                 masses: Sequence[Fraction] | np.ndarray,
                 exact: bool,
                 tail: PowerTail | None = None,
                 label: str = "custom"):
        self.exact = exact
        self.tail = tail
        self.label = label
        if exact:
            vals = tuple(Fraction(m) for m in masses)
            if tail is not None:
                raise ValueError("analytic tails are double-precision only")
            if any(m < 0 for m in vals):
                raise ValueError("lifetime masses must be non-negative")
            if sum(vals) != 1:
                raise ValueError(f"exact lifetime masses must sum to 1, "
                                 f"got {sum(vals)}")
            self._masses = (Fraction(0),) + vals
        else:
            arr = np.asarray(masses, dtype=np.float64)
            if arr.ndim != 1:
                raise ValueError("masses must be one-dimensional")
            if np.any(arr < 0):
                raise ValueError("lifetime masses must be non-negative")
            total = float(arr.sum())
            if tail is not None:
                total += tail.mass_from(len(arr) + 1)
            if abs(total - 1.0) > MASS_TOLERANCE:
                raise ValueError(f"lifetime masses must sum to 1 "
                                 f"(got {total!r})")
            self._masses = np.concatenate(([0.0], arr))

    @property
    def horizon(self) -> int:
        return len(self._masses) - 1

    def mass(self, n: int):
        if n < 1:
            raise ValueError("lifetime index must be >= 1")
        if n <= self.horizon:
            return self._masses[n]
        if self.tail is not None:
            return self.tail.mass(n)
        return Fraction(0) if self.exact else 0.0

    def prefix(self, n: int):
        """Masses f_1..f_n as a padded array/tuple (index 0 unused)."""
        if n > self.horizon:
            raise RangeError(f"horizon {self.horizon} too short for n={n}")
        return self._masses[:n + 1]

    @property
    def support_gcd(self) -> int:
        g = 0
        for n in range(1, self.horizon + 1):
            if self._masses[n] > 0:
                g = gcd(g, n)
                if g == 1:
                    break
        if g != 1 and self.tail is not None:
            g = 1  # the analytic tail charges every large n
        return g

    @property
    def aperiodic(self) -> bool:
        return self.support_gcd == 1

    def total_mass(self) -> float | Fraction:
        if self.exact:
            return sum(self._masses)
        total = float(np.sum(self._masses))
        if self.tail is not None:
            total += self.tail.mass_from(self.horizon + 1)
        return total


def lifetime_from_masses(masses, exact: bool | None = None,
                         label: str = "custom") -> LifetimeDistribution:
    """Build a lifetime from masses f_1, f_2, ... (exact if all Fractions)."""
    seq = list(masses)
    if exact is None:
        exact = all(isinstance(m, (Fraction, int)) for m in seq)
    return LifetimeDistribution(
        tuple(Fraction(m) for m in seq) if exact else np.asarray(seq, float),
        exact=exact, label=label)


def delta_lifetime(n: int = 1) -> LifetimeDistribution:
    """Unit mass at n (exact)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    masses = [Fraction(0)] * (n - 1) + [Fraction(1)]
    return LifetimeDistribution(tuple(masses), exact=True, label=f"delta({n})")


def geometric_lifetime(p: float, horizon: int | None = None) -> LifetimeDistribution:
    """f_n = p * (1-p)**(n-1); horizon defaults to where the tail underflows."""
    if not 0 < p < 1:
        raise ValueError("p must lie in (0, 1)")
    if horizon is None:
        horizon = max(64, int(math.ceil(-52 * math.log(2) / math.log(1 - p))) + 8)
    n = np.arange(1, horizon + 1, dtype=np.float64)
    masses = p * (1 - p) ** (n - 1)
    return LifetimeDistribution(masses, exact=False, label=f"geometric({p})")


def power_law_lifetime(alpha: float, horizon: int) -> LifetimeDistribution:
    """Regularly varying lifetime f_n = n**-(1+alpha) / zeta(1+alpha).

    The normalizer is the full series, not the stored prefix sum, and the
    mass beyond the horizon is carried by an analytic PowerTail; the total
    is exactly one and tail statistics have no truncation bias.
    """
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    Z = float(zeta(1.0 + alpha, 1))
    n = np.arange(1, horizon + 1, dtype=np.float64)
    masses = n ** -(1.0 + alpha) / Z
    tail = PowerTail(alpha=alpha, normalizer=Z, prefix_len=horizon)
    return LifetimeDistribution(masses, exact=False, tail=tail,
                                label=f"powerlaw(alpha={alpha})")


def lifetime_from_csv(path: str | Path) -> LifetimeDistribution:
    """Load masses from a CSV with columns n, f_n (rational strings stay exact)."""
    rows: dict[int, Fraction | float] = {}
    exact = True
    with open(path, newline="", encoding="utf-8") as fh:
        for rec in csv.reader(fh):
            if not rec or rec[0].lstrip().startswith("#") or rec[0] == "n":
                continue
            n = int(rec[0])
            text = rec[1].strip()
            try:
                val: Fraction | float = Fraction(text)
            except ValueError:
                val = float(text)
                exact = False
            rows[n] = val
    if not rows:
        raise ValueError(f"no masses found in {path}")
    horizon = max(rows)
    masses = [rows.get(n, 0) for n in range(1, horizon + 1)]
    return lifetime_from_masses(masses, exact=exact, label=f"csv({path})")


class RenewalSequence:
    """u_0 = 1 and u_1..u_horizon, double or exact, with cached partial sums."""

    def __init__(self, values: Sequence[Fraction] | np.ndarray, exact: bool,
                 label: str = "renewal"):
        self.exact = exact
        self.label = label
        if exact:
            vals = tuple(Fraction(v) for v in values)
            if not vals or vals[0] != 1:
                raise ValueError("renewal sequence must start at u_0 = 1")
            if any(not 0 <= v <= 1 for v in vals):
                raise ValueError("renewal values must lie in [0, 1]")
            self.values = vals
        else:
            arr = np.asarray(values, dtype=np.float64)
            if arr.size == 0 or arr[0] != 1.0:
                raise ValueError("renewal sequence must start at u_0 = 1")
            if np.any(arr < -1e-12) or np.any(arr > 1 + 1e-12):
                raise ValueError("renewal values must lie in [0, 1]")
            self.values = arr
        self._partial = None

    @property
    def horizon(self) -> int:
        return len(self.values) - 1

    def value(self, n: int):
        if not 0 <= n <= self.horizon:
            raise RangeError(f"n={n} outside 0..{self.horizon}")
        return self.values[n]

    def partial_sums(self):
        """a_n = u_1 + ... + u_n as a padded array/tuple (a_0 = 0)."""
        if self._partial is None:
            if self.exact:
                acc = Fraction(0)
                out = [acc]
                for v in self.values[1:]:
                    acc += v
                    out.append(acc)
                self._partial = tuple(out)
            else:
                a = np.cumsum(self.values)
                a -= 1.0  # drop the u_0 term
                a[0] = 0.0
                self._partial = a
        return self._partial


def renewal_from_lifetime(f: LifetimeDistribution, horizon: int,
                          mode: str = "double") -> RenewalSequence:
    """Run the renewal recursion u_n = sum_k f_k u_{n-k} out to ``horizon``.

    ``mode`` selects double precision (vectorized dot products against a
    reversed buffer) or exact rationals (quadratic time, intended for
    oracle-scale horizons).  Only f_1..f_horizon enter, so a stored prefix
    of that length fully determines the result.
    """
    if horizon < 0:
        raise ValueError("horizon must be >= 0")
    if mode not in ("double", "exact"):
        raise ValueError(f"unknown precision mode {mode!r}")
    if mode == "exact":
        if not f.exact:
            raise ValueError("exact mode needs an exact lifetime")
        fm = f.prefix(min(horizon, f.horizon))
        u = [Fraction(1)]
        for n in range(1, horizon + 1):
            u.append(sum(fm[k] * u[n - k]
                         for k in range(1, min(n, len(fm) - 1) + 1)))
        return RenewalSequence(tuple(u), exact=True, label=f"u[{f.label}]")
    fm = np.zeros(horizon + 1)
    upto = min(horizon, f.horizon)
    fm[1:upto + 1] = np.asarray(f.prefix(upto)[1:], dtype=np.float64)
    if f.tail is not None and horizon > f.horizon:
        ns = np.arange(f.horizon + 1, horizon + 1, dtype=np.float64)
        fm[f.horizon + 1:] = ns ** -(1.0 + f.tail.alpha) / f.tail.normalizer
    u = np.zeros(horizon + 1)
    rev = np.zeros(horizon + 1)
    u[0] = 1.0
    rev[horizon] = 1.0
    for n in range(1, horizon + 1):
        u[n] = fm[1:n + 1] @ rev[horizon - n + 1:horizon + 1]
        rev[horizon - n] = u[n]
    return RenewalSequence(u, exact=False, label=f"u[{f.label}]")


def renewal_from_values(values, exact: bool | None = None,
                        label: str = "renewal") -> RenewalSequence:
    seq = list(values)
    if exact is None:
        exact = all(isinstance(v, (Fraction, int)) for v in seq)
    return RenewalSequence(
        tuple(Fraction(v) for v in seq) if exact else np.asarray(seq, float),
        exact=exact, label=label)


def harmonic_renewal(horizon: int, exact: bool = False) -> RenewalSequence:
    """u_n = 1/(n+1): the standard log-convex test sequence."""
    if exact:
        return RenewalSequence(tuple(Fraction(1, n + 1)
                                     for n in range(horizon + 1)),
                               exact=True, label="harmonic")
    n = np.arange(horizon + 1, dtype=np.float64)
    return RenewalSequence(1.0 / (n + 1.0), exact=False, label="harmonic")


def power_renewal(exponent: float, horizon: int) -> RenewalSequence:
    """u_n = (n+1)**-exponent, log-convex for exponent > 0."""
    if exponent < 0:
        raise ValueError("exponent must be >= 0")
    n = np.arange(horizon + 1, dtype=np.float64)
    return RenewalSequence((n + 1.0) ** -exponent, exact=False,
                           label=f"power({exponent})")


@dataclass(frozen=True)
class DerivedLifetime:
    """Masses recovered from a renewal sequence by inverting the recursion.

    ``first_negative`` is the smallest n with f_n < 0, None when the input
    really was a renewal sequence over the inspected range.
    """

    masses: tuple
    exact: bool
    first_negative: int | None

    @property
    def is_renewal(self) -> bool:
        return self.first_negative is None


def lifetime_from_renewal(u: RenewalSequence) -> DerivedLifetime:
    """Invert u_n = sum_k f_k u_{n-k}: f_n = u_n - sum_{k<n} f_k u_{n-k}."""
    horizon = u.horizon
    if u.exact:
        fs: list[Fraction] = []
        first_neg = None
        for n in range(1, horizon + 1):
            s = sum(fs[k - 1] * u.values[n - k] for k in range(1, n))
            fn = u.values[n] - s
            if fn < 0 and first_neg is None:
                first_neg = n
            fs.append(fn)
        return DerivedLifetime(tuple(fs), True, first_neg)
    vals = u.values
    fs_arr = np.zeros(horizon + 1)
    first_neg = None
    for n in range(1, horizon + 1):
        s = fs_arr[1:n] @ vals[n - 1:0:-1]
        fs_arr[n] = vals[n] - s
        if fs_arr[n] < 0 and first_neg is None:
            first_neg = n
    return DerivedLifetime(tuple(fs_arr[1:]), False, first_neg)


class TailStats:
    """Tail masses c_N, their partial sums L(N), truncated mean M(N) and
    second moment V(N), for N = 1..n_max.

    Arrays are padded so stats[N] addresses N directly; c is computed one
    step further than n_max so the exact identity
    L(N) = M(N) + N * c_{N+1} can be checked on the full range.
    """

    def __init__(self, tail_mass, tail_mass_sums, truncated_mean,
                 truncated_second_moment, exact: bool):
        self.tail_mass = tail_mass                  # c[1..n_max+1]
        self.tail_mass_sums = tail_mass_sums        # L[1..n_max]
        self.truncated_mean = truncated_mean        # M[1..n_max]
        self.truncated_second_moment = truncated_second_moment
        self.exact = exact

    @property
    def n_max(self) -> int:
        return len(self.tail_mass_sums) - 1

    def identity_residuals(self):
        """L(N) - M(N) - N*c_{N+1}; exactly zero for exact inputs."""
        if self.exact:
            return [self.tail_mass_sums[N] - self.truncated_mean[N]
                    - N * self.tail_mass[N + 1]
                    for N in range(1, self.n_max + 1)]
        N = np.arange(1, self.n_max + 1)
        return (self.tail_mass_sums[1:] - self.truncated_mean[1:]
                - N * self.tail_mass[2:self.n_max + 2])


def tail_stats(f: LifetimeDistribution, n_max: int) -> TailStats:
    """Compute c, L, M, V in one pass.

    Tail masses come from a reverse cumulative sum (never 1 minus a prefix
    sum, which would cancel catastrophically), plus the analytic tail when
    the distribution carries one.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if f.exact:
        masses = [f.mass(n) for n in range(1, n_max + 2)]
        c = [Fraction(0)] * (n_max + 3)
        running = sum((f.mass(n) for n in range(n_max + 2, f.horizon + 1)),
                      Fraction(0))
        for N in range(n_max + 1, 0, -1):
            running += masses[N - 1]
            c[N] = running
        L = [Fraction(0)] * (n_max + 1)
        M = [Fraction(0)] * (n_max + 1)
        V = [Fraction(0)] * (n_max + 1)
        for N in range(1, n_max + 1):
            L[N] = L[N - 1] + c[N]
            M[N] = M[N - 1] + N * masses[N - 1]
            V[N] = V[N - 1] + N * N * masses[N - 1]
        return TailStats(c[:n_max + 2], L, M, V, exact=True)
    upto = min(n_max + 1, f.horizon)
    stored = np.asarray(f.prefix(upto)[1:], dtype=np.float64)
    if f.tail is not None and n_max + 1 > f.horizon:
        ns = np.arange(f.horizon + 1, n_max + 2, dtype=np.float64)
        stored = np.concatenate([stored,
                                 ns ** -(1.0 + f.tail.alpha) / f.tail.normalizer])
    elif len(stored) < n_max + 1:
        stored = np.concatenate([stored, np.zeros(n_max + 1 - len(stored))])
    # mass strictly beyond index n_max+1
    if f.tail is not None:
        beyond = f.tail.mass_from(max(n_max + 2, f.horizon + 1))
        if n_max + 1 < f.horizon:
            beyond += float(np.sum(np.asarray(
                f.prefix(f.horizon)[n_max + 2:], dtype=np.float64)))
    else:
        beyond = float(np.sum(np.asarray(f.prefix(f.horizon)[n_max + 2:],
                                         dtype=np.float64))) \
            if f.horizon > n_max + 1 else 0.0
    c = np.zeros(n_max + 3)
    c[1:n_max + 2] = np.cumsum(stored[::-1])[::-1] + beyond
    n = np.arange(0, n_max + 1, dtype=np.float64)
    L = np.concatenate(([0.0], np.cumsum(c[1:n_max + 1])))
    M = np.concatenate(([0.0], np.cumsum(n[1:] * stored[:n_max])))
    V = np.concatenate(([0.0], np.cumsum(n[1:] ** 2 * stored[:n_max])))
    return TailStats(c[:n_max + 2], L, M, V, exact=False)


@dataclass(frozen=True)
class TailRatioReport:
    """The ratios N*c_N/L(N) against the threshold 1/(sqrt(5)+1).

    ``limsup_estimate`` is the maximum over the final window of the range;
    a finite run can only gather evidence about the limsup, never decide
    it, so the verdict is labelled as an estimate.
    """

    ratios: np.ndarray          # ratios[N] for N=1..n_max (index 0 is nan)
    window_start: int
    limsup_estimate: float
    threshold: float
    holds: bool


def tail_ratio_report(f: LifetimeDistribution, n_max: int,
                      window_fraction: float = 0.5) -> TailRatioReport:
    """Evaluate the sufficient smoothness condition on the computed range."""
    if not 0 < window_fraction <= 1:
        raise ValueError("window_fraction must lie in (0, 1]")
    ts = tail_stats(f, n_max)
    N = np.arange(0, n_max + 1, dtype=np.float64)
    ratios = np.full(n_max + 1, np.nan)
    c = np.array([float(x) for x in ts.tail_mass[:n_max + 1]])
    L = np.array([float(x) for x in ts.tail_mass_sums])
    with np.errstate(invalid="ignore", divide="ignore"):
        ratios[1:] = N[1:] * c[1:] / L[1:]
    start = max(1, int(math.ceil(n_max * (1.0 - window_fraction))))
    est = float(np.nanmax(ratios[start:]))
    return TailRatioReport(ratios, start, est, GOLDEN_TAIL_THRESHOLD,
                           est < GOLDEN_TAIL_THRESHOLD)


@dataclass(frozen=True)
class TailMeanReport:
    """The companion ratios N*c_N/M(N) against the threshold 1/sqrt(5).

    Also checks the fitted bound N*c_N <= (R/(1-R)) * M(N) on the window,
    where R defaults to the tail-ratio limsup estimate.
    """

    ratios: np.ndarray
    window_start: int
    limsup_estimate: float
    threshold: float
    holds: bool
    fitted_r: float
    bound_factor: float
    bound_holds: bool


def tail_mean_report(f: LifetimeDistribution, n_max: int,
                     window_fraction: float = 0.5,
                     fitted_r: float | None = None) -> TailMeanReport:
    ts = tail_stats(f, n_max)
    N = np.arange(0, n_max + 1, dtype=np.float64)
    c = np.array([float(x) for x in ts.tail_mass[:n_max + 1]])
    M = np.array([float(x) for x in ts.truncated_mean])
    ratios = np.full(n_max + 1, np.nan)
    with np.errstate(invalid="ignore", divide="ignore"):
        ratios[1:] = N[1:] * c[1:] / M[1:]
    start = max(1, int(math.ceil(n_max * (1.0 - window_fraction))))
    est = float(np.nanmax(ratios[start:]))
    if fitted_r is None:
        fitted_r = tail_ratio_report(f, n_max, window_fraction).limsup_estimate
    factor = fitted_r / (1.0 - fitted_r) if fitted_r < 1 else math.inf
    window = ratios[start:]
    bound_holds = bool(np.all(window[~np.isnan(window)] <= factor + 1e-15))
    return TailMeanReport(ratios, start, est, MEAN_TAIL_THRESHOLD,
                          est < MEAN_TAIL_THRESHOLD, fitted_r, factor,
                          bound_holds)


def smoothness_ratios(u: RenewalSequence, checkpoints: Sequence[int]):
    """s_n = (sum_{k<=n} |u_k - u_{k+1}|) / a_n at the requested n.

    Decay of s_n toward zero is the smoothness evidence; each checkpoint
    needs u stored out to n+1.
    """
    cps = sorted(set(int(n) for n in checkpoints))
    if not cps or cps[0] < 1:
        raise ValueError("checkpoints must be positive")
    if cps[-1] + 1 > u.horizon:
        raise RangeError(f"checkpoint {cps[-1]} needs horizon "
                         f">= {cps[-1] + 1}, got {u.horizon}")
    a = u.partial_sums()
    out = []
    if u.exact:
        acc = Fraction(0)
        it = iter(cps)
        nxt = next(it)
        for k in range(1, cps[-1] + 1):
            acc += abs(u.values[k] - u.values[k + 1])
            if k == nxt:
                out.append((k, acc / a[k]))
                nxt = next(it, None)
        return out
    dv = np.abs(np.diff(u.values[1:cps[-1] + 2]))
    tv = np.cumsum(dv)
    return [(n, float(tv[n - 1] / a[n])) for n in cps]


@dataclass(frozen=True)
class SquaredVariationReport:
    """Partial sums of (u_k - u_{k+1})^2 with last-decade stabilization data."""

    n: int
    total: float
    last_decade_increment: float
    last_decade_fraction: float
    partials: tuple  # (checkpoint, partial sum) pairs


def squared_variation(u: RenewalSequence, n: int,
                      checkpoints: Sequence[int] = ()) -> SquaredVariationReport:
    """Sum (u_k - u_{k+1})^2 for k <= n, plus the increment over [n/10, n]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n + 1 > u.horizon:
        raise RangeError(f"n={n} needs horizon >= {n + 1}, got {u.horizon}")
    if u.exact:
        vals = [float(v) for v in u.values[:n + 2]]
    else:
        vals = u.values[:n + 2]
    dv = np.abs(np.diff(np.asarray(vals[1:])))
    sq = np.cumsum(dv * dv)
    total = float(sq[n - 1])
    decade = max(1, n // 10)
    inc = total - float(sq[decade - 1])
    frac = inc / total if total > 0 else 0.0
    partials = tuple((int(cp), float(sq[cp - 1]))
                     for cp in sorted(set(checkpoints)) if 1 <= cp <= n)
    return SquaredVariationReport(n, total, inc, frac, partials)


@dataclass(frozen=True)
class CharacteristicValue:
    """Truncated series sum f_n e^{i n theta} with a rigorous tail bound."""

    theta: float
    value: complex
    truncation_bound: float


def characteristic_function(f: LifetimeDistribution, theta: float,
                            terms: int | None = None) -> CharacteristicValue:
    """Evaluate the lifetime's characteristic function at theta.

    The truncation error is bounded by the mass beyond the summed prefix
    (triangle inequality), reported alongside the value.
    """
    upto = f.horizon if terms is None else min(terms, f.horizon)
    masses = np.asarray(f.prefix(upto)[1:], dtype=np.float64)
    n = np.arange(1, upto + 1, dtype=np.float64)
    val = complex(np.sum(masses * np.exp(1j * n * theta)))
    if f.tail is not None:
        bound = f.tail.mass_from(upto + 1)
    elif upto < f.horizon:
        bound = float(np.sum(np.asarray(f.prefix(f.horizon)[upto + 1:],
                                        dtype=np.float64)))
    else:
        bound = 0.0
    return CharacteristicValue(theta, val, bound)


def aperiodicity_gap(f: LifetimeDistribution, eps: float,
                     grid_points: int = 256) -> float:
    """max |f(theta)| over a grid on [eps, pi]; below 1 is the aperiodic gap."""
    if not 0 < eps < math.pi:
        raise ValueError("eps must lie in (0, pi)")
    thetas = np.linspace(eps, math.pi, grid_points)
    masses = np.asarray(f.prefix(f.horizon)[1:], dtype=np.float64)
    n = np.arange(1, f.horizon + 1, dtype=np.float64)
    best = 0.0
    for th in thetas:  # one theta at a time keeps memory flat
        best = max(best, abs(complex(np.sum(masses * np.exp(1j * n * th)))))
    return best


@dataclass(frozen=True)
class FourierBoundRow:
    theta: float
    lhs: float              # |1 - f(theta)| from the truncated series
    head_term: float        # (2/pi) * theta * M(floor(2/(pi theta)))
    tail_term: float        # sqrt(5) * c_ceil(2/(pi theta))
    rhs: float
    margin: float
    truncation_bound: float
    eta: float              # empirical 1 - tail_term/head_term
    holds: bool


@dataclass(frozen=True)
class FourierBoundReport:
    rows: tuple[FourierBoundRow, ...]
    all_hold: bool
    worst_margin: float


def fourier_lower_bound_report(f: LifetimeDistribution,
                               thetas: Sequence[float]) -> FourierBoundReport:
    """Check |1 - f(theta)| >= (2/pi)|theta| M(floor(2/(pi|theta|)))
    - sqrt(5) c_ceil(2/(pi|theta|)) pointwise on the grid.

    The bound is rigorous for |theta| <= 2/pi (the head uses
    sin x >= (2/pi) x there); a violation beyond the reported truncation
    uncertainty indicates a precision fault or a lifetime outside the
    intended hypothesis range.
    """
    thetas = sorted(float(t) for t in thetas)
    if not thetas or thetas[0] <= 0 or thetas[-1] > 2 / math.pi:
        raise ValueError("grid must lie in (0, 2/pi]")
    n_needed = int(math.ceil(2.0 / (math.pi * thetas[0]))) + 1
    ts = tail_stats(f, n_needed)
    rows = []
    worst = math.inf
    for th in thetas:
        x = 2.0 / (math.pi * th)
        nf = int(math.floor(x))
        nc = int(math.ceil(x))
        cv = characteristic_function(f, th)
        lhs = abs(1.0 - cv.value)
        head = (2.0 / math.pi) * th * float(ts.truncated_mean[nf]) if nf >= 1 else 0.0
        tail = math.sqrt(5.0) * float(ts.tail_mass[nc])
        rhs = head - tail
        margin = lhs - rhs
        eta = 1.0 - tail / head if head > 0 else -math.inf
        rows.append(FourierBoundRow(th, lhs, head, tail, rhs, margin,
                                    cv.truncation_bound, eta,
                                    margin > cv.truncation_bound))
        worst = min(worst, margin)
    return FourierBoundReport(tuple(rows), all(r.holds for r in rows), worst)


@dataclass(frozen=True)
class IntegralEstimate:
    """Midpoint estimate of int theta^2/|1-f(theta)|^2 dtheta on a log grid."""

    value: float
    theta_min: float
    theta_max: float
    points: int
    skipped: tuple[float, ...]  # grid points where |1-f| underflowed


def spectral_integral_estimate(f: LifetimeDistribution,
                               theta_min: float, theta_max: float,
                               points: int = 400,
                               floor: float = 1e-13) -> IntegralEstimate:
    """Diagnostic quadrature companion to the squared-variation sums.

    Geometric midpoints on a log-spaced grid; grid points where the
    denominator falls below ``floor`` are skipped and reported rather than
    poisoning the estimate.
    """
    if not 0 < theta_min < theta_max <= math.pi:
        raise ValueError("need 0 < theta_min < theta_max <= pi")
    if points < 2:
        raise ValueError("points must be >= 2")
    edges = np.logspace(math.log10(theta_min), math.log10(theta_max),
                        points + 1)
    mids = np.sqrt(edges[:-1] * edges[1:])
    widths = np.diff(edges)
    masses = np.asarray(f.prefix(f.horizon)[1:], dtype=np.float64)
    n = np.arange(1, f.horizon + 1, dtype=np.float64)
    denom = np.empty_like(mids)
    for i, th in enumerate(mids):
        denom[i] = abs(1.0 - complex(np.sum(masses * np.exp(1j * n * th))))
    ok = denom >= floor
    contrib = np.where(ok, mids ** 2 / np.maximum(denom, floor) ** 2, 0.0)
    return IntegralEstimate(float(np.sum(contrib * widths)),
                            theta_min, theta_max, points,
                            tuple(float(t) for t in mids[~ok]))


@dataclass(frozen=True)
class KaluzaReport:
    """Log-convexity verdict plus the recovered lifetime when it passes."""

    is_kaluza: bool
    first_violation: int | None
    derived: DerivedLifetime | None

    @property
    def derived_nonnegative(self) -> bool | None:
        return None if self.derived is None else self.derived.is_renewal


def kaluza_check(u: RenewalSequence, derive: bool = True) -> KaluzaReport:
    """Check u_n^2 <= u_{n-1} u_{n+1} for every stored n.

    Equivalent to the successive ratios u_{n+1}/u_n being non-decreasing.
    On a pass the lifetime is recovered by inverting the recursion and its
    masses checked non-negative (log-convexity classically guarantees it;
    here it is computed, not assumed).
    """
    vals = u.values
    for n in range(1, u.horizon):
        if vals[n] <= 0:
            return KaluzaReport(False, n, None)
        if vals[n] * vals[n] > vals[n - 1] * vals[n + 1]:
            return KaluzaReport(False, n, None)
    derived = lifetime_from_renewal(u) if derive else None
    return KaluzaReport(True, None, derived)
