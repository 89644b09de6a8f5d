"""The dyadic odometer, its height cocycle, and tower correlations.

The odometer acts on binary words by "add one with carry" from the least
significant position.  Attaching the height q_l - (q_1 + ... + q_{l-1})
to a word whose lowest zero sits at position l yields a tower; the
sequence u_n = mass of base points whose n-step orbit returns to the base
is computed here twice, by independent routes:

* exactly, via the signed-digit encoding (the mass is 2**(-norm) when n is
  representable and 0 otherwise), and
* by brute force, enumerating all 2**L words of a fixed depth and walking
  each orbit while accumulating heights.

The two routes are mutual oracles; they must agree as exact rationals.
All correlation arithmetic uses exact dyadic rationals, never floats.

Finite truncation convention: a stored sequence of K terms represents the
tower whose heights beyond index K are treated as infinite, so values that
would need an unstored term report mass 0.  Within n <= q_1 + ... + q_K
the reported values are independent of any continuation of q.

Everything operates on immutable inputs; the word enumeration can be
partitioned across workers and merged by exact-rational addition.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import DepthError, RangeError
from .growth import GrowthSequence, encode_value, threshold_index

__all__ = [
    "OdometerWord",
    "CorrelationSequence",
    "ReturnSequenceReport",
    "lowest_zero",
    "odometer_step",
    "cocycle_height",
    "cocycle_height_by_difference",
    "cocycle_height_sum",
    "auto_depth",
    "correlation_exact",
    "correlation_bruteforce",
    "correlation_table",
    "return_sequence_report",
    "shift_difference_sum",
    "shift_variation_series",
    "shift_variation_ratio",
]


@dataclass(frozen=True)
class OdometerWord:
    """Fixed-depth binary word; bits[0] is position 1, the least significant."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        bits = tuple(int(b) for b in self.bits)
        if not bits:
            raise ValueError("word depth must be >= 1")
        if any(b not in (0, 1) for b in bits):
            raise ValueError("bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def zeros(cls, depth: int) -> "OdometerWord":
        return cls((0,) * depth)

    @property
    def depth(self) -> int:
        return len(self.bits)


def lowest_zero(word: OdometerWord) -> int | None:
    """1-based position of the first zero bit; None if the word is all ones."""
    for i, b in enumerate(word.bits):
        if b == 0:
            return i + 1
    return None


def odometer_step(word: OdometerWord) -> OdometerWord | None:
    """Add one with carry: zero out positions below the lowest zero, set it.

    Returns None (overflow marker) on the all-ones word, whose successor
    is not visible at this depth.
    """
    l = lowest_zero(word)
    if l is None:
        return None
    bits = (0,) * (l - 1) + (1,) + word.bits[l:]
    return OdometerWord(bits)


def cocycle_height(word: OdometerWord, q: GrowthSequence) -> int:
    """Tower height q_l - (q_1 + ... + q_{l-1}) at the word's lowest zero l."""
    l = lowest_zero(word)
    if l is None:
        raise DepthError("all-ones word: height not determined at this depth")
    if l > len(q):
        raise RangeError(f"height needs term {l} but only {len(q)} are stored")
    return q.term(l) - q.prefix_sum(l - 1)


def cocycle_height_by_difference(word: OdometerWord, q: GrowthSequence) -> int:
    """The same height as sum_k q_k * (step(word)_k - word_k); cross-check form."""
    nxt = odometer_step(word)
    if nxt is None:
        raise DepthError("all-ones word: height not determined at this depth")
    if word.depth > len(q):
        raise RangeError(f"word depth {word.depth} exceeds stored length {len(q)}")
    return sum(q.term(k + 1) * (nxt.bits[k] - word.bits[k])
               for k in range(word.depth))


def cocycle_height_sum(word: OdometerWord, steps: int, q: GrowthSequence) -> int:
    """Accumulated height over ``steps`` odometer steps from ``word``.

    Telescopes to sum_k q_k * (final_k - initial_k), which callers can use
    as an independent check.
    """
    if steps < 0:
        raise ValueError("steps must be >= 0")
    total = 0
    cur = word
    for _ in range(steps):
        total += cocycle_height(cur, q)
        nxt = odometer_step(cur)
        if nxt is None:
            raise DepthError("orbit left the representable depth")
        cur = nxt
    return total


def correlation_exact(n: int, q: GrowthSequence) -> Fraction:
    """Return-to-base mass at time n: 2**(-norm) if n is representable, else 0."""
    if n < 1:
        raise ValueError("n must be >= 1")
    code = encode_value(n, q)
    if code is None:
        return Fraction(0)
    return Fraction(1, 2 ** code.norm)


def auto_depth(n_max: int, q: GrowthSequence) -> int:
    """Safe word depth for brute force up to n_max: threshold index plus 2.

    Events with accumulated height <= n_max depend only on coordinates up
    to that index plus one; the extra margin makes truncation detectable
    by the depth-doubling test instead of assumed.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    clamped = min(n_max, q.terms[-1])
    return threshold_index(clamped, q) + 2


@dataclass(frozen=True)
class CorrelationSequence:
    """Exact correlation values u_1..u_n_max for a super-growth sequence.

    Every nonzero value is a dyadic rational 2**(-j) with j >= 1, and the
    value at each stored q_k within range is exactly 1/2.
    """

    q: GrowthSequence
    values: tuple[Fraction, ...]  # values[n] = u_n; values[0] unused

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def value(self, n: int) -> Fraction:
        if not 1 <= n <= self.n_max:
            raise RangeError(f"n={n} outside 1..{self.n_max}")
        return self.values[n]

    def validate(self) -> None:
        for n in range(1, self.n_max + 1):
            v = self.values[n]
            if v == 0:
                continue
            if v.numerator != 1 or v.denominator & (v.denominator - 1):
                raise ValueError(f"u_{n}={v} is not a dyadic unit fraction")
            if v > Fraction(1, 2):
                raise ValueError(f"u_{n}={v} exceeds 1/2")
        for qk in self.q.terms:
            if qk <= self.n_max and self.values[qk] != Fraction(1, 2):
                raise ValueError(f"u at q={qk} must be 1/2")

    def to_csv_rows(self) -> Iterable[tuple[str, str, str, str]]:
        """Rows (n, numerator, log2_denominator, value_decimal)."""
        for n in range(1, self.n_max + 1):
            v = self.values[n]
            log2 = v.denominator.bit_length() - 1 if v else 0
            yield (str(n), str(v.numerator), str(log2), repr(float(v)))

    def to_json(self) -> str:
        return json.dumps({
            "n_max": self.n_max,
            "q": [str(t) for t in self.q.terms],
            "values": {str(n): str(self.values[n])
                       for n in range(1, self.n_max + 1) if self.values[n]},
        }, sort_keys=True)


def correlation_bruteforce(n_max: int,
                           q: GrowthSequence,
                           depth: int | None = None,
                           force: bool = False) -> CorrelationSequence:
    """Correlations by exhausting all words of a fixed depth.

    Each of the 2**L words carries mass 2**(-L); its orbit is walked,
    accumulating heights, and every accumulated value <= n_max is counted
    once for that word.  Results are independent of the depth whenever it
    meets the safe rule (callers check by doubling); a smaller depth is
    refused unless ``force`` is set, and genuine truncation raises
    DepthError when detected.
    """
    q.require_super()
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    needed = auto_depth(n_max, q)
    if depth is None:
        depth = needed
    elif depth < needed and not force:
        raise DepthError(f"depth {depth} below the safe rule {needed}; "
                         "increase it (or force at your own risk)")
    K = len(q)
    heights = [0] * (min(K, depth) + 2)
    for l in range(1, min(K, depth + 1) + 1):
        heights[l] = q.term(l) - q.prefix_sum(l - 1)
    counts = [0] * (n_max + 1)
    full = (1 << depth) - 1
    for start in range(1 << depth):
        m = start
        s = 0
        while True:
            if m == full:
                # the cylinder of points continuing this word has lowest
                # zero beyond the depth; its next height is at least
                # q_{depth+1} - prefix when that term exists
                if depth + 1 <= K and s + (q.term(depth + 1)
                                           - q.prefix_sum(depth)) <= n_max:
                    raise DepthError(
                        f"depth {depth} truncates orbits below n_max={n_max} "
                        "on a positive-mass set; increase the depth")
                break
            l = ((m + 1) & ~m).bit_length()
            if l > K:
                break  # height beyond stored terms: infinite by convention
            s += heights[l]
            if s > n_max:
                break
            counts[s] += 1
            m += 1
    denom = 1 << depth
    values = (Fraction(0),) + tuple(Fraction(c, denom) for c in counts[1:])
    seq = CorrelationSequence(q, values)
    seq.validate()
    return seq


def correlation_table(n_max: int, q: GrowthSequence) -> CorrelationSequence:
    """Exact correlations for n = 1..n_max as a CorrelationSequence."""
    values = (Fraction(0),) + tuple(correlation_exact(n, q)
                                    for n in range(1, n_max + 1))
    return CorrelationSequence(q, values)


@dataclass(frozen=True)
class ReturnSequenceReport:
    """Partial sums a_n of the correlations against the dyadic scale 2**c(n)."""

    rows: tuple[tuple[int, Fraction, int, Fraction], ...]  # (n, a_n, 2**c, ratio)
    ratio_min: Fraction
    ratio_max: Fraction


def return_sequence_report(n_max: int, q: GrowthSequence) -> ReturnSequenceReport:
    """Tabulate a_n = u_1 + ... + u_n and the ratio a_n / 2**c(n).

    The ratios staying inside a fixed positive interval is the computable
    face of the return sequence growing like 2**c(n).
    """
    if n_max > q.terms[-1]:
        raise RangeError(f"n_max={n_max} exceeds the largest stored term")
    rows = []
    acc = Fraction(0)
    lo = hi = None
    for n in range(1, n_max + 1):
        acc += correlation_exact(n, q)
        scale = 2 ** threshold_index(n, q)
        ratio = acc / scale
        rows.append((n, acc, scale, ratio))
        lo = ratio if lo is None else min(lo, ratio)
        hi = ratio if hi is None else max(hi, ratio)
    return ReturnSequenceReport(tuple(rows), lo, hi)


def shift_difference_sum(n: int,
                         q: GrowthSequence,
                         shift: int | None = None) -> Fraction:
    """Exact sum of |u_k - u_{k+shift}| for k = 1..n (default shift q_1)."""
    if shift is None:
        shift = q.term(1)
    if n < 0 or shift < 1:
        raise ValueError("need n >= 0 and shift >= 1")
    if n + shift > q.total:
        raise RangeError(f"n+shift={n + shift} exceeds the representable "
                         f"range {q.total}")
    total = Fraction(0)
    for k in range(1, n + 1):
        total += abs(correlation_exact(k, q) - correlation_exact(k + shift, q))
    return total


def shift_variation_series(n_max: int,
                           q: GrowthSequence,
                           shift: int | None = None) -> list[Fraction]:
    """Ratios shift_difference_sum(n)/2**c(n) for n = 1..n_max, incrementally."""
    if shift is None:
        shift = q.term(1)
    if n_max + shift > q.total:
        raise RangeError(f"n_max+shift={n_max + shift} exceeds the "
                         f"representable range {q.total}")
    out: list[Fraction] = []
    acc = Fraction(0)
    for n in range(1, n_max + 1):
        acc += abs(correlation_exact(n, q) - correlation_exact(n + shift, q))
        out.append(acc / 2 ** threshold_index(n, q))
    return out


def shift_variation_ratio(n: int,
                          q: GrowthSequence,
                          shift: int | None = None) -> Fraction:
    """shift_difference_sum(n) divided by 2**c(n), as an exact rational.

    Staying bounded away from zero along n is the witness that the tower's
    correlation sequence is not smooth at the dyadic scale.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    return shift_difference_sum(n, q, shift) / 2 ** threshold_index(n, q)
