"""Growth sequences and the signed-digit code space.

A growth sequence is a strictly increasing sequence of positive integers
q_1 < q_2 < ... in which every term exceeds the sum of all earlier terms;
in a super-growth sequence every term exceeds twice that sum.  Super growth
forces the map from finitely supported {-1, 0, +1} digit strings to their
weighted sums sum_k d_k * q_k to be injective, which is what makes the
signed-digit encoding below well defined.

All types are immutable and every function is pure, so everything here can
be called concurrently without coordination.
"""

from __future__ import annotations

import enum
import json
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .errors import RangeError

__all__ = [
    "GrowthClass",
    "GrowthSequence",
    "SignedCode",
    "AffineSequence",
    "classify_growth",
    "make_affine_sequence",
    "decode_value",
    "encode_value",
    "enumerate_positive_codes",
    "threshold_index",
    "nearest_integer_distance",
    "circle_norm_square_sums",
]


class GrowthClass(enum.Enum):
    NONE = "none"
    GROWTH = "growth"
    SUPER_GROWTH = "super_growth"


def classify_growth(terms: Sequence[int]) -> GrowthClass:
    """Return the strongest growth class satisfied at every index.

    Raises ValueError unless ``terms`` is strictly increasing and positive.
    """
    if not terms:
        raise ValueError("growth sequence must be nonempty")
    prev = 0
    prefix = 0
    cls = GrowthClass.SUPER_GROWTH
    for q in terms:
        if q <= prev:
            raise ValueError("growth sequence must be strictly increasing: "
                             f"{q} after {prev}")
        if q <= 0:
            raise ValueError("growth sequence terms must be positive")
        if q <= 2 * prefix:
            cls = GrowthClass.GROWTH
        if q <= prefix:
            cls = GrowthClass.NONE
        prev = q
        prefix += q
    return cls


@dataclass(frozen=True)
class GrowthSequence:
    """Strictly increasing positive integers with their growth class.

    Terms use arbitrary-precision integers; indices are 1-based throughout
    to match the usual q_1, q_2, ... notation.
    """

    terms: tuple[int, ...]
    growth_class: GrowthClass = field(init=False, compare=False)
    _prefix: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        terms = tuple(int(q) for q in self.terms)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "growth_class", classify_growth(terms))
        prefix = [0]
        for q in terms:
            prefix.append(prefix[-1] + q)
        object.__setattr__(self, "_prefix", tuple(prefix))

    def __len__(self) -> int:
        return len(self.terms)

    def term(self, k: int) -> int:
        """q_k with 1-based k."""
        if not 1 <= k <= len(self.terms):
            raise RangeError(f"index {k} outside 1..{len(self.terms)}")
        return self.terms[k - 1]

    def prefix_sum(self, k: int) -> int:
        """Sum of q_1..q_k (zero for k = 0)."""
        if not 0 <= k <= len(self.terms):
            raise RangeError(f"index {k} outside 0..{len(self.terms)}")
        return self._prefix[k]

    @property
    def total(self) -> int:
        """Sum of every stored term: the largest representable value."""
        return self._prefix[-1]

    @property
    def is_super(self) -> bool:
        return self.growth_class is GrowthClass.SUPER_GROWTH

    def require_super(self) -> None:
        if not self.is_super:
            raise ValueError(
                "operation requires a super-growth sequence "
                f"(got class {self.growth_class.value}); signed-digit "
                "representations are not unique otherwise")

    def to_json(self) -> str:
        return json.dumps([str(q) for q in self.terms])

    @classmethod
    def from_json(cls, text: str) -> "GrowthSequence":
        return cls(tuple(int(s) for s in json.loads(text)))


@dataclass(frozen=True)
class AffineSequence:
    """Result of the affine recursion q_{n+1} = a_n * q_n + 1.

    ``inverse_square_sums`` holds the partial sums of 1/a_n^2 so callers
    can judge whether they keep growing (the divergence of that series is
    the usual sufficient condition for the tower built on the sequence to
    be weakly mixing).
    """

    sequence: GrowthSequence
    multipliers: tuple[int, ...]
    inverse_square_sums: tuple[Fraction, ...]


def make_affine_sequence(multipliers: Sequence[int] | int,
                         q1: int = 1,
                         count: int = 1) -> AffineSequence:
    """Build q via q_{n+1} = a_n * q_n + 1 from positive multipliers a_n.

    A scalar ``multipliers`` is repeated.  The growth class of the result
    is computed, not assumed: constant multiplier 3 yields super growth,
    constant 2 only growth, constant 1 neither.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if q1 < 1:
        raise ValueError("q1 must be a positive integer")
    if isinstance(multipliers, int):
        mults = (multipliers,) * max(count - 1, 0)
    else:
        mults = tuple(int(a) for a in multipliers)
    if any(a < 1 for a in mults):
        raise ValueError("multipliers must be positive integers")
    if len(mults) < count - 1:
        raise ValueError(f"need at least {count - 1} multipliers, "
                         f"got {len(mults)}")
    mults = mults[:count - 1]
    terms = [q1]
    for a in mults:
        terms.append(a * terms[-1] + 1)
    partials: list[Fraction] = []
    acc = Fraction(0)
    for a in mults:
        acc += Fraction(1, a * a)
        partials.append(acc)
    return AffineSequence(GrowthSequence(tuple(terms)), mults, tuple(partials))


@dataclass(frozen=True)
class SignedCode:
    """Finitely supported digit string over {-1, 0, +1}.

    Only nonzero digits are stored, as sorted (index, digit) pairs with
    1-based indices.  The weighted sum against a growth sequence is
    computed by :func:`decode_value`.
    """

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        entries = tuple((int(k), int(d)) for k, d in self.entries)
        object.__setattr__(self, "entries", entries)
        last = 0
        for k, d in entries:
            if k <= last:
                raise ValueError("code indices must be sorted, distinct "
                                 "and >= 1")
            if d not in (-1, 1):
                raise ValueError(f"digit at index {k} must be -1 or +1, "
                                 f"got {d}")
            last = k

    @classmethod
    def from_digits(cls, digits: Mapping[int, int]) -> "SignedCode":
        return cls(tuple(sorted((k, d) for k, d in digits.items() if d)))

    @property
    def norm(self) -> int:
        """Number of nonzero digits."""
        return len(self.entries)

    @property
    def kappa_max(self) -> int:
        """Largest supported index, 0 for the empty code."""
        return self.entries[-1][0] if self.entries else 0

    def digit(self, k: int) -> int:
        for idx, d in self.entries:
            if idx == k:
                return d
            if idx > k:
                break
        return 0

    @property
    def is_positive_form(self) -> bool:
        """True when nonempty with top digit +1 (positive value class)."""
        return bool(self.entries) and self.entries[-1][1] == 1

    def __neg__(self) -> "SignedCode":
        return SignedCode(tuple((k, -d) for k, d in self.entries))

    def to_json(self) -> str:
        return json.dumps({"digits": {str(k): d for k, d in self.entries}})

    @classmethod
    def from_json(cls, text: str) -> "SignedCode":
        obj = json.loads(text)
        return cls.from_digits({int(k): int(d)
                                for k, d in obj["digits"].items()})


EMPTY_CODE = SignedCode(())


def decode_value(code: SignedCode, q: GrowthSequence) -> int:
    """Exact weighted sum sum_k d_k * q_k of a code against q."""
    if code.kappa_max > len(q):
        raise ValueError(f"code uses index {code.kappa_max} but the "
                         f"sequence stores only {len(q)} terms")
    return sum(d * q.term(k) for k, d in code.entries)


def encode_value(n: int, q: GrowthSequence) -> SignedCode | None:
    """Return the unique code whose weighted sum is n, or None.

    Requires a super-growth sequence: there the intervals of values
    reachable with a given top index are pairwise disjoint, so the top
    index is found by scanning the (at most two) terms bracketing |n| and
    the remainder recursed on strictly smaller indices.  Values outside
    the representable range [-total, total], and gaps inside it, yield
    None rather than an error.
    """
    q.require_super()
    digits: dict[int, int] = {}
    terms = q.terms
    m = int(n)
    while m != 0:
        a = abs(m)
        sign = 1 if m > 0 else -1
        i = bisect_left(terms, a)
        k = None
        for j in (i - 1, i):
            if 0 <= j < len(terms):
                reach = q.prefix_sum(j)
                if terms[j] - reach <= a <= terms[j] + reach:
                    k = j
                    break
        if k is None:
            return None
        digits[k + 1] = sign
        m -= sign * terms[k]
    return SignedCode.from_digits(digits)


def enumerate_positive_codes(q: GrowthSequence,
                             bound: int,
                             skip_first_index: bool = False,
                             ) -> Iterator[tuple[int, SignedCode]]:
    """Yield (value, code) for every positive-form code with value <= bound.

    Values appear in increasing order, each exactly once (super growth
    makes the code unique).  With ``skip_first_index`` only codes whose
    digit at index 1 vanishes are produced.
    """
    q.require_super()
    for v in range(1, min(bound, q.total) + 1):
        code = encode_value(v, q)
        if code is None:
            continue
        if skip_first_index and code.digit(1) != 0:
            continue
        yield v, code


def threshold_index(n: int, q: GrowthSequence) -> int:
    """Smallest 1-based index k with q_k >= n (the >= is inclusive)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > q.terms[-1]:
        raise RangeError(f"n={n} exceeds the largest stored term "
                         f"{q.terms[-1]}")
    return bisect_left(q.terms, n) + 1


def nearest_integer_distance(x: Fraction) -> Fraction:
    """Distance from x to the nearest integer, exactly."""
    frac = x - (x.numerator // x.denominator)
    return min(frac, 1 - frac)


def circle_norm_square_sums(q: GrowthSequence,
                            t: Fraction,
                            count: int | None = None) -> list[Fraction]:
    """Partial sums of the squared distances from q_k * t to the integers.

    Exact for rational t.  Bounded partial sums are evidence that t lies
    in the square-summable set that obstructs weak mixing of the tower;
    this is a diagnostic only, since no finite computation can decide
    membership.
    """
    if count is None:
        count = len(q)
    if count > len(q):
        raise RangeError(f"count {count} exceeds stored length {len(q)}")
    t = Fraction(t)
    sums: list[Fraction] = []
    acc = Fraction(0)
    for k in range(1, count + 1):
        d = nearest_integer_distance(q.term(k) * t)
        acc += d * d
        sums.append(acc)
    return sums
