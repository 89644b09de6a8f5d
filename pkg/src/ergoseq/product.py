"""Product of a Markov-shift factor with an odometer tower, at sequence level.

The Markov factor enters only through its return-probability sequence u
(required log-convex, so it really is a renewal sequence); the tower
enters through its exact correlation sequence.  Correlations of the
product factorize over the two coordinates, and the return sequence of
the product is the code sum

    sum over positive-form codes with value <= n of u_value * 2**(-norm).

The difference-sum ratio computed here staying bounded away from zero is
the computable witness that the product, despite being weakly mixing and
rationally ergodic, is not subsequence rationally weakly mixing; the
zero-type report shows its correlations still decay when the Markov
factor's do.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import RangeError
from .growth import GrowthSequence, enumerate_positive_codes
from .renewal import RenewalSequence, kaluza_check
from .tower import CorrelationSequence

__all__ = [
    "ProductModel",
    "ZeroTypeReport",
    "product_correlation",
    "product_return_sequence",
    "difference_sum_ratio",
    "difference_ratio_series",
    "zero_type_report",
]


@dataclass(frozen=True)
class ProductModel:
    """A Kaluza return sequence paired with a tower correlation sequence."""

    markov_u: RenewalSequence
    tower_corr: CorrelationSequence
    q: GrowthSequence

    def __post_init__(self) -> None:
        report = kaluza_check(self.markov_u, derive=False)
        if not report.is_kaluza:
            raise ValueError("markov_u is not log-convex: violation at "
                             f"index {report.first_violation}")
        if self.tower_corr.q != self.q:
            raise ValueError("tower correlations were built from a "
                             "different growth sequence")

    @property
    def n_max(self) -> int:
        return min(self.markov_u.horizon, self.tower_corr.n_max)


def product_correlation(pm: ProductModel, n: int) -> float:
    """Correlation of the product at time n: markov_u(n) * tower_corr(n)."""
    if not 1 <= n <= pm.n_max:
        raise RangeError(f"n={n} outside 1..{pm.n_max}")
    return float(pm.markov_u.value(n)) * float(pm.tower_corr.value(n))


def product_return_sequence(pm: ProductModel, n: int,
                            skip_first_index: bool = False) -> float:
    """Code sum of u_value * 2**(-norm) over positive-form codes, value <= n.

    With ``skip_first_index`` only codes with vanishing first digit enter;
    the restricted sum staying comparable to the full one is what lets the
    difference-sum ratio below have a positive floor.
    """
    if not 1 <= n <= pm.n_max:
        raise RangeError(f"n={n} outside 1..{pm.n_max}")
    total = 0.0
    for value, code in enumerate_positive_codes(pm.q, n, skip_first_index):
        total += float(pm.markov_u.value(value)) / float(2 ** code.norm)
    return total


def difference_sum_ratio(pm: ProductModel, n: int) -> float:
    """D_n / a_n with D_n = sum_{k<=n} u_k |corr(k) - corr(k+q_1)|.

    D_n collects the correlation differences between the base set and its
    q_1-shifted copy; dividing by the product return sequence, a positive
    floor along n is the failure witness for subsequence rational weak
    mixing of the product.
    """
    series = difference_ratio_series(pm, n)
    return series[-1]


def difference_ratio_series(pm: ProductModel, n_max: int) -> list[float]:
    """difference_sum_ratio at every n = 1..n_max, computed incrementally."""
    shift = pm.q.term(1)
    if n_max + shift > pm.n_max:
        raise RangeError(f"n_max={n_max} plus shift {shift} exceeds the "
                         f"model range {pm.n_max}")
    corr = pm.tower_corr
    u = pm.markov_u
    num = 0.0
    den = 0.0
    out: list[float] = []
    for k in range(1, n_max + 1):
        ck = float(corr.value(k))
        num += float(u.value(k)) * abs(ck - float(corr.value(k + shift)))
        den += float(u.value(k)) * ck  # code sum, one value at a time
        out.append(num / den if den > 0 else 0.0)
    return out


@dataclass(frozen=True)
class ZeroTypeReport:
    """Maxima of the product correlation over successive windows.

    Default windows run between consecutive stored q terms, so each one
    contains exactly one tower spike; the maxima then decay exactly when
    the Markov factor's return probabilities do.  ``decaying`` records
    whether the maxima decrease monotonically; a flat profile means the
    supplied u does not vanish at infinity and the product is not zero
    type.
    """

    windows: tuple[tuple[int, int], ...]
    maxima: tuple[float, ...]
    decaying: bool
    u_decays: bool


def zero_type_report(pm: ProductModel,
                     windows: Sequence[tuple[int, int]] | None = None,
                     ) -> ZeroTypeReport:
    if windows is None:
        terms = [t for t in pm.q.terms if t <= pm.n_max]
        windows = []
        for i, t in enumerate(terms):
            hi = terms[i + 1] - 1 if i + 1 < len(terms) else pm.n_max
            windows.append((t, min(hi, pm.n_max)))
    maxima = []
    for lo, hi in windows:
        if hi < lo:
            maxima.append(0.0)  # empty window
            continue
        if not 1 <= lo <= hi <= pm.n_max:
            raise RangeError(f"window [{lo}, {hi}] outside 1..{pm.n_max}")
        maxima.append(max(product_correlation(pm, n)
                          for n in range(lo, hi + 1)))
    decaying = all(a > b for a, b in zip(maxima, maxima[1:]))
    u = pm.markov_u
    u_decays = float(u.value(u.horizon)) < 0.5 * float(u.value(1)) \
        if u.horizon >= 1 else False
    return ZeroTypeReport(tuple(tuple(w) for w in windows), tuple(maxima),
                          decaying, u_decays)
