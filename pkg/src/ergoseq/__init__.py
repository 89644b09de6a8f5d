"""Computable sequences from infinite ergodic theory.

Four layers, importable individually:

* :mod:`ergoseq.growth` -- growth and super-growth integer sequences and
  the signed-digit code space they induce;
* :mod:`ergoseq.tower` -- the dyadic odometer, its height cocycle, and the
  exact correlation sequence of the associated tower, computed two ways;
* :mod:`ergoseq.renewal` -- renewal sequences from lifetime distributions
  with tail statistics, smoothness criteria and Fourier diagnostics;
* :mod:`ergoseq.product` -- product-model sequences combining a Markov
  return sequence with tower correlations.

:mod:`ergoseq.cli` wires everything into reproducible CSV/JSON reports.
"""

from .growth import (AffineSequence, GrowthClass, GrowthSequence, SignedCode,
                     circle_norm_square_sums, classify_growth, decode_value,
                     encode_value, enumerate_positive_codes,
                     make_affine_sequence, nearest_integer_distance,
                     threshold_index)
from .product import (ProductModel, ZeroTypeReport, difference_ratio_series,
                      difference_sum_ratio, product_correlation,
                      product_return_sequence, zero_type_report)
from .renewal import (GOLDEN_TAIL_THRESHOLD, MEAN_TAIL_THRESHOLD,
                      CharacteristicValue, DerivedLifetime, KaluzaReport,
                      LifetimeDistribution, PowerTail, RenewalSequence,
                      SquaredVariationReport, TailMeanReport, TailRatioReport,
                      TailStats, aperiodicity_gap, characteristic_function,
                      delta_lifetime, fourier_lower_bound_report,
                      geometric_lifetime, harmonic_renewal, kaluza_check,
                      lifetime_from_csv, lifetime_from_masses,
                      lifetime_from_renewal, power_law_lifetime,
                      power_renewal, renewal_from_lifetime,
                      renewal_from_values, smoothness_ratios,
                      spectral_integral_estimate, squared_variation,
                      tail_mean_report, tail_ratio_report, tail_stats)
from .tower import (CorrelationSequence, OdometerWord, ReturnSequenceReport,
                    auto_depth, cocycle_height, cocycle_height_by_difference,
                    cocycle_height_sum, correlation_bruteforce,
                    correlation_exact, correlation_table, lowest_zero,
                    odometer_step, return_sequence_report,
                    shift_difference_sum, shift_variation_ratio,
                    shift_variation_series)

__version__ = "0.1.0"
