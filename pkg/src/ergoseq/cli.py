"""Command-line front end.

Subcommands growth | tower | renewal | product | all read one INI config,
run the corresponding computations, print a human summary, and write
CSV/JSON reports into the output directory.  Exit codes: 0 success,
2 config error, 3 oracle mismatch, 4 range or depth error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import product as product_mod
from . import renewal as renewal_mod
from . import tower as tower_mod
from .config import RunConfig
from .errors import ConfigError, DepthError, OracleMismatch, RangeError
from .growth import circle_norm_square_sums, threshold_index
from .renewal import (GOLDEN_TAIL_THRESHOLD, MEAN_TAIL_THRESHOLD,
                      kaluza_check, renewal_from_lifetime, smoothness_ratios,
                      squared_variation, tail_mean_report, tail_ratio_report,
                      tail_stats)
from .reports import write_csv, write_json

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_ORACLE = 3
EXIT_RANGE = 4


def cmd_growth(cfg: RunConfig, out: Path) -> None:
    seq, affine = cfg.build_growth()
    print(f"growth: K={len(seq)} class={seq.growth_class.value}")
    c_rows = []
    for n in cfg.checkpoints:
        if 1 <= n <= seq.terms[-1]:
            c_rows.append((n, threshold_index(n, seq)))
    g2_rows = []
    for t in cfg.g2_points:
        sums = circle_norm_square_sums(seq, t)
        g2_rows.append((t, sums))
        print(f"growth: sum ||q_k * {t}||^2 up to K = {float(sums[-1]):.6g}")
    divergence = affine.inverse_square_sums if affine else ()
    if divergence:
        print(f"growth: sum 1/a_n^2 partials end at {float(divergence[-1])}"
              " (keeps growing for weak mixing)")
    write_csv(out / "growth.csv", cfg.config_hash,
              ("n", "threshold_index"), c_rows)
    write_csv(out / "g2.csv", cfg.config_hash,
              ("t", "k", "partial_sum", "partial_sum_decimal"),
              ((t, k + 1, s, float(s))
               for t, sums in g2_rows for k, s in enumerate(sums)))
    write_json(out / "growth.json", cfg.config_hash, {
        "terms": [str(t) for t in seq.terms],
        "growth_class": seq.growth_class.value,
        "threshold_index": {str(n): c for n, c in c_rows},
        "g2_partial_sums": {str(t): [str(s) for s in sums]
                            for t, sums in g2_rows},
        "inverse_square_sums": [str(s) for s in divergence],
    })


def cmd_tower(cfg: RunConfig, out: Path, force: bool) -> None:
    seq, _ = cfg.build_growth()
    try:
        seq.require_super()
    except ValueError as exc:
        raise ConfigError(str(exc))
    n_max = cfg.n_max
    if n_max > seq.total:
        raise RangeError(f"n_max={n_max} exceeds the representable range "
                         f"{seq.total}; extend the growth sequence")
    exact = tower_mod.correlation_table(n_max, seq)
    brute = tower_mod.correlation_bruteforce(n_max, seq, cfg.depth,
                                             force=force)
    if exact.values != brute.values:
        bad = next(n for n in range(1, n_max + 1)
                   if exact.values[n] != brute.values[n])
        raise OracleMismatch(
            f"correlation mismatch at n={bad}: encode route gives "
            f"{exact.values[bad]}, word enumeration gives "
            f"{brute.values[bad]}")
    print(f"tower: exact and brute-force correlations agree for "
          f"n <= {n_max}")
    report = tower_mod.return_sequence_report(n_max, seq)
    print(f"tower: a_n/2^c(n) in [{float(report.ratio_min):.6g}, "
          f"{float(report.ratio_max):.6g}]")
    variation = tower_mod.shift_variation_series(n_max, seq)
    floor = min(variation[seq.term(2) - 1:]) if n_max >= seq.term(2) \
        else min(variation)
    print(f"tower: shift-variation ratio floor {float(floor):.6g} "
          f"(= {floor})")
    write_csv(out / "correlations.csv", cfg.config_hash,
              ("n", "numerator", "log2_denominator", "value_decimal"),
              exact.to_csv_rows())
    write_csv(out / "variation.csv", cfg.config_hash,
              ("n", "ratio", "ratio_decimal"),
              ((n + 1, r, float(r)) for n, r in enumerate(variation)))
    write_csv(out / "return_sequence.csv", cfg.config_hash,
              ("n", "a_n", "scale", "ratio", "ratio_decimal"),
              ((n, a, s, r, float(r)) for n, a, s, r in report.rows))
    write_json(out / "tower.json", cfg.config_hash, {
        "n_max": n_max,
        "oracle_match": True,
        "ratio_min": str(report.ratio_min),
        "ratio_max": str(report.ratio_max),
        "variation_floor": str(floor),
    })


def cmd_renewal(cfg: RunConfig, out: Path) -> None:
    f = cfg.build_lifetime()
    horizon = cfg.renewal_horizon
    u = renewal_from_lifetime(f, horizon, mode=cfg.precision)
    stats = tail_stats(f, horizon)
    ratio = tail_ratio_report(f, horizon, cfg.window_fraction)
    mean = tail_mean_report(f, horizon, cfg.window_fraction,
                            fitted_r=ratio.limsup_estimate)
    verdict = "HOLDS" if ratio.holds else "FAILS"
    print(f"renewal: limsup estimate of N*c_N/L(N) = "
          f"{ratio.limsup_estimate:.6g} vs threshold 1/(sqrt(5)+1) = "
          f"{GOLDEN_TAIL_THRESHOLD:.9f} -> {verdict}")
    print(f"renewal: limsup estimate of N*c_N/M(N) = "
          f"{mean.limsup_estimate:.6g} vs threshold 1/sqrt(5) = "
          f"{MEAN_TAIL_THRESHOLD:.9f} -> "
          f"{'HOLDS' if mean.holds else 'FAILS'}")
    cps = [n for n in cfg.checkpoints if n + 1 <= u.horizon]
    smooth = smoothness_ratios(u, cps) if cps else []
    for n, s in smooth:
        print(f"renewal: variation/a_n at n={n}: {float(s):.6g}")
    sq = squared_variation(u, u.horizon - 1, checkpoints=cps)
    print(f"renewal: squared variation {sq.total:.6g}, last-decade "
          f"fraction {sq.last_decade_fraction:.3g}")
    tmin, tmax, tpts = cfg.theta_grid
    grid = np.logspace(np.log10(tmin), np.log10(tmax), tpts)
    fourier = renewal_mod.fourier_lower_bound_report(f, grid)
    print(f"renewal: Fourier lower bound "
          f"{'holds' if fourier.all_hold else 'VIOLATED'} on the grid; "
          f"worst margin {fourier.worst_margin:.3g}")
    integral = renewal_mod.spectral_integral_estimate(f, tmin, float(np.pi),
                                                      tpts)
    print(f"renewal: spectral integral estimate {integral.value:.6g} "
          f"({len(integral.skipped)} grid points skipped)")
    values = u.values if not u.exact else [float(v) for v in u.values]
    write_csv(out / "renewal.csv", cfg.config_hash, ("n", "u_n"),
              ((n, float(values[n])) for n in range(0, u.horizon + 1)))
    nt = stats.n_max
    write_csv(out / "tails.csv", cfg.config_hash,
              ("N", "tail_mass", "tail_mass_sum", "truncated_mean",
               "truncated_second_moment", "criterion_ratio"),
              ((N, float(stats.tail_mass[N]), float(stats.tail_mass_sums[N]),
                float(stats.truncated_mean[N]),
                float(stats.truncated_second_moment[N]),
                float(ratio.ratios[N]))
               for N in range(1, nt + 1)))
    write_csv(out / "smoothness.csv", cfg.config_hash,
              ("n", "variation_ratio"),
              ((n, float(s)) for n, s in smooth))
    write_csv(out / "fourier.csv", cfg.config_hash,
              ("theta", "lhs", "head_term", "tail_term", "rhs", "margin",
               "truncation_bound", "eta", "holds"),
              ((r.theta, r.lhs, r.head_term, r.tail_term, r.rhs, r.margin,
                r.truncation_bound, r.eta, r.holds) for r in fourier.rows))
    write_json(out / "renewal.json", cfg.config_hash, {
        "lifetime": f.label,
        "aperiodic": f.aperiodic,
        "horizon": u.horizon,
        "criterion": {
            "limsup_estimate": ratio.limsup_estimate,
            "threshold": ratio.threshold,
            "holds": ratio.holds,
            "window_start": ratio.window_start,
        },
        "mean_ratio": {
            "limsup_estimate": mean.limsup_estimate,
            "threshold": mean.threshold,
            "holds": mean.holds,
            "bound_factor": mean.bound_factor,
            "bound_holds": mean.bound_holds,
        },
        "smoothness": {str(n): float(s) for n, s in smooth},
        "squared_variation": {
            "total": sq.total,
            "last_decade_increment": sq.last_decade_increment,
            "last_decade_fraction": sq.last_decade_fraction,
        },
        "fourier_all_hold": fourier.all_hold,
        "fourier_worst_margin": fourier.worst_margin,
        "spectral_integral": integral.value,
    })


def cmd_product(cfg: RunConfig, out: Path) -> None:
    seq, _ = cfg.build_growth()
    try:
        seq.require_super()
    except ValueError as exc:
        raise ConfigError(str(exc))
    n_max = cfg.n_max
    shift = seq.term(1)
    if n_max + shift > seq.total:
        raise RangeError(f"n_max={n_max} plus shift exceeds the "
                         f"representable range {seq.total}")
    markov_u = cfg.build_markov_u(n_max + shift)
    gate = kaluza_check(markov_u, derive=False)
    if not gate.is_kaluza:
        raise ConfigError(f"markov u is not log-convex: violation at "
                          f"index {gate.first_violation}")
    corr = tower_mod.correlation_table(n_max + shift, seq)
    pm = product_mod.ProductModel(markov_u, corr, seq)
    series = product_mod.difference_ratio_series(pm, n_max)
    floor = min(series[seq.term(2) - 1:]) if n_max >= seq.term(2) \
        else min(series)
    print(f"product: difference-sum ratio floor {floor:.6g} over "
          f"n <= {n_max}")
    zt = product_mod.zero_type_report(pm)
    note = "window maxima decay" if zt.decaying else \
        "window maxima do NOT decay (u does not vanish: not zero type)"
    print(f"product: {note}")
    write_csv(out / "product.csv", cfg.config_hash,
              ("n", "markov_u", "tower_corr", "product", "difference_ratio"),
              ((n, float(markov_u.value(n)), float(corr.value(n)),
                product_mod.product_correlation(pm, n), series[n - 1])
               for n in range(1, n_max + 1)))
    write_csv(out / "zero_type.csv", cfg.config_hash,
              ("window_lo", "window_hi", "max_product_correlation"),
              ((lo, hi, m) for (lo, hi), m in zip(zt.windows, zt.maxima)))
    write_json(out / "product.json", cfg.config_hash, {
        "n_max": n_max,
        "difference_ratio_floor": floor,
        "difference_ratio_final": series[-1],
        "zero_type_windows": [list(w) for w in zt.windows],
        "zero_type_maxima": list(zt.maxima),
        "zero_type_decaying": zt.decaying,
        "u_decays": zt.u_decays,
    })


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="ergoseq",
        description="Odometer-tower correlations, renewal sequences and "
                    "their smoothness diagnostics")
    parser.add_argument("command",
                        choices=["growth", "tower", "renewal", "product",
                                 "all"])
    parser.add_argument("--config", type=Path, default=None,
                        help="INI config; built-in defaults when omitted")
    parser.add_argument("--out", type=Path, default=None,
                        help="output directory (overrides [run] out)")
    parser.add_argument("--force", action="store_true",
                        help="accept a depth below the safe rule")
    parser.add_argument("--precision", choices=["double", "exact"],
                        default=None, help="override [run] precision")
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig.load(args.config) if args.config \
            else RunConfig.default()
        if args.precision:
            values = {s: dict(kv) for s, kv in cfg.values.items()}
            values["run"]["precision"] = args.precision
            cfg = RunConfig(values, base_dir=cfg.base_dir)
        out = args.out if args.out else cfg.out_dir
        commands = (["growth", "tower", "renewal", "product"]
                    if args.command == "all" else [args.command])
        for cmd in commands:
            if cmd == "growth":
                cmd_growth(cfg, out)
            elif cmd == "tower":
                cmd_tower(cfg, out, args.force)
            elif cmd == "renewal":
                cmd_renewal(cfg, out)
            elif cmd == "product":
                cmd_product(cfg, out)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OracleMismatch as exc:
        print(f"oracle mismatch: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except (RangeError, DepthError) as exc:
        print(f"range/depth error: {exc}", file=sys.stderr)
        return EXIT_RANGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
