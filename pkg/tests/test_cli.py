import json
from fractions import Fraction

import pytest

from ergoseq import cli
from ergoseq.config import RunConfig
from ergoseq.errors import ConfigError

FAST_CONFIG = """\
[growth]
kind = affine
multipliers = 3
q1 = 1
count = 9

[lifetime]
kind = powerlaw
alpha = 0.8
horizon = 3000

[run]
n_max = 100
renewal_horizon = 3000
checkpoints = 100,1000
theta_min = 1e-2
theta_max = 1e-1
theta_points = 40
out = out
"""


def write_config(tmp_path, text=FAST_CONFIG, name="run.ini"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


class TestConfig:
    def test_defaults_parse(self):
        cfg = RunConfig.default()
        assert cfg.n_max == 200
        assert cfg.precision == "double"
        assert cfg.depth is None
        assert cfg.g2_points == [Fraction(0), Fraction(1, 2), Fraction(1, 3)]
        assert len(cfg.config_hash) == 16

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError):
            RunConfig({"run": {"nmax": "10"}})

    def test_unknown_section_rejected(self):
        with pytest.raises(ConfigError):
            RunConfig({"torus": {}})

    def test_exact_mode_guards(self):
        with pytest.raises(ConfigError):
            RunConfig({"run": {"precision": "exact"}})  # powerlaw default
        cfg = RunConfig({"run": {"precision": "exact",
                                 "renewal_horizon": "200"},
                         "lifetime": {"kind": "delta", "n": "1"}})
        assert cfg.precision == "exact"
        with pytest.raises(ConfigError):
            RunConfig({"run": {"precision": "exact",
                               "renewal_horizon": "5000"},
                       "lifetime": {"kind": "delta"}})

    def test_missing_csv_rejected(self, tmp_path):
        path = write_config(tmp_path, "[lifetime]\nkind = csv\npath = no.csv\n")
        with pytest.raises(ConfigError):
            RunConfig.load(path)

    def test_hash_ignores_nothing(self):
        a = RunConfig.default().config_hash
        b = RunConfig({"run": {"n_max": "201"}}).config_hash
        assert a != b

    def test_explicit_growth(self):
        cfg = RunConfig({"growth": {"kind": "explicit", "terms": "1,4,13"}})
        seq, affine = cfg.build_growth()
        assert seq.terms == (1, 4, 13)
        assert affine is None


class TestCommands:
    def test_growth_outputs(self, tmp_path):
        path = write_config(tmp_path)
        assert cli.main(["growth", "--config", str(path)]) == 0
        out = tmp_path / "out"
        text = (out / "growth.csv").read_text()
        assert text.startswith("# config=")
        assert text.splitlines()[1] == "n,threshold_index"
        doc = json.loads((out / "growth.json").read_text())
        assert doc["growth_class"] == "super_growth"
        assert doc["terms"][0] == "1"

    def test_tower_outputs(self, tmp_path, capsys):
        path = write_config(tmp_path)
        assert cli.main(["tower", "--config", str(path)]) == 0
        assert "correlations agree" in capsys.readouterr().out
        lines = (tmp_path / "out" / "correlations.csv").read_text().splitlines()
        assert lines[1] == "n,numerator,log2_denominator,value_decimal"
        assert lines[2] == "1,1,1,0.5"

    def test_renewal_outputs(self, tmp_path, capsys):
        path = write_config(tmp_path)
        assert cli.main(["renewal", "--config", str(path)]) == 0
        printed = capsys.readouterr().out
        assert "1/(sqrt(5)+1)" in printed
        assert "HOLDS" in printed
        out = tmp_path / "out"
        for name in ("renewal.csv", "tails.csv", "smoothness.csv",
                     "fourier.csv", "renewal.json"):
            assert (out / name).is_file(), name

    def test_product_outputs(self, tmp_path, capsys):
        path = write_config(tmp_path)
        assert cli.main(["product", "--config", str(path)]) == 0
        assert "difference-sum ratio floor" in capsys.readouterr().out
        doc = json.loads((tmp_path / "out" / "product.json").read_text())
        assert doc["difference_ratio_floor"] > 0
        assert doc["zero_type_decaying"] is True

    def test_all_is_deterministic(self, tmp_path):
        path = write_config(tmp_path)
        assert cli.main(["all", "--config", str(path),
                         "--out", str(tmp_path / "a")]) == 0
        assert cli.main(["all", "--config", str(path),
                         "--out", str(tmp_path / "b")]) == 0
        a, b = tmp_path / "a", tmp_path / "b"
        names = sorted(p.name for p in a.iterdir())
        assert names == sorted(p.name for p in b.iterdir())
        for name in names:
            assert (a / name).read_bytes() == (b / name).read_bytes(), name

    def test_default_config_runs(self, tmp_path):
        assert cli.main(["growth", "--out", str(tmp_path / "o")]) == 0


class TestExitCodes:
    def test_config_error(self, tmp_path):
        path = write_config(tmp_path, "[run]\nn_max = many\n")
        assert cli.main(["growth", "--config", str(path)]) == 2

    def test_missing_config_file(self, tmp_path):
        assert cli.main(["growth", "--config",
                         str(tmp_path / "nope.ini")]) == 2

    def test_tower_requires_super_growth(self, tmp_path):
        path = write_config(
            tmp_path, "[growth]\nkind = explicit\nterms = 1,2,4,8\n")
        assert cli.main(["tower", "--config", str(path)]) == 2

    def test_range_error(self, tmp_path):
        path = write_config(tmp_path, "[growth]\nkind = affine\n"
                            "multipliers = 3\nq1 = 1\ncount = 4\n"
                            "\n[run]\nn_max = 500\n")
        assert cli.main(["tower", "--config", str(path)]) == 4

    def test_depth_refused_below_rule_unless_forced(self, tmp_path):
        base = FAST_CONFIG.replace("out = out", "out = out\ndepth = 3")
        path = write_config(tmp_path, base)
        assert cli.main(["tower", "--config", str(path)]) == 4
        # forcing depth 3 on this range genuinely truncates: still an error
        assert cli.main(["tower", "--config", str(path), "--force"]) == 4

    def test_oracle_mismatch_wiring(self, tmp_path, monkeypatch):
        from fractions import Fraction as Fr
        from ergoseq import tower as tower_mod

        real = tower_mod.correlation_table

        def corrupted(n_max, q):
            seq = real(n_max, q)
            values = list(seq.values)
            values[5] = Fr(1, 2)
            return tower_mod.CorrelationSequence(q, tuple(values))

        monkeypatch.setattr(cli.tower_mod, "correlation_table", corrupted)
        path = write_config(tmp_path)
        assert cli.main(["tower", "--config", str(path)]) == 3

    def test_exact_precision_override(self, tmp_path):
        text = ("[lifetime]\nkind = delta\nn = 1\n\n"
                "[run]\nrenewal_horizon = 300\ncheckpoints = 100\n"
                "theta_min = 1e-2\ntheta_max = 1e-1\ntheta_points = 20\n")
        path = write_config(tmp_path, text)
        assert cli.main(["renewal", "--config", str(path),
                         "--precision", "exact"]) == 0
