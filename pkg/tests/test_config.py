"""Config file parsing, rendering, and layering."""

import dataclasses

import pytest

from minescan.config import (Config, ConfigError, ENV_CONFIG, load_config,
                             parse_config, render_config)


def test_defaults():
    cfg = Config()
    assert cfg.filter_kind == "mean"
    assert cfg.threshold == 85.0
    assert cfg.hidden_sizes == (90,)
    assert cfg.learning_rate == 0.01
    assert cfg.momentum == 0.2
    assert cfg.mse_target == 1e-5
    assert cfg.max_epochs == 20000


def test_empty_text_gives_defaults():
    assert parse_config("") == Config()


def test_round_trip_defaults():
    cfg = Config()
    assert parse_config(render_config(cfg)) == cfg


def test_round_trip_modified():
    # awkward float reprs and a multi-layer hidden spec must survive
    cfg = dataclasses.replace(Config(), filter_kind="median", threshold=200.0,
                              hue_weight=0.1, scale_factor=96.0,
                              hidden_sizes=(12, 7), slope=7.0,
                              mse_target=3e-7, rng_seed=11)
    assert parse_config(render_config(cfg)) == cfg


def test_comments_and_blanks_ignored():
    text = "# leading comment\n\nthreshold = 42.5  # trailing comment\n\n"
    assert parse_config(text).threshold == 42.5


def test_unknown_key_reports_line():
    with pytest.raises(ConfigError, match="line 2.*treshold"):
        parse_config("filter_kind = mean\ntreshold = 9\n")


def test_missing_equals_reports_line():
    with pytest.raises(ConfigError, match="line 1"):
        parse_config("just some words\n")


def test_bad_value():
    with pytest.raises(ConfigError, match="max_epochs"):
        parse_config("max_epochs = soon\n")


@pytest.mark.parametrize("text,expect", [
    ("90", (90,)),
    ("12,7", (12, 7)),
    ("12 7", (12, 7)),
    ("  12 , 7 ", (12, 7)),
])
def test_hidden_sizes_forms(text, expect):
    assert parse_config(f"hidden_sizes = {text}\n").hidden_sizes == expect


@pytest.mark.parametrize("line", [
    "momentum = 1.0",
    "hue_weight = 1.5",
    "slope = 0",
    "learning_rate = -0.1",
    "filter_kind = box",
    "aggregate = max",
    "hidden_sizes = 0",
    "max_epochs = 0",
    "scale_factor = 0",
])
def test_validation_rejects(line):
    with pytest.raises(ConfigError):
        parse_config(line + "\n")


def test_parse_layers_over_base():
    base = parse_config("threshold = 10\nslope = 2.0\n")
    cfg = parse_config("threshold = 30\n", base=base)
    assert cfg.threshold == 30.0
    assert cfg.slope == 2.0


def test_param_bundles():
    cfg = parse_config("threshold = 50\nspatial_weight = 2.0\n"
                       "hue_weight = 0.25\nlearning_rate = 0.3\n")
    seg = cfg.seg_params()
    assert (seg.threshold, seg.spatial_weight) == (50.0, 2.0)
    feat = cfg.feature_params()
    assert feat.hue_weight == 0.25
    tp = cfg.train_params()
    assert tp.learning_rate == 0.3
    assert tp.max_epochs == cfg.max_epochs


def test_load_explicit_path(tmp_path):
    p = tmp_path / "a.cfg"
    p.write_text("threshold = 66\n")
    assert load_config(str(p)).threshold == 66.0


def test_load_env_fallback(tmp_path, monkeypatch):
    p = tmp_path / "env.cfg"
    p.write_text("max_k = 5\n")
    monkeypatch.setenv(ENV_CONFIG, str(p))
    assert load_config().max_k == 5


def test_explicit_path_beats_env(tmp_path, monkeypatch):
    a = tmp_path / "a.cfg"
    a.write_text("max_k = 5\n")
    b = tmp_path / "b.cfg"
    b.write_text("max_k = 9\n")
    monkeypatch.setenv(ENV_CONFIG, str(a))
    assert load_config(str(b)).max_k == 9


def test_load_missing_file(monkeypatch):
    monkeypatch.delenv(ENV_CONFIG, raising=False)
    with pytest.raises(ConfigError, match="cannot read"):
        load_config("/no/such/file.cfg")


def test_overrides_apply_and_check(monkeypatch):
    monkeypatch.delenv(ENV_CONFIG, raising=False)
    cfg = load_config(overrides={"slope": 3.0})
    assert cfg.slope == 3.0
    with pytest.raises(ConfigError, match="unknown config keys"):
        load_config(overrides={"sloop": 3.0})
    with pytest.raises(ConfigError):
        load_config(overrides={"momentum": 2.0})
