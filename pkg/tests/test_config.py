import json
from pathlib import Path

import pytest

from hamming_partitions.config_schema import VerifyMode
from hamming_partitions.utils import load_toolkit_config

SAMPLE = Path(__file__).resolve().parent.parent / "config" / "sample_config.json"


def _write(tmp_path, data):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def test_defaults_without_a_file(monkeypatch):
    monkeypatch.delenv("HPART_WORKERS", raising=False)
    cfg = load_toolkit_config()
    assert cfg.verification.mode == VerifyMode.ALGEBRAIC
    assert cfg.verification.parallel_workers == 1
    assert cfg.symmetry.exhaustive_max_length == 7
    assert cfg.tables.attempt_unguarded
    assert cfg.profile is None


def test_profile_is_merged_over_default(tmp_path, monkeypatch):
    monkeypatch.delenv("HPART_WORKERS", raising=False)
    path = _write(tmp_path, {
        "default": {"verification": {"mode": "both", "pair_chunk_size": 16}},
        "profiles": {"wide": {"verification": {"parallel_workers": 4}, "tables": {"general_splits": False}}},
    })
    cfg = load_toolkit_config(path, "wide")
    assert cfg.verification.mode == VerifyMode.BOTH
    assert cfg.verification.pair_chunk_size == 16
    assert cfg.verification.parallel_workers == 4
    assert not cfg.tables.general_splits
    assert cfg.profile == "wide"


def test_sample_config_loads(monkeypatch):
    monkeypatch.delenv("HPART_WORKERS", raising=False)
    cfg = load_toolkit_config(str(SAMPLE), "guarded-only")
    assert not cfg.tables.attempt_unguarded


def test_bad_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(ValueError):
        load_toolkit_config(str(path))


def test_bad_values(tmp_path):
    with pytest.raises(ValueError):
        load_toolkit_config(_write(tmp_path, {"default": {"verification": {"mode": "guess"}}}))
    with pytest.raises(ValueError):
        load_toolkit_config(_write(tmp_path, {"default": {"search": {"phelps_limit": 0}}}))


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_toolkit_config(str(tmp_path / "absent.json"))


def test_unknown_profile(tmp_path):
    with pytest.raises(ValueError):
        load_toolkit_config(_write(tmp_path, {"default": {}}), "nope")
    with pytest.raises(ValueError):
        load_toolkit_config(None, "large")


def test_worker_count_from_environment(monkeypatch):
    monkeypatch.setenv("HPART_WORKERS", "3")
    assert load_toolkit_config().verification.parallel_workers == 3
    monkeypatch.setenv("HPART_WORKERS", "0")
    with pytest.raises(ValueError):
        load_toolkit_config()


def test_profile_replaces_keys_inside_a_section(tmp_path, monkeypatch):
    monkeypatch.delenv("HPART_WORKERS", raising=False)
    path = _write(tmp_path, {
        "default": {"symmetry": {"exhaustive_max_length": 5, "lift_confirm": False}},
        "profiles": {"p": {"symmetry": {"lift_confirm": True}}},
    })
    cfg = load_toolkit_config(path, "p")
    assert cfg.symmetry.exhaustive_max_length == 5
    assert cfg.symmetry.lift_confirm


@pytest.mark.parametrize("data", [
    [1, 2],
    {"default": {"plots": {}}},
    {"default": {"tables": True}},
    {"default": {}, "profiles": {"p": "wide"}},
])
def test_malformed_structure_names_the_config(tmp_path, data):
    with pytest.raises(ValueError) as err:
        load_toolkit_config(_write(tmp_path, data), "p" if "profiles" in data else None)
    assert str(err.value).startswith("config ")


def test_empty_file(tmp_path):
    path = tmp_path / "empty.json"
    path.write_text("  \n", encoding="utf-8")
    with pytest.raises(ValueError, match="empty file"):
        load_toolkit_config(str(path))
