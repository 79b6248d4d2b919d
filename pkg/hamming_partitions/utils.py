import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

from .config_schema import (
    SearchConfig, SymmetryConfig, TableConfig, ToolkitConfig,
    VerificationConfig, VerifyMode
)

logger = logging.getLogger(__name__)

WORKERS_ENV = "HPART_WORKERS"


SECTIONS = ("verification", "search", "symmetry", "tables")


def _read_config_json(path: Path) -> Dict[str, Any]:
    txt = path.read_text(encoding="utf-8").strip()
    if not txt:
        raise ValueError(f"config {path}: empty file")
    try:
        data = json.loads(txt)
    except json.JSONDecodeError as e:
        raise ValueError(f"config {path}: bad JSON at line {e.lineno}: {e.msg}") from e
    if not isinstance(data, dict):
        raise ValueError(f"config {path}: top level must be an object")
    return data


def _overlay(base: Dict[str, Any], block: Any, where: str) -> Dict[str, Any]:
    """Lay a default or profile block over base, section by section; keys inside a section replace."""
    if not isinstance(block, dict):
        raise ValueError(f"{where} must be an object")
    out = {section: dict(values) for section, values in base.items()}
    for section, values in block.items():
        if section not in SECTIONS:
            raise ValueError(f"{where}: unknown section {section!r}")
        if not isinstance(values, dict):
            raise ValueError(f"{where}.{section} must be an object")
        out[section] = {**out.get(section, {}), **values}
    return out


def _positive_int(section: str, key: str, value: Any) -> int:
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ValueError(f"{section}.{key} must be a positive integer, got {value!r}")
    return value


def _parse_verification(conf: Dict[str, Any]) -> VerificationConfig:
    out = VerificationConfig()
    if "mode" in conf:
        try:
            out.mode = VerifyMode(conf["mode"])
        except ValueError as e:
            raise ValueError(f"verification.mode: unknown mode {conf['mode']!r}") from e
    for key in ("exhaustive_max_length", "parallel_workers", "pair_chunk_size"):
        if key in conf:
            setattr(out, key, _positive_int("verification", key, conf[key]))
    return out


def _parse_search(conf: Dict[str, Any]) -> SearchConfig:
    out = SearchConfig()
    for key in ("phelps_limit", "node_budget", "sample_codes"):
        if key in conf:
            setattr(out, key, _positive_int("search", key, conf[key]))
    if "seed" in conf:
        seed = conf["seed"]
        if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
            raise ValueError(f"search.seed must be a non-negative integer, got {seed!r}")
        out.seed = seed
    return out


def _parse_symmetry(conf: Dict[str, Any]) -> SymmetryConfig:
    out = SymmetryConfig()
    if "exhaustive_max_length" in conf:
        out.exhaustive_max_length = _positive_int("symmetry", "exhaustive_max_length", conf["exhaustive_max_length"])
    if "lift_confirm" in conf:
        out.lift_confirm = bool(conf["lift_confirm"])
    return out


def _parse_tables(conf: Dict[str, Any]) -> TableConfig:
    out = TableConfig()
    for key in ("general_splits", "attempt_unguarded"):
        if key in conf:
            setattr(out, key, bool(conf[key]))
    return out


def load_toolkit_config(path: Optional[str] = None, profile: Optional[str] = None) -> ToolkitConfig:
    """
    Load a ToolkitConfig: the file's "default" block, then "profiles.<profile>"
    merged over it. No path means built-in defaults. HPART_WORKERS overrides
    the worker count either way.
    """
    merged: Dict[str, Any] = {}
    if path is not None:
        p = Path(path)
        if not p.exists():
            raise FileNotFoundError(f"Config not found: {p}")
        data = _read_config_json(p)
        merged = _overlay({}, data.get("default", {}), f"config {p}: default")
        if profile is not None:
            profiles = data.get("profiles", {})
            if profile not in profiles:
                raise ValueError(f"config {p}: profile {profile!r} not defined")
            merged = _overlay(merged, profiles[profile], f"config {p}: profiles.{profile}")
    elif profile is not None:
        raise ValueError("a profile needs a config file")

    cfg = ToolkitConfig(
        verification=_parse_verification(merged.get("verification", {})),
        search=_parse_search(merged.get("search", {})),
        symmetry=_parse_symmetry(merged.get("symmetry", {})),
        tables=_parse_tables(merged.get("tables", {})),
        profile=profile,
    )
    env_workers = os.getenv(WORKERS_ENV)
    if env_workers:
        cfg.verification.parallel_workers = _positive_int("env", WORKERS_ENV, int(env_workers))
        logger.debug("Worker count %d taken from %s", cfg.verification.parallel_workers, WORKERS_ENV)
    return cfg
