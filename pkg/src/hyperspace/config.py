"""Run-configuration files: flat key-value TOML mirroring RunConfig.

Every key has a default; unknown keys are errors. Example::

    backend = "fhrr"
    dim = 8192
    seeds = [0, 1, 2, 3, 4]
    cleanup_method = "hopfield"
    cleanup_timesteps = 10
    cleanup_beta = 20.0
    cleanup_tol = 1e-6
    regression_method = "codebook"
    regression_beta = 100.0
    nn_hidden_width = 128
    nn_epochs = 50
    nn_learning_rate = 0.1
    nn_batch_size = 64
    map_width = 28
    map_height = 28
    codebook_k = 65
    pos_exponent_range = [0.0, 20.0]
    value_exponent_range = [0.0, 12.0]
    normalize_values = true
"""

from __future__ import annotations

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .bench import RunConfig
from .cleanup import CleanupConfig, CleanupMethod
from .core import Backend
from .errors import ConfigError
from .pipeline import DEFAULT_POS_EXPONENT_RANGE, DEFAULT_VALUE_EXPONENT_RANGE
from .regression import NnConfig, RegressionConfig, RegressionMethod

_KNOWN_KEYS = {
    "backend", "dim", "seeds",
    "cleanup_method", "cleanup_timesteps", "cleanup_beta", "cleanup_tol",
    "regression_method", "regression_beta",
    "nn_hidden_width", "nn_epochs", "nn_learning_rate", "nn_batch_size",
    "map_width", "map_height", "codebook_k",
    "pos_exponent_range", "value_exponent_range", "normalize_values",
}


def load_run_config(path) -> RunConfig:
    with open(path, "rb") as f:
        try:
            raw = tomllib.load(f)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"cannot parse {path}: {exc}") from exc
    return run_config_from_dict(raw, source=str(path))


def run_config_from_dict(raw: dict, source: str = "<dict>") -> RunConfig:
    unknown = set(raw) - _KNOWN_KEYS
    if unknown:
        raise ConfigError(f"unknown key(s) in {source}: {sorted(unknown)}")
    try:
        backend = Backend[str(raw.get("backend", "fhrr")).upper()]
        cleanup = CleanupConfig(
            method=CleanupMethod(str(raw.get("cleanup_method", "none")).lower()),
            timesteps=int(raw.get("cleanup_timesteps", 10)),
            beta=float(raw.get("cleanup_beta", 20.0)),
            convergence_tol=float(raw.get("cleanup_tol", 1e-6)),
        )
        regression = RegressionConfig(
            method=RegressionMethod(str(raw.get("regression_method", "codebook")).lower()),
            softmax_beta=float(raw.get("regression_beta", 100.0)),
            nn=NnConfig(
                hidden_width=int(raw.get("nn_hidden_width", 128)),
                epochs=int(raw.get("nn_epochs", 50)),
                learning_rate=float(raw.get("nn_learning_rate", 0.1)),
                batch_size=int(raw.get("nn_batch_size", 64)),
            ),
        )
        return RunConfig(
            backend=backend,
            dim=int(raw.get("dim", 8192)),
            seeds=tuple(int(s) for s in raw.get("seeds", (0, 1, 2, 3, 4))),
            cleanup=cleanup,
            regression=regression,
            map_width=int(raw.get("map_width", 28)),
            map_height=int(raw.get("map_height", 28)),
            codebook_k=int(raw.get("codebook_k", 65)),
            pos_exponent_range=tuple(map(float, raw.get(
                "pos_exponent_range", DEFAULT_POS_EXPONENT_RANGE))),
            value_exponent_range=tuple(map(float, raw.get(
                "value_exponent_range", DEFAULT_VALUE_EXPONENT_RANGE))),
            normalize_values=bool(raw.get("normalize_values", True)),
        )
    except (KeyError, ValueError) as exc:
        raise ConfigError(f"invalid value in {source}: {exc}") from exc
