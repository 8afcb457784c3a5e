"""
Configuration management for the denoiser.
Handles loading settings from environment variables, a JSON config file and
dotted command-line overrides (``--train.seed 3``).
"""

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

import orjson
from dotenv import load_dotenv
from denoiser.models import Architecture, NoiseSpec, TrainConfig

# Recipe spellings accepted on the command line
_ALIASES = {"noise.factor": "noise.noise_factor", "noise.path": "noise.file_path"}


@dataclass
class PipelineConfig:
    """Main configuration class for a denoising run."""

    # Data locations
    dataset_dir: Path = field(default_factory=lambda: Path("data/mafaulda"))
    work_dir: Path = field(default_factory=lambda: Path("work"))
    category: str = "normal"
    mic_column: int = 7

    # Corruption
    noise: NoiseSpec = field(default_factory=NoiseSpec)
    split_seed: int = 0

    # Model
    train: TrainConfig = field(default_factory=TrainConfig)
    arch: Architecture = field(default_factory=Architecture.desk)
    full_scale: bool = False

    # Outputs
    model_path: Path = field(default_factory=lambda: Path("work/model.json"))
    report_dir: Path = field(default_factory=lambda: Path("work/reports"))

    # Logging
    log_level: str = "INFO"
    log_file: Optional[str] = None

    @classmethod
    def from_env(cls, env_file: Optional[str] = None) -> "PipelineConfig":
        """Load configuration from environment variables."""

        if env_file:
            load_dotenv(env_file)
        else:
            for env_path in ["config.env", ".env"]:
                if Path(env_path).exists():
                    load_dotenv(env_path)
                    break

        defaults = cls()
        return cls(
            dataset_dir=Path(os.getenv("DENOISER_DATASET_DIR", str(defaults.dataset_dir))),
            work_dir=Path(os.getenv("DENOISER_WORK_DIR", str(defaults.work_dir))),
            category=os.getenv("DENOISER_CATEGORY", defaults.category),
            mic_column=int(os.getenv("DENOISER_MIC_COLUMN", str(defaults.mic_column))),
            split_seed=int(os.getenv("DENOISER_SPLIT_SEED", str(defaults.split_seed))),
            model_path=Path(os.getenv("DENOISER_MODEL_PATH", str(defaults.model_path))),
            report_dir=Path(os.getenv("DENOISER_REPORT_DIR", str(defaults.report_dir))),
            log_level=os.getenv("LOG_LEVEL", "INFO"),
            log_file=os.getenv("LOG_FILE") or None,
        )

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "PipelineConfig":
        """Build from a plain dict (as produced by to_dict or a JSON file)."""
        data = dict(data)
        kwargs: dict[str, Any] = {}
        for key in ("dataset_dir", "work_dir", "model_path", "report_dir"):
            if key in data:
                kwargs[key] = Path(data.pop(key))
        if "noise" in data:
            noise = dict(data.pop("noise"))
            for alias, name in (("factor", "noise_factor"), ("path", "file_path")):
                if alias in noise:
                    noise[name] = noise.pop(alias)
            kwargs["noise"] = NoiseSpec.model_validate(noise)
        if "train" in data:
            kwargs["train"] = TrainConfig.model_validate(data.pop("train"))
        if "arch" in data:
            kwargs["arch"] = Architecture.model_validate(data.pop("arch"))

        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"Unknown config keys: {', '.join(sorted(unknown))}")
        kwargs.update(data)
        return cls(**kwargs)

    @classmethod
    def from_json(cls, path: str | Path, base: Optional["PipelineConfig"] = None) -> "PipelineConfig":
        """Load a JSON config file, layered over ``base`` (defaults if omitted)."""
        overrides = orjson.loads(Path(path).read_bytes())
        merged = (base or cls()).to_dict()
        _deep_update(merged, overrides)
        return cls.from_dict(merged)

    def to_dict(self) -> dict[str, Any]:
        return {
            "dataset_dir": str(self.dataset_dir),
            "work_dir": str(self.work_dir),
            "category": self.category,
            "mic_column": self.mic_column,
            "noise": self.noise.model_dump(mode="json"),
            "split_seed": self.split_seed,
            "train": self.train.model_dump(mode="json"),
            "arch": self.arch.model_dump(mode="json"),
            "full_scale": self.full_scale,
            "model_path": str(self.model_path),
            "report_dir": str(self.report_dir),
            "log_level": self.log_level,
            "log_file": self.log_file,
        }

    def apply_overrides(self, overrides: dict[str, Any]) -> "PipelineConfig":
        """Return a copy with dotted-name overrides applied (``train.seed``)."""
        data = self.to_dict()
        for dotted, value in overrides.items():
            dotted = _ALIASES.get(dotted, dotted)
            target = data
            parts = dotted.split(".")
            for part in parts[:-1]:
                if not isinstance(target.get(part), dict):
                    raise ValueError(f"Unknown config key: {dotted}")
                target = target[part]
            if parts[-1] not in target:
                raise ValueError(f"Unknown config key: {dotted}")
            target[parts[-1]] = value
        return PipelineConfig.from_dict(data)

    def with_seed(self, seed: int) -> "PipelineConfig":
        """Apply the global ``--seed`` to every seeded stage."""
        return self.apply_overrides({"split_seed": seed, "train.seed": seed, "noise.seed": seed})

    def scaled(self) -> "PipelineConfig":
        """Switch to the full-scale network and windows when full_scale is set."""
        if not self.full_scale:
            return self
        return self.apply_overrides({
            "arch": Architecture.full().model_dump(mode="json"),
            "train.window_len": 16384,
        })

    @property
    def paired_manifest_path(self) -> Path:
        return self.work_dir / "noisy" / "manifest.json"

    @property
    def clean_manifest_path(self) -> Path:
        return self.work_dir / "clean" / "manifest.json"

    @property
    def split_manifest_path(self) -> Path:
        return self.report_dir / "split.json"

    def validate(self) -> list[str]:
        """Validate configuration and return list of errors."""
        errors = []

        if not 0 <= self.mic_column < 8:
            errors.append("mic_column must be in [0, 8)")
        if not self.category:
            errors.append("category is required ('all' selects every category)")
        if self.train.window_len % self.arch.downsampling_factor != 0:
            errors.append(
                f"train.window_len must be divisible by {self.arch.downsampling_factor}"
            )
        if self.log_level.upper() not in ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL"):
            errors.append(f"Unknown log level: {self.log_level}")

        return errors


def _deep_update(target: dict, updates: dict) -> None:
    for key, value in updates.items():
        if isinstance(value, dict) and isinstance(target.get(key), dict):
            _deep_update(target[key], value)
        else:
            target[key] = value


def load_config(
    config_path: Optional[str] = None,
    seed: Optional[int] = None,
    overrides: Optional[dict[str, Any]] = None,
) -> PipelineConfig:
    """
    Layer defaults, environment, JSON file, ``--seed`` and dotted flags.

    Raises:
        ValueError: for unknown keys or invalid values
    """
    config = PipelineConfig.from_env()
    if config_path:
        config = PipelineConfig.from_json(config_path, base=config)
    if seed is not None:
        config = config.with_seed(seed)
    overrides = dict(overrides or {})
    if "full_scale" in overrides:
        config = config.apply_overrides({"full_scale": overrides.pop("full_scale")})
    # full-scale defaults sit under the dotted flags
    config = config.scaled()
    if overrides:
        config = config.apply_overrides(overrides)
    return config

