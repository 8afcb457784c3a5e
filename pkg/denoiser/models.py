"""
Data models for the denoiser.
Defines the serializable records that flow between pipeline stages:
noise recipes, training and architecture settings, dataset splits,
corpus manifests, loss curves and evaluation reports.

Pipeline flow:
1. Convert MAFAULDA CSV recordings into clean WAVs (corpus manifest)
2. Corrupt every clean WAV with a noise recipe (paired manifest)
3. Split, train the autoencoder, checkpoint (split manifest, loss curve)
4. Denoise the test split and report per-sound MSE
"""

import math
from enum import Enum
from statistics import median
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class NoiseKind(str, Enum):
    """Types of corruption the toolkit can synthesize."""
    GAUSSIAN = "gaussian"
    BLUE = "blue"
    FILE = "file"


class ActivationKind(str, Enum):
    """Pointwise activations supported by the layers."""
    RELU = "relu"
    SIGMOID = "sigmoid"
    NONE = "none"


class PaddingMode(str, Enum):
    """Convolution border handling."""
    SAME = "same"
    VALID = "valid"


class LossKind(str, Enum):
    """Training objectives."""
    BCE = "bce"


class Category(str, Enum):
    """MAFAULDA recording categories recognised from the archive layout."""
    NORMAL = "normal"
    HORIZONTAL_MISALIGNMENT_0_5MM = "horizontal_misalignment_0_5mm"
    HORIZONTAL_MISALIGNMENT_1_0MM = "horizontal_misalignment_1_0mm"
    HORIZONTAL_MISALIGNMENT_1_5MM = "horizontal_misalignment_1_5mm"
    HORIZONTAL_MISALIGNMENT_2_0MM = "horizontal_misalignment_2_0mm"
    OTHER = "other"


# Selectors that span several categories, besides "all"
CATEGORY_GROUPS: dict[str, frozenset[str]] = {
    "horizontal_misalignment": frozenset(
        c.value for c in Category if c.value.startswith("horizontal_misalignment_")
    ),
}


def category_matches(category: str, selector: str) -> bool:
    """True when a recording of `category` is picked by `selector`."""
    if selector == "all":
        return True
    if selector in CATEGORY_GROUPS:
        return category in CATEGORY_GROUPS[selector]
    return category == selector


# ===== Recipes and settings =====

class NoiseSpec(BaseModel):
    """Noise recipe. Serialized as {"kind", "factor", "seed", "path"}."""

    model_config = ConfigDict(populate_by_name=True, use_enum_values=True, validate_default=True)

    kind: NoiseKind = NoiseKind.GAUSSIAN
    noise_factor: float = Field(default=0.1, ge=0.0, alias="factor")
    seed: int = 0
    file_path: Optional[str] = Field(default=None, alias="path")

    @field_validator("noise_factor")
    @classmethod
    def _finite_factor(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("noise factor must be finite")
        return value

    @model_validator(mode="after")
    def _path_iff_file(self) -> "NoiseSpec":
        if self.kind == NoiseKind.FILE and not self.file_path:
            raise ValueError("kind 'file' requires a path")
        if self.kind != NoiseKind.FILE and self.file_path:
            raise ValueError(f"kind '{self.kind}' does not take a path")
        return self

    def to_recipe(self) -> dict:
        """JSON-ready recipe for manifests."""
        return self.model_dump(mode="json", by_alias=True)


class Architecture(BaseModel):
    """Layer widths and geometry of the convolutional autoencoder."""

    model_config = ConfigDict(use_enum_values=True, validate_default=True)

    encoder_filters: list[int] = Field(default_factory=lambda: [16, 8, 4, 2])
    decoder_filters: list[int] = Field(default_factory=lambda: [2, 4, 8, 16])
    kernel_size: int = 3
    stride: int = Field(default=2, ge=1)
    hidden_activation: ActivationKind = ActivationKind.RELU
    head_activation: ActivationKind = ActivationKind.SIGMOID
    dtype: str = "float32"

    @field_validator("kernel_size")
    @classmethod
    def _odd_kernel(cls, value: int) -> int:
        if value < 1 or value % 2 == 0:
            raise ValueError("kernel_size must be a positive odd number")
        return value

    @field_validator("dtype")
    @classmethod
    def _known_dtype(cls, value: str) -> str:
        if value not in ("float32", "float64"):
            raise ValueError("dtype must be float32 or float64")
        return value

    @model_validator(mode="after")
    def _symmetric(self) -> "Architecture":
        if not self.encoder_filters or not self.decoder_filters:
            raise ValueError("encoder and decoder need at least one layer")
        if len(self.encoder_filters) != len(self.decoder_filters):
            raise ValueError("decoder must undo every encoder downsampling step")
        if any(f < 1 for f in self.encoder_filters + self.decoder_filters):
            raise ValueError("filter counts must be positive")
        return self

    @classmethod
    def full(cls) -> "Architecture":
        """The full-scale 128/32/16/8 network."""
        return cls(encoder_filters=[128, 32, 16, 8], decoder_filters=[8, 16, 32, 128])

    @classmethod
    def desk(cls) -> "Architecture":
        """Reduced 16/8/4/2 network for laptop runs."""
        return cls()

    @property
    def downsampling_factor(self) -> int:
        return self.stride ** len(self.encoder_filters)


class TrainConfig(BaseModel):
    """Training hyperparameters."""

    model_config = ConfigDict(use_enum_values=True, validate_default=True)

    batch_size: int = Field(default=8, ge=1)
    epochs: int = Field(default=10, ge=1)
    seed: int = 0
    window_len: int = Field(default=1024, ge=16)
    shuffle_each_epoch: bool = True
    loss: LossKind = LossKind.BCE
    learning_rate: float = Field(default=0.001, gt=0.0)
    beta1: float = Field(default=0.9, ge=0.0, lt=1.0)
    beta2: float = Field(default=0.999, ge=0.0, lt=1.0)
    epsilon: float = Field(default=1e-8, gt=0.0)
    max_norm: float = Field(default=2.0, gt=0.0)
    checkpoint_every_epoch: bool = False

    @field_validator("window_len")
    @classmethod
    def _divisible(cls, value: int) -> int:
        if value % 16 != 0:
            raise ValueError("window_len must be divisible by 16")
        return value


class SyntheticMotorConfig(BaseModel):
    """Harmonic stand-in for a motor recording."""

    rotation_hz: float = Field(default=60.0, gt=0.0)
    num_harmonics: int = Field(default=3, ge=1)
    harmonic_decay: float = Field(default=0.5, gt=0.0, le=1.0)
    duration_s: float = Field(default=1.0, gt=0.0)
    sample_rate_hz: int = Field(default=50_000, gt=0)
    amplitude: float = Field(default=1.0, gt=0.0)
    seed: int = 0


# ===== Dataset records =====

class DatasetSplit(BaseModel):
    """Train/validation/test partition of a corpus."""

    seed: int
    train: list[str] = Field(default_factory=list)
    val: list[str] = Field(default_factory=list)
    test: list[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def _disjoint(self) -> "DatasetSplit":
        seen = set(self.train)
        for part in (self.val, self.test):
            if seen & set(part):
                raise ValueError("split lists must be disjoint")
            seen |= set(part)
        return self

    @property
    def counts(self) -> tuple[int, int, int]:
        return len(self.train), len(self.val), len(self.test)


class CorpusEntry(BaseModel):
    """One converted recording. Paths are relative to the manifest."""

    id: str
    category: Category
    path: str
    num_samples: int
    sample_rate_hz: int = 50_000

    model_config = ConfigDict(use_enum_values=True, validate_default=True)


class CorpusManifest(BaseModel):
    """Listing written by `prepare`."""

    version: int = 1
    mic_column: int = 7
    entries: list[CorpusEntry] = Field(default_factory=list)


class PairedEntry(BaseModel):
    """A clean recording and its corrupted twin. Paths relative to the manifest."""

    id: str
    category: Category
    clean: str
    noisy: str
    seed: int

    model_config = ConfigDict(use_enum_values=True, validate_default=True)


class PairedManifest(BaseModel):
    """Listing written by `corrupt`."""

    version: int = 1
    noise: NoiseSpec
    split_seed: int
    entries: list[PairedEntry] = Field(default_factory=list)

    def ids(self, category: str = "all") -> list[str]:
        """Ids picked by `category`: one category, a group such as
        "horizontal_misalignment", or "all"."""
        return [e.id for e in self.entries if category_matches(e.category, category)]

    def entry(self, sound_id: str) -> PairedEntry:
        for e in self.entries:
            if e.id == sound_id:
                return e
        raise KeyError(sound_id)


# ===== Training records =====

class LossRecord(BaseModel):
    """Losses of one completed epoch."""

    epoch: int
    train_loss: float = Field(ge=0.0)
    val_loss: Optional[float] = Field(default=None, ge=0.0)


class LossCurve(BaseModel):
    """Per-epoch training history."""

    records: list[LossRecord] = Field(default_factory=list)

    def add(self, epoch: int, train_loss: float, val_loss: Optional[float]) -> None:
        self.records.append(LossRecord(epoch=epoch, train_loss=train_loss, val_loss=val_loss))

    @property
    def train_losses(self) -> list[float]:
        return [r.train_loss for r in self.records]


class CheckpointTensor(BaseModel):
    """Location of one parameter tensor inside the sidecar blob (float32 elements)."""

    name: str
    shape: list[int]
    offset: int
    len: int


class CheckpointManifest(BaseModel):
    """JSON half of a checkpoint."""

    version: int = 1
    arch: Architecture
    seed: int
    blob: str
    tensors: list[CheckpointTensor] = Field(default_factory=list)


# ===== Evaluation records =====

class EvalEntry(BaseModel):
    """Per-sound result."""

    sound_id: str
    mse_denoised: float = Field(ge=0.0)
    mse_noisy_baseline: float = Field(ge=0.0)
    improvement_ratio: float = Field(ge=0.0)

    @classmethod
    def build(cls, sound_id: str, mse_denoised: float, mse_noisy_baseline: float) -> "EvalEntry":
        return cls(
            sound_id=sound_id,
            mse_denoised=mse_denoised,
            mse_noisy_baseline=mse_noisy_baseline,
            improvement_ratio=mse_noisy_baseline / max(mse_denoised, 1e-12),
        )


class EvalSummary(BaseModel):
    """Summary statistics of mse_denoised."""

    min: float
    max: float
    mean: float
    median: float


class EvalReport(BaseModel):
    """Per-sound MSE over a test set."""

    version: int = 1
    category: str
    noise_kind: str
    entries: list[EvalEntry]
    summary: EvalSummary

    @classmethod
    def from_entries(cls, entries: list[EvalEntry], category: str, noise_kind: str) -> "EvalReport":
        if not entries:
            raise ValueError("a report needs at least one entry")
        values = [e.mse_denoised for e in entries]
        summary = EvalSummary(
            min=min(values),
            max=max(values),
            mean=math.fsum(values) / len(values),
            median=median(values),
        )
        return cls(category=category, noise_kind=noise_kind, entries=entries, summary=summary)

    @property
    def median_improvement(self) -> float:
        return median(e.improvement_ratio for e in self.entries)

    def summary_line(self) -> str:
        """`category noise_kind n min max mean median` for stdout."""
        s = self.summary
        return (
            f"{self.category} {self.noise_kind} {len(self.entries)} "
            f"{s.min:.6g} {s.max:.6g} {s.mean:.6g} {s.median:.6g}"
        )
