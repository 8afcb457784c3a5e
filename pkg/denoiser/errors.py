"""
Exception hierarchy for the denoiser.

Every error raised on purpose by the package derives from DenoiserError so the
CLI can map it onto a stable exit code.
"""

from typing import Optional


class DenoiserError(Exception):
    """Base exception for denoiser errors."""
    pass


# ===== Signals =====

class InvalidWaveformError(DenoiserError):
    """Raised when samples are empty, non-finite, or the rate is not positive."""
    pass


class ConstantSignalError(DenoiserError):
    """Raised when min-max normalization is undefined (max == min)."""
    pass


class SignalTooShortError(DenoiserError):
    """Raised when a signal is shorter than the analysis window."""
    pass


class IoFailureError(DenoiserError):
    """Raised when a file cannot be read or written."""
    pass


class WavFormatError(IoFailureError):
    """Raised for WAV encodings other than PCM16 or float32."""
    pass


# ===== Dataset =====

class DatasetError(DenoiserError):
    """Base exception for dataset ingestion."""
    pass


class MalformedRowError(DatasetError):
    """Raised when a CSV row has the wrong field count or a non-numeric token."""

    def __init__(self, path: str, line: int, reason: str):
        self.path = path
        self.line = line
        self.reason = reason
        super().__init__(f"{path}: line {line}: {reason}")


class EmptyFileError(DatasetError):
    """Raised when a CSV recording has no rows."""
    pass


class ColumnOutOfRangeError(DatasetError):
    """Raised when a channel index is outside the recording."""
    pass


class EmptyCorpusError(DatasetError):
    """Raised when there is nothing to split."""
    pass


class AliasedHarmonicError(DatasetError):
    """Raised when a synthetic harmonic would land above Nyquist."""
    pass


class FetchError(DatasetError):
    """Base exception for dataset download failures."""
    pass


class NetworkFailureError(FetchError):
    """Raised when the archive cannot be downloaded."""
    pass


class ChecksumMismatchError(FetchError):
    """Raised when the archive digest differs from the expected one."""
    pass


class ExtractionFailureError(FetchError):
    """Raised when the archive cannot be unpacked."""
    pass


# ===== Noise =====

class NoiseError(DenoiserError):
    """Base exception for noise synthesis and mixing."""
    pass


class UnsupportedRateError(NoiseError):
    """Raised when a noise file rate is not an integer multiple of the target."""
    pass


class LengthMismatchError(NoiseError):
    """Raised when two signals that must align have different lengths."""
    pass


class RateMismatchError(NoiseError):
    """Raised when two signals that must align have different sample rates."""
    pass


# ===== Network =====

class ModelError(DenoiserError):
    """Base exception for the neural network core."""
    pass


class ChannelMismatchError(ModelError):
    """Raised when input channels do not match a layer."""
    pass


class ShapeMismatchError(ModelError):
    """Raised when arrays that must share a shape do not."""
    pass


class LengthNotDivisibleError(ModelError):
    """Raised when an input length is not a multiple of the downsampling factor."""
    pass


class StaleCacheError(ModelError):
    """Raised when a forward cache outlived a parameter update."""
    pass


class CheckpointMismatchError(ModelError):
    """Raised when a checkpoint does not match its declared architecture."""
    pass


# ===== Training / evaluation =====

class TrainingError(DenoiserError):
    """Base exception for training."""
    pass


class EmptyTrainSetError(TrainingError):
    """Raised when fit() receives no training pairs."""
    pass


class NonFiniteLossError(TrainingError):
    """Raised when the loss diverges."""

    def __init__(self, epoch: int, batch: int, value: Optional[float] = None):
        self.epoch = epoch
        self.batch = batch
        self.value = value
        super().__init__(f"Non-finite loss {value} at epoch {epoch}, batch {batch}")


class EvaluationError(DenoiserError):
    """Base exception for evaluation."""
    pass


class EmptyTestSetError(EvaluationError):
    """Raised when there is nothing to evaluate."""
    pass


class BatchFailureError(DenoiserError):
    """Raised when a per-file stage finished with one or more failed files."""

    def __init__(self, stage: str, failures: list[tuple[str, str]]):
        self.stage = stage
        self.failures = failures
        names = ", ".join(name for name, _ in failures[:5])
        more = f" and {len(failures) - 5} more" if len(failures) > 5 else ""
        super().__init__(f"{stage}: {len(failures)} file(s) failed: {names}{more}")
