"""
Noise synthesis and additive corruption.
"""

from denoiser.noise.generators import blue_noise, gaussian_noise, load_noise
from denoiser.noise.mixing import corrupt, corrupt_with_spec, derive_file_seed, make_noise

__all__ = [
    "gaussian_noise",
    "blue_noise",
    "load_noise",
    "corrupt",
    "corrupt_with_spec",
    "derive_file_seed",
    "make_noise",
]
