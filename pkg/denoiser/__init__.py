"""
Motor Sound Denoiser
A toolkit that corrupts induction-motor recordings with synthetic noise and
trains a 1D convolutional denoising autoencoder to remove it.
"""

__version__ = "1.0.0"
__author__ = "Motor Denoise Contributors"
