"""Tests for the motor-sound denoiser."""
