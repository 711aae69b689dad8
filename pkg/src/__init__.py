"""
Short-pulse / sine-Gordon toolkit
Pseudo-spectral evolution, hodograph transform and global well-posedness certificates.
"""

__version__ = "1.0.0"
