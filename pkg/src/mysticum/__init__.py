"""Exact rational engine for mystic hexagon and octagon configurations."""

__version__ = "0.1.0"

from .decomposition import ResidualCertificate, recording, residual_curve  # noqa: E402
from .projective import Conic, HLine, HPoint  # noqa: E402
from .scene import Scene, SceneFormatError  # noqa: E402

__all__ = ["Conic", "HLine", "HPoint", "ResidualCertificate", "Scene", "SceneFormatError",
           "__version__", "recording", "residual_curve"]
