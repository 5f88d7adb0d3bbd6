"""Critical speeds and traveling-front profiles for reaction-diffusion
equations driven by the Born-Infeld (Minkowski) operator."""

from ._core import (
    classify,
    bounds,
    speed,
    profile,
    linear_critical_speed,
    limit_profile,
    classify_regime,
    sweep,
    golden_table,
    validate,
    __version__,
)

__all__ = [
    "classify",
    "bounds",
    "speed",
    "profile",
    "linear_critical_speed",
    "limit_profile",
    "classify_regime",
    "sweep",
    "golden_table",
    "validate",
    "__version__",
]
