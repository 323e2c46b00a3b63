"""Global logarithm-base configuration.

Entropies and negativities are reported in bits (base 2) by default.
Switching to natural log rescales every reported value by ln 2; spectra
are never affected.
"""
from __future__ import annotations

import math

_LOG_BASE: float = 2.0


def set_log_base(base) -> None:
    """Set the global log base. Accepts 2, "2", "e" or math.e."""
    global _LOG_BASE
    if base in (2, 2.0, "2"):
        _LOG_BASE = 2.0
    elif base in ("e", math.e):
        _LOG_BASE = math.e
    else:
        raise ValueError(f"log base must be 2 or e, got {base!r}")


def get_log_base() -> float:
    return _LOG_BASE


def resolve_base(base) -> float:
    """Return the explicit base if given, else the global one."""
    if base is None:
        return _LOG_BASE
    if base in (2, 2.0, "2"):
        return 2.0
    if base in ("e", math.e):
        return math.e
    raise ValueError(f"log base must be 2 or e, got {base!r}")


def log2_to_base(base: float) -> float:
    """Conversion factor from bits to the given base: log_b(2)."""
    return 1.0 if base == 2.0 else math.log(2.0)
