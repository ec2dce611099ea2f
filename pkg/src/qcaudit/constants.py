"""Physical constants and astronomical parameters.

Every numerical module obtains constants from here. Values are standard
reference data (CODATA-style, rounded as commonly tabulated); the only
figure taken from the source text is the fixed Sun-Jupiter distance
``r_SJ = 7.88e11 m``.

Override files are flat ``key=value`` text, one entry per line, ``#``
starting a comment line::

    # heavier earth
    M_earth=5.98e24
"""
from __future__ import annotations

import dataclasses
import hashlib
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigurationError, ValidationError

__all__ = ["PhysicalConstants", "default_constants", "load_overrides", "fingerprint"]

_HBAR = 1.0546e-34


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = _HBAR  # J s
    h: float = 2.0 * math.pi * _HBAR  # J s
    G: float = 6.674e-11  # m^3 kg^-1 s^-2
    c_light: float = 2.998e8  # m/s
    k_B: float = 1.381e-23  # J/K
    eV: float = 1.602e-19  # J
    M_earth: float = 5.972e24  # kg
    M_sun: float = 1.989e30  # kg
    M_jupiter: float = 1.898e27  # kg
    r_SJ: float = 7.88e11  # m, Sun-Jupiter distance, held fixed
    AU: float = 1.496e11  # m
    v_earth: float = 2.978e4  # m/s, mean orbital speed

    def __post_init__(self) -> None:
        for f in dataclasses.fields(self):
            value = getattr(self, f.name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ValidationError(f"constant {f.name} must be a positive finite number, got {value!r}")
        if abs(self.h / (2.0 * math.pi * self.hbar) - 1.0) > 1e-12:
            raise ValidationError("h must equal 2*pi*hbar to relative 1e-12")


def default_constants() -> PhysicalConstants:
    return PhysicalConstants()


def _field_names() -> set[str]:
    return {f.name for f in dataclasses.fields(PhysicalConstants)}


def load_overrides(path: str | Path) -> PhysicalConstants:
    """Return the default constants with fields replaced from ``path``.

    Overriding ``hbar`` without ``h`` (or vice versa) keeps the pair
    consistent by deriving the missing one.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"cannot read constants file {path}: {exc}") from exc

    names = _field_names()
    updates: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise ValidationError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        if key not in names:
            raise ValidationError(f"{path}:{lineno}: unknown constant {key!r}")
        try:
            number = float(value.strip())
        except ValueError as exc:
            raise ValidationError(f"{path}:{lineno}: {value.strip()!r} is not a decimal number") from exc
        if not (math.isfinite(number) and number > 0):
            raise ValidationError(f"{path}:{lineno}: {key} must be positive, got {number!r}")
        updates[key] = number

    if "hbar" in updates and "h" not in updates:
        updates["h"] = 2.0 * math.pi * updates["hbar"]
    elif "h" in updates and "hbar" not in updates:
        updates["hbar"] = updates["h"] / (2.0 * math.pi)
    return dataclasses.replace(default_constants(), **updates)


def fingerprint(constants: PhysicalConstants) -> str:
    """Stable short hash of all constant values."""
    payload = "\n".join(f"{f.name}={getattr(constants, f.name)!r}" for f in dataclasses.fields(constants))
    return hashlib.sha256(payload.encode("ascii")).hexdigest()[:16]
