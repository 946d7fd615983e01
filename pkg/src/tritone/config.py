"""Flat ``key = value`` parameter files and their merge onto the defaults.

The format is deliberately plain: one assignment per line, ``#`` starts a
comment, blank lines are ignored. Recognized keys are the nine membership
constants (``a_dr``, ``b_dr``, ``a_g``, ``b_g``, ``a_br``, ``b_br``,
``v_dr``, ``v_g``, ``v_br``) and the three smoothing knobs
(``sigma_spatial``, ``sigma_range``, ``radius``). Unknown keys are errors.
"""

from __future__ import annotations

from dataclasses import replace
from pathlib import Path
from typing import Mapping

from tritone.bilateral import DEFAULT_BILATERAL, BilateralParams
from tritone.fuzzy import DEFAULT_MEMBERSHIP, MembershipParams

__all__ = [
    "MEMBERSHIP_KEYS",
    "BILATERAL_KEYS",
    "PARAM_KEYS",
    "parse_kv_text",
    "coerce_param_values",
    "load_params_text",
    "load_params_file",
    "membership_from_values",
    "bilateral_from_values",
]

MEMBERSHIP_KEYS = ("a_dr", "b_dr", "a_g", "b_g", "a_br", "b_br", "v_dr", "v_g", "v_br")
BILATERAL_KEYS = ("sigma_spatial", "sigma_range", "radius")
PARAM_KEYS = MEMBERSHIP_KEYS + BILATERAL_KEYS


def parse_kv_text(text: str) -> dict[str, str]:
    """Parse ``key = value`` lines into a dict, rejecting malformed input."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not sep or not key or not value:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        if key in values:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        values[key] = value
    return values


def coerce_param_values(raw: Mapping[str, str]) -> dict[str, float | int]:
    """Schema-check raw key/value strings and convert them to numbers."""
    unknown = sorted(set(raw) - set(PARAM_KEYS))
    if unknown:
        raise ValueError(f"unknown parameter keys: {', '.join(unknown)}")
    values: dict[str, float | int] = {}
    for key, text_value in raw.items():
        try:
            number = float(text_value)
        except ValueError:
            raise ValueError(f"{key}: not a number: {text_value!r}") from None
        if key == "radius":
            if not number.is_integer():
                raise ValueError(f"radius must be an integer, got {text_value}")
            values[key] = int(number)
        else:
            values[key] = number
    return values


def load_params_text(text: str) -> dict[str, float | int]:
    """Parse and schema-check a parameter file body."""
    return coerce_param_values(parse_kv_text(text))


def load_params_file(path) -> dict[str, float | int]:
    """Load a parameter file; errors carry the file name."""
    p = Path(path)
    try:
        return load_params_text(p.read_text(encoding="utf-8"))
    except ValueError as exc:
        raise ValueError(f"{p}: {exc}") from None


def membership_from_values(values: Mapping[str, float]) -> MembershipParams:
    """Overlay any membership keys in ``values`` onto the defaults."""
    overrides = {k: values[k] for k in MEMBERSHIP_KEYS if k in values}
    return replace(DEFAULT_MEMBERSHIP, **overrides)


def bilateral_from_values(values: Mapping[str, float]) -> BilateralParams:
    """Overlay any smoothing keys in ``values`` onto the defaults."""
    overrides = {k: values[k] for k in BILATERAL_KEYS if k in values}
    return replace(DEFAULT_BILATERAL, **overrides)
