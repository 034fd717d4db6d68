"""Utility functions for the Rigid Design Toolkit: scalar codec and JSON helpers."""

import json
import math
from fractions import Fraction
from typing import Any, Union

from .errors import (
    RigidDesignError,
    DimensionMismatchError,
    ConfigurationFormatError,
    UnsupportedParameterError,
    LayoutMismatchError,
    PreconditionError,
    NotADesignError,
)

Scalar = Union[Fraction, float]


def parse_scalar(value: Any, exact: bool, field: str = None) -> Scalar:
    """
    Parse one coordinate or coefficient.

    Exact mode accepts integers, Fractions and "p/q" strings; float mode
    accepts integers and floats. Anything else counts as mixing modes.

    Args:
        value: Raw value from a document or caller
        exact: True for EXACT mode, False for FLOAT mode
        field: Field name used in the error message

    Returns:
        Fraction (exact) or float
    """
    if isinstance(value, bool):
        raise ConfigurationFormatError(f"boolean {value!r} is not a coordinate", field)

    if exact:
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if isinstance(value, str):
            try:
                return Fraction(value.strip())
            except (ValueError, ZeroDivisionError) as e:
                raise ConfigurationFormatError(f"cannot parse {value!r} as a rational: {e}", field)
        raise ConfigurationFormatError(
            f"exact mode expects 'p/q' strings, got {type(value).__name__} {value!r}", field
        )

    if isinstance(value, (int, float)) and not isinstance(value, Fraction):
        result = float(value)
        if not math.isfinite(result):
            raise ConfigurationFormatError(f"non-finite value {value!r}", field)
        return result
    raise ConfigurationFormatError(
        f"float mode expects numbers, got {type(value).__name__} {value!r}", field
    )


def format_scalar(value: Any) -> Any:
    """
    Render a scalar for JSON output.

    Fractions become "p/q" strings ("p" when integral); floats stay numbers.
    """
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (bool, int)):
        return value
    return float(value)


def parse_json_document(text: str, source: str = "document") -> dict:
    """
    Parse a JSON object with error handling.

    Args:
        text: Raw document text
        source: Name used in diagnostics (usually the file path)

    Returns:
        Parsed dict
    """
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigurationFormatError(f"invalid JSON at line {e.lineno}: {e.msg}", source)

    if not isinstance(payload, dict):
        raise ConfigurationFormatError("top-level JSON value must be an object", source)

    return payload


def dump_json(payload: Any, lines: bool = False) -> str:
    """
    Serialize deterministically: fixed key order, no timestamps.

    Args:
        payload: JSON-ready structure
        lines: Compact single-line form for JSON-lines output
    """
    if lines:
        return json.dumps(payload, separators=(",", ":"))
    return json.dumps(payload, indent=2)


__all__ = [
    "Scalar",
    "parse_scalar",
    "format_scalar",
    "parse_json_document",
    "dump_json",
    "RigidDesignError",
    "DimensionMismatchError",
    "ConfigurationFormatError",
    "UnsupportedParameterError",
    "LayoutMismatchError",
    "PreconditionError",
    "NotADesignError",
]
