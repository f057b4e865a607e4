"""Validation utilities for spectrum and column documents (importable by tests)."""

from __future__ import annotations

import math
from numbers import Real
from typing import Any

ALLOWED_SPECTRUM_KEYS = {"modes", "weights", "q", "family", "params", "columns"}


def _is_number(value: Any) -> bool:
    return isinstance(value, Real) and not isinstance(value, bool)


def _as_pair(entry: Any) -> tuple[float, float] | None:
    """Accept [re, im] pairs or a bare real number."""
    if _is_number(entry):
        return float(entry), 0.0
    if isinstance(entry, list | tuple) and len(entry) == 2:
        if all(_is_number(v) for v in entry):
            return float(entry[0]), float(entry[1])
    return None


def validate_spectrum_document(doc: Any) -> list[str]:
    """Validate a spectrum document.

    Returns a list of error strings; empty list means OK. Mode numbers in
    messages are 1-based.
    """
    errors: list[str] = []
    if not isinstance(doc, dict):
        return ["spectrum: document is not a mapping"]

    unknown = sorted(set(doc) - ALLOWED_SPECTRUM_KEYS)
    if unknown:
        errors.append(f"spectrum: unknown keys {unknown}")

    modes = doc.get("modes")
    if not isinstance(modes, list) or not modes:
        errors.append("spectrum: missing or empty 'modes' list")
        return errors

    for n, entry in enumerate(modes, start=1):
        pair = _as_pair(entry)
        if pair is None:
            errors.append(f"mode {n} is not a [re, im] pair")
            continue
        re, im = pair
        if not (math.isfinite(re) and math.isfinite(im)):
            errors.append(f"mode {n} is not finite")
        elif re >= 0:
            errors.append(f"mode {n} has nonnegative real part")

    weights = doc.get("weights")
    if weights is not None:
        if not isinstance(weights, list) or len(weights) != len(modes):
            errors.append("spectrum: 'weights' must list one mass per mode")
        else:
            for n, w in enumerate(weights, start=1):
                if not _is_number(w) or not w > 0:
                    errors.append(f"weight {n} is not positive")

    q = doc.get("q")
    if q is not None and (not _is_number(q) or q < 1):
        errors.append("spectrum: 'q' must be a number >= 1")

    params = doc.get("params")
    if params is not None and (
        not isinstance(params, list) or not all(_is_number(p) for p in params)
    ):
        errors.append("spectrum: 'params' must be a list of numbers")

    return errors


def validate_columns_document(doc: Any, n_modes: int) -> list[str]:
    """Validate a column-family document against a spectrum of n_modes modes."""
    if not isinstance(doc, dict):
        return ["columns: document is not a mapping"]
    columns = doc.get("columns")
    if not isinstance(columns, list) or not columns:
        return ["columns: missing or empty 'columns' list"]

    errors: list[str] = []
    if len(columns) != n_modes:
        errors.append(f"columns: expected {n_modes} columns, found {len(columns)}")
    dims = set()
    for n, col in enumerate(columns, start=1):
        if not isinstance(col, list) or not col:
            errors.append(f"column {n} is not a nonempty list")
            continue
        if any(_as_pair(v) is None for v in col):
            errors.append(f"column {n} has non-numeric entries")
        dims.add(len(col))
    if len(dims) > 1:
        errors.append("columns: columns have different lengths")
    return errors
