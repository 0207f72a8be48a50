"""Small shared helpers."""

from __future__ import annotations


def format_so(value: float) -> str:
    """Render a score for output with binary float noise suppressed.

    Twelve significant digits: enough to round-trip any humanly meaningful
    score while printing 1.87 * 1.25 as "2.3375" rather than
    "2.3375000000000004". Output is a pure function of the value, so files
    built from it are byte-stable across runs and platforms.
    """
    value = float(value)
    if value == 0:
        value = 0.0  # normalize -0.0
    return format(value, ".12g")
