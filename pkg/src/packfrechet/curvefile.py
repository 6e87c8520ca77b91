"""Plain-text curve files.

One vertex per line, coordinates separated by commas and/or whitespace.
Everything after ``#`` is a comment.  The first vertex fixes the
dimension.
"""

from __future__ import annotations

import re
import sys

from .errors import ParseError, UsageError
from .geometry import Curve

__all__ = ["format_curve", "parse_curve_file", "parse_curve_text", "write_curve_file"]

_SEP = re.compile(r"[,\s]+")


def parse_curve_text(text, path=None):
    rows = []
    dim = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = [f for f in _SEP.split(line) if f]
        try:
            coords = [float(f) for f in fields]
        except ValueError:
            raise ParseError(f"not a number in {line!r}", path, lineno) from None
        if dim is None:
            dim = len(coords)
        elif len(coords) != dim:
            raise ParseError(f"expected {dim} coordinates, got {len(coords)}", path, lineno)
        rows.append(coords)
    if not rows:
        raise ParseError("empty curve", path)
    try:
        return Curve(rows)
    except UsageError as exc:
        raise ParseError(str(exc), path) from None


def parse_curve_file(path):
    """Read and normalize a curve file (consecutive duplicates collapsed)."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(exc.strerror or str(exc), path) from None
    except UnicodeDecodeError:
        raise ParseError("file is not valid UTF-8", path) from None
    return parse_curve_text(text, path)


def format_curve(curve):
    # 17 significant digits round-trip IEEE doubles exactly
    return "".join(" ".join(format(x, ".17g") for x in v) + "\n" for v in curve.vertices)


def write_curve_file(curve, path=None):
    text = format_curve(curve)
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
