"""CSV reading and writing for point sets with optional labels."""

import csv

import numpy as np

from .errors import IoError, ParseError, ShapeError

__all__ = ["read_csv", "write_csv"]

_HEADERS = {
    ("x", "y"): (2, False),
    ("x", "y", "z"): (3, False),
    ("x", "y", "label"): (2, True),
    ("x", "y", "z", "label"): (3, True),
}


def _parse_float(text, line):
    try:
        return float(text)
    except ValueError:
        raise ParseError(f"not a number: {text!r}", line) from None


def _parse_label(text, line):
    try:
        val = float(text)
    except ValueError:
        raise ParseError(f"not a label: {text!r}", line) from None
    if not val.is_integer() or val < 0:
        raise ParseError(f"label must be a non-negative integer, got {text!r}", line)
    return int(val)


def _is_numeric(row):
    try:
        for cell in row:
            float(cell)
    except ValueError:
        return False
    return True


def read_csv(path):
    """Read ``x,y[,z][,label]`` rows.

    A header is recognized case-insensitively. Without one, 2 or 3 columns
    are coordinates and 4 columns are ``x,y,z,label``. Returns
    ``(points, labels)`` where ``labels`` is ``None`` if absent.
    """
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = [(i, [c.strip() for c in row])
                    for i, row in enumerate(csv.reader(fh), start=1)
                    if row and any(c.strip() for c in row)]
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise ParseError("file is empty")

    first_line, first = rows[0]
    if _is_numeric(first):
        ncol = len(first)
        if ncol not in (2, 3, 4):
            raise ShapeError(f"line {first_line}: expected 2 to 4 columns, got {ncol}")
        dim, has_label = (3, True) if ncol == 4 else (ncol, False)
    else:
        key = tuple(c.lower() for c in first)
        if key not in _HEADERS:
            raise ParseError(f"unrecognized header {','.join(first)!r}", first_line)
        dim, has_label = _HEADERS[key]
        ncol = len(key)
        rows = rows[1:]

    pts, labels = [], []
    for line, row in rows:
        if len(row) != ncol:
            raise ShapeError(f"line {line}: expected {ncol} columns, got {len(row)}")
        pts.append([_parse_float(c, line) for c in row[:dim]])
        if has_label:
            labels.append(_parse_label(row[dim], line))
    if not pts:
        raise ParseError("no data rows")
    points = np.array(pts, dtype=np.float64)
    return points, (np.array(labels, dtype=np.int64) if has_label else None)


def write_csv(path, points, labels):
    points = np.asarray(points, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if points.shape[0] != labels.shape[0]:
        raise ShapeError(f"{points.shape[0]} points but {labels.shape[0]} labels")
    header = ["x", "y", "z"][:points.shape[1]] + ["label"]
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            for p, lab in zip(points.tolist(), labels.tolist()):
                # repr of a Python float is the shortest exact round-trip form
                writer.writerow([repr(v) for v in p] + [lab])
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
