"""Deterministic SVG scatter plots of labeled 2D points."""

import colorsys

import numpy as np

from .errors import IoError, Unsupported

__all__ = ["PALETTE", "NOISE_COLOR", "label_color", "render_svg_scatter", "emit_svg_scatter"]

PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
    "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#393b79",
)
NOISE_COLOR = "#9e9e9e"


def label_color(label):
    if label == 0:
        return NOISE_COLOR
    if label <= len(PALETTE):
        return PALETTE[label - 1]
    # beyond the palette: golden-angle hues stay distinct and deterministic
    hue = ((label - len(PALETTE)) * 0.61803398875) % 1.0
    r, g, b = colorsys.hsv_to_rgb(hue, 0.65, 0.8)
    return "#{:02x}{:02x}{:02x}".format(round(r * 255), round(g * 255), round(b * 255))


def render_svg_scatter(points, labels, width=640, height=640, radius=3.0, title=None):
    points = np.asarray(points, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if points.ndim != 2 or points.shape[1] != 2:
        raise Unsupported("scatter plots are only drawn for 2D data")
    lo = points.min(axis=0)
    hi = points.max(axis=0)
    span = np.where(hi > lo, hi - lo, 1.0)
    lo = lo - 0.05 * span
    span = span * 1.1

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    if title:
        esc = str(title).replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        out.append(f"<title>{esc}</title>")
    for (x, y), lab in zip(points.tolist(), labels.tolist()):
        cx = (x - lo[0]) / span[0] * width
        cy = height - (y - lo[1]) / span[1] * height
        out.append(f'<circle cx="{cx:.3f}" cy="{cy:.3f}" r="{radius:g}" fill="{label_color(lab)}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg_scatter(path, points, labels, **kwargs):
    text = render_svg_scatter(points, labels, **kwargs)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
