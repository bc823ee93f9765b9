"""Result serialization: CSV, JSON, and self-contained SVG.

All numeric payloads are written with 12 significant digits, and JSON
data values are rounded to the same 12 digits, so the two formats carry
identical numbers.  File writes go through a temp file and an atomic
rename.
"""

from __future__ import annotations

import json
import math
import os
import sys
import tempfile
from typing import Iterable, Sequence

__all__ = [
    "format_number",
    "render_csv",
    "render_json",
    "round_floats",
    "svg_curves",
    "svg_region",
    "write_text",
]

SIG_DIGITS = 12


def format_number(value) -> str:
    """Fixed 12-significant-digit rendering used by every CSV cell."""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return f"{value:.{SIG_DIGITS}g}"
    return str(value)


def render_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    """CSV text with a header row, LF endings, 12-significant-digit floats."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_number(v) for v in row))
    return "\n".join(lines) + "\n"


def round_floats(value):
    """Recursively round floats to 12 significant digits for JSON data."""
    if isinstance(value, bool):
        return value
    if isinstance(value, float):
        if math.isfinite(value):
            return float(f"{value:.{SIG_DIGITS}g}")
        return value
    if isinstance(value, dict):
        return {k: round_floats(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [round_floats(v) for v in value]
    return value


def render_json(meta: dict, data) -> str:
    """JSON document with a meta block and 12-digit-rounded data."""
    doc = {"meta": meta, "data": round_floats(data)}
    return json.dumps(doc, indent=2) + "\n"


def write_text(path: str, text: str) -> None:
    """Write to ``path`` atomically; ``-`` writes to stdout."""
    if path == "-":
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ranklash-")
    except OSError as exc:
        raise OSError(f"cannot write {path!r}: {exc.strerror or exc}") from None
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------------------
# SVG rendering.  Plots are self-contained: inline styling, no external
# references.

_WIDTH = 720
_HEIGHT = 540
_MARGIN_L = 70
_MARGIN_R = 20
_MARGIN_T = 20
_MARGIN_B = 50


def _x_map(lo: float, hi: float):
    span = _WIDTH - _MARGIN_L - _MARGIN_R

    def to_x(v: float) -> float:
        return _MARGIN_L + (v - lo) / (hi - lo) * span

    return to_x


def _y_map(lo: float, hi: float):
    span = _HEIGHT - _MARGIN_T - _MARGIN_B

    def to_y(v: float) -> float:
        return _HEIGHT - _MARGIN_B - (v - lo) / (hi - lo) * span

    return to_y


def _ticks(lo: float, hi: float, step: float = 0.1) -> list[float]:
    """Tick positions at multiples of ``step`` covering [lo, hi]."""
    first = math.ceil(lo / step - 1e-9)
    last = math.floor(hi / step + 1e-9)
    return [round(i * step, 10) for i in range(first, last + 1)]


def _axes(to_x, to_y, x_lo, x_hi, y_lo, y_hi, x_label: str, y_label: str) -> list[str]:
    parts = []
    x0, x1 = to_x(x_lo), to_x(x_hi)
    y0, y1 = to_y(y_lo), to_y(y_hi)
    parts.append(
        f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y0:.2f}" stroke="black"/>'
    )
    parts.append(
        f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x0:.2f}" y2="{y1:.2f}" stroke="black"/>'
    )
    for tx in _ticks(x_lo, x_hi):
        px = to_x(tx)
        parts.append(
            f'<line x1="{px:.2f}" y1="{y0:.2f}" x2="{px:.2f}" y2="{y0 + 5:.2f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{px:.2f}" y="{y0 + 18:.2f}" font-size="11" text-anchor="middle">{tx:g}</text>'
        )
    for ty in _ticks(y_lo, y_hi):
        py = to_y(ty)
        parts.append(
            f'<line x1="{x0 - 5:.2f}" y1="{py:.2f}" x2="{x0:.2f}" y2="{py:.2f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{x0 - 8:.2f}" y="{py + 4:.2f}" font-size="11" text-anchor="end">{ty:g}</text>'
        )
    parts.append(
        f'<text x="{(x0 + x1) / 2:.2f}" y="{_HEIGHT - 12}" font-size="13" '
        f'text-anchor="middle">{x_label}</text>'
    )
    parts.append(
        f'<text x="16" y="{(y0 + y1) / 2:.2f}" font-size="13" text-anchor="middle" '
        f'transform="rotate(-90 16 {(y0 + y1) / 2:.2f})">{y_label}</text>'
    )
    return parts


def _document(body: list[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">'
    )
    return "\n".join([head, '<rect width="100%" height="100%" fill="white"/>'] + body + ["</svg>"]) + "\n"


def svg_region(grid) -> str:
    """Cooperation region as filled cell rectangles plus the boundary line.

    Contiguous cooperating cells in each p column are merged into a
    single rectangle to keep the file small.
    """
    from .sweep import boundary_extract

    p_lo, p_hi, n_p = grid.spec.p_axis
    d_lo, d_hi, n_d = grid.spec.delta_axis
    to_x = _x_map(p_lo, p_hi)
    to_y = _y_map(d_lo, d_hi)
    p_width = (p_hi - p_lo) / n_p
    d_width = (d_hi - d_lo) / n_d
    body = []
    for i in range(n_p):
        col = grid.cells[i]
        x_left = to_x(p_lo + i * p_width)
        x_right = to_x(p_lo + (i + 1) * p_width)
        j = 0
        while j < n_d:
            if col[j]:
                start = j
                while j < n_d and col[j]:
                    j += 1
                y_top = to_y(d_lo + j * d_width)
                y_bottom = to_y(d_lo + start * d_width)
                body.append(
                    f'<rect x="{x_left:.2f}" y="{y_top:.2f}" '
                    f'width="{x_right - x_left:.2f}" height="{y_bottom - y_top:.2f}" '
                    'fill="#7fbf7f"/>'
                )
            else:
                j += 1
    boundary = boundary_extract(grid)
    points = " ".join(f"{to_x(b.p):.2f},{to_y(b.delta_star):.2f}" for b in boundary)
    body.append(f'<polyline points="{points}" fill="none" stroke="#333333" stroke-width="1.5"/>')
    body.extend(_axes(to_x, to_y, p_lo, p_hi, d_lo, d_hi, "attack success probability p", "discount factor delta"))
    return _document(body)


def svg_curves(samples) -> str:
    """Cooperation and defection value curves over p."""
    xs = [s.p for s in samples]
    ys = [v for s in samples for v in (s.v_c, s.v_d)]
    x_lo, x_hi = min(xs), max(xs)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    y_lo = math.floor(min(ys) / 0.1) * 0.1
    y_hi = math.ceil(max(ys) / 0.1) * 0.1
    if y_hi == y_lo:
        y_hi = y_lo + 0.1
    to_x = _x_map(x_lo, x_hi)
    to_y = _y_map(y_lo, y_hi)

    def path(get) -> str:
        return " ".join(
            f"{'M' if i == 0 else 'L'} {to_x(s.p):.2f} {to_y(get(s)):.2f}"
            for i, s in enumerate(samples)
        )

    body = [
        f'<path d="{path(lambda s: s.v_c)}" fill="none" stroke="#1f77b4" stroke-width="1.5"/>',
        f'<path d="{path(lambda s: s.v_d)}" fill="none" stroke="#d62728" stroke-width="1.5"/>',
        f'<text x="{_WIDTH - 150}" y="30" font-size="12" fill="#1f77b4">cooperation value</text>',
        f'<text x="{_WIDTH - 150}" y="46" font-size="12" fill="#d62728">defection value</text>',
    ]
    body.extend(_axes(to_x, to_y, x_lo, x_hi, y_lo, y_hi, "attack success probability p", "discounted value"))
    return _document(body)
