"""Minimal deterministic SVG rendering of notched box plots.

Fixed 640x400 canvas, boxes in input order, coordinates rounded to two
decimals: identical input must produce identical bytes. Rendering sticks to
rect/line/circle/text primitives; this is plot data made visible, not a
charting library.
"""

from __future__ import annotations

from curricomp.stats import SampleSummary

_WIDTH = 640.0
_HEIGHT = 400.0
_LEFT = 50.0
_RIGHT = 20.0
_TOP = 20.0
_BOTTOM = 40.0


def _n(x: float) -> str:
    return f"{x:.2f}"


def render_boxplot_svg(tiers: list[tuple[str, SampleSummary]]) -> str:
    """One notched box per (label, summary), left to right in input order."""
    if not tiers:
        raise ValueError("nothing to draw: no tiers given")
    lo = min(
        min((s.whisker_low, *s.outliers)) if s.outliers else s.whisker_low
        for _, s in tiers
    )
    hi = max(
        max((s.whisker_high, *s.outliers)) if s.outliers else s.whisker_high
        for _, s in tiers
    )
    pad = 0.05 * (hi - lo) if hi > lo else 1.0
    lo -= pad
    hi += pad

    plot_w = _WIDTH - _LEFT - _RIGHT
    plot_h = _HEIGHT - _TOP - _BOTTOM
    x_axis_y = _HEIGHT - _BOTTOM

    def y(v: float) -> float:
        return x_axis_y - (v - lo) / (hi - lo) * plot_h

    parts: list[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH:.0f}" '
        f'height="{_HEIGHT:.0f}" viewBox="0 0 {_WIDTH:.0f} {_HEIGHT:.0f}" '
        f'font-family="sans-serif" font-size="12">'
    ]
    parts.append(
        f'<line x1="{_n(_LEFT)}" y1="{_n(_TOP)}" x2="{_n(_LEFT)}" '
        f'y2="{_n(x_axis_y)}" stroke="#333333" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{_n(_LEFT)}" y1="{_n(x_axis_y)}" x2="{_n(_WIDTH - _RIGHT)}" '
        f'y2="{_n(x_axis_y)}" stroke="#333333" stroke-width="1"/>'
    )
    for j in range(5):
        v = lo + j * (hi - lo) / 4.0
        ty = y(v)
        parts.append(
            f'<line x1="{_n(_LEFT - 4)}" y1="{_n(ty)}" x2="{_n(_LEFT)}" '
            f'y2="{_n(ty)}" stroke="#333333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_n(_LEFT - 7)}" y="{_n(ty + 4)}" '
            f'text-anchor="end">{v:.6g}</text>'
        )

    k = len(tiers)
    slot = plot_w / k
    half_box = min(30.0, 0.3 * slot)
    half_notch = 0.6 * half_box
    for i, (label, s) in enumerate(tiers):
        cx = _LEFT + (i + 0.5) * slot
        # whisker stems and caps
        for v_from, v_to in ((s.whisker_low, s.q1), (s.q3, s.whisker_high)):
            parts.append(
                f'<line x1="{_n(cx)}" y1="{_n(y(v_from))}" x2="{_n(cx)}" '
                f'y2="{_n(y(v_to))}" stroke="#333333" stroke-width="1"/>'
            )
        for v in (s.whisker_low, s.whisker_high):
            parts.append(
                f'<line x1="{_n(cx - half_box / 2)}" y1="{_n(y(v))}" '
                f'x2="{_n(cx + half_box / 2)}" y2="{_n(y(v))}" '
                f'stroke="#333333" stroke-width="1"/>'
            )
        parts.append(
            f'<rect x="{_n(cx - half_box)}" y="{_n(y(s.q3))}" '
            f'width="{_n(2 * half_box)}" height="{_n(y(s.q1) - y(s.q3))}" '
            f'fill="#dde8f1" stroke="#333333" stroke-width="1"/>'
        )
        parts.append(
            f'<rect x="{_n(cx - half_notch)}" y="{_n(y(s.notch_high))}" '
            f'width="{_n(2 * half_notch)}" '
            f'height="{_n(y(s.notch_low) - y(s.notch_high))}" '
            f'fill="#ffffff" stroke="#333333" stroke-width="1"/>'
        )
        parts.append(
            f'<line x1="{_n(cx - half_box)}" y1="{_n(y(s.median))}" '
            f'x2="{_n(cx + half_box)}" y2="{_n(y(s.median))}" '
            f'stroke="#333333" stroke-width="2"/>'
        )
        for v in s.outliers:
            parts.append(
                f'<circle cx="{_n(cx)}" cy="{_n(y(v))}" r="3" '
                f'fill="none" stroke="#333333" stroke-width="1"/>'
            )
        parts.append(
            f'<text x="{_n(cx)}" y="{_n(x_axis_y + 18)}" '
            f'text-anchor="middle">{_escape(label)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    )
