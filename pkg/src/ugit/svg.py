"""SVG diagram of the fixed-point weights.

``eps`` is not a number; it is drawn as a fixed visual offset of
``EPS_OFFSET`` data units and flagged in the legend.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

EPS_OFFSET = 0.15
WIDTH, HEIGHT, MARGIN = 640, 640, 40


def _visual(x):
    return float(x.std) + EPS_OFFSET * float(x.inf)


def _fmt(v):
    return f"{v:.3f}"


def render_svg(table: Sequence, ell: int, n_param: int) -> str:
    if not table:
        raise ValueError("empty weight table")
    pts = [(row.fixed_point, _visual(row.weight[0]), _visual(row.weight[1])) for row in table]
    ray_len = max(abs(y) for _, _, y in pts) / max(ell, 1) + 1
    apexes = [(0.0, 0.0), (float(n_param), -float(ell * n_param)), (-float(n_param), -float(ell * n_param))]
    xs = [x for _, x, _ in pts] + [a[0] + s * ray_len for a in apexes for s in (-1, 1)]
    ys = [y for _, _, y in pts] + [a[1] + ell * ray_len for a in apexes] + [a[1] for a in apexes]
    x0, x1 = min(xs) - 1, max(xs) + 1
    y0, y1 = min(ys) - 1, max(ys) + 1
    scale = min((WIDTH - 2 * MARGIN) / (x1 - x0), (HEIGHT - 2 * MARGIN) / (y1 - y0))

    def px(x, y):
        return MARGIN + (x - x0) * scale, HEIGHT - MARGIN - (y - y0) * scale

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        '<g class="axes" stroke="#888" stroke-width="1">',
    ]
    ax0, ay = px(x0, 0)
    ax1, _ = px(x1, 0)
    out.append(f'<line x1="{_fmt(ax0)}" y1="{_fmt(ay)}" x2="{_fmt(ax1)}" y2="{_fmt(ay)}"/>')
    bx, by0 = px(0, y0)
    _, by1 = px(0, y1)
    out.append(f'<line x1="{_fmt(bx)}" y1="{_fmt(by0)}" x2="{_fmt(bx)}" y2="{_fmt(by1)}"/>')
    out.append("</g>")
    out.append('<g class="rays" stroke="#c33" stroke-width="1.5">')
    for ax, ay_ in apexes:
        for sx in (1, -1):
            p, q = px(ax, ay_), px(ax + sx * ray_len, ay_ + ell * ray_len)
            out.append(
                f'<line class="ray" x1="{_fmt(p[0])}" y1="{_fmt(p[1])}" x2="{_fmt(q[0])}" y2="{_fmt(q[1])}"/>'
            )
    out.append("</g>")
    out.append('<g class="weights">')
    for row, (fp, x, y) in zip(table, pts):
        cx, cy = px(x, y)
        label = f"{fp} block {row.block} j={row.position}: ({row.weight[0]}, {row.weight[1]})"
        out.append(
            f'<circle class="dot {fp}" cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="3"><title>{label}</title></circle>'
        )
    out.append("</g>")
    out.append(
        f'<text class="legend" x="{MARGIN}" y="{MARGIN / 2}" font-size="12">'
        f"eps drawn as a {EPS_OFFSET} unit offset; rays (1, {ell}) and (-1, {ell}); N = {n_param}</text>"
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(table: Sequence, ell: int, n_param: int, path) -> Path:
    text = render_svg(table, ell, n_param)
    path = Path(path)
    path.write_text(text)
    return path
