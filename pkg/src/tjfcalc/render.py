"""Deterministic SVG and ASCII drawings of cell diagrams."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .cells import AttachLabel, CellComplex, simplify

STYLE = {
    AttachLabel.TWO: ("#1f4fd1", "2"),
    AttachLabel.ETA: ("#d11f1f", "eta"),
    AttachLabel.NU: ("#1a7f1a", "nu"),
    AttachLabel.TWO_NU: ("#e08a00", "2nu"),
    AttachLabel.ALPHA: ("#1a7f1a", "alpha"),
    AttachLabel.TWO_ALPHA: ("#e08a00", "2alpha"),
    AttachLabel.BETA: ("#7a1fa2", "beta"),
    AttachLabel.ZERO: ("#999999", "0"),
}

ASCII_MARK = {
    AttachLabel.TWO: "2",
    AttachLabel.ETA: "e",
    AttachLabel.NU: "n",
    AttachLabel.TWO_NU: "N",
    AttachLabel.ALPHA: "a",
    AttachLabel.TWO_ALPHA: "A",
    AttachLabel.BETA: "b",
    AttachLabel.ZERO: "0",
}


class RenderError(Exception):
    pass


@dataclass
class ChartSpec:
    """Dots (id, degree, column) and lines (source id, target id, label) plus layout sizes."""

    dots: List[Tuple[str, int, int]]
    lines: List[Tuple[str, str, AttachLabel]]
    title: str = ""
    unit: int = 24
    column_width: int = 48
    margin: int = 40
    meta: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        ids = {d[0] for d in self.dots}
        for s, t, _ in self.lines:
            if s not in ids or t not in ids:
                raise RenderError(f"line {s}->{t} references a missing cell")


def chart_spec(x: CellComplex, title: str = "") -> ChartSpec:
    """Summands side by side; inside one, cells of equal degree take separate columns."""
    dots: List[Tuple[str, int, int]] = []
    col = 0
    for part in simplify(x) if x.cells else []:
        used: Dict[int, int] = {}
        width = 1
        for cid, d in sorted(part.cells, key=lambda c: (c[1], c[0])):
            k = used.get(d, 0)
            used[d] = k + 1
            width = max(width, k + 1)
            dots.append((cid, d, col + k))
        col += width
    lines = [(s, t, lab) for s, t, lab in x.attachments if lab is not AttachLabel.ZERO]
    return ChartSpec(dots, lines, title or (x.name or ""), meta={"columns": col})


def render_svg(x: CellComplex, title: str = "") -> str:
    spec = chart_spec(x, title)
    degrees = [d for _, d, _ in spec.dots] or [0]
    top, bottom = max(degrees), min(degrees)
    u, cw, m = spec.unit, spec.column_width, spec.margin
    width = 2 * m + cw * max(spec.meta["columns"], 1)
    height = 2 * m + u * (top - bottom) + (20 if spec.title else 0)
    pos = {cid: (m + cw // 2 + cw * c, m + u * (top - d)) for cid, d, c in spec.dots}
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for d in sorted({d for _, d, _ in spec.dots}):
        out.append(
            f'<text x="{m // 2}" y="{m + u * (top - d) + 4}" font-size="11" text-anchor="middle" '
            f'font-family="monospace">{d}</text>'
        )
    for s, t, lab in spec.lines:
        color, name = STYLE[lab]
        (x1, y1), (x2, y2) = pos[s], pos[t]
        if lab is AttachLabel.TWO and x1 == x2:
            out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{color}" stroke-width="2"/>')
            lx, ly = x1 + 6, (y1 + y2) // 2
        else:
            bend = 10 + 4 * (abs(y2 - y1) // u)
            cx, cy = (x1 + x2) // 2 + bend, (y1 + y2) // 2
            dash = ' stroke-dasharray="4 3"' if lab is AttachLabel.BETA else ""
            out.append(
                f'<path d="M {x1} {y1} Q {cx} {cy} {x2} {y2}" fill="none" stroke="{color}" '
                f'stroke-width="2"{dash}/>'
            )
            lx, ly = cx + 4, cy + 4
        out.append(f'<text x="{lx}" y="{ly}" font-size="10" fill="{color}" font-family="serif">{name}</text>')
    for cid, d, c in spec.dots:
        px, py = pos[cid]
        out.append(f'<circle cx="{px}" cy="{py}" r="4" fill="black"><title>{cid}</title></circle>')
    if spec.title:
        out.append(
            f'<text x="{width // 2}" y="{height - 12}" font-size="12" text-anchor="middle" '
            f'font-family="serif">{spec.title}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_ascii(x: CellComplex, title: str = "") -> str:
    """One row per degree, top degree first; each attachment runs in its own lane."""
    spec = chart_spec(x, title)
    if not spec.dots:
        return "(empty complex)\n"
    deg = {cid: d for cid, d, _ in spec.dots}
    col = {cid: c for cid, _, c in spec.dots}
    top, bottom = max(deg.values()), min(deg.values())
    ncols = spec.meta["columns"]
    lanes_per_col: Dict[int, List[Tuple[str, str, AttachLabel]]] = {}
    for s, t, lab in sorted(spec.lines, key=lambda e: (col[e[0]], deg[e[0]], deg[e[1]], e[2].value, e[0], e[1])):
        lanes_per_col.setdefault(col[s], []).append((s, t, lab))
    # x offset of each column and its lanes
    offsets, cur = {}, 0
    for c in range(ncols):
        offsets[c] = cur
        cur += 3 + 2 * len(lanes_per_col.get(c, []))
    width = cur
    rows = {d: [" "] * width for d in range(bottom, top + 1)}
    for c, lanes in lanes_per_col.items():
        for k, (s, t, lab) in enumerate(lanes):
            lx = offsets[c] + 2 + 2 * k
            hi, lo = deg[s], deg[t]
            for d in range(lo, hi + 1):
                rows[d][lx] = "|"
            for d in (hi, lo):
                rows[d][lx] = "+"
                for xx in range(offsets[c] + 1, lx):
                    if rows[d][xx] == " ":
                        rows[d][xx] = "-"
            rows[(hi + lo) // 2][lx + 1] = ASCII_MARK[lab]
    for cid, d, c in spec.dots:
        rows[d][offsets[c]] = "o"
    pad = max(len(str(d)) for d in rows)
    lines = [f"{d:>{pad}} | " + "".join(rows[d]).rstrip() for d in range(top, bottom - 1, -1)]
    legend = "labels: " + ", ".join(
        f"{ASCII_MARK[l]}={STYLE[l][1]}" for l in AttachLabel if any(e[2] is l for e in spec.lines)
    )
    head = [spec.title] if spec.title else []
    return "\n".join(head + lines + ([legend] if spec.lines else [])) + "\n"
