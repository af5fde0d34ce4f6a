"""Deterministic SVG drawings of matchings and flip sequences."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .geometry import PointSet, Segment
from .matching import Matching
from .flipseq import FlipSequence

SIZE = 500.0
MARGIN = 0.05
POINT_RADIUS = 3
EDGE_WIDTH = 1.5


def _fmt(v: float) -> str:
    s = f"{v:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


class _Frame:
    def __init__(self, ps: PointSet):
        xs = [p.x for p in ps]
        ys = [p.y for p in ps]
        self.minx, self.maxy = min(xs), max(ys)
        span = max(max(xs) - self.minx, self.maxy - min(ys), 1)
        self.scale = SIZE / span
        self.pad = MARGIN * SIZE
        self.width = (max(xs) - self.minx) * self.scale + 2 * self.pad
        self.height = (self.maxy - min(ys)) * self.scale + 2 * self.pad

    def xy(self, p) -> tuple[str, str]:
        # svg y grows downwards
        return _fmt((p[0] - self.minx) * self.scale + self.pad), _fmt((self.maxy - p[1]) * self.scale + self.pad)


def render_svg(
    m: Matching,
    removed: Segment | None = None,
    added: Segment | None = None,
    title: str | None = None,
) -> str:
    """Points as small labelled circles, matching edges solid, unmatched point in red.

    ``removed`` is drawn dashed and ``added`` thicker, for flip frames.
    """
    ps = m.host
    fr = _Frame(ps)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(fr.width)}" height="{_fmt(fr.height)}" '
        f'viewBox="0 0 {_fmt(fr.width)} {_fmt(fr.height)}">',
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append('<g stroke="black" stroke-linecap="round">')
    if removed is not None:
        (x1, y1), (x2, y2) = fr.xy(ps[removed.a]), fr.xy(ps[removed.b])
        out.append(
            f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="gray" '
            f'stroke-width="{_fmt(EDGE_WIDTH)}" stroke-dasharray="6 4"/>'
        )
    for s in sorted(m.edges):
        (x1, y1), (x2, y2) = fr.xy(ps[s.a]), fr.xy(ps[s.b])
        if s == added:
            out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="blue" stroke-width="{_fmt(2 * EDGE_WIDTH)}"/>')
        else:
            out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke-width="{_fmt(EDGE_WIDTH)}"/>')
    out.append("</g>")
    out.append('<g font-family="monospace" font-size="10">')
    for i, p in enumerate(ps):
        x, y = fr.xy(p)
        fill = "red" if i == m.unmatched else "black"
        out.append(f'<circle cx="{x}" cy="{y}" r="{POINT_RADIUS}" fill="{fill}"/>')
        out.append(f'<text x="{_fmt(float(x) + 4)}" y="{_fmt(float(y) - 4)}">{i}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_sequence(s: FlipSequence) -> list[str]:
    """One frame for the start matching and one per flip."""
    frames = [render_svg(s.start, title="step 0")]
    for k, (f, m) in enumerate(zip(s.flips, list(s.matchings())[1:]), start=1):
        frames.append(render_svg(m, removed=Segment.of(f.q, f.r), added=Segment.of(f.p, f.q), title=f"step {k}"))
    return frames
