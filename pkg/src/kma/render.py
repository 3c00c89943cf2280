"""Static SVG figures: rank-2 root systems with the two-branch partition,
rank-2 sheet tessellations, and rank-3 tessellations in the Poincare disk.

Output is deterministic: fixed float formatting, no timestamps, elements
emitted in data order.
"""

from __future__ import annotations

import math

from .embedding import BuildingEmbedding
from .errors import InputError
from .roots import RootSystem

_BRANCH_COLORS = {1: "#1f77b4", 2: "#d62728"}
_ARC_COLORS = ("#1f77b4", "#d62728")
_EDGE_SAMPLES = 32


def _fmt(x: float) -> str:
    s = f"{x:.6f}"
    return "-0.000000" if s == "-0.000000" and x == 0 else s


class SvgDocument:
    """Tiny deterministic SVG assembler."""

    def __init__(self, seed: int):
        self.seed = seed
        self.elements: list[str] = []
        self._xs: list[float] = []
        self._ys: list[float] = []

    def _track(self, x: float, y: float):
        self._xs.append(x)
        self._ys.append(y)

    def circle(self, x: float, y: float, radius: float, fill: str, css_class: str = ""):
        cls = f' class="{css_class}"' if css_class else ""
        self._track(x - radius, y - radius)
        self._track(x + radius, y + radius)
        self.elements.append(
            f'<circle{cls} cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(radius)}" fill="{fill}"/>'
        )

    def line(self, x1, y1, x2, y2, stroke: str, width: float = 0.02):
        self._track(x1, y1)
        self._track(x2, y2)
        self.elements.append(
            f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}" '
            f'stroke="{stroke}" stroke-width="{_fmt(width)}"/>'
        )

    def polyline(self, points, stroke: str, width: float = 0.02, css_class: str = ""):
        for x, y in points:
            self._track(x, y)
        body = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in points)
        cls = f' class="{css_class}"' if css_class else ""
        self.elements.append(
            f'<polyline{cls} points="{body}" fill="none" stroke="{stroke}" '
            f'stroke-width="{_fmt(width)}"/>'
        )

    def ring(self, x, y, radius, stroke: str, width: float = 0.01):
        self._track(x - radius, y - radius)
        self._track(x + radius, y + radius)
        self.elements.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(radius)}" fill="none" '
            f'stroke="{stroke}" stroke-width="{_fmt(width)}"/>'
        )

    def to_string(self) -> str:
        if self._xs:
            pad = 0.05 * max(max(self._xs) - min(self._xs), max(self._ys) - min(self._ys), 1.0)
            x0, y0 = min(self._xs) - pad, min(self._ys) - pad
            w = max(self._xs) - min(self._xs) + 2 * pad
            h = max(self._ys) - min(self._ys) + 2 * pad
        else:
            x0 = y0 = 0.0
            w = h = 1.0
        header = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_fmt(x0)} {_fmt(y0)} '
            f'{_fmt(w)} {_fmt(h)}">\n'
            f"<!-- seed: {self.seed} -->\n"
        )
        return header + "\n".join(self.elements) + "\n</svg>\n"


def plot_roots(rs: RootSystem, height_cap: int, seed: int = 0) -> str:
    """Rank-2 root-system figure: one marker per enumerated real root,
    colored by its branch in the two-branch partition, with the null lines
    of the root-space form for context."""
    if rs.rank != 2:
        raise InputError("the branch-colored root plot is a rank-2 figure")
    roots = rs.real_roots_up_to_height(height_cap)
    doc = SvgDocument(seed)
    span = max((max(abs(k) for k in r.coeffs) for r in roots), default=1)
    b = rs.grams.root_gram
    # Null directions of k |-> norm(k): b22 t^2 + 2 b12 t + b11 = 0.
    disc = float(b[0][1] * b[0][1] - b[0][0] * b[1][1])
    if disc > 0:
        for sgn in (1.0, -1.0):
            t = (-float(b[0][1]) + sgn * math.sqrt(disc)) / float(b[1][1])
            nrm = math.hypot(1.0, t)
            dx, dy = span * 1.2 / nrm, span * 1.2 * t / nrm
            doc.line(-dx, dy, dx, -dy, stroke="#bbbbbb", width=0.03)
    doc.line(-span * 1.2, 0, span * 1.2, 0, stroke="#dddddd", width=0.02)
    doc.line(0, -span * 1.2, 0, span * 1.2, stroke="#dddddd", width=0.02)
    for root in roots:
        branch = rs.phi_label(root).branch
        k1, k2 = root.coeffs
        doc.circle(float(k1), -float(k2), 0.12, _BRANCH_COLORS[branch], css_class="root")
    return doc.to_string()


def _disk_frame(emb: BuildingEmbedding):
    frame = emb.geom.frame()
    if len(frame) != 3:
        raise InputError("the disk projection is a rank-3 figure")
    return frame


def _disk_point(emb: BuildingEmbedding, coords, r: float, frame) -> tuple[float, float]:
    scale = 1.0 / math.sqrt(-r)
    x = [c * scale for c in coords]
    t = -emb._f(x, frame[0])
    s1 = emb._f(x, frame[1])
    s2 = emb._f(x, frame[2])
    return s1 / (1.0 + t), s2 / (1.0 + t)


def _disk_ideal(emb: BuildingEmbedding, direction, frame) -> tuple[float, float]:
    t = -emb._f(direction, frame[0])
    return emb._f(direction, frame[1]) / t, emb._f(direction, frame[2]) / t


def plot_tessellation(emb: BuildingEmbedding, sign: int, r: float, depth: int, seed: int = 0) -> str:
    """Chamber tessellation figure: hyperbola arcs with vertex dots in rank
    2, geodesic triangles in the Poincare disk with ideal vertices on the
    unit circle in rank 3."""
    regions = emb.tessellate(sign, r, depth)
    doc = SvgDocument(seed)
    if emb.rank == 2:
        for idx, reg in enumerate(regions):
            a, b = reg.vertices[0].coords, reg.vertices[1].coords
            pts = _sample_geodesic(emb, a, b, reg.r)
            doc.polyline(
                [(p[0], -p[1]) for p in pts],
                stroke=_ARC_COLORS[len(emb.weyl.reduce(reg.word)) % 2],
                width=0.04,
                css_class="chamber",
            )
        seen = set()
        for reg in regions:
            for v in reg.vertices:
                key = tuple(round(c, 9) for c in v.coords)
                if key not in seen:
                    seen.add(key)
                    doc.circle(v.coords[0], -v.coords[1], 0.06, "#333333", css_class="vertex")
        return doc.to_string()
    if emb.rank != 3:
        raise InputError("tessellation figures exist for ranks 2 and 3")
    frame = _disk_frame(emb)
    flip = sign < 0

    def disk_of(coords, ideal):
        c = tuple(-x for x in coords) if flip else coords
        if ideal:
            return _disk_ideal(emb, c, frame)
        return _disk_point(emb, c, r, frame)

    doc.ring(0.0, 0.0, 1.0, stroke="#888888", width=0.01)
    for reg in regions:
        color = _ARC_COLORS[len(emb.weyl.reduce(reg.word)) % 2]
        for i in range(3):
            va, vb = reg.vertices[i], reg.vertices[(i + 1) % 3]
            pts = _sample_chord(emb, va, vb, reg.r)
            poly = [disk_of(p, False) for p in pts]
            if va.ideal:
                poly.insert(0, disk_of(va.coords, True))
            if vb.ideal:
                poly.append(disk_of(vb.coords, True))
            doc.polyline(poly, stroke=color, width=0.006, css_class="chamber")
    seen = set()
    for reg in regions:
        for v in reg.vertices:
            key = (v.ideal, tuple(round(c, 9) for c in v.coords))
            if key not in seen:
                seen.add(key)
                x, y = disk_of(v.coords, v.ideal)
                doc.circle(x, y, 0.012, "#000000" if not v.ideal else "#8800aa",
                           css_class="ideal" if v.ideal else "vertex")
    return doc.to_string()


def _sample_geodesic(emb: BuildingEmbedding, a, b, r: float, n: int = _EDGE_SAMPLES):
    """Points along the sheet geodesic between two finite sheet points."""
    d_hat = math.acosh(max(1.0, emb._f(a, b) / r))
    out = []
    for k in range(n + 1):
        tau = d_hat * k / n
        if d_hat == 0:
            out.append(a)
            continue
        s = math.sinh(d_hat)
        ca, cb = math.sinh(d_hat - tau) / s, math.sinh(tau) / s
        out.append(tuple(ca * x + cb * y for x, y in zip(a, b)))
    return out


def _sample_chord(emb: BuildingEmbedding, va, vb, r: float, n: int = _EDGE_SAMPLES):
    """Sample an edge that may have ideal endpoints: interpolate directions
    through the timelike cone and project each point onto the sheet."""
    a, b = va.coords, vb.coords
    if not va.ideal and not vb.ideal:
        return _sample_geodesic(emb, a, b, r, n)
    lo = 0.004 if va.ideal else 0.0
    hi = 1.0 - (0.004 if vb.ideal else 0.0)
    out = []
    for k in range(n + 1):
        t = lo + (hi - lo) * k / n
        x = tuple((1.0 - t) * p + t * q for p, q in zip(a, b))
        nn = emb._f(x, x)
        scale = math.sqrt(r / nn)
        out.append(tuple(scale * c for c in x))
    return out
