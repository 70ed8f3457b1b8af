"""Minimal SVG 1.1 emitter for the locus and scene figures.

Floats appear only here, in path data; everything upstream is exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from xml.sax.saxutils import escape

from .projective import CART_LINF, BARY_LINF, PPoint, normalized
from .triangle import A, B, C, anticomplement

SIZE = 800
SQRT3 = math.sqrt(3.0)
# equilateral drawing of the reference triangle
ANCHORS = {"A": (0.0, SQRT3 / 2), "B": (-0.5, 0.0), "C": (0.5, 0.0)}


def bary_to_plane(p) -> tuple[float, float]:
    x, y, z = (float(c) for c in normalized(p, BARY_LINF)) if isinstance(p, PPoint) else p
    s = x + y + z
    (ax, ay), (bx, by), (cx, cy) = ANCHORS["A"], ANCHORS["B"], ANCHORS["C"]
    return ((x * ax + y * bx + z * cx) / s, (x * ay + y * by + z * cy) / s)


def cart_to_plane(p: PPoint) -> tuple[float, float]:
    x, y, _ = normalized(p, CART_LINF)
    return float(x), float(y)


@dataclass
class Canvas:
    xmin: float
    ymin: float
    xmax: float
    ymax: float
    items: list[str] = field(default_factory=list)

    @classmethod
    def around(cls, pts, scale: float = 1.6) -> "Canvas":
        xs, ys = [p[0] for p in pts], [p[1] for p in pts]
        cx, cy = (min(xs) + max(xs)) / 2, (min(ys) + max(ys)) / 2
        half = scale * max(max(xs) - min(xs), max(ys) - min(ys)) / 2
        return cls(cx - half, cy - half, cx + half, cy + half)

    def inside(self, p) -> bool:
        return self.xmin <= p[0] <= self.xmax and self.ymin <= p[1] <= self.ymax

    def px(self, p) -> tuple[float, float]:
        sx = SIZE / (self.xmax - self.xmin)
        sy = SIZE / (self.ymax - self.ymin)
        return ((p[0] - self.xmin) * sx, (self.ymax - p[1]) * sy)

    def polyline(self, pts, stroke="black", width=1.5, closed=False, dash=None):
        if len(pts) < 2:
            return
        d = " ".join("%s%.3f,%.3f" % ("M" if i == 0 else "L", *self.px(p)) for i, p in enumerate(pts))
        if closed:
            d += " Z"
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self.items.append(f'<path d="{d}" fill="none" stroke="{stroke}" stroke-width="{width}"{extra}/>')

    def dot(self, p, r=3.0, fill="black", label=None):
        if not self.inside(p):
            return
        x, y = self.px(p)
        self.items.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="{r}" fill="{fill}"/>')
        if label:
            self.items.append(
                f'<text x="{x + 6:.3f}" y="{y - 6:.3f}" font-size="16" font-family="serif">{escape(label)}</text>'
            )

    def render(self) -> str:
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
            f'viewBox="0 0 {SIZE} {SIZE}">\n'
            '<rect width="100%" height="100%" fill="white"/>\n'
        )
        return head + "\n".join(self.items) + "\n</svg>\n"


def curve_branches(canvas: Canvas, steps: int = 1600, span: int = 6) -> list[list[tuple[float, float]]]:
    """Real branches of the cubic from the affine equation, solved as a quadratic in ``y``.

    ``x`` runs over a rational grid in ``[-span, span]``; ``z = 1 - x - y``.
    """
    branches: list[list[tuple[float, float]]] = []
    current = {1: [], -1: []}
    for i in range(steps + 1):
        x = Fraction(-span) + Fraction(2 * span * i, steps)
        f = 5 * x - 1
        disc = (x - 1) * f * (5 * x * x - 2 * x + 1)
        ok = f != 0 and disc >= 0
        for sgn in (1, -1):
            if ok:
                y = (-float(f * (x - 1)) + sgn * math.sqrt(float(disc))) / (2 * float(f))
                q = bary_to_plane((float(x), y, 1 - float(x) - y))
                if canvas.inside(q):
                    current[sgn].append(q)
                    continue
            if current[sgn]:
                branches.append(current[sgn])
                current[sgn] = []
    branches.extend(b for b in current.values() if b)
    return branches


def locus_canvas() -> Canvas:
    anti = [bary_to_plane(anticomplement(v)) for v in (A, B, C)]
    return Canvas.around(anti)


def locus_svg(samples=(), steps: int = 1600) -> str:
    cv = locus_canvas()
    for br in curve_branches(cv, steps):
        cv.polyline(br, stroke="#1f4e9c", width=2)
    cv.polyline([bary_to_plane(anticomplement(v)) for v in (A, B, C)], stroke="gray", closed=True, dash="6,4")
    cv.polyline([bary_to_plane(v) for v in (A, B, C)], stroke="black", closed=True)
    for name, v in (("A", A), ("B", B), ("C", C)):
        cv.dot(bary_to_plane(v), label=name)
    for s in samples:
        for p in s.points():
            cv.dot(bary_to_plane(p), r=2.5, fill="#c0392b")
    return cv.render()


def scene_svg(scene) -> str:
    cv = Canvas(-1.6, -1.6, 1.6, 1.6)
    n = 360
    circle = [(math.cos(2 * math.pi * k / n), math.sin(2 * math.pi * k / n)) for k in range(n)]
    cv.polyline(circle, stroke="black", closed=True)
    # the open arc from P1 through Q1 and Q1' to P1'
    from .construct import arc_param

    arc = [cart_to_plane(arc_param(Fraction(-1, 3) + Fraction(4 * k, 3 * 200))) for k in range(201)]
    cv.polyline(arc, stroke="#1f4e9c", width=4)
    square = [cart_to_plane(p) for p in (scene.Q1, scene.Z1, scene.P1_prime, scene.O1)]
    cv.polyline(square, stroke="gray", closed=True)
    cv.polyline([cart_to_plane(scene.G1), cart_to_plane(scene.V1)], stroke="gray", dash="4,4")
    cv.polyline([cart_to_plane(scene.Z1), cart_to_plane(scene.G1)], stroke="gray", dash="4,4")
    for name, p in scene.marked_points().items():
        cv.dot(cart_to_plane(p), r=4, label=name)
    return cv.render()
