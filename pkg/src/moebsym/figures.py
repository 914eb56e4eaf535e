"""Deterministic SVG drawings of the disk constructions.

Each figure is first described as a :class:`FigureData` (points, segments,
circles and arcs in plane coordinates), then rendered with matplotlib.  The
axes fill the whole canvas with fixed limits, so a plane point ``(x, y)``
lands at SVG user coordinates given by :meth:`FigureData.to_svg`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import numpy as np
from matplotlib.backends.backend_svg import FigureCanvasSVG
from matplotlib.figure import Figure

from .geometry import (
    boundary_ortho_circle,
    circle_quad_points,
    geodesic_endpoints,
    hyperbolic_midpoint,
    line_intersection,
    nearest_geodesic_point,
    ortho_circle,
)
from .moebius import disk_automorphism, disk_map_pair, pair_center

FIGURES = ("fig1", "fig2", "fig3", "fig4")
ARC_SEGMENTS = 128
SCALE = 144.0  # SVG points per plane unit

DEFAULTS = {
    "fig1": {"a": -0.7j, "b": 0.5 + 0j},
    "fig2": {"a": -0.9j, "b": 0.5 - 0.3j},
    "fig3": {"a": -0.9j, "b": 0.5 - 0.3j},
    "fig4": {"angles": (0.0, 0.3, 1.5, 2.1)},
}

_RC = {
    "svg.hashsalt": "moebsym",
    "svg.fonttype": "none",
    "font.family": "DejaVu Sans",
    "font.size": 12,
    "lines.linewidth": 0.8,
}


@dataclass
class FigureData:
    name: str
    limits: tuple[float, float, float, float]  # xmin, xmax, ymin, ymax
    points: dict[str, complex] = field(default_factory=dict)
    labels: dict[str, str] = field(default_factory=dict)
    segments: list[tuple[complex, complex, str]] = field(default_factory=list)
    circles: list[tuple[complex, float]] = field(default_factory=list)
    arcs: list[np.ndarray] = field(default_factory=list)

    def add_point(self, key: str, z: complex, label: str | None = None) -> None:
        self.points[key] = complex(z)
        self.labels[key] = label if label is not None else key

    @property
    def size(self) -> tuple[float, float]:
        xmin, xmax, ymin, ymax = self.limits
        return (xmax - xmin) * SCALE, (ymax - ymin) * SCALE

    def to_svg(self, z: complex) -> tuple[float, float]:
        xmin, _, _, ymax = self.limits
        return (z.real - xmin) * SCALE, (ymax - z.imag) * SCALE

    def from_svg(self, x: float, y: float) -> complex:
        xmin, _, _, ymax = self.limits
        return complex(x / SCALE + xmin, ymax - y / SCALE)


def _unit_circle(fig: FigureData, center: complex = 0j) -> None:
    fig.circles.append((center, 1.0))


def _long_line(p: complex, q: complex, length: float = 20.0):
    u = (q - p) / abs(q - p)
    return p - length * u, p + length * u


def _fit_limits(fig: FigureData, margin: float = 0.15) -> None:
    """Grow the frame so that every finite point is visible."""
    xmin, xmax, ymin, ymax = fig.limits
    for z in fig.points.values():
        xmin, xmax = min(xmin, z.real - margin), max(xmax, z.real + margin)
        ymin, ymax = min(ymin, z.imag - margin), max(ymax, z.imag + margin)
    fig.limits = (xmin, xmax, ymin, ymax)


def figure_data(name: str, a=None, b=None, angles=None) -> FigureData:
    """Geometry of one of the four figures; omitted inputs take the defaults."""
    if name not in FIGURES:
        raise KeyError(name)
    defaults = DEFAULTS[name]
    if name == "fig4":
        angles = tuple(angles) if angles is not None else defaults["angles"]
        fig = _fig4(angles)
    else:
        a = complex(a) if a is not None else defaults["a"]
        b = complex(b) if b is not None else defaults["b"]
        fig = {"fig1": _fig1, "fig2": _fig2, "fig3": _fig3}[name](a, b)
    _fit_limits(fig)
    return fig


def _fig1(a: complex, b: complex) -> FigureData:
    fig = FigureData("fig1", (-1.15, 2.3, -2.4, 1.1))
    a_star, b_star = a / abs(a) ** 2, b / abs(b) ** 2
    c = pair_center(a, b)
    assert abs(line_intersection(a, b, a_star, b_star) - c) <= 1e-9 * abs(c)
    for key, z, label in [
        ("0", 0j, "$0$"),
        ("a", a, "$a$"),
        ("b", b, "$b$"),
        ("a_star", a_star, "$a^*$"),
        ("b_star", b_star, "$b^*$"),
        ("c", c, "$c$"),
    ]:
        fig.add_point(key, z, label)
    fig.segments.append((*_long_line(a, b), "-"))
    fig.segments.append((*_long_line(a_star, b_star), "-"))
    fig.arcs.append(ortho_circle(a, b).arc(ARC_SEGMENTS))
    ends = geodesic_endpoints(a, b)
    far_end = max(ends, key=lambda e: abs(e - c))
    fig.segments.append((c, far_end, "--"))
    _unit_circle(fig)
    fig.circles.append((c, math.sqrt(abs(c) ** 2 - 1.0)))
    return fig


def _pair_base(name: str, a: complex, b: complex) -> tuple[FigureData, complex]:
    fig = FigureData(name, (-1.2, 4.2, -1.3, 1.2))
    k = nearest_geodesic_point(a, b)
    circ = ortho_circle(a, b)
    fig.add_point("0", 0j, "$0$")
    fig.add_point("a", a, "$a$")
    fig.add_point("b", b, "$b$")
    fig.add_point("k", k, "$k$")
    fig.add_point("o_ab", circ.center, "$o_{ab}$")
    fig.segments.append((0j, circ.center, "-"))
    fig.arcs.append(circ.arc(ARC_SEGMENTS))
    _unit_circle(fig)
    _unit_circle(fig, 3.0)
    fig.add_point("0_right", 3.0, "$0$")
    return fig, k


def _fig2(a: complex, b: complex) -> FigureData:
    fig, k = _pair_base("fig2", a, b)
    t = disk_automorphism(k)
    ta, tb = t(a), t(b)
    fig.add_point("T_k(a)", ta + 3.0, "$T_k(a)$")
    fig.add_point("T_k(b)", tb + 3.0, "$T_k(b)$")
    far = ta if abs(ta) >= abs(tb) else tb
    u = far / abs(far)
    fig.segments.append((3.0 - u, 3.0 + u, "-"))
    return fig


def _fig3(a: complex, b: complex) -> FigureData:
    fig, k = _pair_base("fig3", a, b)
    h = hyperbolic_midpoint(a, b)
    fig.add_point("h_ab", h, "$h_{ab}$")
    f = disk_map_pair(h, k)
    fa, fb = f(a), f(b)
    fig.add_point("f(a)", fa + 3.0, "$f(a)$")
    fig.add_point("f(b)", fb + 3.0, "$f(b)$")
    fig.arcs.append(ortho_circle(fa, fb).arc(ARC_SEGMENTS) + 3.0)
    return fig


def _fig4(angles) -> FigureData:
    fig = FigureData("fig4", (-1.1, 1.3, -0.2, 1.45))
    a, b, c, d = (cmath.exp(1j * t) for t in angles)
    pts = circle_quad_points(a, b, c, d)
    fig.add_point("0", 0j, "$0$")
    for key, z in zip("abcd", (a, b, c, d)):
        fig.add_point(key, z, f"${key}$")
    fig.add_point("w1", pts.w1, "$w_1$")
    fig.add_point("w4", pts.w4, "$w_4$")
    fig.add_point("w5", pts.w5, "$w_5$")
    for z in (0j, a, d):
        fig.segments.append((z, pts.w1, "-"))
    _unit_circle(fig)
    fig.arcs.append(pts.w1_circle.arc(ARC_SEGMENTS))
    fig.arcs.append(boundary_ortho_circle(a, c).arc(ARC_SEGMENTS))
    fig.arcs.append(boundary_ortho_circle(b, d).arc(ARC_SEGMENTS))
    return fig


def render(fig_data: FigureData, path) -> None:
    """Write ``fig_data`` as SVG; identical inputs give identical bytes."""
    width, height = fig_data.size
    with matplotlib.rc_context(_RC):
        fig = Figure(figsize=(width / 72.0, height / 72.0), dpi=72)
        FigureCanvasSVG(fig)
        ax = fig.add_axes((0, 0, 1, 1))
        xmin, xmax, ymin, ymax = fig_data.limits
        ax.set_xlim(xmin, xmax)
        ax.set_ylim(ymin, ymax)
        ax.set_axis_off()
        theta = np.linspace(0.0, 2.0 * np.pi, 4 * ARC_SEGMENTS + 1)
        for i, (center, radius) in enumerate(fig_data.circles):
            zs = center + radius * np.exp(1j * theta)
            ax.plot(zs.real, zs.imag, "k-", gid=f"circle-{i}")
        for i, (p, q, style) in enumerate(fig_data.segments):
            ax.plot([p.real, q.real], [p.imag, q.imag], "k" + style, gid=f"segment-{i}")
        for i, arc in enumerate(fig_data.arcs):
            ax.plot(arc.real, arc.imag, "k-", gid=f"arc-{i}")
        for key, z in fig_data.points.items():
            ax.plot([z.real], [z.imag], "o", ms=4, mfc="white", mec="black", gid=f"point-{key}")
            ax.annotate(
                fig_data.labels[key],
                (z.real, z.imag),
                xytext=(4, 4),
                textcoords="offset points",
                gid=f"label-{key}",
            )
        fig.savefig(path, format="svg", metadata={"Date": None})
