"""
Standalone SVG drawings of lattices, orbits and cross-sections.

Coordinates are Cartesian with the y axis pointing up; the canvas flips
them when writing and sizes the view box from the drawn bounds.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from xml.sax.saxutils import escape, quoteattr

import numpy as np

from .catalog import GroupData
from .orbits import build_cross_section, orbit_points

KINDS = ("lattice", "orbits", "cross-section")

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


class SvgCanvas:
    """Accumulates SVG elements and tracks their bounding box."""

    def __init__(self, title: str = "", stroke: float = 0.02) -> None:
        self.data: list[str] = []
        self.title = title
        self.stroke = stroke
        self._bounds: tuple[float, float, float, float] | None = None

    def _update_bounds(self, points: Iterable[Sequence[float]]) -> None:
        for x, y in points:
            if self._bounds is None:
                self._bounds = (x, y, x, y)
            else:
                x0, y0, x1, y1 = self._bounds
                self._bounds = (min(x0, x), min(y0, y), max(x1, x), max(y1, y))

    @staticmethod
    def _attrs(attrs: dict[str, object]) -> str:
        return " ".join(
            f"{key.replace('_', '-')}={quoteattr(str(value))}"
            for key, value in attrs.items()
            if value is not None
        )

    def add(self, tag: str, **attrs: object) -> SvgCanvas:
        self.data.append(f"<{tag} {self._attrs(attrs)}/>")
        return self

    def line(self, p1, p2, color: str = "#555", **attrs: object) -> SvgCanvas:
        self._update_bounds((p1, p2))
        return self.add(
            "line",
            x1=_num(p1[0]),
            y1=_num(-p1[1]),
            x2=_num(p2[0]),
            y2=_num(-p2[1]),
            stroke=color,
            stroke_width=_num(self.stroke),
            **attrs,
        )

    def circle(
        self, center, radius: float, color: str = "#000", **attrs: object
    ) -> SvgCanvas:
        x, y = center
        self._update_bounds(
            ((x - radius, y - radius), (x + radius, y + radius))
        )
        return self.add(
            "circle",
            cx=_num(x),
            cy=_num(-y),
            r=_num(radius),
            fill=color,
            **attrs,
        )

    def polygon(
        self,
        points: np.ndarray,
        fill: str = "none",
        color: str = "#000",
        **attrs: object,
    ) -> SvgCanvas:
        self._update_bounds(points)
        d = " ".join(
            f"{'M' if i == 0 else 'L'} {_num(x)} {_num(-y)}"
            for i, (x, y) in enumerate(points)
        )
        return self.add(
            "path",
            d=d + " Z",
            fill=fill,
            stroke=color,
            stroke_width=_num(self.stroke),
            **attrs,
        )

    def text(self, pos, label: str, size: float = 0.2) -> SvgCanvas:
        self._update_bounds((pos,))
        self.data.append(
            f"<text x={quoteattr(_num(pos[0]))} y={quoteattr(_num(-pos[1]))} "
            f"font-size={quoteattr(_num(size))}>{escape(label)}</text>"
        )
        return self

    def get_viewbox(self, margin: float = 0.1) -> tuple[float, ...]:
        if self._bounds is None:
            return (-1.0, -1.0, 2.0, 2.0)
        x0, y0, x1, y1 = self._bounds
        pad = margin * max(x1 - x0, y1 - y0, 1e-6)
        return (x0 - pad, -y1 - pad, x1 - x0 + 2 * pad, y1 - y0 + 2 * pad)

    def __str__(self) -> str:
        viewbox = " ".join(_num(v) for v in self.get_viewbox())
        head = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            '<svg xmlns="http://www.w3.org/2000/svg" '
            f'viewBox="{viewbox}" width="600" height="600">',
        ]
        if self.title:
            head.append(f"<title>{escape(self.title)}</title>")
        return "\n".join(head + self.data + ["</svg>"]) + "\n"


def _num(value: float) -> str:
    text = f"{value:.4f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def _arc(r: float, theta1: float, theta2: float, steps: int) -> np.ndarray:
    theta = np.linspace(theta1, theta2, steps + 1)
    return np.column_stack([r * np.cos(theta), r * np.sin(theta)])


def render_lattice(gd: GroupData, extent: int = 2) -> str:
    """
    Lattice points, the unit cell and, for nonsymmorphic groups, dashed
    glide axes.
    """
    basis = gd.basis_matrix()
    canvas = SvgCanvas(f"{gd.name} lattice", stroke=0.01 * extent)
    u, v = basis[:, 0], basis[:, 1]
    cell = np.array([np.zeros(2), u, u + v, v])
    canvas.polygon(cell, color="#999", **{"class": "unit-cell"})
    for i in range(-extent, extent + 1):
        for j in range(-extent, extent + 1):
            canvas.circle(
                i * u + j * v, 0.04 * extent, **{"class": "lattice-point"}
            )
    canvas.line((0, 0), u, color=_PALETTE[0], **{"class": "basis"})
    canvas.line((0, 0), v, color=_PALETTE[1], **{"class": "basis"})
    if not gd.symmorphic:
        _glide_axes(canvas, gd, extent)
    return str(canvas)


def _glide_axes(canvas: SvgCanvas, gd: GroupData, extent: int) -> None:
    """Axis of ``z -> L z + L t`` for every glide reflection."""
    span = extent * float(np.max(np.linalg.norm(gd.basis_matrix(), axis=0)))
    u, v = gd.basis_matrix()[:, 0], gd.basis_matrix()[:, 1]
    for L in gd.point_group:
        if not L.is_reflection or gd.in_d0(L):
            continue
        eigvals, eigvecs = np.linalg.eigh(L.cart)
        direction = eigvecs[:, int(np.argmax(eigvals))]
        shift = L.cart @ gd.to_cartesian(gd.offset(L))
        normal = np.array([-direction[1], direction[0]])
        base = 0.5 * float(np.dot(shift, normal)) * normal
        for k in range(-extent, extent + 1):
            origin = base + k * (u if abs(np.dot(u, normal)) > 1e-9 else v)
            canvas.line(
                origin - span * direction,
                origin + span * direction,
                color=_PALETTE[2],
                stroke_dasharray=_num(0.1 * extent),
                **{"class": "glide"},
            )


def render_orbits(
    gd: GroupData, omega: Sequence[float], ells: Iterable[int] = (-1, 0, 1)
) -> str:
    """Marked points ``3^l L omega`` over the point group and ``ells``."""
    ells = list(ells)
    radius = float(np.linalg.norm(omega))
    top = radius * 3.0 ** max(ells)
    canvas = SvgCanvas(f"{gd.name} orbit", stroke=0.005 * top)
    for ell in ells:
        r = radius * 3.0**ell
        canvas.polygon(_arc(r, 0, 2 * math.pi, 128), color="#ccc")
    for L, ell, point in orbit_points(gd, omega, ells):
        canvas.circle(
            point,
            0.015 * top,
            color=_PALETTE[ells.index(ell) % len(_PALETTE)],
            **{"class": "orbit-point", "data-element": f"{L.name},{ell}"},
        )
    return str(canvas)


def render_cross_section(
    gd: GroupData,
    ells: Iterable[int] = (-1, 0, 1),
    boundary_tol: float = 1e-9,
) -> str:
    """The cross-section ``X`` and its copies ``3^l L X``."""
    cs = build_cross_section(gd, boundary_tol)
    ells = list(ells)
    steps = max(8, int(64 * cs.width / math.pi))
    outer = _arc(cs.r_max, cs.theta1, cs.theta2, steps)
    inner = _arc(cs.r_min, cs.theta2, cs.theta1, steps)
    sector = np.concatenate([outer, inner])
    canvas = SvgCanvas(
        f"{gd.name} cross-section", stroke=0.002 * 3.0 ** max(ells)
    )
    for ell in ells:
        for index, L in enumerate(gd.point_group):
            if ell == 0 and L == gd.identity:
                continue
            copy = 3.0**ell * (sector @ L.cart.T)
            canvas.polygon(
                copy,
                fill=_PALETTE[index % len(_PALETTE)],
                color="#333",
                fill_opacity="0.25",
                **{"class": "copy", "data-element": f"{L.name},{ell}"},
            )
    canvas.polygon(
        sector,
        fill="#000",
        color="#000",
        fill_opacity="0.6",
        **{"class": "cross-section"},
    )
    return str(canvas)


def render(kind: str, gd: GroupData, **params: object) -> str:
    """
    Render one of ``KINDS`` as a standalone SVG document.

    Raises:
        ValueError: For an unknown kind.
    """
    if kind == "lattice":
        return render_lattice(gd, **params)
    if kind == "orbits":
        return render_orbits(gd, **params)
    if kind == "cross-section":
        return render_cross_section(gd, **params)
    raise ValueError(f"unknown render kind {kind!r}")
