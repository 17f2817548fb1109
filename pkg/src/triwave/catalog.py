"""
Exact descriptions of the 17 wallpaper groups.

Everything in the group algebra happens in lattice coordinates, where every
point-group element is an integer matrix. A group is stored as its point
group together with the translation offset ``t_L`` of each element (the
coset ``{[t_L + n, L] : n in Z^2}`` of the lattice), so the group itself is
``{[t_L + n, L]}`` under the product ``[x, L][y, M] = [M^-1 x + y, LM]``.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, TypeAlias

import numpy as np

from ._logging.triwave_logger import triwave_logger as default_logger
from .scalar import (
    HALF,
    IDENTITY,
    ZERO,
    LatticeVector,
    Matrix2,
    TriadicHalf,
)

LogFunction: TypeAlias = Callable[..., None]

DEFAULT_ASPECT = 2


class UnknownGroup(KeyError):
    """Raised for a name that is not one of the 17 wallpaper groups."""

    pass


class PointElementNotInD(ValueError):
    """Raised when a point-group element is not in the group at hand."""

    pass


class CatalogInconsistency(RuntimeError):
    """Raised when catalog data violates a structural invariant."""

    pass


IDENTITY_MAT: Matrix2 = IDENTITY
_NEG: Matrix2 = ((-1, 0), (0, -1))
_R90: Matrix2 = ((0, -1), (1, 0))
# mirror across the vertical axis, square and rectangular bases
_SV: Matrix2 = ((-1, 0), (0, 1))
# the same mirror in the centred basis u=(1/2, a/2), v=(-1/2, a/2)
_SV_C: Matrix2 = ((0, 1), (1, 0))
_R60: Matrix2 = ((0, -1), (1, 1))
_R120: Matrix2 = ((-1, -1), (1, 0))
# hexagonal mirrors across the vertical axis and the x-axis
_SV_H: Matrix2 = ((-1, -1), (0, 1))
_SX_H: Matrix2 = ((1, 1), (0, -1))

Generator: TypeAlias = tuple[Matrix2, tuple[str, str]]

_NO_SHIFT = ("0", "0")
_SHIFT_V = ("0", "1/2")
_SHIFT_UV = ("1/2", "1/2")

# name -> (lattice, basis kind, generators with offsets, mirror S, z)
_GROUPS: dict[str, tuple[str, str, tuple[Generator, ...], Matrix2 | None]] = {
    "p1": ("square", "square", (), None),
    "p2": ("square", "square", ((_NEG, _NO_SHIFT),), None),
    "pm": ("rectangular", "rect", ((_SV, _NO_SHIFT),), _SV),
    "pg": ("square", "square", ((_SV, _SHIFT_V),), _SV),
    "cm": ("rectangular", "centred", ((_SV_C, _NO_SHIFT),), _SV_C),
    "pmm": (
        "rectangular",
        "rect",
        ((_NEG, _NO_SHIFT), (_SV, _NO_SHIFT)),
        _SV,
    ),
    "pmg2": ("square", "square", ((_NEG, _NO_SHIFT), (_SV, _SHIFT_V)), _SV),
    "pgg2": ("square", "square", ((_NEG, _NO_SHIFT), (_SV, _SHIFT_UV)), _SV),
    "cmm": (
        "rectangular",
        "centred",
        ((_NEG, _NO_SHIFT), (_SV_C, _NO_SHIFT)),
        _SV_C,
    ),
    "p4": ("square", "square", ((_R90, _NO_SHIFT),), None),
    "p4m": ("square", "square", ((_R90, _NO_SHIFT), (_SV, _NO_SHIFT)), _SV),
    "p4mg": ("square", "square", ((_R90, _NO_SHIFT), (_SV, _SHIFT_UV)), _SV),
    "p3": ("hexagonal", "hex", ((_R120, _NO_SHIFT),), None),
    "p3m1": (
        "hexagonal",
        "hex",
        ((_R120, _NO_SHIFT), (_SV_H, _NO_SHIFT)),
        _SV_H,
    ),
    "p31m": (
        "hexagonal",
        "hex",
        ((_R120, _NO_SHIFT), (_SX_H, _NO_SHIFT)),
        _SX_H,
    ),
    "p6": ("hexagonal", "hex", ((_R60, _NO_SHIFT),), None),
    "p6m": (
        "hexagonal",
        "hex",
        ((_R60, _NO_SHIFT), (_SV_H, _NO_SHIFT)),
        _SV_H,
    ),
}

# Offsets obtained by closing the generators above; tests regenerate them.
_OFFSETS: dict[str, dict[str, tuple[str, str]]] = {
    "pg": {"s": _SHIFT_V},
    "pmg2": {"s": _SHIFT_V, "r180s": _SHIFT_V},
    "pgg2": {"s": _SHIFT_UV, "r180s": _SHIFT_UV},
    "p4mg": {
        "s": _SHIFT_UV,
        "r90s": _SHIFT_UV,
        "r180s": _SHIFT_UV,
        "r270s": _SHIFT_UV,
    },
}

_GLIDE_Z: dict[str, tuple[int, int]] = {
    "pg": (0, 1),
    "pmg2": (0, 1),
    "pgg2": (1, 1),
    "p4mg": (1, 1),
}

SYNONYMS = {"pmg": "pmg2", "pgg": "pgg2", "p4g": "p4mg"}


@dataclass(frozen=True, slots=True)
class PointElement:
    """
    One element of a point group.

    ``mat_lat`` acts on lattice coordinates; ``mat_cart`` is the same map in
    Cartesian coordinates and is orthogonal. Elements of different groups
    never compare equal.
    """

    name: str
    mat_lat: Matrix2
    is_reflection: bool
    group: str
    mat_cart: tuple[tuple[float, float], tuple[float, float]] = field(
        compare=False, repr=False, default=((1.0, 0.0), (0.0, 1.0))
    )

    @property
    def det(self) -> int:
        return -1 if self.is_reflection else 1

    @property
    def cart(self) -> np.ndarray:
        return np.array(self.mat_cart, dtype=float)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class AffineElement:
    """The affine map ``[x, L]: z -> L(z + x)`` in lattice coordinates."""

    x: LatticeVector
    L: PointElement

    def __str__(self) -> str:
        return f"[{self.x}, {self.L}]"


@dataclass(frozen=True, eq=False)
class GroupData:
    """
    A wallpaper group.

    Attributes:
        name: Standard short name, e.g. ``"p4mg"``.
        lattice: ``"square"``, ``"rectangular"`` or ``"hexagonal"``.
        basis: Cartesian basis matrix ``B = [u v]`` (columns).
        gram: Exact Gram matrix ``B^T B``.
        point_group: Rotations by angle, then reflections.
        offsets: Canonical offset ``t_L`` in ``{0, 1/2}^2`` by element name.
        z: Glide vector, absent for symmorphic groups.
        d0: Names of the elements with ``t_L = 0``.
    """

    name: str
    lattice: str
    basis: tuple[tuple[float, float], tuple[float, float]]
    gram: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]
    point_group: tuple[PointElement, ...]
    offsets: Mapping[str, LatticeVector]
    z: LatticeVector | None
    d0: tuple[str, ...]
    aspect: int = DEFAULT_ASPECT

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "_by_name", {el.name: el for el in self.point_group}
        )
        object.__setattr__(
            self, "_by_mat", {el.mat_lat: el for el in self.point_group}
        )
        object.__setattr__(self, "_basis_np", np.array(self.basis))
        den = math.lcm(*(q.denominator for row in self.gram for q in row))
        object.__setattr__(self, "_gram_den", den)
        object.__setattr__(
            self,
            "_gram_num",
            tuple(tuple(int(q * den) for q in row) for row in self.gram),
        )
        object.__setattr__(
            self, "_dual_np", np.linalg.inv(np.array(self.basis))
        )

    @property
    def identity(self) -> PointElement:
        return self.point_group[0]

    @property
    def order(self) -> int:
        return len(self.point_group)

    @property
    def symmorphic(self) -> bool:
        return self.z is None

    @property
    def rotation_order(self) -> int:
        return sum(1 for el in self.point_group if not el.is_reflection)

    @property
    def is_dihedral(self) -> bool:
        return any(el.is_reflection for el in self.point_group)

    def element(self, name: str) -> PointElement:
        try:
            return self._by_name[name]
        except KeyError:
            raise PointElementNotInD(
                f"{name!r} is not in the point group of {self.name}"
            ) from None

    def check(self, L: PointElement) -> PointElement:
        """Return ``L`` if it belongs to this group's point group."""
        if L.group != self.name or self._by_name.get(L.name) != L:
            raise PointElementNotInD(
                f"{L.name} ({L.group}) is not in the point group of "
                f"{self.name}"
            )
        return L

    def from_matrix(self, mat: Matrix2) -> PointElement:
        try:
            return self._by_mat[mat]
        except KeyError:
            raise PointElementNotInD(
                f"{mat} is not in the point group of {self.name}"
            ) from None

    def compose(self, L: PointElement, M: PointElement) -> PointElement:
        """The product ``LM`` (apply ``M`` first)."""
        return self.from_matrix(mat_mul(L.mat_lat, M.mat_lat))

    def inverse(self, L: PointElement) -> PointElement:
        return self.from_matrix(mat_inv(L.mat_lat))

    def offset(self, L: PointElement) -> LatticeVector:
        return self.offsets[L.name]

    def in_d0(self, L: PointElement) -> bool:
        return L.name in self.d0

    def cartesian(self, L: PointElement) -> np.ndarray:
        return L.cart

    def to_cartesian(self, x: LatticeVector) -> np.ndarray:
        """Cartesian form ``B x``; the only inexact step for lattice data."""
        return self._basis_np @ np.array(x.floats())

    def lattice_frequency(self, omega: np.ndarray) -> tuple[float, float]:
        """Coordinates ``B^-1 omega`` of a frequency."""
        w = self._dual_np @ np.asarray(omega, dtype=float)
        return float(w[0]), float(w[1])

    def pairing(
        self, x: LatticeVector, omega: np.ndarray, mat: Matrix2 = IDENTITY
    ) -> float:
        """
        ``<B x, B mat B^-1 omega>`` reduced to ``[0, 1)``.

        Computed as ``x^T G mat w`` with ``w = B^-1 omega`` in integer
        arithmetic, so the result is exact up to the rounding of ``w`` and
        the final division however large ``x`` is.
        """
        if x.is_zero():
            return 0.0
        na, nb, pow3, half = x.numerators()
        (g00, g01), (g10, g11) = self._gram_num
        r0, r1 = na * g00 + nb * g10, na * g01 + nb * g11
        (m00, m01), (m10, m11) = mat
        s0, s1 = r0 * m00 + r1 * m10, r0 * m01 + r1 * m11
        w0, w1 = self.lattice_frequency(omega)
        p0, q0 = w0.as_integer_ratio()
        p1, q1 = w1.as_integer_ratio()
        top = s0 * p0 * q1 + s1 * p1 * q0
        bottom = self._gram_den * 3**pow3 * (2 if half else 1) * q0 * q1
        return (top % bottom) / bottom

    def basis_matrix(self) -> np.ndarray:
        return self._basis_np.copy()

    def mirror_axes(self) -> list[float]:
        """Angles in ``[0, pi)`` of the mirror lines, ascending."""
        axes = []
        for el in self.point_group:
            if el.is_reflection:
                c, s = el.mat_cart[0][0], el.mat_cart[1][0]
                angle = math.atan2(s, c) / 2 % math.pi
                if math.isclose(angle, math.pi, abs_tol=1e-12):
                    angle = 0.0
                axes.append(angle)
        return sorted(axes)

    @property
    def sector(self) -> tuple[float, float]:
        """
        Open angular sector used for the cross-section.

        Cyclic groups of order k use ``(0, 2pi/k)``. Dihedral groups use a
        sector of width ``pi/k`` bounded by two adjacent mirror axes, starting
        at the smallest mirror angle.
        """
        k = self.rotation_order
        if not self.is_dihedral:
            return 0.0, 2 * math.pi / k
        start = self.mirror_axes()[0]
        return start, start + math.pi / k

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "lattice": self.lattice,
            "basis": [list(row) for row in self.basis],
            "point_group": [
                {
                    "name": el.name,
                    "mat_lat": [list(row) for row in el.mat_lat],
                    "det": el.det,
                }
                for el in self.point_group
            ],
            "offsets": {
                name: [str(t.a), str(t.b)] for name, t in self.offsets.items()
            },
            "z": None if self.z is None else [str(self.z.a), str(self.z.b)],
            "d0": list(self.d0),
            "symmorphic": self.symmorphic,
        }


def mat_mul(A: Matrix2, B: Matrix2) -> Matrix2:
    return (
        (
            A[0][0] * B[0][0] + A[0][1] * B[1][0],
            A[0][0] * B[0][1] + A[0][1] * B[1][1],
        ),
        (
            A[1][0] * B[0][0] + A[1][1] * B[1][0],
            A[1][0] * B[0][1] + A[1][1] * B[1][1],
        ),
    )


def mat_det(A: Matrix2) -> int:
    return A[0][0] * A[1][1] - A[0][1] * A[1][0]


@lru_cache(maxsize=None)
def mat_inv(A: Matrix2) -> Matrix2:
    det = mat_det(A)
    if det not in (1, -1):
        raise ValueError(f"{A} is not unimodular")
    return ((det * A[1][1], -det * A[0][1]), (-det * A[1][0], det * A[0][0]))


def reduce_mod_lattice(x: LatticeVector) -> LatticeVector:
    """Representative of ``x`` modulo Z^2 with coordinates in ``[0, 1)``."""
    return LatticeVector(
        TriadicHalf.from_fraction(x.a.as_fraction() % 1),
        TriadicHalf.from_fraction(x.b.as_fraction() % 1),
    )


def _basis(kind: str, aspect: int) -> tuple[tuple, tuple]:
    """Return (float basis rows, exact Gram matrix)."""
    a = Fraction(aspect)
    if kind == "square":
        cols = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    elif kind == "rect":
        cols = ((Fraction(1), Fraction(0)), (Fraction(0), a))
    elif kind == "centred":
        cols = ((Fraction(1, 2), a / 2), (Fraction(-1, 2), a / 2))
    else:
        u = np.array([1.0, 0.0])
        v = np.array([0.5, math.sqrt(3) / 2])
        basis = ((u[0], v[0]), (u[1], v[1]))
        half = Fraction(1, 2)
        return basis, ((Fraction(1), half), (half, Fraction(1)))
    u, v = cols
    basis = ((float(u[0]), float(v[0])), (float(u[1]), float(v[1])))
    gram = (
        (u[0] * u[0] + u[1] * u[1], u[0] * v[0] + u[1] * v[1]),
        (u[0] * v[0] + u[1] * v[1], v[0] * v[0] + v[1] * v[1]),
    )
    return basis, gram


def _is_orthogonal(mat: Matrix2, gram) -> bool:
    """Exact test of ``mat^T G mat == G``."""
    for i in range(2):
        for j in range(2):
            total = sum(
                mat[k][i] * gram[k][m] * mat[m][j]
                for k in range(2)
                for m in range(2)
            )
            if total != gram[i][j]:
                return False
    return True


def _close_matrices(gens: Iterable[Matrix2]) -> list[Matrix2]:
    elements = [IDENTITY_MAT]
    frontier = [IDENTITY_MAT]
    gens = list(gens)
    while frontier:
        new = []
        for el in frontier:
            for gen in gens:
                prod = mat_mul(el, gen)
                if prod not in elements:
                    elements.append(prod)
                    new.append(prod)
        frontier = new
    return elements


def close_offsets(
    generators: Iterable[tuple[Matrix2, LatticeVector]],
) -> dict[Matrix2, LatticeVector]:
    """
    Close a generating set ``{[t, L]}`` (together with the lattice) into the
    full offset table.

    Returns:
        dict: Point matrix to offset reduced modulo the lattice.

    Raises:
        CatalogInconsistency: If one point element is reached with two
            different offsets, i.e. the generators contain a half-lattice
            translation.
    """
    gens = [(mat, reduce_mod_lattice(t)) for mat, t in generators]
    table: dict[Matrix2, LatticeVector] = {
        IDENTITY_MAT: LatticeVector(ZERO, ZERO)
    }
    frontier = [IDENTITY_MAT]
    while frontier:
        new = []
        for mat in frontier:
            t = table[mat]
            for g_mat, g_t in gens:
                prod = mat_mul(mat, g_mat)
                prod_t = reduce_mod_lattice(
                    t.transform(mat_inv(g_mat)) + g_t
                )
                if prod not in table:
                    table[prod] = prod_t
                    new.append(prod)
                elif table[prod] != prod_t:
                    raise CatalogInconsistency(
                        f"{prod} reached with offsets {table[prod]} "
                        f"and {prod_t}"
                    )
        frontier = new
    return table


def _name_elements(
    mats: list[Matrix2],
    basis: np.ndarray,
    mirror: Matrix2 | None,
) -> list[tuple[str, Matrix2, np.ndarray]]:
    inv_basis = np.linalg.inv(basis)
    mirror_cart = (
        None if mirror is None else basis @ np.array(mirror) @ inv_basis
    )
    rotations, reflections = [], []
    for mat in mats:
        cart = basis @ np.array(mat, dtype=float) @ inv_basis
        if mat_det(mat) == 1:
            rot = cart
        else:
            rot = cart @ mirror_cart
        deg = round(math.degrees(math.atan2(rot[1, 0], rot[0, 0]))) % 360
        if mat_det(mat) == 1:
            name = "id" if deg == 0 else f"r{deg}"
            rotations.append((deg, name, mat, cart))
        else:
            name = "s" if deg == 0 else f"r{deg}s"
            reflections.append((deg, name, mat, cart))
    ordered = sorted(rotations) + sorted(reflections)
    return [(name, mat, cart) for _, name, mat, cart in ordered]


def _build_group(
    name: str, aspect: int, log: LogFunction = default_logger
) -> GroupData:
    lattice, kind, generators, mirror = _GROUPS[name]
    basis, gram = _basis(kind, aspect)
    mats = _close_matrices(mat for mat, _ in generators)
    points = []
    for el_name, mat, cart in _name_elements(mats, np.array(basis), mirror):
        if not _is_orthogonal(mat, gram):
            raise CatalogInconsistency(f"{name}: {el_name} is not orthogonal")
        points.append(
            PointElement(
                name=el_name,
                mat_lat=mat,
                is_reflection=mat_det(mat) == -1,
                group=name,
                mat_cart=tuple(tuple(float(v) for v in row) for row in cart),
            )
        )
    frozen = _OFFSETS.get(name, {})
    offsets = {
        el.name: LatticeVector.of(*frozen.get(el.name, _NO_SHIFT))
        for el in points
    }
    z = LatticeVector.of(*_GLIDE_Z[name]) if name in _GLIDE_Z else None
    gd = GroupData(
        name=name,
        lattice=lattice,
        basis=basis,
        gram=gram,
        point_group=tuple(points),
        offsets=offsets,
        z=z,
        d0=tuple(el.name for el in points if offsets[el.name].is_zero()),
        aspect=aspect,
    )
    _check_invariants(gd)
    log(
        level="debug",
        action="build wallpaper group",
        group=name,
        order=gd.order,
        symmorphic=gd.symmorphic,
    )
    return gd


def _check_invariants(gd: GroupData) -> None:
    """Raise CatalogInconsistency if the closure or glide data is off."""
    for L in gd.point_group:
        t_L = gd.offset(L)
        for M in gd.point_group:
            LM = gd.compose(L, M)
            expected = reduce_mod_lattice(
                t_L.transform(mat_inv(M.mat_lat)) + gd.offset(M)
            )
            if expected != gd.offset(LM):
                raise CatalogInconsistency(
                    f"{gd.name}: offsets of {L.name}, {M.name} do not close"
                )
    if gd.z is None:
        if any(not t.is_zero() for t in gd.offsets.values()):
            raise CatalogInconsistency(f"{gd.name}: offsets without glide")
        return
    half_z = gd.z.halve()
    for L in gd.point_group:
        t = gd.offset(L)
        if not (t.is_zero() or t == half_z):
            raise CatalogInconsistency(f"{gd.name}: offset {t} is not z/2")


def canonical_name(name: str) -> str:
    """Resolve a synonym, raising UnknownGroup for unknown names."""
    key = name.strip()
    key = SYNONYMS.get(key, key)
    if key not in _GROUPS:
        raise UnknownGroup(name)
    return key


@lru_cache(maxsize=None)
def _cached_group(name: str, aspect: int) -> GroupData:
    return _build_group(name, aspect)


def get_group(name: str, aspect: int = DEFAULT_ASPECT) -> GroupData:
    """
    Look up a wallpaper group by name.

    Args:
        name: One of the 17 standard names, or ``pmg``, ``pgg``, ``p4g``.
        aspect: Aspect ratio of the symmorphic rectangular lattices.

    Returns:
        GroupData: Cached, invariant-checked group description.

    Raises:
        UnknownGroup: If the name is not recognised.
    """
    if aspect < 1:
        raise ValueError("aspect must be a positive integer")
    return _cached_group(canonical_name(name), int(aspect))


def list_groups() -> list[str]:
    return list(_GROUPS)


def generator_table(name: str) -> list[tuple[Matrix2, LatticeVector]]:
    """Standard generators ``[t, L]`` of a group, as used for its offsets."""
    _, _, generators, _ = _GROUPS[canonical_name(name)]
    return [(mat, LatticeVector.of(*shift)) for mat, shift in generators]


def check_compatibility(g: GroupData, d: int) -> bool:
    """
    Whether the dilation ``d * id`` normalises the group.

    Conjugating ``[t_L + n, L]`` by ``d * id`` gives ``[d t_L + dn, L]``, so
    compatibility means ``d t_L`` stays in the coset of ``t_L``.
    """
    if d < 2:
        raise ValueError("dilation factor must be at least 2")
    for L in g.point_group:
        t = g.offset(L)
        if not (t * d - t).is_integral():
            return False
    return True


def member_gamma3(g: GroupData, e: AffineElement) -> int | None:
    """
    Least ``l >= 0`` with ``[3^l x, L]`` in the group, or None.

    ``3^l x`` has no factor 3 in its denominators once ``l`` reaches the
    level of ``x``; after that, membership depends only on which coordinates
    are half-integers, which must match ``t_L``.

    Raises:
        PointElementNotInD: If ``L`` belongs to another point group.
    """
    g.check(e.L)
    t = g.offset(e.L)
    if e.x.half_pattern() != (t.a == HALF, t.b == HALF):
        return None
    return e.x.level


def member_gamma(g: GroupData, e: AffineElement) -> bool:
    return member_gamma3(g, e) == 0
