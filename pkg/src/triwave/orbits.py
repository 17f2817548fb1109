"""
Orbits of the point group times dilations on the frequency plane.

The cross-section is the set ``X`` of frequencies with angle strictly inside
the group's sector and norm in ``[1, 3)``. Almost every frequency is
``3^l L w`` for exactly one ``w`` in ``X`` and one pair ``(L, l)``; the
frequencies left over lie on the rays bounding the sector copies.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

from .catalog import GroupData, PointElement

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class CanonicalForm:
    """``omega = 3^ell L omega_prime`` with ``omega_prime`` in ``X``."""

    omega_prime: tuple[float, float]
    L: PointElement
    ell: int

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.omega_prime)


@dataclass(frozen=True)
class Boundary:
    """The orbit only meets rays bounding the sector copies."""


@dataclass(frozen=True)
class Zero:
    """The origin, fixed by everything."""


BOUNDARY = Boundary()
ZERO = Zero()


@dataclass(frozen=True, eq=False)
class CrossSection:
    """
    A weak cross-section: an open sector intersected with ``1 <= r < 3``.

    Attributes:
        group: The wallpaper group whose point group acts.
        theta1: Lower sector bound (radians).
        theta2: Upper sector bound (radians).
        boundary_tol: Angles this close to a bound count as boundary.
    """

    group: GroupData
    theta1: float
    theta2: float
    boundary_tol: float = 1e-9
    r_min: float = 1.0
    r_max: float = 3.0

    @property
    def width(self) -> float:
        return self.theta2 - self.theta1

    @property
    def area(self) -> float:
        return self.width * (self.r_max**2 - self.r_min**2) / 2

    def relative_angle(self, omega: np.ndarray) -> float:
        """Angle of ``omega`` measured from ``theta1``, in ``[0, 2 pi)``."""
        return (math.atan2(omega[1], omega[0]) - self.theta1) % TWO_PI

    def angle_inside(self, omega: np.ndarray) -> bool:
        rel = self.relative_angle(omega)
        tol = self.boundary_tol
        return tol < rel < self.width - tol

    def contains(self, omega: np.ndarray) -> bool:
        omega = np.asarray(omega, dtype=float)
        r = float(np.hypot(omega[0], omega[1]))
        return self.r_min <= r < self.r_max and self.angle_inside(omega)

    def sample(self, rng: np.random.Generator, count: int) -> np.ndarray:
        """``count`` points drawn uniformly (by area) from ``X``."""
        r = np.sqrt(rng.uniform(self.r_min**2, self.r_max**2, size=count))
        theta = rng.uniform(self.theta1, self.theta2, size=count)
        return np.column_stack([r * np.cos(theta), r * np.sin(theta)])


def build_cross_section(
    gd: GroupData, boundary_tol: float = 1e-9
) -> CrossSection:
    theta1, theta2 = gd.sector
    return CrossSection(gd, theta1, theta2, boundary_tol)


def dilation_exponent(r: float) -> int:
    """The integer ``l`` with ``1 <= 3^-l r < 3``."""
    ell = math.floor(math.log(r, 3))
    while r / 3.0**ell < 1:
        ell -= 1
    while r / 3.0**ell >= 3:
        ell += 1
    return ell


def canonicalize(
    cs: CrossSection, omega: np.ndarray
) -> CanonicalForm | Boundary | Zero:
    """
    Write ``omega = 3^l L omega'`` with ``omega'`` in the cross-section.

    Returns:
        CanonicalForm | Boundary | Zero: The unique witness, ``BOUNDARY`` if
            the orbit only touches sector bounds, ``ZERO`` for the origin.
    """
    omega = np.asarray(omega, dtype=float)
    r = float(np.hypot(omega[0], omega[1]))
    if r == 0.0:
        return ZERO
    ell = dilation_exponent(r)
    scale = 3.0**ell
    for L in cs.group.point_group:
        rotated = L.cart.T @ omega
        if cs.angle_inside(rotated):
            prime = rotated / scale
            return CanonicalForm((float(prime[0]), float(prime[1])), L, ell)
    return BOUNDARY


def stabilizer(
    gd: GroupData, omega: np.ndarray, tol: float = 1e-9
) -> list[PointElement]:
    """Point-group elements fixing ``omega`` (to ``tol`` relative)."""
    omega = np.asarray(omega, dtype=float)
    scale = max(1.0, float(np.linalg.norm(omega)))
    return [
        L
        for L in gd.point_group
        if np.linalg.norm(L.cart @ omega - omega) <= tol * scale
    ]


def irreducible(gd: GroupData, omega: np.ndarray, tol: float = 1e-9) -> bool:
    return [L.name for L in stabilizer(gd, omega, tol)] == ["id"]


def same_orbit(
    gd: GroupData,
    omega: np.ndarray,
    omega2: np.ndarray,
    tol: float = 1e-9,
) -> bool:
    """
    Whether ``omega2 = 3^l L omega`` for some ``L`` and integer ``l``.

    Works directly on directions and norm ratios, so boundary orbits are
    compared the same way as generic ones.
    """
    w1 = np.asarray(omega, dtype=float)
    w2 = np.asarray(omega2, dtype=float)
    n1, n2 = float(np.linalg.norm(w1)), float(np.linalg.norm(w2))
    if n1 == 0.0 or n2 == 0.0:
        return n1 == n2
    ratio = n2 / n1
    ell = round(math.log(ratio, 3))
    if abs(ratio / 3.0**ell - 1) > tol:
        return False
    target = w2 / n2
    for L in gd.point_group:
        image = L.cart @ w1 / n1
        if np.linalg.norm(image - target) <= tol:
            return True
    return False


def orbit_points(
    gd: GroupData, omega: np.ndarray, ells: Iterable[int] = (-1, 0, 1)
) -> list[tuple[PointElement, int, np.ndarray]]:
    """The points ``3^l L omega`` for every ``L`` and each ``l`` given."""
    omega = np.asarray(omega, dtype=float)
    return [
        (L, ell, 3.0**ell * (L.cart @ omega))
        for ell in ells
        for L in gd.point_group
    ]


def overlapping_copies(
    cs: CrossSection, omega: np.ndarray, max_ell: int = 3
) -> list[tuple[PointElement, int]]:
    """
    Pairs ``(L, l) != (id, 0)`` with ``3^l L omega`` back in ``X``.

    Empty for every ``omega`` in ``X`` when the copies of ``X`` are disjoint.
    """
    found = []
    for L, ell, point in orbit_points(
        cs.group, omega, range(-max_ell, max_ell + 1)
    ):
        if (L.name, ell) != ("id", 0) and cs.contains(point):
            found.append((L, ell))
    return found
