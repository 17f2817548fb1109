"""
Exact algebra of the wavelet group, the semidirect product of the triadic
closure of a wallpaper group with the integers acting by dilation by 3.

An element ``([x, L], l)`` multiplies as
``([x, L], l)([y, M], m) = ([M^-1 x + 3^-l y, LM], l + m)``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .catalog import AffineElement, GroupData, PointElement, get_group
from .catalog import member_gamma3 as _member_gamma3
from .catalog import mat_inv
from .scalar import LATTICE_ZERO, LatticeVector, TriadicHalf


class MixedGroups(ValueError):
    """Raised when elements of two different groups are combined."""

    pass


class InvalidElement(ValueError):
    """Raised when an element does not belong to the wavelet group."""

    pass


class NotInN3(ValueError):
    """Raised when a character is evaluated off the translation subgroup."""

    pass


@dataclass(frozen=True, slots=True)
class WaveletElement:
    """The element ``([x, L], ell)``; ``x`` in lattice coordinates."""

    x: LatticeVector
    L: PointElement
    ell: int = 0

    @property
    def affine(self) -> AffineElement:
        return AffineElement(self.x, self.L)

    @property
    def group(self) -> str:
        return self.L.group

    def is_identity(self) -> bool:
        return self.ell == 0 and self.L.name == "id" and self.x.is_zero()

    def __str__(self) -> str:
        return f"([{self.x}, {self.L}], {self.ell})"


def identity(gd: GroupData) -> WaveletElement:
    return WaveletElement(LATTICE_ZERO, gd.identity, 0)


def translation(gd: GroupData, x: LatticeVector) -> WaveletElement:
    """The element ``([x, id], 0)`` of the translation subgroup."""
    return WaveletElement(x, gd.identity, 0)


def dilation(gd: GroupData, ell: int) -> WaveletElement:
    return WaveletElement(LATTICE_ZERO, gd.identity, ell)


def is_valid(gd: GroupData, g: WaveletElement) -> bool:
    if g.L.group != gd.name:
        return False
    return _member_gamma3(gd, g.affine) is not None


def check_element(gd: GroupData, g: WaveletElement) -> WaveletElement:
    """
    Return ``g`` if it lies in the wavelet group of ``gd``.

    Raises:
        InvalidElement: If no power of 3 brings ``[x, L]`` into the group.
    """
    if not is_valid(gd, g):
        raise InvalidElement(f"{g} is not in the wavelet group of {gd.name}")
    return g


def _group_for(g: WaveletElement, h: WaveletElement | None = None):
    if h is not None and g.L.group != h.L.group:
        raise MixedGroups(f"{g.L.group} and {h.L.group}")
    return get_group(g.L.group)


def multiply(
    g: WaveletElement, h: WaveletElement, gd: GroupData | None = None
) -> WaveletElement:
    """
    Exact product ``g h``.

    Raises:
        MixedGroups: If ``g`` and ``h`` come from different groups.
    """
    if gd is None:
        gd = _group_for(g, h)
    elif g.L.group != gd.name or h.L.group != gd.name:
        raise MixedGroups(f"{g.L.group}, {h.L.group} and {gd.name}")
    x = g.x.transform(mat_inv(h.L.mat_lat)) + h.x.scale3(-g.ell)
    return WaveletElement(x, gd.compose(g.L, h.L), g.ell + h.ell)


def invert(g: WaveletElement, gd: GroupData | None = None) -> WaveletElement:
    """``([x, L], l)^-1 = ([-3^l L x, L^-1], -l)``."""
    gd = gd or _group_for(g)
    x = -g.x.transform(g.L.mat_lat).scale3(g.ell)
    return WaveletElement(x, gd.inverse(g.L), -g.ell)


def conjugate(
    g: WaveletElement, h: WaveletElement, gd: GroupData | None = None
) -> WaveletElement:
    """``g h g^-1``."""
    gd = gd or _group_for(g, h)
    return multiply(multiply(g, h, gd), invert(g, gd), gd)


def factor(
    g: WaveletElement, gd: GroupData | None = None
) -> tuple[WaveletElement, WaveletElement]:
    """Split ``g = ([0, id], l)([3^l x, L], 0)``."""
    gd = gd or _group_for(g)
    return (
        WaveletElement(LATTICE_ZERO, gd.identity, g.ell),
        WaveletElement(g.x.scale3(g.ell), g.L, 0),
    )


def quotient_Q(g: WaveletElement) -> tuple[PointElement, int]:
    return g.L, g.ell


def in_translation_subgroup(g: WaveletElement) -> bool:
    return g.ell == 0 and g.L.name == "id"


def theta(ell: int, e: AffineElement) -> AffineElement:
    """The dilation action ``[x, L] -> [3^-l x, L]``."""
    return AffineElement(e.x.scale3(-ell), e.L)


def section_gamma(gd: GroupData, L: PointElement, ell: int) -> WaveletElement:
    """``gamma(L, l) = ([3^-l t_L, L], l)``; ``t_L = 0`` on ``D0``."""
    gd.check(L)
    return WaveletElement(gd.offset(L).scale3(-ell), L, ell)


def decompose(
    gd: GroupData, g: WaveletElement
) -> tuple[PointElement, int, WaveletElement]:
    """
    Unique factorisation ``g = gamma(L, l) n`` with ``n`` a translation.

    Returns:
        tuple: ``(L, l, n)``.
    """
    L, ell = quotient_Q(g)
    n = multiply(invert(section_gamma(gd, L, ell), gd), g, gd)
    if not in_translation_subgroup(n):
        raise InvalidElement(f"{g} does not factor through the section")
    return L, ell, n


def char_eval(
    gd: GroupData, omega: np.ndarray, n: WaveletElement
) -> complex:
    """
    ``chi_omega(n) = exp(-2 pi i <B x, omega>)``.

    Raises:
        NotInN3: If ``n`` is not a pure translation.
    """
    if not in_translation_subgroup(n):
        raise NotInN3(f"{n} is not a translation")
    return cmath.exp(-2j * cmath.pi * gd.pairing(n.x, omega))


def dual_action(L: PointElement, ell: int, omega: np.ndarray) -> np.ndarray:
    """``(L, l) . omega = 3^l L omega`` in Cartesian coordinates."""
    return 3.0**ell * (L.cart @ np.asarray(omega, dtype=float))


def affine_cartesian(
    gd: GroupData, e: AffineElement
) -> tuple[np.ndarray, np.ndarray]:
    """Cartesian translation and orthogonal matrix of ``[x, L]``."""
    return gd.to_cartesian(e.x), e.L.cart


def random_element(
    gd: GroupData,
    rng: np.random.Generator,
    max_level: int = 3,
    max_ell: int = 3,
    span: int = 4,
) -> WaveletElement:
    """
    Draw an element ``([3^-k (t_L + n), L], l)``.

    ``L`` is uniform on the point group, ``k`` uniform on
    ``0..max_level``, ``n`` uniform on ``[-span, span]^2`` and ``l`` uniform
    on ``[-max_ell, max_ell]``.
    """
    index, level, n0, n1, ell = (
        int(v)
        for v in rng.integers(
            (0, 0, -span, -span, -max_ell),
            (gd.order, max_level + 1, span + 1, span + 1, max_ell + 1),
        )
    )
    L = gd.point_group[index]
    x = gd.offset(L) + LatticeVector(TriadicHalf(n0), TriadicHalf(n1))
    return WaveletElement(x.scale3(-level), L, ell)


def random_translation(
    gd: GroupData,
    rng: np.random.Generator,
    max_level: int = 3,
    span: int = 4,
) -> WaveletElement:
    level, n0, n1 = (
        int(v)
        for v in rng.integers(
            (0, -span, -span), (max_level + 1, span + 1, span + 1)
        )
    )
    x = LatticeVector(TriadicHalf(n0), TriadicHalf(n1))
    return translation(gd, x.scale3(-level))
