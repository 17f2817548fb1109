"""
The representations ``sigma_omega`` induced from the characters of the
translation subgroup, realised on finitely supported vectors over
``D x Z``.

``sigma_omega(g) f (M, m) = chi_omega(gamma(M, m)^-1 g gamma(L^-1 M, m - l))
f(L^-1 M, m - l)`` for ``g = ([x, L], l)``. Supports stay finite, so every
operator here is exact up to the final complex exponentials.
"""

from __future__ import annotations

import cmath
import math
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass
from functools import lru_cache
from typing import Any

import numpy as np

from .catalog import GroupData, PointElement
from .group_core import (
    InvalidElement,
    WaveletElement,
    char_eval,
    check_element,
    decompose,
    in_translation_subgroup,
    invert,
    multiply,
    section_gamma,
)

Key = tuple[PointElement, int]


class FinSuppVector:
    """
    A finitely supported complex function on ``D x Z``.

    Zero amplitudes are never stored; missing keys read as 0.
    """

    __slots__ = ("_entries",)

    def __init__(
        self,
        entries: Mapping[Key, complex] | Iterable[tuple[Key, complex]] = (),
    ) -> None:
        items = entries.items() if isinstance(entries, Mapping) else entries
        self._entries: dict[Key, complex] = {
            key: complex(amp) for key, amp in items if amp != 0
        }

    @classmethod
    def delta(cls, M: PointElement, m: int, amp: complex = 1.0):
        return cls({(M, m): amp})

    def get(self, M: PointElement, m: int) -> complex:
        return self._entries.get((M, m), 0j)

    def __getitem__(self, key: Key) -> complex:
        return self._entries.get(key, 0j)

    def __iter__(self) -> Iterator[Key]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, key: object) -> bool:
        return key in self._entries

    def items(self):
        return self._entries.items()

    def support(self) -> set[Key]:
        return set(self._entries)

    def norm_squared(self) -> float:
        return math.fsum(abs(amp) ** 2 for amp in self._entries.values())

    def norm(self) -> float:
        return math.sqrt(self.norm_squared())

    def max_difference(self, other: FinSuppVector) -> float:
        """Largest entrywise modulus of ``self - other``."""
        keys = self.support() | other.support()
        return max((abs(self[key] - other[key]) for key in keys), default=0.0)

    def to_list(self) -> list[dict[str, Any]]:
        return [
            {"L": M.name, "m": m, "re": amp.real, "im": amp.imag}
            for (M, m), amp in sorted(
                self._entries.items(),
                key=lambda item: (item[0][1], item[0][0].name),
            )
        ]

    def __repr__(self) -> str:
        body = ", ".join(
            f"({M.name}, {m}): {amp:.6g}" for (M, m), amp in self.items()
        )
        return f"FinSuppVector({{{body}}})"


@lru_cache(maxsize=1 << 16)
def cocycle_translation(
    gd: GroupData, g: WaveletElement, K: PointElement, k: int
) -> WaveletElement:
    """
    The translation ``gamma(M, m)^-1 g gamma(K, k)`` with ``(M, m)`` the
    image ``(LK, k + l)`` of ``(K, k)``.

    Raises:
        InvalidElement: If the word is not a translation, which would mean
            the section or the group data is broken.
    """
    M = gd.compose(g.L, K)
    word = multiply(
        multiply(invert(section_gamma(gd, M, k + g.ell), gd), g, gd),
        section_gamma(gd, K, k),
        gd,
    )
    if not in_translation_subgroup(word):
        raise InvalidElement(f"{word} is not a translation")
    return word


def sigma_apply(
    gd: GroupData,
    omega: np.ndarray,
    g: WaveletElement,
    f: FinSuppVector,
) -> FinSuppVector:
    """
    Apply ``sigma_omega(g)`` to ``f``.

    Raises:
        InvalidElement: If ``g`` is not in the wavelet group of ``gd``.
    """
    check_element(gd, g)
    omega = np.asarray(omega, dtype=float)
    out = {}
    for (K, k), amp in f.items():
        M = gd.compose(g.L, K)
        n = cocycle_translation(gd, g, K, k)
        out[(M, k + g.ell)] = char_eval(gd, omega, n) * amp
    return FinSuppVector(out)


def branch_label(gd: GroupData, L: PointElement, M: PointElement) -> str:
    """``"d0"``, ``"glide_to_d0"`` or ``"glide_to_glide"``."""
    if gd.in_d0(L):
        return "d0"
    return "glide_to_d0" if gd.in_d0(M) else "glide_to_glide"


def sigma_branch_oracle(
    gd: GroupData,
    omega: np.ndarray,
    g: WaveletElement,
    M: PointElement,
    m: int,
) -> complex:
    """
    Phase of ``sigma_omega(g)`` at ``(M, m)`` by the three-case formula.

    With ``s = <z, omega>``: ``L`` in ``D0`` gives the plain character
    ``exp(-2 pi i <x, 3^m L^-1 M omega>)``; otherwise it carries an extra
    ``exp(-pi i s)`` when ``M`` is in ``D0`` and ``exp(pi i s)`` when not.
    """
    K = gd.compose(gd.inverse(g.L), M)
    phase = -gd.pairing(g.x.scale3(m), omega, K.mat_lat)
    label = branch_label(gd, g.L, M)
    if label != "d0":
        # exp(+-pi i s) as a pairing with z / 2
        sign = -1 if label == "glide_to_d0" else 1
        phase += sign * gd.pairing(gd.z.halve(), omega)
    return cmath.exp(2j * cmath.pi * (phase % 1.0))


def covariant_extend(
    gd: GroupData,
    omega: np.ndarray,
    f: FinSuppVector,
    g: WaveletElement,
) -> complex:
    """
    Value at ``g`` of the covariant function built from ``f``.

    With ``g = gamma(L, l) n`` the value is ``conj(chi_omega(n)) f(L, l)``.
    """
    L, ell, n = decompose(gd, g)
    amp = f.get(L, ell)
    if amp == 0:
        return 0j
    return char_eval(gd, omega, n).conjugate() * amp


def u_omega_apply(
    gd: GroupData,
    omega: np.ndarray,
    g: WaveletElement,
    f: FinSuppVector,
) -> FinSuppVector:
    """
    Left translation by ``g`` on covariant functions, read back along the
    section: ``(U f)(M, m) = Wf(g^-1 gamma(M, m))``.
    """
    check_element(gd, g)
    g_inv = invert(g, gd)
    out = {}
    for K, k in f:
        M, m = gd.compose(g.L, K), k + g.ell
        out[(M, m)] = covariant_extend(
            gd, omega, f, multiply(g_inv, section_gamma(gd, M, m), gd)
        )
    return FinSuppVector(out)


def twist_eval(gd: GroupData, omega: np.ndarray, L: PointElement) -> complex:
    """
    ``c(omega, L) = exp(-+ pi i <z, omega> / 2)``, minus on ``D0``.

    Identically 1 for symmorphic groups.
    """
    if gd.z is None:
        return 1 + 0j
    s = float(np.dot(gd.to_cartesian(gd.z), np.asarray(omega, dtype=float)))
    sign = -1 if gd.in_d0(L) else 1
    return complex(np.exp(sign * 1j * np.pi * s / 2))


@dataclass(frozen=True, eq=False)
class EquivalenceWitness:
    """
    Intertwiner from ``sigma_omega`` to ``sigma_omega2`` where
    ``omega2 = 3^p P omega``.

    ``J f (M, m) = Wf(gamma(M, m) gamma(P, p))``: right translation by
    ``gamma(P, p)`` turns ``omega``-covariant functions into
    ``omega2``-covariant ones and commutes with left translation.
    """

    group: GroupData
    omega: np.ndarray
    omega2: np.ndarray
    P: PointElement
    p: int

    def apply(self, f: FinSuppVector) -> FinSuppVector:
        gd = self.group
        shift = section_gamma(gd, self.P, self.p)
        P_inv = gd.inverse(self.P)
        out = {}
        for K, k in f:
            M, m = gd.compose(K, P_inv), k - self.p
            out[(M, m)] = covariant_extend(
                gd,
                self.omega,
                f,
                multiply(section_gamma(gd, M, m), shift, gd),
            )
        return FinSuppVector(out)


def equivalence_intertwiner(
    gd: GroupData,
    omega: np.ndarray,
    omega2: np.ndarray,
    tol: float = 1e-9,
) -> EquivalenceWitness | None:
    """
    Search for ``(P, p)`` with ``omega2 = 3^p P omega``.

    Returns:
        EquivalenceWitness | None: The intertwiner, or None when the two
            frequencies lie on different orbits.
    """
    omega = np.asarray(omega, dtype=float)
    omega2 = np.asarray(omega2, dtype=float)
    n1, n2 = float(np.linalg.norm(omega)), float(np.linalg.norm(omega2))
    if n1 == 0.0 or n2 == 0.0:
        if n1 == n2:
            return EquivalenceWitness(gd, omega, omega2, gd.identity, 0)
        return None
    p = round(math.log(n2 / n1, 3))
    scale = max(1.0, n2)
    for P in gd.point_group:
        if np.linalg.norm(3.0**p * (P.cart @ omega) - omega2) <= tol * scale:
            return EquivalenceWitness(gd, omega, omega2, P, p)
    return None
