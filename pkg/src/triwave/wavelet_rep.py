"""
The wavelet representation ``V([x, L], l) = R[x, L] D_3^l`` on Gaussian
packets, its Fourier conjugate, the map ``rho`` onto fibres over the
cross-section, and the numerical check that ``rho`` intertwines the
Fourier-side representation with the induced representations fibre by fibre.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable
from typing import TypeAlias

import numpy as np
from pydantic import BaseModel, Field

from ._logging.triwave_logger import triwave_logger as default_logger
from ._validators import validate as default_validator
from ._validators import validate_vector
from .catalog import AffineElement, GroupData, PointElement
from .group_core import (
    InvalidElement,
    WaveletElement,
    affine_cartesian,
    check_element,
    dilation,
    random_element,
)
from .induced import (
    FinSuppVector,
    branch_label,
    sigma_apply,
    sigma_branch_oracle,
    twist_eval,
)
from .notation import format_element
from .orbits import CanonicalForm, CrossSection, canonicalize
from .packets import (
    GENERIC_PACKET,
    GaussianPacket,
    PacketSum,
    as_sum,
    packet_norm,
)

LogFunction: TypeAlias = Callable[..., None]
ValidatorFunction: TypeAlias = Callable[..., None]
Packets: TypeAlias = GaussianPacket | PacketSum
FiberRule: TypeAlias = Callable[[np.ndarray, PointElement, int], complex]


class OmegaOutsideX(ValueError):
    """Raised when a fibre is requested off the cross-section."""

    pass


def apply_R(gd: GroupData, e: AffineElement, p: Packets) -> PacketSum:
    """``R[x, L] g(y) = g(L^-1 y - x)``."""
    gd.check(e.L)
    x_c, L_c = affine_cartesian(gd, e)
    return as_sum(p).map(lambda q: q.substitute(x_c, L_c, 0))


def apply_D3(p: Packets, power: int = 1) -> PacketSum:
    """``D_3^k g(y) = 3^k g(3^k y)``."""
    return as_sum(p).map(lambda q: q.substitute(np.zeros(2), np.eye(2), power))


def apply_V(gd: GroupData, g: WaveletElement, p: Packets) -> PacketSum:
    """``V(g) g(y) = 3^l g(3^l (L^-1 y - x))``."""
    check_element(gd, g)
    x_c, L_c = affine_cartesian(gd, g.affine)
    return as_sum(p).map(lambda q: q.substitute(x_c, L_c, g.ell))


def fourier(p: Packets) -> PacketSum:
    return as_sum(p).fourier()


def inverse_fourier(p: Packets) -> PacketSum:
    return as_sum(p).inverse_fourier()


def apply_Vhat(gd: GroupData, g: WaveletElement, h: Packets) -> PacketSum:
    """``V^(g) h(w) = 3^-l exp(-2 pi i <x, L^-1 w>) h(3^-l L^-1 w)``."""
    check_element(gd, g)
    x_c, L_c = affine_cartesian(gd, g.affine)
    return as_sum(h).map(lambda q: q.frequency_substitute(x_c, L_c, g.ell))


def _twist_array(
    gd: GroupData, omegas: np.ndarray, M: PointElement
) -> np.ndarray | complex:
    if gd.z is None:
        return 1.0
    s = omegas @ gd.to_cartesian(gd.z)
    sign = -1 if gd.in_d0(M) else 1
    return np.exp(sign * 1j * np.pi * s / 2)


def rho_values(
    gd: GroupData,
    phi: Packets,
    omegas: np.ndarray,
    M: PointElement,
    j: int,
) -> np.ndarray:
    """``3^j c(w, M) phi(3^j M w)`` along the last axis of ``omegas``."""
    omegas = np.asarray(omegas, dtype=float)
    points = 3.0**j * (omegas @ M.cart.T)
    return 3.0**j * _twist_array(gd, omegas, M) * as_sum(phi)(points)


def rho_eval(
    gd: GroupData,
    cs: CrossSection,
    phi: Packets,
    omega: np.ndarray,
    M: PointElement,
    j: int,
) -> complex:
    """
    ``rho(phi)(w, M, j) = 3^j c(w, M) phi(3^j M w)``.

    Raises:
        OmegaOutsideX: If ``omega`` is not in the cross-section.
    """
    omega = validate_vector(omega, "omega")
    if not cs.contains(omega):
        raise OmegaOutsideX(f"{omega.tolist()} is outside the cross-section")
    gd.check(M)
    return (
        3.0**j
        * twist_eval(gd, omega, M)
        * complex(as_sum(phi)(3.0**j * (M.cart @ omega)))
    )


class FiberFunction:
    """
    A function ``(w, M, j) -> complex`` on ``X x D x Z``.

    Each fibre ``w`` is a vector over ``D x Z``; ``fiber`` collects it on a
    window of ``j`` values.
    """

    def __init__(
        self, group: GroupData, cross_section: CrossSection, rule: FiberRule
    ) -> None:
        self.group = group
        self.cross_section = cross_section
        self.rule = rule

    @classmethod
    def rho(
        cls, gd: GroupData, cs: CrossSection, phi: Packets
    ) -> FiberFunction:
        """The fibre function ``rho(phi)``."""
        phi = as_sum(phi)

        def rule(omega: np.ndarray, M: PointElement, j: int) -> complex:
            return complex(rho_values(gd, phi, omega, M, j))

        return cls(gd, cs, rule)

    def __call__(self, omega: np.ndarray, M: PointElement, j: int) -> complex:
        return self.rule(np.asarray(omega, dtype=float), M, j)

    def fiber(self, omega: np.ndarray, ells: Iterable[int]) -> FinSuppVector:
        omega = np.asarray(omega, dtype=float)
        return FinSuppVector(
            ((M, j), self(omega, M, j))
            for j in ells
            for M in self.group.point_group
        )


def rho_inverse_eval(
    gd: GroupData, cs: CrossSection, F: FiberFunction, xi: np.ndarray
) -> complex:
    """
    Reassemble a plane function from fibres.

    ``xi = 3^l L w`` with ``w`` in ``X`` picks the single fibre entry
    ``(w, L, l)``, giving ``3^-l conj(c(w, L)) F(w, L, l)``. Boundary
    frequencies and the origin give 0.
    """
    canon = canonicalize(cs, xi)
    if not isinstance(canon, CanonicalForm):
        return 0j
    omega = canon.vector
    return (
        3.0 ** (-canon.ell)
        * twist_eval(gd, omega, canon.L).conjugate()
        * F(omega, canon.L, canon.ell)
    )


def apply_Vtilde(
    gd: GroupData, cs: CrossSection, g: WaveletElement, F: FiberFunction
) -> FiberFunction:
    """
    ``V~(g) F(w, M, j) = phase * F(w, L^-1 M, j - l)`` with the three-case
    phase of the induced representations.
    """
    check_element(gd, g)
    L_inv = gd.inverse(g.L)

    def rule(omega: np.ndarray, M: PointElement, j: int) -> complex:
        phase = sigma_branch_oracle(gd, omega, g, M, j)
        return phase * F(omega, gd.compose(L_inv, M), j - g.ell)

    return FiberFunction(gd, cs, rule)


def conjugated_vhat(
    gd: GroupData, cs: CrossSection, g: WaveletElement, F: FiberFunction
) -> FiberFunction:
    """``rho V^(g) rho^-1`` evaluated pointwise, with no closed forms."""
    check_element(gd, g)
    x_c, L_c = affine_cartesian(gd, g.affine)
    scale = 3.0**g.ell

    def rule(omega: np.ndarray, M: PointElement, j: int) -> complex:
        xi = 3.0**j * (M.cart @ omega)
        pulled = L_c.T @ xi / scale
        vhat = (
            np.exp(-2j * np.pi * float(np.dot(L_c @ x_c, xi)))
            / scale
            * rho_inverse_eval(gd, cs, F, pulled)
        )
        return complex(3.0**j * twist_eval(gd, omega, M) * vhat)

    return FiberFunction(gd, cs, rule)


def fiber_range(phi: Packets, eps: float = 1e-12) -> tuple[int, int]:
    """
    Window ``j_min..j_max`` outside which fibres of ``rho(phi)`` carry a
    relative squared norm below ``eps``.

    Small ``j`` sees ``phi`` on the disc of radius ``3^(j+1)``, bounded via
    ``sup |phi|``; large ``j`` sees ``phi`` beyond its Gaussian decay radius.
    """
    phi = as_sum(phi)
    norm_sq = packet_norm(phi) ** 2
    sup = phi.sup_bound()
    outer = max(
        float(np.linalg.norm(p.center))
        + math.sqrt(math.log(1 / eps) / (math.pi * p.min_eig))
        for p in phi
    )
    j_max = math.ceil(math.log(outer, 3)) + 1
    j_min = j_max
    while math.pi * 9.0 ** (j_min + 1) * sup**2 > eps * norm_sq:
        j_min -= 1
    return j_min, j_max


def rho_norm_quadrature(
    gd: GroupData,
    cs: CrossSection,
    phi: Packets,
    radial: int = 64,
    angular: int = 64,
    eps: float = 1e-14,
) -> float:
    """
    ``||rho(phi)||`` by quadrature over ``X x D x {j_min..j_max}``.

    Gauss-Legendre in the radius on ``[1, 3)``, midpoint rule in the angle.
    Summed over ``D`` the angular integrand is periodic over the sector, or
    even about mirror bounds, so the midpoint rule converges spectrally.
    """
    nodes, weights = np.polynomial.legendre.leggauss(radial)
    r = 2.0 + nodes
    step = cs.width / angular
    theta = cs.theta1 + (np.arange(angular) + 0.5) * step
    rr, tt = np.meshgrid(r, theta, indexing="ij")
    omegas = np.stack([rr * np.cos(tt), rr * np.sin(tt)], axis=-1)
    area = (weights * r)[:, None] * step
    j_min, j_max = fiber_range(phi, eps)
    total = 0.0
    for j in range(j_min, j_max + 1):
        for M in gd.point_group:
            values = rho_values(gd, phi, omegas, M, j)
            total += float(np.sum(area * np.abs(values) ** 2))
    return math.sqrt(total)


def check_faithful(
    gd: GroupData,
    g: WaveletElement,
    phi: Packets = GENERIC_PACKET,
    half_width: float = 3.0,
    points: int = 41,
) -> float:
    """``max |V(g) phi - phi|`` over a square grid."""
    axis = np.linspace(-half_width, half_width, points)
    gx, gy = np.meshgrid(axis, axis, indexing="ij")
    y = np.stack([gx, gy], axis=-1)
    moved = apply_V(gd, g, phi)(y)
    return float(np.max(np.abs(moved - as_sum(phi)(y))))


class IntertwiningReport(BaseModel):
    """Residuals of ``rho V^(g) phi`` against ``sigma_w(g) rho phi``."""

    group: str
    element: str
    cases: int = 0
    max_residual: float = 0.0
    branch_max: dict[str, float] = Field(default_factory=dict)
    oracle_max: float = 0.0
    passed: bool = False
    error: str | None = None


def verify_intertwining(
    gd: GroupData,
    cs: CrossSection,
    g: WaveletElement,
    phi: Packets,
    samples: int,
    rng: np.random.Generator,
    per_omega: int = 20,
    window: tuple[int, int] | None = None,
    tol: float = 1e-9,
) -> IntertwiningReport:
    """
    Compare both sides of the intertwining relation at sampled
    ``(w, M, j)``.

    The left side evaluates the closed-form packet ``V^(g) phi`` through
    ``rho``. The right side builds the whole fibre of ``rho(phi)`` at ``w``
    as a finitely supported vector and applies ``sigma_w(g)`` to it.
    """
    check_element(gd, g)
    phi = as_sum(phi)
    moved = apply_Vhat(gd, g, phi)
    j_lo, j_hi = window or fiber_range(phi)
    fiber = FiberFunction.rho(gd, cs, phi)
    report = IntertwiningReport(group=gd.name, element=format_element(g))
    omegas = cs.sample(rng, max(1, math.ceil(samples / per_omega)))
    ks = range(j_lo - g.ell, j_hi - g.ell + 1)
    for omega in omegas:
        image = sigma_apply(gd, omega, g, fiber.fiber(omega, ks))
        for _ in range(per_omega):
            if report.cases >= samples:
                break
            M = gd.point_group[int(rng.integers(gd.order))]
            j = int(rng.integers(j_lo, j_hi + 1))
            lhs = rho_eval(gd, cs, moved, omega, M, j)
            residual = abs(lhs - image.get(M, j))
            label = branch_label(gd, g.L, M)
            report.branch_max[label] = max(
                report.branch_max.get(label, 0.0), residual
            )
            report.max_residual = max(report.max_residual, residual)
            source = fiber(omega, gd.compose(gd.inverse(g.L), M), j - g.ell)
            oracle = sigma_branch_oracle(gd, omega, g, M, j) * source
            report.oracle_max = max(
                report.oracle_max, abs(oracle - image.get(M, j))
            )
            report.cases += 1
    report.passed = report.max_residual <= tol
    return report


class IntertwiningVerifier:
    """
    Runs the intertwining check for one group over many elements.

    Failures to build an element or a packet are logged and reported rather
    than raised.
    """

    def __init__(
        self,
        gd: GroupData,
        cs: CrossSection,
        validator: ValidatorFunction = default_validator,
        log_function: LogFunction = default_logger,
    ) -> None:
        self.gd = gd
        self.cs = cs
        self.validator = validator
        self.log = log_function

    def verify(
        self,
        g: WaveletElement,
        phi: Packets,
        samples: int = 1000,
        seed: int = 0,
        tol: float = 1e-9,
        window: tuple[int, int] | None = None,
    ) -> IntertwiningReport:
        try:
            self.validator(g, WaveletElement, name="element")
            self.validator(phi, (GaussianPacket, PacketSum), name="phi")
            report = verify_intertwining(
                self.gd,
                self.cs,
                g,
                phi,
                samples,
                np.random.default_rng(seed),
                window=window,
                tol=tol,
            )
        except (InvalidElement, ValueError, TypeError) as e:
            self.log(
                level="error",
                action="verify intertwining",
                group=self.gd.name,
                element=str(g),
                exception=e,
            )
            return IntertwiningReport(
                group=self.gd.name, element=str(g), error=str(e)
            )
        level = "info" if report.passed else "warning"
        self.log(
            level=level,
            action="verify intertwining",
            group=self.gd.name,
            element=report.element,
            cases=report.cases,
            max_residual=report.max_residual,
        )
        return report

    def verify_many(
        self,
        elements: Iterable[WaveletElement],
        phi: Packets,
        samples: int = 1000,
        seed: int = 0,
        tol: float = 1e-9,
    ) -> list[IntertwiningReport]:
        return [
            self.verify(g, phi, samples, seed + i, tol)
            for i, g in enumerate(elements)
        ]


def witness_elements(
    gd: GroupData, rng: np.random.Generator, count: int
) -> list[WaveletElement]:
    """
    Elements for the intertwining check: a pure dilation, every non-trivial
    point element with its offset, then random elements.
    """
    elements = [dilation(gd, 1), dilation(gd, -2)]
    for L in gd.point_group[1:]:
        elements.append(WaveletElement(gd.offset(L), L, 0))
    while len(elements) < count:
        elements.append(random_element(gd, rng, max_level=2, max_ell=2))
    return elements[: max(count, 1)]


def faithfulness_margin(
    gd: GroupData, rng: np.random.Generator, count: int
) -> float:
    """Smallest ``max |V(g) phi - phi|`` over random non-identity ``g``."""
    margins = []
    while len(margins) < count:
        g = random_element(gd, rng)
        if not g.is_identity():
            margins.append(check_faithful(gd, g))
    return min(margins)
