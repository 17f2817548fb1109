"""
Gaussian packets: ``y -> c exp(-pi (y-a)^T P (y-a) + 2 pi i <b, y>)``.

The family is closed under rigid motions, dilations and the Fourier
transform ``F g(w) = int g(y) exp(-2 pi i <y, w>) dy``, so every operator of
the wavelet representation acts on the four parameters in closed form.
Finite sums of packets are the test functions.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass, replace
from typing import Any

import numpy as np

from ._validators import validate_vector


@dataclass(frozen=True, eq=False)
class GaussianPacket:
    """
    One Gaussian packet.

    Attributes:
        amp: Complex amplitude ``c``.
        center: Real centre ``a``.
        quad: Symmetric positive-definite matrix ``P``.
        freq: Real modulation frequency ``b``.
    """

    amp: complex
    center: np.ndarray
    quad: np.ndarray
    freq: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "amp", complex(self.amp))
        object.__setattr__(
            self, "center", validate_vector(self.center, "center")
        )
        object.__setattr__(self, "freq", validate_vector(self.freq, "freq"))
        quad = np.asarray(self.quad, dtype=float)
        if quad.shape != (2, 2) or not np.all(np.isfinite(quad)):
            raise ValueError("quad must be a finite 2x2 matrix")
        scale = max(1.0, float(np.max(np.abs(quad))))
        if np.max(np.abs(quad - quad.T)) > 1e-10 * scale:
            raise ValueError("quad must be symmetric")
        quad = (quad + quad.T) / 2
        if np.linalg.eigvalsh(quad)[0] <= 0:
            raise ValueError("quad must be positive definite")
        object.__setattr__(self, "quad", quad)

    @classmethod
    def standard(cls) -> GaussianPacket:
        """``exp(-pi |y|^2)``, its own Fourier transform."""
        return cls(1.0, np.zeros(2), np.eye(2), np.zeros(2))

    @classmethod
    def from_params(cls, values: Iterable[Any]) -> GaussianPacket:
        """Build from ``c, a1, a2, p11, p12, p22, b1, b2``."""
        c, a1, a2, p11, p12, p22, b1, b2 = values
        return cls(
            complex(c),
            np.array([float(a1), float(a2)]),
            np.array([[float(p11), float(p12)], [float(p12), float(p22)]]),
            np.array([float(b1), float(b2)]),
        )

    @property
    def min_eig(self) -> float:
        return float(np.linalg.eigvalsh(self.quad)[0])

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.quad))

    def __call__(self, y: np.ndarray) -> np.ndarray | complex:
        y = np.asarray(y, dtype=float)
        d = y - self.center
        q = np.einsum("...i,ij,...j->...", d, self.quad, d)
        phase = y @ self.freq
        value = self.amp * np.exp(-np.pi * q + 2j * np.pi * phase)
        return complex(value) if np.ndim(value) == 0 else value

    def scaled(self, factor: complex) -> GaussianPacket:
        return replace(self, amp=self.amp * factor)

    def substitute(
        self, x: np.ndarray, L: np.ndarray, ell: int
    ) -> GaussianPacket:
        """
        The packet ``y -> 3^l g(3^l (L^T y - x))`` for orthogonal ``L``.

        This is ``R[x, L] D_3^l`` in Cartesian form.
        """
        scale = 3.0**ell
        x = np.asarray(x, dtype=float)
        return GaussianPacket(
            amp=scale
            * self.amp
            * np.exp(-2j * np.pi * scale * (self.freq @ x)),
            center=L @ (x + self.center / scale),
            quad=scale**2 * (L @ self.quad @ L.T),
            freq=scale * (L @ self.freq),
        )

    def frequency_substitute(
        self, x: np.ndarray, L: np.ndarray, ell: int
    ) -> GaussianPacket:
        """
        The packet ``w -> 3^-l exp(-2 pi i <L x, w>) h(3^-l L^T w)``.

        This is the Fourier-side image of :meth:`substitute`.
        """
        scale = 3.0**ell
        x = np.asarray(x, dtype=float)
        return GaussianPacket(
            amp=self.amp / scale,
            center=scale * (L @ self.center),
            quad=(L @ self.quad @ L.T) / scale**2,
            freq=(L @ self.freq) / scale - L @ x,
        )

    def fourier(self) -> GaussianPacket:
        """Closed form of ``F g(w) = int g(y) exp(-2 pi i <y,w>) dy``."""
        a, b = self.center, self.freq
        return GaussianPacket(
            amp=self.amp / math.sqrt(self.det) * np.exp(2j * np.pi * (a @ b)),
            center=b,
            quad=np.linalg.inv(self.quad),
            freq=-a,
        )

    def inverse_fourier(self) -> GaussianPacket:
        a, b = self.center, self.freq
        return GaussianPacket(
            amp=self.amp / math.sqrt(self.det) * np.exp(2j * np.pi * (a @ b)),
            center=-b,
            quad=np.linalg.inv(self.quad),
            freq=a,
        )

    def to_dict(self) -> dict[str, Any]:
        return {
            "amp": [self.amp.real, self.amp.imag],
            "center": self.center.tolist(),
            "quad": self.quad.tolist(),
            "freq": self.freq.tolist(),
        }


class PacketSum:
    """A finite linear combination of Gaussian packets."""

    __slots__ = ("packets",)

    def __init__(self, packets: Iterable[GaussianPacket] = ()) -> None:
        self.packets: tuple[GaussianPacket, ...] = tuple(packets)

    @classmethod
    def of(cls, *packets: GaussianPacket) -> PacketSum:
        return cls(packets)

    def __iter__(self) -> Iterator[GaussianPacket]:
        return iter(self.packets)

    def __len__(self) -> int:
        return len(self.packets)

    def __add__(self, other: PacketSum) -> PacketSum:
        return PacketSum(self.packets + other.packets)

    def map(self, fn: Callable[[GaussianPacket], GaussianPacket]) -> PacketSum:
        return PacketSum(fn(p) for p in self.packets)

    def scaled(self, factor: complex) -> PacketSum:
        return self.map(lambda p: p.scaled(factor))

    def __call__(self, y: np.ndarray) -> np.ndarray | complex:
        y = np.asarray(y, dtype=float)
        total = np.zeros(y.shape[:-1], dtype=complex)
        for p in self.packets:
            total = total + p(y)
        return complex(total) if np.ndim(total) == 0 else total

    def fourier(self) -> PacketSum:
        return self.map(GaussianPacket.fourier)

    def inverse_fourier(self) -> PacketSum:
        return self.map(GaussianPacket.inverse_fourier)

    def sup_bound(self) -> float:
        """An upper bound for ``sup |g|``."""
        return sum(abs(p.amp) for p in self.packets)

    def to_list(self) -> list[dict[str, Any]]:
        return [p.to_dict() for p in self.packets]


def as_sum(p: GaussianPacket | PacketSum) -> PacketSum:
    return p if isinstance(p, PacketSum) else PacketSum.of(p)


def packet_eval(
    p: GaussianPacket | PacketSum, y: np.ndarray
) -> np.ndarray | complex:
    """Evaluate at one point ``y`` or along the last axis of an array."""
    return as_sum(p)(y)


def _pair_inner(p: GaussianPacket, q: GaussianPacket) -> complex:
    A = p.quad + q.quad
    beta = p.quad @ p.center + q.quad @ q.center + 1j * (p.freq - q.freq)
    exponent = np.pi * (beta @ np.linalg.solve(A, beta)) - np.pi * (
        p.center @ p.quad @ p.center + q.center @ q.quad @ q.center
    )
    scale = p.amp * q.amp.conjugate() / math.sqrt(np.linalg.det(A))
    return complex(scale * np.exp(exponent))


def packet_inner(
    p: GaussianPacket | PacketSum, q: GaussianPacket | PacketSum
) -> complex:
    """Closed-form ``<p, q> = int p(y) conj(q(y)) dy``."""
    return sum(
        (_pair_inner(pi, qj) for pi in as_sum(p) for qj in as_sum(q)), 0j
    )


def packet_norm(p: GaussianPacket | PacketSum) -> float:
    return math.sqrt(max(packet_inner(p, p).real, 0.0))


def monte_carlo_inner(
    p: GaussianPacket | PacketSum,
    q: GaussianPacket | PacketSum,
    samples: int = 1_000_000,
    seed: int = 0,
) -> complex:
    """
    Importance-sampled estimate of ``<p, q>``.

    Points are drawn from an isotropic normal centred on the mean packet
    centre, wide enough that the weight ratio has finite variance.
    """
    ps, qs = as_sum(p), as_sum(q)
    packets = list(ps) + list(qs)
    mean = np.mean([pk.center for pk in packets], axis=0)
    lam = min(
        float(np.linalg.eigvalsh(a.quad + b.quad)[0]) for a in ps for b in qs
    )
    sigma = 1.0 / math.sqrt(math.pi * lam)
    rng = np.random.default_rng(seed)
    y = mean + sigma * rng.standard_normal((samples, 2))
    density = np.exp(-np.sum((y - mean) ** 2, axis=1) / (2 * sigma**2)) / (
        2 * np.pi * sigma**2
    )
    values = ps(y) * np.conjugate(qs(y)) / density
    return complex(np.mean(values))


def fourier_quadrature(
    p: GaussianPacket | PacketSum,
    omega: np.ndarray,
    step: float = 0.05,
    half_width: float = 6.0,
) -> complex:
    """
    Transform at ``omega`` by the trapezoid rule on a square grid.

    The grid is centred on the mean packet centre; its half width is
    ``half_width`` scaled up for wide packets.
    """
    ps = as_sum(p)
    center = np.mean([pk.center for pk in ps], axis=0)
    lam = min(pk.min_eig for pk in ps)
    radius = half_width / math.sqrt(min(1.0, lam))
    radius += max(float(np.linalg.norm(pk.center - center)) for pk in ps)
    count = int(math.ceil(radius / step))
    axis = np.arange(-count, count + 1) * step
    gx, gy = np.meshgrid(axis + center[0], axis + center[1], indexing="ij")
    y = np.stack([gx, gy], axis=-1)
    omega = np.asarray(omega, dtype=float)
    integrand = ps(y) * np.exp(-2j * np.pi * (y @ omega))
    return complex(np.sum(integrand) * step**2)


def random_packet(rng: np.random.Generator) -> GaussianPacket:
    """A packet with moderate width, centre and modulation."""
    angle = rng.uniform(0, np.pi)
    rot = np.array(
        [[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]]
    )
    eigs = rng.uniform(0.6, 1.8, size=2)
    return GaussianPacket(
        amp=rng.uniform(0.5, 1.5) * np.exp(1j * rng.uniform(0, 2 * np.pi)),
        center=rng.uniform(-0.5, 0.5, size=2),
        quad=rot @ np.diag(eigs) @ rot.T,
        freq=rng.uniform(-0.5, 0.5, size=2),
    )


# Off-centre, anisotropic and modulated, so no rigid motion fixes it.
GENERIC_PACKET = GaussianPacket(
    amp=1.0,
    center=np.array([0.3, -0.2]),
    quad=np.array([[1.3, 0.4], [0.4, 0.8]]),
    freq=np.array([0.25, -0.4]),
)
