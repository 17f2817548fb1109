"""
Verification suites over the catalog.

Each suite runs one family of identities for one group and produces a
``SuiteReport``; ``run_verify`` collects them into a ``VerifyReport``. All
randomness comes from one seeded generator per (suite, group), so reports
are reproducible byte for byte.
"""

from __future__ import annotations

import json
import math
from collections.abc import Callable, Iterable, Sequence
from typing import Any, TypeAlias

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ._logging.triwave_logger import triwave_logger as default_logger
from .catalog import (
    AffineElement,
    CatalogInconsistency,
    GroupData,
    check_compatibility,
    close_offsets,
    generator_table,
    get_group,
    list_groups,
)
from .group_core import (
    WaveletElement,
    decompose,
    dilation,
    factor,
    identity,
    invert,
    multiply,
    quotient_Q,
    random_element,
    random_translation,
    section_gamma,
    theta,
    translation,
)
from .induced import (
    FinSuppVector,
    equivalence_intertwiner,
    sigma_apply,
    sigma_branch_oracle,
    u_omega_apply,
)
from .notation import format_element, parse_element
from .orbits import (
    CanonicalForm,
    build_cross_section,
    canonicalize,
    irreducible,
    overlapping_copies,
)
from .packets import PacketSum, as_sum, packet_norm, random_packet
from .settings import TriwaveSettings
from .wavelet_rep import (
    FiberFunction,
    IntertwiningVerifier,
    apply_D3,
    apply_R,
    apply_V,
    apply_Vhat,
    apply_Vtilde,
    conjugated_vhat,
    faithfulness_margin,
    fiber_range,
    fourier,
    inverse_fourier,
    rho_norm_quadrature,
    witness_elements,
)

LogFunction: TypeAlias = Callable[..., None]

SUITES = (
    "axioms",
    "catalog",
    "orbits",
    "induced",
    "intertwine",
    "packets",
    "unitarity",
)
DEFAULT_SUITES = ("axioms", "catalog", "orbits", "induced", "intertwine")

# Groups whose oracle and intertwining results are reported, not asserted.
REPORT_ONLY = frozenset({"pgg2", "p4mg"})

_SUITE_SALT = {name: i for i, name in enumerate(SUITES)}


class UnknownSuite(ValueError):
    """Raised for a suite name outside ``SUITES``."""

    pass


class SuiteReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    suite: str
    group: str
    cases: int = 0
    max_residual: float = 0.0
    passed: bool = Field(default=False, alias="pass")
    asserted: bool = True
    details: dict[str, float] = Field(default_factory=dict)
    error: str | None = None


class VerifyReport(BaseModel):
    seed: int
    tolerance: float
    reports: list[SuiteReport] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.reports if r.asserted)

    def to_json(self, indent: int | None = 2) -> str:
        payload = self.model_dump(by_alias=True)
        payload["pass"] = self.ok
        return json.dumps(payload, indent=indent, sort_keys=True)


def parse_suites(text: str | Iterable[str]) -> list[str]:
    """
    Split and check suite names; ``"all"`` selects every suite.

    Raises:
        UnknownSuite: For any unrecognised name.
    """
    names = text.split(",") if isinstance(text, str) else list(text)
    names = [name.strip() for name in names if name.strip()]
    if names == ["all"]:
        return list(SUITES)
    unknown = [name for name in names if name not in SUITES]
    if unknown:
        raise UnknownSuite(", ".join(unknown))
    return names


def _rng(seed: int, suite: str, group: str) -> np.random.Generator:
    group_index = list_groups().index(group)
    return np.random.default_rng([seed, _SUITE_SALT[suite], group_index])


def _random_fin_supp(
    gd: GroupData, rng: np.random.Generator, size: int = 3
) -> FinSuppVector:
    entries = {}
    for _ in range(size):
        M = gd.point_group[int(rng.integers(gd.order))]
        m = int(rng.integers(-2, 3))
        entries[(M, m)] = complex(*rng.standard_normal(2))
    return FinSuppVector(entries)


def _probe_points(
    p: PacketSum, rng: np.random.Generator, count: int = 6
) -> np.ndarray:
    points = []
    for packet in p:
        spread = 0.5 / math.sqrt(packet.min_eig)
        points.append(packet.center + spread * rng.standard_normal((count, 2)))
    return np.concatenate(points)


def _pointwise_gap(
    lhs: PacketSum, rhs: PacketSum, points: np.ndarray
) -> float:
    """Largest ``|lhs - rhs|`` relative to ``max(1, max |rhs|)``."""
    a, b = lhs(points), rhs(points)
    scale = max(1.0, float(np.max(np.abs(b))))
    return float(np.max(np.abs(a - b))) / scale


def suite_axioms(
    gd: GroupData, rng: np.random.Generator, cases: int
) -> SuiteReport:
    """
    Exact group axioms on ``cases`` random elements; the residual counts
    failures.

    Case ``i`` checks the triple of elements ``i``, ``i-1`` and ``i-2``
    (cyclically), so every element takes part in three products.
    """
    failures = {
        "associativity": 0,
        "inverse": 0,
        "factor": 0,
        "decompose": 0,
        "quotient": 0,
        "conjugation": 0,
        "theta": 0,
        "notation": 0,
    }
    e = identity(gd)
    elements = [random_element(gd, rng) for _ in range(cases)]
    for i, g in enumerate(elements):
        h, k = elements[i - 1], elements[i - 2]
        gh = multiply(g, h, gd)
        if multiply(gh, k, gd) != multiply(g, multiply(h, k, gd), gd):
            failures["associativity"] += 1
        if quotient_Q(gh) != (gd.compose(g.L, h.L), g.ell + h.ell):
            failures["quotient"] += 1
        g_inv = invert(g, gd)
        if multiply(g, g_inv, gd) != e or multiply(g_inv, g, gd) != e:
            failures["inverse"] += 1
        if invert(g_inv, gd) != g:
            failures["inverse"] += 1
        dil, part = factor(g, gd)
        if multiply(dil, part, gd) != g:
            failures["factor"] += 1
        L, ell, n = decompose(gd, g)
        gamma = section_gamma(gd, L, ell)
        if multiply(gamma, n, gd) != g:
            failures["decompose"] += 1
        y = random_translation(gd, rng).x
        conj = multiply(
            multiply(gamma, translation(gd, y), gd), invert(gamma, gd), gd
        )
        if conj != translation(gd, y.transform(g.L.mat_lat).scale3(-g.ell)):
            failures["conjugation"] += 1
        lhs = multiply(
            multiply(dilation(gd, g.ell), part, gd), dilation(gd, -g.ell), gd
        )
        moved = theta(g.ell, part.affine)
        if lhs != WaveletElement(moved.x, moved.L, 0):
            failures["theta"] += 1
        if parse_element(gd, format_element(g)) != g:
            failures["notation"] += 1
    total = sum(failures.values())
    return SuiteReport(
        suite="axioms",
        group=gd.name,
        cases=cases,
        max_residual=float(total),
        passed=total == 0,
        details={key: float(value) for key, value in failures.items()},
    )


def suite_catalog(gd: GroupData) -> SuiteReport:
    """Compatibility table and offset regeneration."""
    problems = {"compatibility": 0, "regeneration": 0}
    for d in (3, 5, 7, 9):
        if not check_compatibility(gd, d):
            problems["compatibility"] += 1
    for d in (2, 4):
        if check_compatibility(gd, d) != gd.symmorphic:
            problems["compatibility"] += 1
    try:
        table = close_offsets(generator_table(gd.name))
    except CatalogInconsistency:
        problems["regeneration"] += 1
        table = {}
    for L in gd.point_group:
        if table.get(L.mat_lat) != gd.offset(L):
            problems["regeneration"] += 1
    total = sum(problems.values())
    return SuiteReport(
        suite="catalog",
        group=gd.name,
        cases=6 + gd.order,
        max_residual=float(total),
        passed=total == 0,
        details={key: float(value) for key, value in problems.items()},
    )


def suite_orbits(
    gd: GroupData,
    rng: np.random.Generator,
    cases: int,
    boundary_tol: float = 1e-9,
) -> SuiteReport:
    """Round trip, disjointness, covering and irreducibility on ``X``."""
    cs = build_cross_section(gd, boundary_tol)
    roundtrip = 0.0
    mismatches = overlaps = boundary = reducible = 0
    inner = cs.sample(rng, cases)
    for omega in inner:
        if overlapping_copies(cs, omega, 3):
            overlaps += 1
        if not irreducible(gd, omega):
            reducible += 1
    for omega in inner:
        r = float(np.linalg.norm(omega))
        rel = cs.relative_angle(omega)
        if not (1e-6 < r - 1 and r < 3 - 1e-6):
            continue
        if not (1e-6 < rel < cs.width - 1e-6):
            continue
        L = gd.point_group[int(rng.integers(gd.order))]
        ell = int(rng.integers(-5, 6))
        canon = canonicalize(cs, 3.0**ell * (L.cart @ omega))
        if (
            not isinstance(canon, CanonicalForm)
            or canon.L != L
            or canon.ell != ell
        ):
            mismatches += 1
            continue
        roundtrip = max(
            roundtrip, float(np.linalg.norm(canon.vector - omega))
        )
    for omega in 5 * rng.standard_normal((cases, 2)):
        if not isinstance(canonicalize(cs, omega), CanonicalForm):
            boundary += 1
    details = {
        "roundtrip": roundtrip,
        "mismatches": float(mismatches),
        "overlaps": float(overlaps),
        "boundary": float(boundary),
        "reducible": float(reducible),
    }
    passed = roundtrip <= 1e-10 and not (
        mismatches or overlaps or boundary or reducible
    )
    return SuiteReport(
        suite="orbits",
        group=gd.name,
        cases=cases,
        max_residual=max(details.values()),
        passed=passed,
        details=details,
    )


def suite_induced(
    gd: GroupData, rng: np.random.Generator, cases: int
) -> list[SuiteReport]:
    """
    Unitarity, homomorphism, agreement with left translation, the
    equivalence witness and the three-case oracle.
    """
    worst = {
        "unitarity": 0.0,
        "homomorphism": 0.0,
        "left_translation": 0.0,
        "equivalence": 0.0,
    }
    oracle = 0.0
    for _ in range(cases):
        g = random_element(gd, rng, max_level=2, max_ell=2)
        h = random_element(gd, rng, max_level=2, max_ell=2)
        f = _random_fin_supp(gd, rng)
        omega = rng.uniform(-2, 2, size=2)
        image = sigma_apply(gd, omega, g, f)
        worst["unitarity"] = max(
            worst["unitarity"], abs(image.norm() - f.norm())
        )
        twice = sigma_apply(gd, omega, g, sigma_apply(gd, omega, h, f))
        once = sigma_apply(gd, omega, multiply(g, h, gd), f)
        worst["homomorphism"] = max(
            worst["homomorphism"], twice.max_difference(once)
        )
        worst["left_translation"] = max(
            worst["left_translation"],
            image.max_difference(u_omega_apply(gd, omega, g, f)),
        )
        for (K, k), amp in f.items():
            M = gd.compose(g.L, K)
            phase = sigma_branch_oracle(gd, omega, g, M, k + g.ell)
            oracle = max(oracle, abs(phase * amp - image.get(M, k + g.ell)))
        P = gd.point_group[int(rng.integers(gd.order))]
        p = int(rng.integers(-2, 3))
        omega2 = 3.0**p * (P.cart @ omega)
        witness = equivalence_intertwiner(gd, omega, omega2)
        if witness is None:
            worst["equivalence"] = math.inf
            continue
        lhs = witness.apply(image)
        rhs = sigma_apply(gd, omega2, g, witness.apply(f))
        worst["equivalence"] = max(
            worst["equivalence"], lhs.max_difference(rhs)
        )
    limits = {
        "unitarity": 1e-12,
        "homomorphism": 1e-10,
        "left_translation": 1e-12,
        "equivalence": 1e-10,
    }
    main = SuiteReport(
        suite="induced",
        group=gd.name,
        cases=cases,
        max_residual=max(worst.values()),
        passed=all(worst[key] <= limits[key] for key in worst),
        details=worst,
    )
    branch = SuiteReport(
        suite="induced-oracle",
        group=gd.name,
        cases=cases,
        max_residual=oracle,
        passed=oracle <= 1e-12,
        asserted=gd.name not in REPORT_ONLY,
    )
    return [main, branch]


def suite_intertwine(
    gd: GroupData,
    rng: np.random.Generator,
    elements: int,
    samples: int,
    tol: float,
    boundary_tol: float = 1e-9,
    log: LogFunction = default_logger,
) -> SuiteReport:
    """``rho V^(g) = sigma(g) rho`` plus the fibrewise checks of ``V~``."""
    cs = build_cross_section(gd, boundary_tol)
    phi = as_sum(random_packet(rng))
    verifier = IntertwiningVerifier(gd, cs, log_function=log)
    seed = int(rng.integers(2**31))
    per_element = max(1, samples // elements)
    reports = verifier.verify_many(
        witness_elements(gd, rng, elements), phi, per_element, seed, tol
    )
    details = {
        "residual": max(r.max_residual for r in reports),
        "oracle": max(r.oracle_max for r in reports),
        "errors": float(sum(r.error is not None for r in reports)),
    }
    for r in reports:
        for label, value in r.branch_max.items():
            key = f"branch_{label}"
            details[key] = max(details.get(key, 0.0), value)
    fiber = FiberFunction.rho(gd, cs, phi)
    j_lo, j_hi = fiber_range(phi)
    tilde_gap = conj_gap = 0.0
    for omega in cs.sample(rng, 5):
        g = random_element(gd, rng, max_level=2, max_ell=2)
        tilde = apply_Vtilde(gd, cs, g, fiber)
        conj = conjugated_vhat(gd, cs, g, fiber)
        window = range(j_lo + 2, j_hi + 1)
        reference = sigma_apply(
            gd, omega, g, fiber.fiber(omega, range(j_lo - 2, j_hi + 3))
        )
        for j in window:
            for M in gd.point_group:
                value = tilde(omega, M, j)
                tilde_gap = max(tilde_gap, abs(value - reference.get(M, j)))
                conj_gap = max(conj_gap, abs(conj(omega, M, j) - value))
    details["vtilde"] = tilde_gap
    details["conjugated"] = conj_gap
    residual = max(details["residual"], tilde_gap, conj_gap)
    return SuiteReport(
        suite="intertwine",
        group=gd.name,
        cases=sum(r.cases for r in reports),
        max_residual=residual,
        passed=residual <= tol and details["errors"] == 0,
        asserted=gd.name not in REPORT_ONLY,
        details=details,
    )


def suite_packets(
    gd: GroupData, rng: np.random.Generator, cases: int
) -> SuiteReport:
    """Function-side identities on random packets."""
    worst = {
        "homomorphism": 0.0,
        "commutation": 0.0,
        "conjugation": 0.0,
        "plancherel": 0.0,
    }
    for _ in range(cases):
        p = as_sum(random_packet(rng))
        g = random_element(gd, rng, max_level=2, max_ell=1)
        h = random_element(gd, rng, max_level=2, max_ell=1)
        lhs = apply_V(gd, g, apply_V(gd, h, p))
        rhs = apply_V(gd, multiply(g, h, gd), p)
        worst["homomorphism"] = max(
            worst["homomorphism"],
            _pointwise_gap(lhs, rhs, _probe_points(rhs, rng)),
        )
        e = h.affine
        lhs = apply_D3(apply_R(gd, e, p))
        rhs = apply_R(gd, AffineElement(e.x.scale3(-1), e.L), apply_D3(p))
        worst["commutation"] = max(
            worst["commutation"],
            _pointwise_gap(lhs, rhs, _probe_points(rhs, rng)),
        )
        lhs = fourier(apply_V(gd, g, inverse_fourier(p)))
        rhs = apply_Vhat(gd, g, p)
        worst["conjugation"] = max(
            worst["conjugation"],
            _pointwise_gap(lhs, rhs, _probe_points(rhs, rng)),
        )
        worst["plancherel"] = max(
            worst["plancherel"], abs(packet_norm(fourier(p)) - packet_norm(p))
        )
    margin = faithfulness_margin(gd, rng, max(1, cases // 10))
    details = dict(worst, faithfulness_margin=margin)
    return SuiteReport(
        suite="packets",
        group=gd.name,
        cases=cases,
        max_residual=max(worst.values()),
        passed=max(worst.values()) <= 1e-10 and margin > 1e-3,
        details=details,
    )


def suite_unitarity(
    gd: GroupData,
    rng: np.random.Generator,
    cases: int,
    settings: TriwaveSettings,
) -> SuiteReport:
    """Quadrature norm of ``rho(phi)`` against the closed-form norm."""
    cs = build_cross_section(gd, settings.boundary_tol)
    worst = 0.0
    for _ in range(cases):
        phi = random_packet(rng)
        exact = packet_norm(phi)
        approx = rho_norm_quadrature(
            gd, cs, phi, settings.quad_radial, settings.quad_angular
        )
        worst = max(worst, abs(approx - exact) / exact)
    return SuiteReport(
        suite="unitarity",
        group=gd.name,
        cases=cases,
        max_residual=worst,
        passed=worst <= 1e-6,
    )


def _run_suite(
    suite: str,
    gd: GroupData,
    seed: int,
    tol: float,
    settings: TriwaveSettings,
    log: LogFunction,
) -> list[SuiteReport]:
    rng = _rng(seed, suite, gd.name)
    if suite == "axioms":
        return [suite_axioms(gd, rng, settings.cases(10_000))]
    if suite == "catalog":
        return [suite_catalog(gd)]
    if suite == "orbits":
        cases = settings.cases(10_000)
        return [suite_orbits(gd, rng, cases, settings.boundary_tol)]
    if suite == "induced":
        return suite_induced(gd, rng, settings.cases(1_000))
    if suite == "intertwine":
        return [
            suite_intertwine(
                gd,
                rng,
                max(2, settings.cases(20)),
                settings.cases(1_000),
                tol,
                settings.boundary_tol,
                log,
            )
        ]
    if suite == "packets":
        return [suite_packets(gd, rng, settings.cases(1_000))]
    return [suite_unitarity(gd, rng, settings.cases(10), settings)]


def run_verify(
    suites: Sequence[str] | str = DEFAULT_SUITES,
    groups: Sequence[str] | str = "all",
    seed: int = 42,
    tol: float = 1e-9,
    settings: TriwaveSettings | None = None,
    log: LogFunction = default_logger,
) -> VerifyReport:
    """
    Run the requested suites on the requested groups.

    A suite that raises is logged and recorded as a failing report.

    Raises:
        UnknownSuite: For an unrecognised suite name.
        UnknownGroup: For an unrecognised group name.
    """
    suite_names = parse_suites(suites)
    if isinstance(groups, str):
        groups = list_groups() if groups == "all" else groups.split(",")
    settings = settings or TriwaveSettings(log=log)
    datas = [get_group(name, settings.rect_aspect) for name in groups]
    report = VerifyReport(seed=seed, tolerance=tol)
    for suite in suite_names:
        for gd in datas:
            try:
                results = _run_suite(suite, gd, seed, tol, settings, log)
            except (ArithmeticError, ValueError, KeyError, TypeError) as e:
                log(
                    level="error",
                    action="run verification suite",
                    suite=suite,
                    group=gd.name,
                    exception=e,
                )
                results = [
                    SuiteReport(suite=suite, group=gd.name, error=str(e))
                ]
            for result in results:
                log(
                    level="info" if result.passed else "warning",
                    action="verification suite finished",
                    suite=result.suite,
                    group=result.group,
                    cases=result.cases,
                    max_residual=result.max_residual,
                )
            report.reports.extend(results)
    log(
        level="info" if report.ok else "warning",
        action="verification finished",
        seed=seed,
        suites=summary(report),
    )
    return report


def summary(report: VerifyReport) -> dict[str, Any]:
    """Pass counts per suite."""
    out: dict[str, Any] = {}
    for r in report.reports:
        entry = out.setdefault(r.suite, {"passed": 0, "failed": 0})
        entry["passed" if r.passed else "failed"] += 1
    return out
