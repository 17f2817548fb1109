import math

import numpy as np
import pytest

from triwave.catalog import get_group
from triwave.group_core import (
    InvalidElement,
    WaveletElement,
    dilation,
    identity,
    multiply,
    random_element,
    theta,
)
from triwave.induced import FinSuppVector, sigma_apply
from triwave.orbits import build_cross_section
from triwave.packets import GENERIC_PACKET, GaussianPacket, packet_norm
from triwave.scalar import LatticeVector
from triwave.wavelet_rep import (
    FiberFunction,
    IntertwiningVerifier,
    OmegaOutsideX,
    apply_D3,
    apply_R,
    apply_V,
    apply_Vhat,
    apply_Vtilde,
    check_faithful,
    conjugated_vhat,
    faithfulness_margin,
    fiber_range,
    fourier,
    inverse_fourier,
    rho_eval,
    rho_inverse_eval,
    rho_norm_quadrature,
    verify_intertwining,
    witness_elements,
)


@pytest.fixture
def pg():
    return get_group("pg")


@pytest.fixture
def glide(pg):
    return WaveletElement(LatticeVector.of(0, "1/2"), pg.element("s"), 0)


@pytest.fixture
def grid():
    return np.random.default_rng(30).uniform(-1.5, 1.5, size=(40, 2))


@pytest.fixture
def mock_logger(mocker):
    return mocker.Mock()


def assert_close(lhs, rhs, tol=1e-10):
    scale = max(1.0, float(np.max(np.abs(rhs))))
    assert float(np.max(np.abs(lhs - rhs))) <= tol * scale


@pytest.mark.parametrize("name", ["p1", "p4m", "pg", "pgg2", "p6m"])
def test_V_homomorphism(name, grid):
    gd = get_group(name)
    rng = np.random.default_rng(31)

    for _ in range(10):
        g = random_element(gd, rng, max_level=1, max_ell=1)
        h = random_element(gd, rng, max_level=1, max_ell=1)

        lhs = apply_V(gd, multiply(g, h), GENERIC_PACKET)
        rhs = apply_V(gd, g, apply_V(gd, h, GENERIC_PACKET))

        assert_close(lhs(grid), rhs(grid))


def test_V_identity(pg, grid):
    moved = apply_V(pg, identity(pg), GENERIC_PACKET)

    assert_close(moved(grid), GENERIC_PACKET(grid), 1e-15)


def test_V_dilation_example(pg):
    (p,) = apply_V(pg, dilation(pg, 1), GENERIC_PACKET)

    assert p.amp == pytest.approx(3 * GENERIC_PACKET.amp)
    assert np.allclose(p.center, GENERIC_PACKET.center / 3)
    assert np.allclose(p.quad, 9 * GENERIC_PACKET.quad)
    assert np.allclose(p.freq, 3 * GENERIC_PACKET.freq)


def test_V_rejects_invalid(pg):
    bad = WaveletElement(LatticeVector.of(0, 0), pg.element("s"), 0)

    with pytest.raises(InvalidElement):
        apply_V(pg, bad, GENERIC_PACKET)


def test_dilation_translation_commutation(pg, glide, grid):
    e = glide.affine

    lhs = apply_D3(apply_R(pg, e, GENERIC_PACKET))
    rhs = apply_R(pg, theta(1, e), apply_D3(GENERIC_PACKET))

    assert_close(lhs(grid), rhs(grid))


@pytest.mark.parametrize("name", ["p2", "p4", "pg", "p31m"])
def test_Vhat_is_fourier_conjugate(name, grid):
    gd = get_group(name)
    rng = np.random.default_rng(32)

    for _ in range(10):
        g = random_element(gd, rng, max_level=1, max_ell=1)

        lhs = fourier(apply_V(gd, g, GENERIC_PACKET))
        rhs = apply_Vhat(gd, g, fourier(GENERIC_PACKET))

        assert_close(lhs(grid), rhs(grid))


def test_Vhat_dilation(pg, grid):
    h = fourier(GENERIC_PACKET)

    moved = apply_Vhat(pg, dilation(pg, 1), h)

    assert_close(moved(grid), h(grid / 3) / 3)


def test_inverse_fourier(grid):
    back = inverse_fourier(fourier(GENERIC_PACKET))

    assert_close(back(grid), GENERIC_PACKET(grid))


def test_rho_twist_inside_cross_section(pg):
    cs = build_cross_section(pg)
    omega = np.array([-0.1, 1.0])
    phi = GaussianPacket.standard()

    value = rho_eval(pg, cs, phi, omega, pg.identity, 0)

    assert value == pytest.approx(-1j * math.exp(-math.pi * 1.01))


def test_rho_dilated_level(pg):
    cs = build_cross_section(pg)
    omega = np.array([-0.1, 1.0])
    phi = GaussianPacket.standard()

    value = rho_eval(pg, cs, phi, omega, pg.identity, -1)

    expected = -1j / 3 * math.exp(-math.pi * 1.01 / 9)
    assert value == pytest.approx(expected)


def test_rho_outside_cross_section(pg):
    cs = build_cross_section(pg)

    with pytest.raises(OmegaOutsideX):
        rho_eval(pg, cs, GENERIC_PACKET, np.array([1.0, 0.5]), pg.identity, 0)


@pytest.mark.parametrize("name", ["p1", "p4", "pg", "p3m1", "pgg2"])
def test_rho_inverse_recovers_function(name):
    gd = get_group(name)
    cs = build_cross_section(gd)
    F = FiberFunction.rho(gd, cs, GENERIC_PACKET)
    rng = np.random.default_rng(33)

    for xi in rng.uniform(-2, 2, size=(50, 2)):
        recovered = rho_inverse_eval(gd, cs, F, xi)

        assert recovered == pytest.approx(GENERIC_PACKET(xi), abs=1e-12)


def test_rho_inverse_boundary_is_zero():
    gd = get_group("p4")
    cs = build_cross_section(gd)
    F = FiberFunction.rho(gd, cs, GENERIC_PACKET)

    assert rho_inverse_eval(gd, cs, F, np.array([2.0, 0.0])) == 0
    assert rho_inverse_eval(gd, cs, F, np.zeros(2)) == 0


@pytest.mark.parametrize("name", ["p1", "p4m", "pg", "p6"])
def test_rho_is_isometric(name):
    gd = get_group(name)
    cs = build_cross_section(gd)

    quadrature = rho_norm_quadrature(gd, cs, GENERIC_PACKET)
    exact = packet_norm(GENERIC_PACKET)

    assert abs(quadrature - exact) <= 1e-6 * exact


def test_fiber_range_window():
    j_min, j_max = fiber_range(GaussianPacket.standard())

    assert j_min < 0 < j_max
    assert fiber_range(GaussianPacket.standard(), 1e-6)[0] > j_min


@pytest.mark.parametrize("name", ["p4", "pg", "pmg2"])
def test_Vtilde_acts_fiberwise(name):
    gd = get_group(name)
    cs = build_cross_section(gd)
    F = FiberFunction.rho(gd, cs, GENERIC_PACKET)
    rng = np.random.default_rng(34)

    for g in witness_elements(gd, rng, 6):
        moved = apply_Vtilde(gd, cs, g, F)
        for omega in cs.sample(rng, 3):
            lhs = moved.fiber(omega, range(-3, 3))
            full = sigma_apply(gd, omega, g, F.fiber(omega, range(-6, 6)))
            rhs = FinSuppVector(
                ((M, j), full.get(M, j))
                for j in range(-3, 3)
                for M in gd.point_group
            )

            assert lhs.max_difference(rhs) <= 1e-10


@pytest.mark.parametrize("name", ["p1", "p4", "pg"])
def test_conjugated_vhat_matches_rho(name):
    gd = get_group(name)
    cs = build_cross_section(gd)
    F = FiberFunction.rho(gd, cs, GENERIC_PACKET)
    rng = np.random.default_rng(35)

    for g in witness_elements(gd, rng, 4):
        conjugated = conjugated_vhat(gd, cs, g, F)
        reference = FiberFunction.rho(
            gd, cs, apply_Vhat(gd, g, GENERIC_PACKET)
        )
        for omega in cs.sample(rng, 3):
            lhs = conjugated.fiber(omega, range(-3, 2))
            rhs = reference.fiber(omega, range(-3, 2))

            assert lhs.max_difference(rhs) <= 1e-10


@pytest.mark.parametrize("name", ["p1", "p2", "p4m", "p6m", "pg", "pmg2"])
def test_verify_intertwining_passes(name):
    gd = get_group(name)
    cs = build_cross_section(gd)
    rng = np.random.default_rng(36)

    for g in witness_elements(gd, rng, 4):
        report = verify_intertwining(
            gd, cs, g, GENERIC_PACKET, 60, np.random.default_rng(42)
        )

        assert report.passed, report
        assert report.cases == 60
        assert report.oracle_max <= 1e-9


def test_glide_branches_reported(pg, glide):
    cs = build_cross_section(pg)

    report = verify_intertwining(
        pg, cs, glide, GENERIC_PACKET, 200, np.random.default_rng(1)
    )

    assert set(report.branch_max) == {"glide_to_d0", "glide_to_glide"}
    assert report.passed


def test_verifier_logs_result(mock_logger):
    p1 = get_group("p1")
    verifier = IntertwiningVerifier(
        p1, build_cross_section(p1), log_function=mock_logger
    )

    report = verifier.verify(dilation(p1, 1), GENERIC_PACKET, 40, seed=42)

    assert report.passed
    mock_logger.assert_called_once_with(
        level="info",
        action="verify intertwining",
        group="p1",
        element=report.element,
        cases=40,
        max_residual=report.max_residual,
    )


def test_verifier_reports_validation_error(mocker, mock_logger):
    p1 = get_group("p1")
    validator = mocker.Mock(side_effect=TypeError("phi must be a packet"))
    verifier = IntertwiningVerifier(
        p1, build_cross_section(p1), validator, mock_logger
    )

    report = verifier.verify(dilation(p1, 1), "not a packet")

    assert report.error == "phi must be a packet"
    assert not report.passed
    assert mock_logger.call_args.kwargs["level"] == "error"


def test_verify_many_uses_consecutive_seeds(mocker, mock_logger):
    p1 = get_group("p1")
    verifier = IntertwiningVerifier(
        p1, build_cross_section(p1), log_function=mock_logger
    )
    spy = mocker.spy(verifier, "verify")
    elements = [dilation(p1, 1), dilation(p1, -1)]

    reports = verifier.verify_many(elements, GENERIC_PACKET, 10, seed=5)

    assert len(reports) == 2
    assert [c.args[-2] for c in spy.call_args_list] == [5, 6]


def test_witness_elements(pg):
    elements = witness_elements(pg, np.random.default_rng(0), 5)

    assert len(elements) == 5
    assert elements[0] == dilation(pg, 1)
    assert elements[1] == dilation(pg, -2)
    assert elements[2] == WaveletElement(
        LatticeVector.of(0, "1/2"), pg.element("s"), 0
    )


def test_faithfulness(pg):
    assert faithfulness_margin(pg, np.random.default_rng(37), 10) > 1e-3
    assert check_faithful(pg, identity(pg)) == 0.0
