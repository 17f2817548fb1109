import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triwave.catalog import AffineElement, get_group, list_groups
from triwave.group_core import (
    InvalidElement,
    MixedGroups,
    NotInN3,
    WaveletElement,
    char_eval,
    check_element,
    conjugate,
    decompose,
    dilation,
    dual_action,
    factor,
    identity,
    in_translation_subgroup,
    invert,
    is_valid,
    multiply,
    quotient_Q,
    random_element,
    random_translation,
    section_gamma,
    theta,
    translation,
)
from triwave.scalar import LatticeVector


@pytest.fixture
def p1():
    return get_group("p1")


@pytest.fixture
def p2():
    return get_group("p2")


@pytest.fixture
def pg():
    return get_group("pg")


def elements(name):
    """Strategy drawing three seeded random elements of one group."""
    gd = get_group(name)
    return st.integers(min_value=0, max_value=2**32 - 1).map(
        lambda seed: [
            random_element(gd, rng)
            for rng in [np.random.default_rng(seed)]
            for _ in range(3)
        ]
    )


def test_multiply_example(p1):
    g = WaveletElement(LatticeVector.of(1, 0), p1.identity, 1)
    h = WaveletElement(LatticeVector.of(0, 1), p1.identity, 0)

    assert multiply(g, h) == WaveletElement(
        LatticeVector.of(1, "1/3"), p1.identity, 1
    )


def test_glide_squared(pg):
    glide = WaveletElement(LatticeVector.of(0, "1/2"), pg.element("s"), 0)

    assert multiply(glide, glide) == translation(pg, LatticeVector.of(0, 1))


def test_multiply_identity(pg):
    g = WaveletElement(LatticeVector.of("1/3", "1/2"), pg.element("s"), -2)

    assert multiply(g, identity(pg)) == g
    assert multiply(identity(pg), g) == g


def test_mixed_groups(p1, p2):
    with pytest.raises(MixedGroups):
        multiply(identity(p1), identity(p2))
    with pytest.raises(MixedGroups):
        multiply(identity(p1), identity(p1), p2)


def test_invert_example(p2):
    g = WaveletElement(LatticeVector.of(1, 0), p2.element("r180"), 1)

    assert invert(g) == WaveletElement(
        LatticeVector.of(3, 0), p2.element("r180"), -1
    )
    assert invert(identity(p2)) == identity(p2)


def test_factor_example(p1):
    g = WaveletElement(LatticeVector.of("1/3", 0), p1.identity, 1)

    dil, part = factor(g)

    assert dil == dilation(p1, 1)
    assert part == translation(p1, LatticeVector.of(1, 0))


def test_quotient(p1):
    n = translation(p1, LatticeVector.of("5/27", 2))

    assert quotient_Q(n) == (p1.identity, 0)
    assert in_translation_subgroup(n)


def test_section_examples(pg):
    p4 = get_group("p4")
    r90 = p4.element("r90")

    assert section_gamma(p4, r90, -3) == WaveletElement(
        LatticeVector.of(0, 0), r90, -3
    )
    assert section_gamma(pg, pg.element("s"), 2) == WaveletElement(
        LatticeVector.of(0, "1/18"), pg.element("s"), 2
    )
    assert section_gamma(pg, pg.identity, 0) == identity(pg)


def test_validity(pg):
    S = pg.element("s")

    assert is_valid(pg, WaveletElement(LatticeVector.of("1/9", "1/2"), S, 4))
    assert not is_valid(pg, WaveletElement(LatticeVector.of(0, 0), S, 0))
    with pytest.raises(InvalidElement):
        check_element(pg, WaveletElement(LatticeVector.of(0, 0), S, 0))


def test_invalid_for_other_group(pg):
    p4 = get_group("p4")

    assert not is_valid(pg, identity(p4))


def test_char_eval(p1):
    u = translation(p1, LatticeVector.of(1, 0))

    assert char_eval(p1, np.zeros(2), u) == 1
    assert char_eval(p1, np.array([0.5, 0.0]), u) == pytest.approx(-1)


def test_char_eval_not_translation(p1):
    with pytest.raises(NotInN3):
        char_eval(p1, np.zeros(2), dilation(p1, 1))


def test_dual_action(p1):
    omega = np.array([0.3, -1.2])

    assert np.allclose(dual_action(p1.identity, 1, omega), 3 * omega)
    assert np.allclose(dual_action(p1.identity, 0, omega), omega)


def test_theta():
    p4 = get_group("p4")
    e = AffineElement(LatticeVector.of(1, 2), p4.element("r90"))

    assert theta(1, e) == AffineElement(
        LatticeVector.of("1/3", "2/3"), p4.element("r90")
    )


@pytest.mark.parametrize("name", list_groups())
def test_random_elements_are_valid(name):
    gd = get_group(name)
    rng = np.random.default_rng(0)

    for _ in range(50):
        assert is_valid(gd, random_element(gd, rng))


@pytest.mark.parametrize("name", list_groups())
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_group_axioms(name, data):
    gd = get_group(name)
    g, h, k = data.draw(elements(name))

    assert multiply(multiply(g, h), k) == multiply(g, multiply(h, k))
    assert multiply(g, invert(g)) == identity(gd)
    assert multiply(invert(g), g) == identity(gd)
    assert invert(invert(g)) == g
    assert quotient_Q(multiply(g, h)) == (gd.compose(g.L, h.L), g.ell + h.ell)


@pytest.mark.parametrize("name", list_groups())
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_factor_and_decompose(name, data):
    gd = get_group(name)
    g, _, _ = data.draw(elements(name))

    dil, part = factor(g)
    L, ell, n = decompose(gd, g)

    assert multiply(dil, part) == g
    assert part.ell == 0
    assert multiply(section_gamma(gd, L, ell), n) == g
    assert in_translation_subgroup(n)


@pytest.mark.parametrize("name", list_groups())
def test_conjugation_formula(name):
    gd = get_group(name)
    rng = np.random.default_rng(1)

    for _ in range(30):
        g = random_element(gd, rng)
        y = random_translation(gd, rng)
        gamma = section_gamma(gd, g.L, g.ell)

        expected = translation(gd, y.x.transform(g.L.mat_lat).scale3(-g.ell))

        assert conjugate(gamma, y) == expected


@pytest.mark.parametrize("name", list_groups())
def test_theta_is_conjugation(name):
    gd = get_group(name)
    rng = np.random.default_rng(2)

    for _ in range(30):
        g = random_element(gd, rng)
        _, part = factor(g)
        lhs = conjugate(dilation(gd, g.ell), part)
        moved = theta(g.ell, part.affine)

        assert lhs == WaveletElement(moved.x, moved.L, 0)


@pytest.mark.parametrize("name", ["p1", "p4m", "pg", "p6m"])
def test_char_eval_homomorphism(name):
    gd = get_group(name)
    rng = np.random.default_rng(3)

    for _ in range(30):
        n1, n2 = random_translation(gd, rng), random_translation(gd, rng)
        omega = rng.uniform(-3, 3, size=2)

        product = char_eval(gd, omega, multiply(n1, n2))
        separate = char_eval(gd, omega, n1) * char_eval(gd, omega, n2)

        assert abs(product - separate) <= 1e-12


@pytest.mark.parametrize("name", ["p1", "p4", "pg", "p3m1", "pgg2"])
def test_dual_action_consistency(name):
    gd = get_group(name)
    rng = np.random.default_rng(4)

    for _ in range(30):
        g = random_element(gd, rng, max_ell=2)
        n = random_translation(gd, rng)
        omega = rng.uniform(-2, 2, size=2)
        gamma = section_gamma(gd, g.L, g.ell)

        lhs = char_eval(gd, dual_action(g.L, g.ell, omega), n)
        rhs = char_eval(gd, omega, conjugate(invert(gamma), n))

        assert abs(lhs - rhs) <= 1e-12
