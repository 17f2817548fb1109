import numpy as np
import pytest

from triwave.catalog import get_group, list_groups
from triwave.group_core import WaveletElement, identity, random_element
from triwave.notation import (
    InvalidForGroup,
    ParseError,
    format_element,
    parse_element,
    parse_element_parts,
)
from triwave.scalar import HALF, LatticeVector, TriadicHalf


@pytest.fixture
def pg():
    return get_group("pg")


def test_parse_identity(pg):
    assert parse_element(pg, "([0 u + 0 v, id], 0)") == identity(pg)


def test_parse_glide_term(pg):
    g = parse_element(pg, "([1/3 u + 0 v + 1/2 z, s], -2)")

    assert g == WaveletElement(
        LatticeVector.of("1/3", "1/2"), pg.element("s"), -2
    )


def test_parse_whitespace_insensitive(pg):
    assert parse_element(pg, "([1/3u+1/2v,s],-2)") == parse_element(
        pg, "(  [ 1/3 u + 1/2 v ,  s ] , -2 )"
    )


def test_parse_negative_terms():
    p4 = get_group("p4")

    g = parse_element(p4, "([-2/3^2 u - 5 v, r90], 3)")

    assert g.x == LatticeVector(TriadicHalf(-2, 2), TriadicHalf(-5))
    assert g.L.name == "r90"
    assert g.ell == 3


def test_parse_halved_third(pg):
    g = parse_element(pg, "([0 u + 1/(2*3) v, s], 0)")

    assert g.x.b == TriadicHalf(1, 1, True)
    assert format_element(g) == "([0 u + 1/(2*3) v, s], 0)"
    assert parse_element(pg, "([0 u + 1/(2 * 3^1) v, s], 0)") == g


def test_parse_parts():
    a, b, has_glide, name, ell = parse_element_parts(
        "([1/(2*3^2) u + 1/2 v, r180s], +1)"
    )

    assert a == TriadicHalf(1, 2, True)
    assert b == HALF
    assert has_glide is False
    assert name == "r180s"
    assert ell == 1


@pytest.mark.parametrize(
    "text",
    [
        "([1 u, id], 0)",
        "([1 u + 0 v, id] 0)",
        "([1 u + 0 v, id], 0) extra",
        "([1/4 u + 0 v, id], 0)",
        "([0 u + 0 v - 1/2 z, s], 0)",
        "([0 u + 0 v + 1/3 z, s], 0)",
        "",
    ],
)
def test_parse_errors(pg, text):
    with pytest.raises(ParseError):
        parse_element(pg, text)


def test_parse_error_position(pg):
    with pytest.raises(ParseError) as error:
        parse_element(pg, "([1 u, id], 0)")

    assert error.value.position == 5


@pytest.mark.parametrize(
    "text",
    [
        "([0 u + 0 v, s], 0)",
        "([0 u + 0 v, r90], 0)",
    ],
)
def test_invalid_for_group(pg, text):
    with pytest.raises(InvalidForGroup):
        parse_element(pg, text)


def test_glide_term_needs_glide():
    with pytest.raises(InvalidForGroup):
        parse_element(get_group("p4"), "([0 u + 0 v + 1/2 z, id], 0)")


def test_format(pg):
    g = WaveletElement(LatticeVector.of("1/3", "-1/2"), pg.element("s"), -2)

    assert format_element(g) == "([1/3 u - 1/2 v, s], -2)"


@pytest.mark.parametrize("name", list_groups())
def test_round_trip(name):
    gd = get_group(name)
    rng = np.random.default_rng(5)

    for _ in range(200):
        g = random_element(gd, rng)
        assert parse_element(gd, format_element(g)) == g
