import math

import numpy as np
import pytest

from triwave._validators import validate, validate_vector


def test_validate_accepts_type():
    validate(3, int)
    validate(3, (int, float))
    validate(None, int, allow_none=True)


def test_validate_rejects_none():
    with pytest.raises(ValueError, match="phi must have a value"):
        validate(None, int, name="phi")


@pytest.mark.parametrize(
    "expected, message",
    [
        (int, "must be of type int"),
        ((int, float), "must be of type int or float"),
    ],
)
def test_validate_rejects_type(expected, message):
    with pytest.raises(TypeError, match=message):
        validate("3", expected)


def test_validate_vector():
    vector = validate_vector([1, 2])

    assert vector.dtype == np.float64
    assert vector.tolist() == [1.0, 2.0]


@pytest.mark.parametrize(
    "value, error",
    [
        (None, ValueError),
        ([1.0, 2.0, 3.0], ValueError),
        ([math.inf, 0.0], ValueError),
        (["a", "b"], TypeError),
        ([1j, 0], TypeError),
    ],
)
def test_validate_vector_rejects(value, error):
    with pytest.raises(error):
        validate_vector(value, "omega")
