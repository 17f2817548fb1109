import math
from typing import Any

import numpy as np


def validate(
    value: Any,
    expected_type: type | tuple[type, ...],
    allow_none: bool = False,
    name: str = "Value",
) -> None:
    """
    Validate that a value is of the expected type.

    Args:
        value: The value to validate.
        expected_type: The expected type (or tuple of types) of the value.
        allow_none: Whether None is an allowed value.
        name: The name of the value (for error messages).

    Raises:
        ValueError: If the value is None and allow_none is False.
        TypeError: If the value is not of the expected type.
    """
    if value is None:
        if not allow_none:
            raise ValueError(f"{name} must have a value")
        return

    if not isinstance(value, expected_type):
        type_name = (
            " or ".join(t.__name__ for t in expected_type)
            if isinstance(expected_type, tuple)
            else expected_type.__name__
        )
        raise TypeError(f"{name} must be of type {type_name}")


def validate_vector(value: Any, name: str = "Vector") -> np.ndarray:
    """
    Validate a real plane vector and return it as a float array.

    Args:
        value: Anything array-like holding two real numbers.
        name: The name of the value (for error messages).

    Returns:
        np.ndarray: The vector as a float64 array of shape (2,).

    Raises:
        ValueError: If the value is None, has the wrong shape or is not
            finite.
        TypeError: If the entries are not real numbers.
    """
    if value is None:
        raise ValueError(f"{name} must have a value")
    try:
        vector = np.asarray(value, dtype=float)
    except (TypeError, ValueError) as error:
        raise TypeError(f"{name} must hold real numbers") from error
    if vector.shape != (2,):
        raise ValueError(f"{name} must have exactly two entries")
    if not all(math.isfinite(entry) for entry in vector):
        raise ValueError(f"{name} must be finite")
    return vector
