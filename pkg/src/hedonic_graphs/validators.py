"""
@file validators.py
@description Input validation functions for the hedonic-graphs toolkit
@module hedonic_graphs.validators
@author hedonic-graphs maintainers
@created 2026-10-17
"""

import re
from fractions import Fraction
from typing import Any, Iterable, List, Union

from hedonic_graphs.exceptions import BadParameterError, ValidationError

Rational = Union[int, Fraction]

RATIONAL_REGEX = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def exact(value: Rational) -> Rational:
    """Collapse integral fractions to ``int`` so arithmetic stays cheap and exact."""
    if isinstance(value, Fraction) and value.denominator == 1:
        return int(value.numerator)
    return value


def parse_rational(value: Any, field: str = "utility") -> Rational:
    """
    Parse an exact rational from ``"p/q"``, an integer string or an int.

    Floats are rejected: utilities are exact.

    Args:
        value: The value to parse
        field: Field name used in error messages

    Returns:
        ``int`` when integral, otherwise ``Fraction``

    Raises:
        ValidationError: If the value is not an exact rational

    Example:
        >>> parse_rational("-1/2")
        Fraction(-1, 2)
        >>> parse_rational("4/2")
        2
        >>> parse_rational(0.5)
        ValidationError: Invalid utility: ...
    """
    if isinstance(value, bool):
        raise ValidationError(field, f"{value!r} is not a rational number")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return exact(value)
    if not isinstance(value, str):
        raise ValidationError(field, f"{value!r} must be an integer or a 'p/q' string")

    match = RATIONAL_REGEX.match(value)
    if not match:
        raise ValidationError(field, f"{value!r} is not of the form 'p/q' or an integer")
    numerator, denominator = match.group(1), match.group(2)
    if denominator is None:
        return int(numerator)
    if int(denominator) == 0:
        raise ValidationError(field, f"{value!r} has a zero denominator")
    return exact(Fraction(int(numerator), int(denominator)))


def format_rational(value: Rational) -> str:
    """
    Render a rational the way game files store it.

    Example:
        >>> format_rational(Fraction(-1, 2))
        '-1/2'
        >>> format_rational(3)
        '3'
    """
    value = exact(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def validate_player_names(players: Iterable[Any]) -> List[str]:
    """
    Validate player identifiers.

    Returns:
        The identifiers, stripped of surrounding whitespace

    Raises:
        ValidationError: If any identifier is empty, not a string, or repeated
    """
    names: List[str] = []
    for player in players:
        if not isinstance(player, str) or not player.strip():
            raise ValidationError("players", f"{player!r} is not a non-empty string")
        names.append(player.strip())
    if not names:
        raise ValidationError("players", "at least one player is required")
    if len(set(names)) != len(names):
        duplicates = sorted({name for name in names if names.count(name) > 1})
        raise ValidationError("players", f"duplicate identifiers {duplicates}")
    return names


def validate_positive_int(value: int, parameter: str, minimum: int = 1) -> int:
    """
    Check an integer parameter against a lower bound.

    Raises:
        BadParameterError: If ``value`` is below ``minimum``

    Example:
        >>> validate_positive_int(2, "k", minimum=3)
        BadParameterError: Bad parameter 'k': must be at least 3
    """
    if isinstance(value, bool) or not isinstance(value, int):
        raise BadParameterError(parameter, "must be an integer", value=value)
    if value < minimum:
        raise BadParameterError(parameter, f"must be at least {minimum}", value=value)
    return value
