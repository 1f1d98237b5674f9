from fractions import Fraction

import pytest

from hedonic_graphs.exceptions import BadParameterError, ValidationError
from hedonic_graphs.validators import (
    exact,
    format_rational,
    parse_rational,
    validate_player_names,
    validate_positive_int,
)


def test_parse_rational_accepts_fractions_and_integers():
    assert parse_rational("-1/2") == Fraction(-1, 2)
    assert parse_rational("4/2") == 2
    assert isinstance(parse_rational("4/2"), int)
    assert parse_rational(" 7 ") == 7
    assert parse_rational(-3) == -3


def test_parse_rational_rejects_inexact_values():
    for bad in (0.5, True, "1.5", "1/0", "abc", None):
        with pytest.raises(ValidationError):
            parse_rational(bad)


def test_format_rational_matches_file_format():
    assert format_rational(Fraction(-1, 2)) == "-1/2"
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(5) == "5"


def test_exact_collapses_integral_fractions():
    assert exact(Fraction(3, 1)) == 3
    assert isinstance(exact(Fraction(3, 1)), int)


def test_validate_player_names_strips_and_rejects_duplicates():
    assert validate_player_names([" l", "c "]) == ["l", "c"]
    with pytest.raises(ValidationError):
        validate_player_names(["l", "l"])
    with pytest.raises(ValidationError):
        validate_player_names([])
    with pytest.raises(ValidationError):
        validate_player_names(["", "c"])


def test_validate_positive_int_enforces_minimum():
    assert validate_positive_int(3, "k", minimum=3) == 3
    with pytest.raises(BadParameterError):
        validate_positive_int(2, "k", minimum=3)
    with pytest.raises(BadParameterError):
        validate_positive_int(True, "k")
