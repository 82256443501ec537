import pytest
from hypothesis import given, settings

from quditenc.formats import (
    ParseError,
    bundled_codes,
    format_check_matrix,
    format_gateset,
    load_bundled,
    parse_check_matrix,
    parse_gateset,
)
from quditenc.gatesets import PRESETS

from strategies import check_matrices


def test_bundled_codes_present():
    assert bundled_codes() == ["1063_d5.chk", "513_d3.chk", "953_d3.chk"]
    c = load_bundled("1063_d5")
    assert (c.d, c.n, c.k) == (5, 10, 6)


@pytest.mark.parametrize("name", ["513_d3", "953_d3", "1063_d5"])
def test_check_matrix_round_trip(name):
    c = load_bundled(name)
    text = format_check_matrix(c)
    assert parse_check_matrix(text) == c
    assert format_check_matrix(parse_check_matrix(text)) == text


@settings(max_examples=40)
@given(check_matrices(max_n=5))
def test_check_matrix_round_trip_property(c):
    text = format_check_matrix(c)
    assert parse_check_matrix(text) == c


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_gateset_round_trip(name):
    text = format_gateset(PRESETS[name])
    back = parse_gateset(text)
    assert back == PRESETS[name]
    assert format_gateset(back) == text


def test_short_row_names_the_line():
    text = "d: 3\nn: 2\nk: 1\n# comment\n1 0 0\n"
    with pytest.raises(ParseError, match="line 5: expected 4 entries"):
        parse_check_matrix(text)


@pytest.mark.parametrize(
    "text,msg",
    [
        ("n: 2\nk: 1\n1 0 0 0\n", "missing header field 'd'"),
        ("d: three\nn: 2\nk: 1\n1 0 0 0\n", "must be an integer"),
        ("d: 3\nn: 2\nk: 1\n1 x 0 0\n", "non-integer"),
        ("d: 3\nn: 2\nk: 0\n1 0 0 0\n", "expected 2 rows"),
    ],
)
def test_check_matrix_parse_errors(text, msg):
    with pytest.raises(ParseError, match=msg):
        parse_check_matrix(text)


@pytest.mark.parametrize(
    "text,msg",
    [
        ("d: 3\ngate A 0 2 1 0\n", "exactly one"),
        ("d: 3\ngate A 0 2 1 0 dft\ngate B 0 2 1 0 dft\n", "exactly one"),
        ("d: 3\ngate A 1 1 0 1 dft\n", "must be"),
        ("d: 3\ngate A 0 2 1 0 dft\ngate B 2 0 0 1\n", "line 3"),
        ("d: 3\ngate A 0 2 1 0 dft\nrotate B\n", "line 3"),
    ],
)
def test_gateset_parse_errors(text, msg):
    with pytest.raises(ParseError, match=msg):
        parse_gateset(text)
