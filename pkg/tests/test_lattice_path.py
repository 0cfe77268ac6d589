import pytest
from hypothesis import given
from hypothesis import strategies as st

from app.core.lattice_path import LatticePath, parse_path
from app.utils.errors import ParseError
from tests.settings import STANDARD_SETTINGS


def test_parse_path_counts_steps():
    path = parse_path("EENN")
    assert path.endpoint == (2, 2)
    assert path.north_positions == (3, 4)


def test_parse_path_north_positions():
    path = parse_path("NENNE")
    assert path.endpoint == (2, 3)
    assert path.north_positions == (1, 3, 4)


def test_parse_path_is_case_insensitive():
    assert parse_path(" enne ").steps == "ENNE"


def test_parse_path_reports_bad_symbol_position():
    with pytest.raises(ParseError) as info:
        parse_path("EXN")
    assert info.value.position == 2
    assert info.value.to_dict()["code"] == "parse_error"


@pytest.mark.parametrize("text", ["", "   ", None])
def test_parse_path_rejects_empty_input(text):
    with pytest.raises(ParseError):
        parse_path(text)


def test_points_follow_steps():
    assert LatticePath("ENN").points == ((0, 0), (1, 0), (1, 1), (1, 2))


def test_swapped_exchanges_steps():
    assert LatticePath("EEN").swapped().steps == "NNE"


def test_concatenation():
    assert (LatticePath("EN") + LatticePath("NE")).steps == "ENNE"


@given(st.text(alphabet="NE", min_size=1, max_size=16))
@STANDARD_SETTINGS
def test_north_positions_round_trip(word):
    path = LatticePath(word)
    rebuilt = LatticePath.from_north_positions(path.north_positions, path.length)
    assert rebuilt == path
    assert path.swapped().swapped() == path
    assert path.m + path.r == path.length


def test_from_north_positions_rejects_out_of_range():
    with pytest.raises(ParseError):
        LatticePath.from_north_positions([0, 2], 3)
