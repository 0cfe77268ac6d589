import pytest
from hypothesis import given

from app.core.diagram import direct_sum
from app.core.tutte import count_bases, evaluate_points
from app.snakes.snake import (
    SnakeComposition,
    bases_fib_sum,
    bases_recursive,
    eval02,
    eval20,
    fib_strings,
    fibonacci,
    format_snake,
    mw_margin,
    parse_snake,
    product_identity_check,
    recognize_snake,
    snake_diagram,
    snake_dual,
    snake_tutte,
)
from app.utils.errors import CompositionError, ParseError
from tests.conftest import make
from tests.settings import STANDARD_SETTINGS
from tests.strategies import snakes

S = SnakeComposition.of


class TestComposition:
    def test_parse(self):
        assert parse_snake(" s( 2 , 3 ) ") == S(2, 3)
        assert format_snake(S(2, 3)) == "S(2,3)"

    @pytest.mark.parametrize("text", ["S()", "S(2;3)", "T(2)", ""])
    def test_parse_rejects_malformed(self, text):
        with pytest.raises(ParseError):
            parse_snake(text)

    def test_bounds(self):
        with pytest.raises(CompositionError) as info:
            S(2, 1)
        assert info.value.position == 2
        with pytest.raises(CompositionError) as info:
            S(0)
        assert info.value.position == 1

    def test_element_count_and_flags(self):
        assert S(2, 3).element_count == 5
        assert S(1).is_trivial
        assert S(1, 2).first_run_vertical
        assert not S(1).first_run_vertical


class TestDiagram:
    def test_snake_paths(self, s23):
        assert snake_diagram(S(2, 3)) == s23

    def test_trivial_snake_is_unit_square(self, s1):
        assert snake_diagram(S(1)) == s1

    def test_vertical_start(self):
        assert snake_diagram(S(1, 2)) == make("ENN", "NNE")

    def test_vertical_start_is_recognised_as_itself(self):
        recognised = recognize_snake(make("ENN", "NNE"))
        assert recognised == S(1, 2)
        assert recognised.first_run_vertical
        assert recognize_snake(make("EEN", "NEE")) == S(2)

    @given(snakes(max_parts=5))
    @STANDARD_SETTINGS
    def test_recognize_round_trip(self, snake):
        diagram = snake_diagram(snake)
        assert diagram.size == snake.element_count
        assert diagram.is_lc() and diagram.is_connected()
        assert recognize_snake(diagram) == snake

    def test_non_snakes(self, u24, s1_sum_s1):
        assert recognize_snake(u24) is None
        assert recognize_snake(s1_sum_s1) is None
        assert recognize_snake(make("E", "E")) is None


class TestDuality:
    def test_examples(self):
        assert snake_dual(S(2)) == S(1, 2)
        assert snake_dual(S(1, 5, 3, 4)) == S(5, 3, 4)
        assert snake_dual(S(1)) == S(1)

    def test_dual_diagram_of_longer_snake(self):
        assert snake_diagram(S(1, 5, 3, 4)).dual() == snake_diagram(S(5, 3, 4))

    @given(snakes(max_parts=5))
    @STANDARD_SETTINGS
    def test_dual_matches_reflection(self, snake):
        assert snake_diagram(snake_dual(snake)) == snake_diagram(snake).dual()


class TestBases:
    def test_small_snake(self):
        assert bases_recursive(S(2, 3)) == bases_fib_sum(S(2, 3)) == 7

    @pytest.mark.parametrize("a", range(1, 51))
    def test_single_run(self, a):
        assert bases_recursive(S(a)) == count_bases(snake_diagram(S(a))) == a + 1

    @pytest.mark.parametrize("n", range(1, 21))
    def test_all_twos_give_fibonacci(self, n):
        snake = SnakeComposition((2,) * n)
        assert bases_recursive(snake) == bases_fib_sum(snake) == count_bases(snake_diagram(snake)) == fibonacci(n + 3)

    def test_fibonacci_numbers(self):
        assert [fibonacci(k) for k in range(1, 9)] == [1, 1, 2, 3, 5, 8, 13, 21]

    def test_fib_strings(self):
        assert list(fib_strings(3)) == [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 0, 1)]
        assert all(len(list(fib_strings(k))) == fibonacci(k + 2) for k in range(1, 12))

    @given(snakes(max_parts=5, max_value=5))
    @STANDARD_SETTINGS
    def test_three_counts_agree(self, snake):
        expected = count_bases(snake_diagram(snake))
        assert bases_recursive(snake) == expected
        assert bases_fib_sum(snake) == expected


class TestClosedForms:
    def test_small_snake(self):
        assert eval20(S(2, 3)) == 14
        assert eval02(S(2, 3)) == 6

    def test_trivial_and_single_interval(self):
        assert (eval20(S(1)), eval02(S(1))) == (2, 2)
        assert (eval20(S(2)), eval02(S(2))) == (2, 6)
        assert (eval20(S(1, 2)), eval02(S(1, 2))) == (6, 2)

    def test_snake_tutte(self):
        assert str(snake_tutte(S(2))) == "x + y + y^2"

    @given(snakes(max_parts=4, max_value=4, max_elements=12))
    @STANDARD_SETTINGS
    def test_closed_forms_match_subset_sum(self, snake):
        assert evaluate_points(snake_diagram(snake), [(2, 0), (0, 2)]) == [eval20(snake), eval02(snake)]

    def test_identity_check_partial_beyond_cap(self):
        check = product_identity_check(S(5, 5, 5), cap=10)
        assert check.holds and check.partial
        assert bool(product_identity_check(S(2, 3)))


class TestMargin:
    def test_equality_at_single_interval(self):
        margin = mw_margin(S(2))
        assert (margin.lhs, margin.rhs) == (36, 36)
        assert margin.equality and margin.satisfied_43

    def test_trivial_snake_only_meets_plain_bound(self):
        margin = mw_margin(S(1))
        assert margin.t20 * margin.t02 == margin.bases ** 2 == 4
        assert not margin.satisfied_43
        assert margin.satisfies_mw

    def test_serialized_integers_are_strings(self):
        dumped = mw_margin(S(2, 3)).model_dump(mode="json")
        assert dumped["lhs"] == "252"
        assert dumped["rhs"] == "196"
        assert dumped["satisfied_43"] is True


def _compositions(max_parts, max_value):
    if max_parts == 0:
        return
    for first in range(1, max_value + 1):
        stack = [(first,)]
        while stack:
            parts = stack.pop()
            yield SnakeComposition(parts)
            if len(parts) < max_parts:
                stack.extend((*parts, a) for a in range(2, max_value + 1))


@pytest.mark.slow
def test_product_identity_for_small_compositions():
    checked = 0
    for snake in _compositions(5, 5):
        check = product_identity_check(snake, cap=14)
        assert check.holds, snake
        assert check.partial == (snake.element_count > 14)
        checked += 1
    assert checked == 5 * (1 + 4 + 16 + 64 + 256)


def test_sum_of_snakes_is_not_a_snake():
    assert recognize_snake(direct_sum([snake_diagram(S(2)), snake_diagram(S(2))])) is None
