from itertools import product

import numpy as np
import pytest
from hypothesis import given

from app.core.tutte import tutte_lpm
from app.snakes.multifan import (
    MultiFan,
    Multigraph,
    acyclic_bruteforce,
    acyclic_formula,
    bareiss_determinant,
    expand,
    fan_from_dual_snake,
    fan_from_snake,
    format_fan,
    graph_bases,
    graph_tutte,
    parse_fan,
    spanning_trees,
    totally_cyclic_bruteforce,
)
from app.snakes.orientation import components_strongly_connected, is_acyclic
from app.snakes.snake import SnakeComposition, bases_recursive, eval02, eval20, snake_diagram, snake_dual
from app.utils.errors import CapExceededError, CompositionError, ParseError
from tests.settings import QUICK_SETTINGS, STANDARD_SETTINGS
from tests.strategies import multifans, snakes

S = SnakeComposition.of

TRIANGLE = MultiFan((1, 1), (1,))
SMALL = MultiFan((2, 1), (2,))


class TestConstruction:
    def test_trivial_snake(self):
        assert fan_from_snake(S(1)) == MultiFan((2,))

    def test_two_runs(self):
        assert fan_from_snake(S(2, 3)) == SMALL

    @pytest.mark.parametrize("a", [1, 2, 7])
    def test_single_run_is_bundle(self, a):
        assert fan_from_snake(S(a)) == MultiFan((a + 1,))

    def test_dual_snake_examples(self):
        assert fan_from_dual_snake(S(2, 3)) == MultiFan((1, 3), (1,))
        assert fan_from_dual_snake(S(1, 2)) == MultiFan((3,))
        assert fan_from_dual_snake(S(1)) == MultiFan((2,))

    @given(snakes(max_parts=6, max_value=6))
    @STANDARD_SETTINGS
    def test_dual_formula_agrees_with_dual_snake(self, snake):
        assert fan_from_dual_snake(snake) == fan_from_snake(snake_dual(snake))
        assert fan_from_snake(snake).edge_count == snake.element_count

    def test_validation(self):
        with pytest.raises(CompositionError):
            MultiFan((), ())
        with pytest.raises(CompositionError):
            MultiFan((1, 1), ())
        with pytest.raises(CompositionError):
            MultiFan((1, 0), (1,))


class TestTextFormat:
    def test_parse_and_format(self):
        assert parse_fan("F(c=2,1;d=2)") == SMALL
        assert parse_fan(" f( c = 2 ) ") == MultiFan((2,))
        assert format_fan(SMALL) == "F(c=2,1;d=2)"
        assert format_fan(MultiFan((3,))) == "F(c=3)"

    @pytest.mark.parametrize("text", ["F(2,1)", "F(c=;d=1)", "S(2)", ""])
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            parse_fan(text)


class TestExpansion:
    def test_bundle(self):
        graph = expand(MultiFan((2,)))
        assert (graph.vertex_count, graph.edge_count) == (2, 2)

    def test_series_path(self):
        graph = expand(SMALL)
        assert (graph.vertex_count, graph.edge_count) == (4, 5)
        assert [ids for _, _, ids in graph.parallel_classes] == [(0, 1), (4,), (2,), (3,)]

    def test_triangle(self):
        graph = expand(TRIANGLE)
        assert (graph.vertex_count, graph.edge_count) == (3, 3)
        assert graph.is_connected()
        assert graph.to_networkx().number_of_edges() == 3

    def test_loops_are_rejected(self):
        with pytest.raises(ParseError):
            Multigraph(2, ((0, 0, 0),))

    def test_serialize(self):
        assert expand(MultiFan((2,))).serialize() == {"vertex_count": "2", "edges": [[0, 1, 0], [0, 1, 1]]}


class TestSpanningTrees:
    def test_triangle(self):
        assert spanning_trees(expand(TRIANGLE)) == 3

    def test_series_edges_give_seven_trees_for_s23(self):
        assert spanning_trees(expand(fan_from_snake(S(2, 3)))) == 7 == bases_recursive(S(2, 3))
        parallel_reading = Multigraph(3, ((0, 1, 0), (0, 1, 1), (1, 2, 2), (1, 2, 3), (0, 2, 4)))
        assert spanning_trees(parallel_reading) == 8

    def test_bundle(self):
        assert spanning_trees(expand(MultiFan((6,)))) == 6

    def test_disconnected(self):
        assert spanning_trees(Multigraph(3, ((0, 1, 0),))) == 0

    def test_bareiss_with_row_swap(self):
        matrix = np.array([[0, 2], [3, 1]], dtype=object)
        assert bareiss_determinant(matrix) == -6

    @given(snakes(max_parts=8, max_value=6, max_elements=30))
    @STANDARD_SETTINGS
    def test_matrix_tree_matches_snake_bases(self, snake):
        assert spanning_trees(expand(fan_from_snake(snake))) == bases_recursive(snake)

    @given(multifans(max_length=3, max_value=3))
    @QUICK_SETTINGS
    def test_three_routes_agree(self, fan):
        graph = expand(fan)
        assert graph_bases(graph) == spanning_trees(graph)


class TestOrientations:
    def test_acyclic_formula(self):
        assert acyclic_formula(MultiFan((5,))) == 2
        assert acyclic_formula(SMALL) == 14
        assert acyclic_formula(TRIANGLE) == 6

    def test_acyclic_bruteforce(self):
        assert acyclic_bruteforce(expand(TRIANGLE)) == 6
        assert acyclic_bruteforce(expand(SMALL)) == 14
        assert acyclic_bruteforce(expand(MultiFan((2,)))) == 2

    def test_totally_cyclic_bruteforce(self):
        assert totally_cyclic_bruteforce(expand(MultiFan((2,)))) == 2
        assert totally_cyclic_bruteforce(expand(SMALL)) == 6
        assert totally_cyclic_bruteforce(expand(TRIANGLE)) == 2

    def test_orientation_cap(self):
        with pytest.raises(CapExceededError):
            totally_cyclic_bruteforce(expand(MultiFan((30,))), cap=20)
        with pytest.raises(CapExceededError):
            acyclic_bruteforce(expand(MultiFan((1, 1, 1), (5, 5))), cap=8)

    def test_orientation_helpers(self):
        assert is_acyclic(3, [(0, 1), (1, 2)])
        assert not is_acyclic(3, [(0, 1), (1, 2), (2, 0)])
        assert components_strongly_connected(3, [(0, 1), (1, 2), (2, 0)], [{0, 1, 2}])
        assert not components_strongly_connected(3, [(0, 1), (1, 2), (0, 2)], [{0, 1, 2}])

    @given(snakes(max_parts=4, max_value=4, max_elements=10))
    @QUICK_SETTINGS
    def test_orientation_counts_match_snake_evaluations(self, snake):
        fan = fan_from_snake(snake)
        assert acyclic_formula(fan) == eval20(snake)
        if snake.parts[0] >= 2:
            assert totally_cyclic_bruteforce(expand(fan)) == eval02(snake)


class TestGraphTutte:
    def test_bundle(self):
        assert str(graph_tutte(expand(MultiFan((2,))))) == "x + y"

    def test_triangle(self):
        assert str(graph_tutte(expand(TRIANGLE))) == "x^2 + x + y"

    def test_matches_snake(self):
        assert graph_tutte(expand(SMALL)) == tutte_lpm(snake_diagram(S(2, 3)))

    def test_cap(self):
        with pytest.raises(CapExceededError):
            graph_tutte(expand(MultiFan((9, 8), (1,))), cap=16)


def _small_compositions(max_elements):
    pending = [(a,) for a in range(1, max_elements)]
    while pending:
        parts = pending.pop()
        snake = SnakeComposition(parts)
        if snake.element_count > max_elements:
            continue
        yield snake
        pending.extend((*parts, a) for a in range(2, max_elements))


@pytest.mark.slow
def test_graph_tutte_matches_every_snake_up_to_twelve_elements():
    checked = 0
    for snake in _small_compositions(12):
        graph = expand(fan_from_snake(snake))
        assert graph_tutte(graph) == tutte_lpm(snake_diagram(snake)), snake
        checked += 1
    assert checked > 0


@pytest.mark.slow
def test_acyclic_formula_matches_bruteforce_for_small_fans():
    checked = 0
    for length in range(1, 5):
        for d in product(range(1, 16), repeat=length - 1):
            if length + sum(d) > 16:
                continue
            for c in ((1,) * length, (2,) + (1,) * (length - 1)):
                fan = MultiFan(c, d)
                if fan.edge_count > 16:
                    continue
                checked += 1
                assert acyclic_formula(fan) == acyclic_bruteforce(expand(fan)), fan
    assert checked == 313 + 245
