"""Support sets of binary matrices: validation, maximum search, oracle."""

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from beatsched.errors import DomainError
from beatsched.matching import (
    brute_force_max_support,
    max_support_set,
    validate_support_set,
)

matrices = st.integers(1, 5).flatmap(
    lambda rows: st.integers(1, 6).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(0, 1), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
)


class TestValidate:
    def test_all_three_conditions_fire(self):
        matrix = [[1, 1], [0, 1]]
        ok, problems = validate_support_set(matrix, [(2, 1)])
        assert not ok
        assert any("condition 1" in p for p in problems)  # (2,1) is a 0
        ok, problems = validate_support_set(matrix, [(1, 1), (1, 2)])
        assert not ok
        assert any("condition 3" in p for p in problems)  # row reuse
        ok, problems = validate_support_set(matrix, [(1, 1)])
        assert not ok
        assert any("condition 2" in p for p in problems)  # (2,2) uncovered

    def test_zero_matrix_supports_only_the_empty_set(self):
        ok, problems = validate_support_set([[0, 0], [0, 0]], [])
        assert ok and not problems

    def test_column_reuse_detected(self):
        ok, problems = validate_support_set([[1], [1]], [(1, 1), (2, 1)])
        assert not ok
        assert any("column 1" in p for p in problems)

    def test_out_of_range_element_is_a_domain_error(self):
        with pytest.raises(DomainError):
            validate_support_set([[1]], [(2, 1)])

    def test_ragged_matrix_rejected(self):
        with pytest.raises(DomainError):
            validate_support_set([[1, 0], [1]], [])

    def test_non_binary_entry_rejected(self):
        with pytest.raises(DomainError):
            validate_support_set([[2]], [])


class TestMaxSupport:
    def test_frozen_examples(self):
        # Middle column shared by all rows: row 2 must take it, leaving
        # rows 1 and 3 their private columns. The matching is unique.
        witness, size = max_support_set([[1, 1, 0], [0, 1, 0], [0, 1, 1]])
        assert size == 3
        assert witness == ((1, 1), (2, 2), (3, 3))

    def test_zero_and_identity(self):
        assert max_support_set([[0, 0], [0, 0]]) == ((), 0)
        assert max_support_set([[1, 0], [0, 1]]) == (((1, 1), (2, 2)), 2)

    def test_all_ones_pairs_diagonally(self):
        witness, size = max_support_set([[1] * 4 for _ in range(4)])
        assert size == 4
        assert witness == ((1, 1), (2, 2), (3, 3), (4, 4))

    def test_single_column(self):
        witness, size = max_support_set([[0, 1], [0, 1]])
        assert size == 1
        assert witness == ((1, 2),)

    def test_wide_and_tall(self):
        assert max_support_set([[1, 1, 1, 1, 1]])[1] == 1
        assert max_support_set([[1]] * 5)[1] == 1

    def test_witness_always_validates(self):
        matrix = [[1, 0, 1], [1, 1, 0], [0, 1, 1]]
        witness, _ = max_support_set(matrix)
        ok, problems = validate_support_set(matrix, witness)
        assert ok and not problems

    def test_deterministic_across_calls(self):
        matrix = [[1, 1, 0, 1], [1, 0, 1, 0], [0, 1, 1, 1]]
        assert max_support_set(matrix) == max_support_set(matrix)

    @given(matrix=matrices)
    @settings(max_examples=300, deadline=None)
    def test_matches_brute_force_oracle(self, matrix):
        witness, size = max_support_set(matrix)
        assert size == brute_force_max_support(matrix)
        ok, problems = validate_support_set(matrix, witness)
        assert ok and not problems

    @given(matrix=matrices)
    @settings(max_examples=150, deadline=None)
    def test_matches_networkx_bipartite_matching(self, matrix):
        graph = nx.Graph()
        rows, cols = len(matrix), len(matrix[0])
        graph.add_nodes_from(f"r{i}" for i in range(rows))
        graph.add_nodes_from(f"c{j}" for j in range(cols))
        for i, row in enumerate(matrix):
            for j, v in enumerate(row):
                if v:
                    graph.add_edge(f"r{i}", f"c{j}")
        expected = len(
            nx.bipartite.maximum_matching(
                graph, top_nodes=[f"r{i}" for i in range(rows)]
            )
        ) // 2
        assert max_support_set(matrix)[1] == expected


class TestBruteForce:
    def test_agrees_on_small_frozen_cases(self):
        assert brute_force_max_support([[1, 1, 0], [0, 1, 0], [0, 1, 1]]) == 3
        assert brute_force_max_support([[0]]) == 0
        assert brute_force_max_support([[1]]) == 1

    def test_cell_limit_guard(self):
        big = [[1] * 8 for _ in range(4)]  # 32 cells
        with pytest.raises(DomainError, match="30 cells"):
            brute_force_max_support(big)
