"""
Interval decomposition, associated diagonal and frame classification tests.
"""

import pytest

from assocmink.exceptions import DecompositionError, FrameUndefinedError
from assocmink.intervals import (
    IMPOSSIBLE_SHAPES,
    associated_diagonals,
    classify_frame,
    decompose,
    four_diagonal_frame,
    missing_diagonals_hold,
    missing_right_sets,
    reconstruct_subset,
)
from assocmink.models import CaseLabel, CoxeterPartition
from assocmink.polygon import all_partitions, build_polygon, diagonals_cross
from assocmink.subsets import elements_of, mask_of, nonempty_subsets


@pytest.mark.unit
class TestDecompose:
    """Test up and down interval decompositions."""

    def test_one_component_with_up_interval(self, hexagon):
        """Test I={2,3,4} for Up={2}."""
        result = decompose(hexagon, mask_of([2, 3, 4]))
        assert (result.type_v, result.type_w) == (1, 1)
        component = result.components[0]
        assert (component.down.a, component.down.b) == (1, 5)
        assert elements_of(component.down.elements) == [3, 4]
        assert [(u.alpha, u.beta) for u in component.ups] == [(2, 2)]

    def test_two_components(self, hexagon):
        """Test I={1,4} splits into two nested components."""
        result = decompose(hexagon, mask_of([1, 4]))
        assert (result.type_v, result.type_w) == (2, 0)
        assert [elements_of(c.mask) for c in result.components] == [[1], [4]]
        assert not result.is_nested

    def test_empty_down_interval(self, pentagon_up):
        """Test I={2} sits in the empty down interval (1,3)."""
        result = decompose(pentagon_up, mask_of([2]))
        assert (result.type_v, result.type_w) == (1, 1)
        down = result.components[0].down
        assert (down.a, down.b) == (1, 3)
        assert down.is_empty
        assert down.empty_marker == 1

    def test_empty_down_intervals_are_distinct(self):
        """Test two empty gaps give two components."""
        partition = CoxeterPartition(5, (2, 4))
        result = decompose(partition, mask_of([2, 4]))
        markers = [c.down.empty_marker for c in result.components]
        assert markers == [1, 2]

    def test_consecutive_ups_form_one_interval(self, hexagon_two_ups):
        """Test Up labels next to each other merge into one up interval."""
        result = decompose(hexagon_two_ups, mask_of([2, 3]))
        assert (result.type_v, result.type_w) == (1, 1)
        assert [(u.alpha, u.beta) for u in result.components[0].ups] == [(2, 3)]

    def test_invalid_subsets(self, hexagon):
        """Test empty and out-of-range subsets are rejected."""
        with pytest.raises(DecompositionError):
            decompose(hexagon, 0)
        with pytest.raises(DecompositionError):
            decompose(hexagon, mask_of([5]))

    @pytest.mark.slow
    @pytest.mark.parametrize("n", range(2, 8))
    def test_partition_property(self, n):
        """Test the intervals are disjoint and cover I, exhaustively."""
        for partition in all_partitions(n):
            for subset in nonempty_subsets(n):
                result = decompose(partition, subset)
                covered = 0
                for c in result.components:
                    assert not covered & c.mask
                    covered |= c.mask
                assert covered == subset
                assert result.type_w == sum(c.w for c in result.components)


@pytest.mark.unit
class TestAssociatedDiagonals:
    """Test the associated diagonals and their proper index sets."""

    def test_boundary_edge_excluded(self, hexagon):
        """Test I={2,3,4}: {2,5} is a boundary edge, so W={1}."""
        (component,) = associated_diagonals(hexagon, mask_of([2, 3, 4]))
        assert [d.endpoints for d in component.diagonals] == [(1, 2), (2, 5)]
        assert component.proper_index_set == (1,)
        assert component.rightmost == 1

    def test_single_diagonal(self, hexagon):
        """Test I={1,3,4} gives the single diagonal {0,5}."""
        (component,) = associated_diagonals(hexagon, mask_of([1, 3, 4]))
        assert [d.endpoints for d in component.diagonals] == [(0, 5)]
        assert component.proper_index_set == (1,)

    def test_both_proper(self, pentagon_up):
        """Test I={2} for n=3, Up={2}."""
        (component,) = associated_diagonals(pentagon_up, mask_of([2]))
        assert [d.endpoints for d in component.diagonals] == [(1, 2), (2, 3)]
        assert component.proper_index_set == (1, 2)
        assert component.rightmost == 2

    def test_full_set_has_no_rightmost(self, hexagon):
        """Test [n] has no proper associated diagonal."""
        components = associated_diagonals(hexagon, hexagon.full_mask)
        assert all(c.rightmost is None for c in components)

    def test_reconstruction(self, hexagon):
        """Test the subset is rebuilt from the right sets."""
        subset = mask_of([1, 2, 4])
        components = associated_diagonals(hexagon, subset)
        assert reconstruct_subset(hexagon, components) == subset

    @pytest.mark.slow
    @pytest.mark.parametrize("n", range(2, 8))
    def test_reconstruction_and_non_crossing(self, n):
        """Test reconstruction and pairwise non-crossing, exhaustively."""
        for partition in all_partitions(n):
            polygon = build_polygon(partition)
            for subset in nonempty_subsets(n):
                components = associated_diagonals(partition, subset)
                proper = [
                    c.diagonals[j - 1] for c in components for j in c.proper_index_set
                ]
                for i, d in enumerate(proper):
                    for e in proper[i + 1 :]:
                        assert not diagonals_cross(polygon, d, e)
                if subset != partition.full_mask:
                    assert reconstruct_subset(partition, components) == subset


@pytest.mark.unit
class TestFourDiagonalFrame:
    """Test the frame of a nested subset."""

    def test_frame_missing_second_diagonal(self, hexagon):
        """Test I={2,3}: delta_2={1,3} is a boundary edge."""
        frame = four_diagonal_frame(hexagon, mask_of([2, 3]))
        assert (frame.a, frame.b, frame.gamma, frame.Gamma) == (1, 4, 2, 3)
        assert frame.shape == frozenset({1, 3, 4})
        assert [d.endpoints for d in frame.proper_subset] == [(1, 4), (2, 4), (2, 3)]

    def test_frame_missing_fourth_diagonal(self, hexagon):
        """Test I={1,2,3}."""
        frame = four_diagonal_frame(hexagon, mask_of([1, 2, 3]))
        assert (frame.a, frame.b, frame.gamma, frame.Gamma) == (0, 4, 1, 3)
        assert frame.shape == frozenset({1, 2, 3})

    def test_full_set(self, pentagon):
        """Test [n] uses the down interval (0, n+1)."""
        frame = four_diagonal_frame(pentagon, pentagon.full_mask)
        assert (frame.a, frame.b, frame.gamma, frame.Gamma) == (0, 4, 1, 3)
        assert not frame.delta1.is_proper

    def test_undefined_for_several_components(self, hexagon):
        """Test the frame needs a single nested component."""
        with pytest.raises(FrameUndefinedError):
            four_diagonal_frame(hexagon, mask_of([1, 4]))


@pytest.mark.unit
class TestClassifyFrame:
    """Test the case labels of the proper frame diagonals."""

    @pytest.mark.parametrize(
        "fixture, elements, expected",
        [
            ("hexagon", [1], CaseLabel.SINGLE),
            ("pentagon_up", [2], CaseLabel.D2_D3_A),
            ("hexagon", [1, 2], CaseLabel.D1_D4_A),
        ],
    )
    def test_examples(self, request, fixture, elements, expected):
        """Test labels of known subsets."""
        partition = request.getfixturevalue(fixture)
        assert classify_frame(partition, mask_of(elements)) is expected

    def test_label_text(self):
        """Test labels render with their sub-case letter."""
        assert str(CaseLabel.D1_D2_D4_C) == "{d1,d2,d4}(c)"
        assert str(CaseLabel.FULL) == "{d1,d2,d3,d4}"
        assert CaseLabel.D2_D3_B.shape == frozenset({2, 3})

    def test_full_set_unlabeled(self, hexagon):
        """Test [n] has no case label."""
        assert classify_frame(hexagon, hexagon.full_mask) is None

    def test_impossible_shapes(self):
        """Test the eight excluded shapes."""
        assert len(IMPOSSIBLE_SHAPES) == 8
        assert frozenset() in IMPOSSIBLE_SHAPES
        assert frozenset({1, 4}) not in IMPOSSIBLE_SHAPES

    @pytest.mark.slow
    @pytest.mark.parametrize("n", range(2, 8))
    def test_classifier_agrees_with_frame(self, n):
        """Test every nested proper subset gets an admissible, matching label."""
        for partition in all_partitions(n):
            for subset in nonempty_subsets(n):
                if subset == partition.full_mask:
                    continue
                if not decompose(partition, subset).is_nested:
                    continue
                shape = four_diagonal_frame(partition, subset).shape
                assert shape not in IMPOSSIBLE_SHAPES
                label = classify_frame(partition, subset)
                assert label.shape == shape


@pytest.mark.unit
class TestMissingDiagonals:
    """Test the right sets of the frame diagonals that are not proper."""

    @pytest.mark.parametrize(
        "fixture, elements, expected",
        [
            ("pentagon_up", [2], {1: (0, 0), 4: (7, 7)}),
            ("hexagon", [2, 3], {2: (0, 0)}),
            ("hexagon", [1, 2], {2: (15, 15), 3: (0, 0)}),
            ("hexagon", [1], {2: (0, 0), 3: (0, 0), 4: (0, 0)}),
        ],
    )
    def test_examples(self, request, fixture, elements, expected):
        """Test actual and expected right sets by diagonal index."""
        partition = request.getfixturevalue(fixture)
        assert missing_right_sets(partition, mask_of(elements)) == expected
        assert missing_diagonals_hold(partition, mask_of(elements))

    def test_full_diagonal_index(self):
        """Test which labels carry a missing diagonal with right set [n]."""
        assert CaseLabel.D2_D3_A.full_diagonal == 4
        assert CaseLabel.D1_D4_B.full_diagonal == 3
        assert CaseLabel.D1_D3_D4_A.full_diagonal == 2
        assert CaseLabel.SINGLE.full_diagonal is None
        assert CaseLabel.FULL.full_diagonal is None

    def test_full_set(self, hexagon):
        """Test [n] has nothing to check."""
        assert missing_right_sets(hexagon, hexagon.full_mask) == {}

    @pytest.mark.slow
    @pytest.mark.parametrize("n", range(2, 8))
    def test_every_nested_subset(self, n):
        """Test missing diagonals have empty or full right sets as labeled."""
        for partition in all_partitions(n):
            for subset in nonempty_subsets(n):
                if subset == partition.full_mask:
                    continue
                if decompose(partition, subset).is_nested:
                    assert missing_diagonals_hold(partition, subset)
