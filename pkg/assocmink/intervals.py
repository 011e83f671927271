"""
Up and down interval decomposition of subsets, associated diagonals,
the four-diagonal frame and the case classification of its proper part.
"""

from dataclasses import replace
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from .exceptions import ClassificationError, DecompositionError, FrameUndefinedError
from .logging_config import get_logger
from .models import (
    CaseLabel,
    CoxeterPartition,
    Diagonal,
    DownInterval,
    FourDiagonalFrame,
    NestedComponent,
    UpDownDecomposition,
    UpInterval,
)
from .polygon import build_polygon, diagonal, right_set
from .subsets import contains, elements_of, mask_of, max_element, min_element

logger = get_logger("intervals")

IMPOSSIBLE_SHAPES: FrozenSet[FrozenSet[int]] = frozenset(
    frozenset(s)
    for s in [(), (2,), (3,), (4,), (1, 2), (1, 3), (2, 4), (3, 4)]
)


def _check_subset(partition: CoxeterPartition, subset: int) -> None:
    if subset == 0:
        raise DecompositionError("subset must be non-empty")
    if subset & ~partition.full_mask:
        raise DecompositionError(
            f"subset has elements outside [{partition.n}]: {elements_of(subset)}"
        )


def _host_intervals(partition: CoxeterPartition, subset: int) -> List[DownInterval]:
    """Maximal non-empty down runs and the empty gaps between untouched d_r, d_r+1."""
    closed = partition.closed_down
    ell = partition.ell
    hosts = []

    r = 1
    while r <= ell:
        if contains(subset, closed[r]):
            start = r
            while r <= ell and contains(subset, closed[r]):
                r += 1
            run = mask_of(closed[start:r])
            hosts.append(DownInterval(closed[start - 1], closed[r], run))
        else:
            r += 1

    for r in range(1, ell):
        if not contains(subset, closed[r]) and not contains(subset, closed[r + 1]):
            hosts.append(DownInterval(closed[r], closed[r + 1], 0, empty_marker=r))

    return sorted(hosts, key=lambda host: (host.a, host.b))


def _up_runs(partition: CoxeterPartition, ups: List[int]) -> Tuple[UpInterval, ...]:
    """Group up labels into maximal runs of consecutive up indices."""
    index = {u: s for s, u in enumerate(partition.up_set)}
    runs: List[List[int]] = []
    for u in ups:
        if runs and index[u] == index[runs[-1][-1]] + 1:
            runs[-1].append(u)
        else:
            runs.append([u])
    return tuple(UpInterval(run[0], run[-1], mask_of(run)) for run in runs)


def decompose(partition: CoxeterPartition, subset: int) -> UpDownDecomposition:
    """
    Split a non-empty subset into nested components.

    Non-empty down intervals are the maximal runs of down labels in the
    subset; empty down intervals are gaps (d_r, d_r+1) with both ends
    outside the subset. Each up label of the subset falls into exactly one
    of these open intervals. A down interval survives when it is non-empty
    or hosts up labels.
    """
    _check_subset(partition, subset)
    ups_in = [u for u in partition.up_set if contains(subset, u)]

    components = []
    for host in _host_intervals(partition, subset):
        hosted = [u for u in ups_in if host.a < u < host.b]
        if host.is_empty and not hosted:
            continue
        components.append(NestedComponent(host, _up_runs(partition, hosted)))

    type_w = sum(c.w for c in components)
    decomposition = UpDownDecomposition(
        subset, len(components), type_w, tuple(components)
    )
    covered = 0
    for c in components:
        if covered & c.mask:
            raise DecompositionError("intervals overlap")
        covered |= c.mask
    if covered != subset:
        raise DecompositionError(
            f"intervals cover {elements_of(covered)}, expected {elements_of(subset)}"
        )
    return decomposition


def _component_diagonals(
    partition: CoxeterPartition, component: NestedComponent
) -> Tuple[Diagonal, ...]:
    polygon = build_polygon(partition)
    a, b = component.down.a, component.down.b
    if not component.ups:
        return (diagonal(polygon, a, b),)
    ends = [a]
    for interval in component.ups:
        ends.extend([interval.alpha, interval.beta])
    ends.append(b)
    return tuple(
        diagonal(polygon, ends[2 * j], ends[2 * j + 1]) for j in range(len(ends) // 2)
    )


def reconstruct_subset(
    partition: CoxeterPartition, components: Tuple[NestedComponent, ...]
) -> int:
    """Union over components of R(rightmost) minus the complements of the other R."""
    polygon = build_polygon(partition)
    full = partition.full_mask
    result = 0
    for c in components:
        if c.rightmost is None:
            continue
        part = right_set(polygon, c.diagonals[c.rightmost - 1])
        for j in c.proper_index_set:
            if j != c.rightmost:
                part &= ~(full & ~right_set(polygon, c.diagonals[j - 1]))
        result |= part
    return result


def associated_diagonals(
    partition: CoxeterPartition, subset: int
) -> Tuple[NestedComponent, ...]:
    """
    Components with their diagonals, proper index sets W_i and m_i = max W_i.

    For [n] itself no associated diagonal is proper and m_i stays None.
    """
    decomposition = decompose(partition, subset)
    filled = []
    for c in decomposition.components:
        diagonals = _component_diagonals(partition, c)
        proper = tuple(j for j, d in enumerate(diagonals, 1) if d.is_proper)
        filled.append(
            replace(
                c,
                diagonals=diagonals,
                proper_index_set=proper,
                rightmost=max(proper) if proper else None,
            )
        )
    components = tuple(filled)

    if subset != partition.full_mask:
        rebuilt = reconstruct_subset(partition, components)
        if rebuilt != subset:
            raise DecompositionError(
                f"reconstruction gave {elements_of(rebuilt)} "
                f"for {elements_of(subset)} ({partition.describe()})"
            )
    return components


def four_diagonal_frame(partition: CoxeterPartition, subset: int) -> FourDiagonalFrame:
    decomposition = decompose(partition, subset)
    if decomposition.type_v != 1 and subset != partition.full_mask:
        raise FrameUndefinedError(
            f"{elements_of(subset)} has {decomposition.type_v} nested components"
        )
    polygon = build_polygon(partition)
    down = decomposition.components[0].down
    a, b = down.a, down.b
    gamma, Gamma = min_element(subset), max_element(subset)
    return FourDiagonalFrame(
        gamma=gamma,
        Gamma=Gamma,
        a=a,
        b=b,
        delta1=diagonal(polygon, a, b),
        delta2=diagonal(polygon, a, Gamma),
        delta3=diagonal(polygon, gamma, b),
        delta4=diagonal(polygon, gamma, Gamma),
    )


class _Clauses:
    """Membership tests for one nested subset of a fixed partition."""

    def __init__(
        self, partition: CoxeterPartition, subset: int, frame: FourDiagonalFrame
    ):
        self.p = partition
        self.elems: Set[int] = set(elements_of(subset))
        self.f = frame
        self.closed = partition.closed_down
        self.down_index: Dict[int, int] = {d: r for r, d in enumerate(self.closed)}
        self.up_index: Dict[int, int] = {u: s for s, u in enumerate(partition.up_set)}

    def is_down(self, label: int) -> bool:
        return label in self.down_index

    def ups_between(self, lo: int, hi: int) -> Set[int]:
        return {u for u in self.p.up_set if lo < u < hi}

    def downs_between(self, lo: int, hi: int) -> Set[int]:
        return {d for d in self.p.down_set if lo < d < hi}

    def next_down(self, label: int) -> int:
        return self.closed[self.down_index[label] + 1]

    def consecutive_ups(self, u: int, v: int) -> bool:
        return self.up_index[v] == self.up_index[u] + 1


def _clause_single(c: _Clauses) -> CaseLabel:
    if len(c.elems) == 1 and c.is_down(c.f.gamma):
        return CaseLabel.SINGLE
    return _contradiction(c)


def _clause_d1_d4(c: _Clauses) -> CaseLabel:
    ups = c.p.up_set
    if c.is_down(c.f.gamma):
        if ups and ups[0] < c.closed[2] and c.elems == {1, ups[0]}:
            return CaseLabel.D1_D4_A
    elif ups and c.closed[c.p.ell - 1] < ups[-1] and c.elems == {ups[-1], c.p.n}:
        return CaseLabel.D1_D4_B
    return _contradiction(c)


def _clause_d2_d3(c: _Clauses) -> CaseLabel:
    gamma, Gamma = c.f.gamma, c.f.Gamma
    if c.is_down(gamma) or c.is_down(Gamma):
        return _contradiction(c)
    if gamma == Gamma and c.elems == {gamma}:
        return CaseLabel.D2_D3_A
    if c.elems == {gamma, Gamma} and c.consecutive_ups(gamma, Gamma):
        return CaseLabel.D2_D3_B
    return _contradiction(c)


def _clause_d1_d2_d3(c: _Clauses) -> CaseLabel:
    gamma, Gamma = c.f.gamma, c.f.Gamma
    if c.is_down(gamma) and c.is_down(Gamma):
        rest = c.elems - {gamma, Gamma}
        if c.next_down(gamma) == Gamma and rest <= c.ups_between(gamma, Gamma):
            return CaseLabel.D1_D2_D3_A
    elif not c.is_down(gamma) and not c.is_down(Gamma):
        between = c.downs_between(gamma, Gamma)
        if (
            c.consecutive_ups(gamma, Gamma)
            and between
            and c.elems == between | {gamma, Gamma}
        ):
            return CaseLabel.D1_D2_D3_B
    return _contradiction(c)


def _clause_d1_d2_d4(c: _Clauses) -> CaseLabel:
    f, ups, ell = c.f, c.p.up_set, c.p.ell
    if not c.is_down(f.gamma):
        r = c.down_index[f.a]
        tail = set(c.closed[r + 1 : ell + 1])
        if (
            ups
            and f.gamma == ups[-1]
            and f.Gamma == c.p.n
            and r < ell - 1
            and f.gamma < c.closed[r + 1]
            and c.elems == tail | {f.gamma}
        ):
            return CaseLabel.D1_D2_D4_A
    elif f.gamma == 1:
        hosted = c.elems - {1}
        if (
            f.b == c.closed[2]
            and not c.is_down(f.Gamma)
            and f.Gamma > ups[0]
            and hosted <= c.ups_between(1, c.closed[2])
        ):
            return CaseLabel.D1_D2_D4_C
    else:
        r = c.down_index[f.gamma]
        hosted = c.elems - {f.gamma}
        if (
            1 < r < ell
            and f.b == c.closed[r + 1]
            and hosted
            and hosted <= c.ups_between(f.gamma, f.b)
        ):
            return CaseLabel.D1_D2_D4_B
    return _contradiction(c)


def _clause_d1_d3_d4(c: _Clauses) -> CaseLabel:
    f, ups, ell, n = c.f, c.p.up_set, c.p.ell, c.p.n
    if not c.is_down(f.Gamma):
        r = c.down_index[f.b]
        head = set(c.closed[1:r])
        if (
            ups
            and f.gamma == 1
            and f.Gamma == ups[0]
            and r > 2
            and c.closed[r - 1] < ups[0]
            and c.elems == head | {ups[0]}
        ):
            return CaseLabel.D1_D3_D4_A
    elif f.Gamma == n:
        hosted = c.elems - {n}
        if (
            ups
            and not c.is_down(f.gamma)
            and f.gamma < ups[-1]
            and f.a == c.closed[ell - 1]
            and c.closed[ell - 1] < f.gamma
            and hosted <= {u for u in ups if f.gamma <= u}
        ):
            return CaseLabel.D1_D3_D4_C
    else:
        r = c.down_index[f.Gamma]
        hosted = c.elems - {f.Gamma}
        if (
            2 <= r <= ell - 1
            and not c.is_down(f.gamma)
            and hosted <= c.ups_between(c.closed[r - 1], f.Gamma)
        ):
            return CaseLabel.D1_D3_D4_B
    return _contradiction(c)


def _clause_d2_d3_d4(c: _Clauses) -> CaseLabel:
    f = c.f
    if (
        all(not c.is_down(e) for e in c.elems)
        and c.up_index[f.Gamma] >= c.up_index[f.gamma] + 2
        and c.is_down(f.a)
        and c.next_down(f.a) == f.b
    ):
        return CaseLabel.D2_D3_D4
    return _contradiction(c)


def _contradiction(c: _Clauses) -> CaseLabel:
    raise ClassificationError(
        f"frame shape {sorted(c.f.shape)} contradicts its case for "
        f"{sorted(c.elems)} ({c.p.describe()})"
    )


_DISPATCH = {
    frozenset({1}): _clause_single,
    frozenset({1, 4}): _clause_d1_d4,
    frozenset({2, 3}): _clause_d2_d3,
    frozenset({1, 2, 3}): _clause_d1_d2_d3,
    frozenset({1, 2, 4}): _clause_d1_d2_d4,
    frozenset({1, 3, 4}): _clause_d1_d3_d4,
    frozenset({2, 3, 4}): _clause_d2_d3_d4,
    frozenset({1, 2, 3, 4}): lambda c: CaseLabel.FULL,
}


def classify_frame(partition: CoxeterPartition, subset: int) -> Optional[CaseLabel]:
    """
    Case label of the proper frame diagonals, checked against its clause.

    The clauses describe proper subsets; for [n] the result is None.
    """
    if subset == partition.full_mask:
        return None
    frame = four_diagonal_frame(partition, subset)
    shape = frame.shape
    if shape in IMPOSSIBLE_SHAPES:
        raise ClassificationError(
            f"impossible frame shape {sorted(shape)} for {elements_of(subset)} "
            f"({partition.describe()})"
        )
    label = _DISPATCH[shape](_Clauses(partition, subset, frame))
    logger.debug("%s %s -> %s", partition.describe(), elements_of(subset), label)
    return label


def missing_right_sets(
    partition: CoxeterPartition, subset: int
) -> Dict[int, Tuple[int, int]]:
    """Actual and expected right sets of the missing frame diagonals, by index."""
    label = classify_frame(partition, subset)
    if label is None:
        return {}
    polygon = build_polygon(partition)
    frame = four_diagonal_frame(partition, subset)
    return {
        i: (
            right_set(polygon, d),
            partition.full_mask if i == label.full_diagonal else 0,
        )
        for i, d in enumerate(frame.deltas, 1)
        if i not in frame.shape
    }


def missing_diagonals_hold(partition: CoxeterPartition, subset: int) -> bool:
    return all(
        actual == expected
        for actual, expected in missing_right_sets(partition, subset).values()
    )
