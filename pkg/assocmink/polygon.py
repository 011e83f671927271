"""
The labeled polygon of a Coxeter partition, its diagonals and their right sets.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import FrozenSet, Iterator, List, Tuple

from .exceptions import DiagonalError
from .logging_config import get_logger
from .models import CoxeterPartition, Diagonal, DiagonalKind, LabeledPolygon
from .subsets import mask_of, popcount

logger = get_logger("polygon")


def all_partitions(n: int) -> Iterator[CoxeterPartition]:
    """Every partition of [n]: the 2^(n-2) choices of an up set inside 2..n-1."""
    middle = list(range(2, n))
    for size in range(len(middle) + 1):
        for ups in combinations(middle, size):
            yield CoxeterPartition(n, ups)


@lru_cache(maxsize=None)
def build_polygon(partition: CoxeterPartition) -> LabeledPolygon:
    """Cycle 0, d_1, ..., d_l, n+1 followed by the up labels in decreasing order."""
    cycle = partition.closed_down + tuple(reversed(partition.up_set))
    logger.debug("polygon for %s: %s", partition.describe(), cycle)
    return LabeledPolygon(partition, cycle)


def diagonal(polygon: LabeledPolygon, x: int, y: int) -> Diagonal:
    """Classify the chord between labels x and y."""
    top = polygon.partition.n + 1
    for label in (x, y):
        if not 0 <= label <= top:
            raise DiagonalError(f"label {label} outside 0..{top}")
    x, y = min(x, y), max(x, y)
    if x == y:
        return Diagonal(x, y, DiagonalKind.DEGENERATE)
    step = (polygon.position[y] - polygon.position[x]) % polygon.size
    if step in (1, polygon.size - 1):
        return Diagonal(x, y, DiagonalKind.NON_PROPER)
    return Diagonal(x, y, DiagonalKind.PROPER)


def all_diagonals(polygon: LabeledPolygon) -> FrozenSet[Diagonal]:
    labels = range(polygon.size)
    return frozenset(diagonal(polygon, x, y) for x, y in combinations(labels, 2))


def proper_diagonals(polygon: LabeledPolygon) -> List[Diagonal]:
    return sorted(d for d in all_diagonals(polygon) if d.is_proper)


def right_set(polygon: LabeledPolygon, delta: Diagonal) -> int:
    """
    Labels strictly to the right of delta oriented from its smaller endpoint.

    A passed 0 becomes the smaller up endpoint and a passed n+1 the larger
    one. Non-proper and degenerate diagonals give the empty set when both
    endpoints are down labels (0 and n+1 included) and [n] otherwise, except
    {0, n+1} without up labels, which gives [n].
    """
    partition = polygon.partition
    n = partition.n
    for label in delta.endpoints:
        if not 0 <= label <= n + 1:
            raise DiagonalError(f"label {label} outside 0..{n + 1}")

    if not delta.is_proper:
        closed = set(partition.closed_down)
        if delta.endpoints == (0, n + 1) and not partition.up_set:
            return partition.full_mask
        if delta.x in closed and delta.y in closed:
            return 0
        return partition.full_mask

    start = polygon.position[delta.x]
    stop = polygon.position[delta.y]
    arc = []
    i = (start + 1) % polygon.size
    while i != stop:
        arc.append(polygon.cycle[i])
        i = (i + 1) % polygon.size

    up_ends = [e for e in delta.endpoints if partition.is_up(e)]
    labels = {label for label in arc if 1 <= label <= n}
    if 0 in arc and up_ends:
        labels.add(min(up_ends))
    if n + 1 in arc and up_ends:
        labels.add(max(up_ends))
    return mask_of(labels)


def diagonals_cross(polygon: LabeledPolygon, first: Diagonal, second: Diagonal) -> bool:
    """True iff the endpoints strictly interleave along the boundary."""
    for d in (first, second):
        if not d.is_proper:
            raise DiagonalError(f"diagonal {d.label()} is not proper")
    if set(first.endpoints) & set(second.endpoints):
        return False
    lo, hi = sorted(polygon.position[e] for e in first.endpoints)
    inside = [lo < polygon.position[e] < hi for e in second.endpoints]
    return inside[0] != inside[1]


def facet_table(partition: CoxeterPartition) -> List[Tuple[Diagonal, int, Fraction]]:
    """Proper diagonals with their right sets and default right-hand sides."""
    polygon = build_polygon(partition)
    rows = []
    for d in proper_diagonals(polygon):
        r = right_set(polygon, d)
        k = popcount(r)
        rows.append((d, r, Fraction(k * (k + 1), 2)))
    return rows
