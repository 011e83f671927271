"""
Exact polytope arithmetic: H-representations from z tables, vertex
enumeration, extreme points and Minkowski sums of dilated simplex faces.
"""

import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Any, Iterable, List, Optional, Sequence, Set, Tuple

from sympy import QQ, Rational
from sympy.polys.matrices import DomainMatrix
from sympy.solvers.simplex import InfeasibleLPError, UnboundedLPError, linprog

from .exceptions import (
    DimensionMismatchError,
    EmptyPolytopeError,
    EnumerationLimitError,
    NegativeCoefficientError,
    PolytopeError,
    UnboundedPolytopeError,
)
from .logging_config import get_logger
from .models import (
    ENUMERATION_MAX_N,
    CoxeterPartition,
    HPolytope,
    Point,
    VPolytope,
    YTable,
    ZTable,
)
from .polygon import facet_table
from .subsets import elements_of, nonempty_subsets, submasks

logger = get_logger("oracle")

Row = Tuple[int, Fraction]
Inverse = Tuple[Tuple[Fraction, ...], ...]


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def _to_fraction(element: Any) -> Fraction:
    return Fraction(int(element.numerator), int(element.denominator))


def _to_rational(value: Fraction) -> Rational:
    return Rational(value.numerator, value.denominator)


def hrep_from_ztable(ztable: ZTable, only_facets: bool = False) -> HPolytope:
    """Rows sum_{i in I} x_i >= z_I for proper non-empty I, or for facet sets only."""
    partition = ztable.partition
    if only_facets:
        masks = sorted(r for _, r, _ in facet_table(partition))
    else:
        masks = [s for s in nonempty_subsets(partition.n) if s != partition.full_mask]
    rows = tuple((s, ztable.entries[s]) for s in masks)
    return HPolytope(partition.n, ztable.total, rows)


@lru_cache(maxsize=None)
def _basis_inverse(n: int, masks: Tuple[int, ...]) -> Optional[Inverse]:
    """Inverse of the equality row stacked on the chosen rows, None if singular."""
    rows = [[QQ.one] * n]
    for mask in masks:
        rows.append([QQ.one if mask >> i & 1 else QQ.zero for i in range(n)])
    matrix = DomainMatrix(rows, (n, n), QQ)
    if matrix.det() == QQ.zero:
        return None
    return tuple(
        tuple(_to_fraction(e) for e in row) for row in matrix.inv().to_list()
    )


def _row_sum(point: Point, members: Sequence[int]) -> Fraction:
    return sum((point[i - 1] for i in members), Fraction(0))


def _bounded(polytope: HPolytope) -> bool:
    """
    The recession cone {x : sum_{i in I} x_i >= 0, sum x_i = 0} is trivial.

    Free variables are split as x = p - q with p, q >= 0.
    """
    n = polytope.dim_ambient
    masks = [mask for mask, _ in polytope.inequalities]
    if all((1 << i) in masks for i in range(n)):
        return True
    A = [
        [-(mask >> i & 1) for i in range(n)] + [mask >> i & 1 for i in range(n)]
        for mask in masks
    ] or [[0] * (2 * n)]
    b = [0] * len(A)
    for i in range(n):
        objective = [0] * (2 * n)
        objective[i], objective[n + i] = -1, 1
        try:
            linprog(objective, A, b, A_eq=[[1] * n + [-1] * n], b_eq=[0])
        except UnboundedLPError:
            return False
    return True


def enumerate_vertices(
    polytope: HPolytope, max_n: int = ENUMERATION_MAX_N
) -> VPolytope:
    """
    Solve every choice of n-1 rows together with the equality.

    Nonsingular bases give candidate points; the feasible ones are the
    vertices, deduplicated and sorted.
    """
    n = polytope.dim_ambient
    if n > max_n:
        raise EnumerationLimitError(f"vertex enumeration is limited to n <= {max_n}")
    rows = polytope.inequalities
    members = [elements_of(mask) for mask, _ in rows]

    found: Set[Point] = set()
    for basis in combinations(range(len(rows)), n - 1):
        inverse = _basis_inverse(n, tuple(rows[i][0] for i in basis))
        if inverse is None:
            continue
        rhs = (polytope.equality_level,) + tuple(rows[i][1] for i in basis)
        point = tuple(
            sum((c * r for c, r in zip(line, rhs)), Fraction(0)) for line in inverse
        )
        if all(_row_sum(point, members[k]) >= z for k, (_, z) in enumerate(rows)):
            found.add(point)

    if not _bounded(polytope):
        raise UnboundedPolytopeError(f"polytope in dimension {n} is unbounded")
    if not found:
        raise EmptyPolytopeError(f"inequality system in dimension {n} is infeasible")
    logger.debug("%d vertices from %d rows", len(found), len(rows))
    return VPolytope(n, tuple(sorted(found)))


def _affine_rank(points: List[Point]) -> int:
    if len(points) < 2:
        return 0
    base = points[0]
    differences = [
        [QQ(c.numerator, c.denominator) for c in (x - y for x, y in zip(p, base))]
        for p in points[1:]
    ]
    return DomainMatrix(differences, (len(differences), len(base)), QQ).rank()


def facet_rows(
    polytope: HPolytope, vertices: Optional[VPolytope] = None
) -> List[Row]:
    """Rows whose tight vertices span a face of dimension n-2."""
    vertices = vertices or enumerate_vertices(polytope)
    target = polytope.dim_ambient - 2
    facets = []
    for mask, z in polytope.inequalities:
        members = elements_of(mask)
        tight = [v for v in vertices.vertices if _row_sum(v, members) == z]
        if tight and _affine_rank(tight) == target:
            facets.append((mask, z))
    return facets


def _in_hull(point: Point, candidates: Sequence[Point]) -> bool:
    """Exact feasibility of point = sum lambda_j q_j with lambda >= 0 summing to 1."""
    k = len(candidates)
    A_eq = [[_to_rational(q[i]) for q in candidates] for i in range(len(point))]
    A_eq.append([Rational(1)] * k)
    b_eq = [_to_rational(x) for x in point] + [Rational(1)]
    try:
        linprog([0] * k, [[0] * k], [0], A_eq=A_eq, b_eq=b_eq)
    except InfeasibleLPError:
        return False
    return True


def _certified(points: List[Point], directions: int) -> Set[Point]:
    """Points that uniquely maximise or minimise some integer functional."""
    dim = len(points[0])
    rng = random.Random(dim * 7919 + len(points))
    functionals = [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    functionals += [
        tuple(rng.randint(-50, 50) for _ in range(dim)) for _ in range(directions)
    ]
    certified: Set[Point] = set()
    for c in functionals:
        values = [sum((a * x for a, x in zip(c, p)), Fraction(0)) for p in points]
        for best in (max(values), min(values)):
            winners = [p for p, v in zip(points, values) if v == best]
            if len(winners) == 1:
                certified.add(winners[0])
    return certified


def extreme_points(points: Iterable[Point], directions: int = 48) -> Tuple[Point, ...]:
    """
    Points outside the convex hull of the others.

    Functional certificates settle most extreme points. A remaining point
    is dropped once it lies in the hull of the certified points or, failing
    that, of all the other points.
    """
    unique = sorted({tuple(Fraction(c) for c in p) for p in points})
    if len(unique) <= 2:
        return tuple(unique)
    certified = _certified(unique, directions)
    anchors = sorted(certified)
    kept = []
    for p in unique:
        if p in certified:
            kept.append(p)
            continue
        if anchors and _in_hull(p, anchors):
            continue
        if _in_hull(p, [q for q in unique if q != p]):
            continue
        kept.append(p)
    logger.debug(
        "%d extreme points among %d (%d certified)",
        len(kept),
        len(unique),
        len(anchors),
    )
    return tuple(kept)


def dilated_face(coefficient: Fraction, subset: int, n: int) -> VPolytope:
    """coefficient times conv{e_i : i in subset}."""
    if coefficient < 0:
        raise NegativeCoefficientError(f"negative dilation {coefficient}")
    if subset == 0:
        raise PolytopeError("simplex face needs a non-empty index set")
    coefficient = Fraction(coefficient)
    vertices = {
        tuple(coefficient if i == j else Fraction(0) for i in range(1, n + 1))
        for j in elements_of(subset)
    }
    return VPolytope(n, tuple(sorted(vertices)))


def minkowski_sum_v(first: VPolytope, second: VPolytope) -> VPolytope:
    if first.dim_ambient != second.dim_ambient:
        raise DimensionMismatchError(
            f"cannot add polytopes in dimensions {first.dim_ambient} "
            f"and {second.dim_ambient}"
        )
    sums = {
        tuple(x + y for x, y in zip(p, q))
        for p in first.vertices
        for q in second.vertices
    }
    return VPolytope(first.dim_ambient, extreme_points(sums))


def polytopes_equal(first: VPolytope, second: VPolytope) -> bool:
    return (
        first.dim_ambient == second.dim_ambient
        and sorted(first.vertices) == sorted(second.vertices)
    )


def min_linear(vertices: VPolytope, subset: int) -> Fraction:
    members = elements_of(subset)
    return min(_row_sum(v, members) for v in vertices.vertices)


def ztable_vertices(ztable: ZTable, only_facets: bool = False) -> VPolytope:
    return enumerate_vertices(hrep_from_ztable(ztable, only_facets))


def _add_faces(
    start: VPolytope, terms: Sequence[Tuple[Fraction, int]]
) -> VPolytope:
    n = start.dim_ambient
    result = start
    for coefficient, subset in terms:
        result = minkowski_sum_v(result, dilated_face(coefficient, subset, n))
    return result


def minkowski_sides(ztable: ZTable, ytable: YTable) -> Tuple[VPolytope, VPolytope]:
    """
    P(z) plus the faces with negative coefficients, and the sum of the faces
    with positive coefficients.
    """
    n = ztable.partition.n
    items = sorted(ytable.coefficients.items())
    negative = [(-y, s) for s, y in items if y < 0]
    positive = [(y, s) for s, y in items if y > 0]
    origin = VPolytope(n, (tuple(Fraction(0) for _ in range(n)),))
    left = _add_faces(ztable_vertices(ztable), negative)
    right = _add_faces(origin, positive)
    return left, right


def decomposition_check(
    partition: CoxeterPartition, ztable: ZTable, ytable: YTable
) -> bool:
    """Subset sums of y reproduce z, and both sides of the decomposition agree."""
    for subset in nonempty_subsets(partition.n):
        partial = sum(
            (ytable.coefficients[j] for j in submasks(subset) if j), Fraction(0)
        )
        if partial != ztable.entries[subset]:
            logger.info("subset sum of y differs from z at %s", elements_of(subset))
            return False
    left, right = minkowski_sides(ztable, ytable)
    return polytopes_equal(left, right)

