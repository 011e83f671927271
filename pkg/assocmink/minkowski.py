"""
Minkowski coefficients y_I of P = sum y_I Delta_I by three independent routes:
Moebius inversion of the z table, the four-term formula over the frame
diagonals and the signed-length product for the default right-hand sides.
"""

from fractions import Fraction
from typing import Dict, Iterable, Optional

from .exceptions import ContractViolationError
from .intervals import classify_frame, decompose, four_diagonal_frame
from .logging_config import get_logger
from .models import (
    CoxeterPartition,
    LabeledPolygon,
    Method,
    Provenance,
    SignedLengths,
    YTable,
    ZTable,
)
from .polygon import build_polygon, right_set
from .subsets import nonempty_subsets, popcount, submasks

logger = get_logger("minkowski")


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def y_moebius(partition: CoxeterPartition, subset: int, ztable: ZTable) -> Fraction:
    """Alternating sum of z_J over all J inside I."""
    size = popcount(subset)
    value = Fraction(0)
    for j in submasks(subset):
        if j:
            value += _sign(size - popcount(j)) * ztable.entries[j]
    return value


def y_four_term(partition: CoxeterPartition, subset: int, ztable: ZTable) -> Fraction:
    decomposition = decompose(partition, subset)
    if decomposition.type_v > 1:
        return Fraction(0)
    polygon = build_polygon(partition)
    frame = four_diagonal_frame(partition, subset)
    r1, r2, r3, r4 = (right_set(polygon, d) for d in frame.deltas)
    sign = _sign(popcount(subset & ~r1))
    return sign * (ztable.get(r1) - ztable.get(r2) - ztable.get(r3) + ztable.get(r4))


def y_frame_sum(partition: CoxeterPartition, subset: int, ztable: ZTable) -> Fraction:
    """
    Signed sum over the proper frame diagonals of a nested proper subset,
    with z_[n] added when a missing diagonal has the full right set.
    """
    label = classify_frame(partition, subset)
    if label is None:
        raise ContractViolationError("the frame sum is for proper subsets")
    polygon = build_polygon(partition)
    frame = four_diagonal_frame(partition, subset)
    value = Fraction(0)
    for d in frame.proper_subset:
        r = right_set(polygon, d)
        value += _sign(popcount(subset & ~r)) * ztable.get(r)
    if label.full_diagonal is not None:
        value += _sign(len({frame.gamma, frame.Gamma})) * ztable.total
    return value


def _path_length(polygon: LabeledPolygon, start: int, end: int, avoid: int) -> int:
    """Edges on the boundary path from start to end that does not pass avoid."""
    size = polygon.size
    forward = (polygon.position[end] - polygon.position[start]) % size
    passed = (polygon.position[avoid] - polygon.position[start]) % size
    if 0 < passed < forward:
        return size - forward
    return forward


def signed_lengths(partition: CoxeterPartition, subset: int) -> SignedLengths:
    """Boundary path lengths to gamma and Gamma, negative on down labels."""
    frame = four_diagonal_frame(partition, subset)
    polygon = build_polygon(partition)
    k_Gamma = _path_length(polygon, frame.b, frame.Gamma, frame.a)
    k_gamma = _path_length(polygon, frame.a, frame.gamma, frame.b)
    if not partition.is_up(frame.Gamma):
        k_Gamma = -k_Gamma
    if not partition.is_up(frame.gamma):
        k_gamma = -k_gamma
    return SignedLengths(k_gamma, k_Gamma)


def y_product(
    partition: CoxeterPartition, subset: int, ztable: Optional[ZTable] = None
) -> Fraction:
    """Product of signed lengths; valid for the default right-hand sides only."""
    if ztable is not None and ztable.provenance is not Provenance.DEFAULT:
        raise ContractViolationError(
            "the signed-length product needs the default right-hand sides"
        )
    decomposition = decompose(partition, subset)
    if decomposition.type_v > 1:
        return Fraction(0)
    lengths = signed_lengths(partition, subset)
    down_part = decomposition.components[0].down.elements
    sign = _sign(popcount(subset & ~down_part))
    product = lengths.k_gamma * lengths.k_Gamma
    if popcount(subset) == 1 and subset & partition.up_mask:
        product -= partition.n + 1
    return Fraction(sign * product)


def y_top(partition: CoxeterPartition) -> Fraction:
    return Fraction(_sign(partition.m))


def is_zero_coefficient(partition: CoxeterPartition, subset: int) -> bool:
    if decompose(partition, subset).type_v > 1:
        return True
    exceptional = partition.n == 3 and partition.up_set == (2,)
    return exceptional and subset == partition.up_mask


_ROUTES = {
    Method.MOEBIUS: y_moebius,
    Method.FOUR_TERM: y_four_term,
}


def full_y_table(partition: CoxeterPartition, ztable: ZTable, method: Method) -> YTable:
    if method is Method.PRODUCT:
        if ztable.provenance is not Provenance.DEFAULT:
            raise ContractViolationError(
                "the product method needs the default right-hand sides"
            )
        coefficients = {
            s: y_product(partition, s) for s in nonempty_subsets(partition.n)
        }
    else:
        route = _ROUTES[method]
        coefficients = {
            s: route(partition, s, ztable) for s in nonempty_subsets(partition.n)
        }
    logger.info("y table for %s by %s", partition.describe(), method.value)
    return YTable(partition, coefficients, method)


def z_from_y(ytable: YTable) -> ZTable:
    """Subset sums of the coefficients."""
    partition = ytable.partition
    entries = {
        s: sum((ytable.coefficients[j] for j in submasks(s) if j), Fraction(0))
        for s in nonempty_subsets(partition.n)
    }
    return ZTable(partition, entries, Provenance.CUSTOM)


def sign_identities_hold(partition: CoxeterPartition, subset: int) -> bool:
    """
    Parities of |I minus R(delta_i)| for the frame diagonals of a nested subset:
    e1 = e2 + 1 = e3 + 1 = e4 + |{gamma, Gamma}| modulo 2.
    """
    frame = four_diagonal_frame(partition, subset)
    polygon = build_polygon(partition)
    e1, e2, e3, e4 = (popcount(subset & ~right_set(polygon, d)) for d in frame.deltas)
    ends = len({frame.gamma, frame.Gamma})
    return _sign(e1) == _sign(e2 + 1) == _sign(e3 + 1) == _sign(e4 + ends)


def compare_methods(
    partition: CoxeterPartition, ztable: ZTable, methods: Iterable[Method]
) -> Dict[int, Dict[Method, Fraction]]:
    """Per-subset coefficients by each requested method."""
    tables = [full_y_table(partition, ztable, method) for method in methods]
    return {
        s: {t.method: t.coefficients[s] for t in tables}
        for s in nonempty_subsets(partition.n)
    }
