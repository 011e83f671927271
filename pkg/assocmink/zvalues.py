"""
Right-hand sides: default and custom facet values, tight values for every
subset, table arithmetic and seeded deformation sampling.
"""

import random
from fractions import Fraction
from typing import Dict, Mapping, Optional

from .exceptions import IncompleteSpecError, ValidationExhaustedError
from .intervals import associated_diagonals
from .logging_config import get_logger
from .models import (
    ComputationConfig,
    CoxeterPartition,
    FacetZSpec,
    HPolytope,
    Provenance,
    ZTable,
)
from .polygon import build_polygon, facet_table, right_set
from .subsets import elements_of, mask_of, nonempty_subsets

logger = get_logger("zvalues")

_SAMPLE_GRID = 100


def default_facet_spec(partition: CoxeterPartition) -> FacetZSpec:
    values = {r: z for _, r, z in facet_table(partition)}
    n = partition.n
    return FacetZSpec(partition, values, Fraction(n * (n + 1), 2))


def custom_facet_spec(
    partition: CoxeterPartition, values: Mapping[int, Fraction], total: Fraction
) -> FacetZSpec:
    """Facet values supplied by the caller; the domain must be the facet sets."""
    expected = {r for _, r, _ in facet_table(partition)}
    given = set(values)
    if given != expected:
        missing = sorted(elements_of(r) for r in expected - given)
        extra = sorted(elements_of(r) for r in given - expected)
        raise IncompleteSpecError(
            f"facet sets for {partition.describe()} missing {missing}, "
            f"unexpected {extra}"
        )
    return FacetZSpec(
        partition,
        {r: Fraction(v) for r, v in values.items()},
        Fraction(total),
        Provenance.CUSTOM,
    )


def tight_z(partition: CoxeterPartition, subset: int, spec: FacetZSpec) -> Fraction:
    """Sum over nested components of the W_i facet values minus (|W_i|-1) z_[n]."""
    if spec.partition != partition:
        raise IncompleteSpecError(
            f"spec is for {spec.partition.describe()}, not {partition.describe()}"
        )
    if subset == partition.full_mask:
        return spec.total

    polygon = build_polygon(partition)
    value = Fraction(0)
    for component in associated_diagonals(partition, subset):
        indices = component.proper_index_set
        for j in indices:
            r = right_set(polygon, component.diagonals[j - 1])
            try:
                value += spec.values[r]
            except KeyError:
                raise IncompleteSpecError(
                    f"no facet value for {elements_of(r)} ({partition.describe()})"
                )
        value -= (len(indices) - 1) * spec.total
    return value


def full_z_table(partition: CoxeterPartition, spec: FacetZSpec) -> ZTable:
    entries = {
        subset: tight_z(partition, subset, spec)
        for subset in nonempty_subsets(partition.n)
    }
    logger.info(
        "z table built for %s (%s)", partition.describe(), spec.provenance.value
    )
    return ZTable(partition, entries, spec.provenance)


def add_z_tables(first: ZTable, second: ZTable) -> ZTable:
    """Entry-wise sum; P(z) + P(z') = P(z + z') for generalized permutahedra."""
    if first.partition != second.partition:
        raise IncompleteSpecError("tables belong to different partitions")
    entries = {s: first.entries[s] + second.entries[s] for s in first.entries}
    return ZTable(first.partition, entries, Provenance.CUSTOM)


def facet_hpolytope(spec: FacetZSpec) -> HPolytope:
    rows = tuple(sorted(spec.values.items()))
    return HPolytope(spec.partition.n, spec.total, rows)


def _perturbed(
    spec: FacetZSpec, rng: random.Random, magnitude: Fraction
) -> FacetZSpec:
    values: Dict[int, Fraction] = {}
    for r, v in sorted(spec.values.items()):
        step = Fraction(rng.randint(-_SAMPLE_GRID, _SAMPLE_GRID), _SAMPLE_GRID)
        values[r] = v + magnitude * step
    return FacetZSpec(spec.partition, values, spec.total, Provenance.CUSTOM)


def sample_deformation_spec(
    partition: CoxeterPartition,
    seed: int,
    magnitude: Fraction = Fraction(1, 10),
    config: Optional[ComputationConfig] = None,
) -> FacetZSpec:
    """
    Perturb every default facet value by a seeded rational in [-magnitude, magnitude].

    A candidate is accepted when its polytope keeps the Catalan number of
    vertices and all (n+2)(n-1)/2 facets; otherwise the magnitude is halved.
    """
    from .oracle import catalan, enumerate_vertices, facet_rows

    config = config or ComputationConfig()
    default = default_facet_spec(partition)
    if magnitude == 0:
        return default

    rng = random.Random(seed)
    n = partition.n
    expected_facets = (n + 2) * (n - 1) // 2
    for attempt in range(1, config.sample_retries + 1):
        candidate = _perturbed(default, rng, magnitude)
        polytope = facet_hpolytope(candidate)
        vertices = enumerate_vertices(polytope)
        facets = facet_rows(polytope, vertices)
        if vertices.vertex_count == catalan(n) and len(facets) == expected_facets:
            logger.debug(
                "seed %s accepted for %s on attempt %d",
                seed,
                partition.describe(),
                attempt,
            )
            return candidate
        logger.warning(
            "seed %s attempt %d for %s: %d vertices, %d facets; halving magnitude",
            seed,
            attempt,
            partition.describe(),
            vertices.vertex_count,
            len(facets),
        )
        magnitude /= 2
    raise ValidationExhaustedError(
        f"no valid deformation for {partition.describe()} with seed {seed} "
        f"after {config.sample_retries} attempts"
    )


def cyclohedron_ztable() -> ZTable:
    """Tight table of n=4, Up={2} with z_{1,4} and z_{2,3} raised to 5."""
    partition = CoxeterPartition(4, (2,))
    table = full_z_table(partition, default_facet_spec(partition))
    entries: Dict[int, Fraction] = dict(table.entries)
    entries[mask_of([1, 4])] = Fraction(5)
    entries[mask_of([2, 3])] = Fraction(5)
    return ZTable(partition, entries, Provenance.CUSTOM)
