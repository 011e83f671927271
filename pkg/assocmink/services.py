"""
Service layer: coefficient tables, polytope checks and verification suites.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Tuple

from .exceptions import AssocMinkError, ContractViolationError
from .intervals import (
    IMPOSSIBLE_SHAPES,
    associated_diagonals,
    classify_frame,
    decompose,
    four_diagonal_frame,
    missing_diagonals_hold,
)
from .logging_config import get_logger
from .metrics import metrics_collector
from .minkowski import (
    compare_methods,
    full_y_table,
    is_zero_coefficient,
    sign_identities_hold,
    y_frame_sum,
    y_moebius,
    z_from_y,
)
from .models import (
    ComputationConfig,
    CoxeterPartition,
    FacetZSpec,
    LabeledPolygon,
    Method,
    Provenance,
    SuiteResult,
    VPolytope,
    YTable,
    ZTable,
)
from .oracle import (
    catalan,
    decomposition_check,
    enumerate_vertices,
    facet_rows,
    min_linear,
    minkowski_sides,
    polytopes_equal,
)
from .polygon import (
    all_partitions,
    build_polygon,
    diagonals_cross,
    facet_table,
    proper_diagonals,
    right_set,
)
from .repository import format_rational, vertices_to_list, ytable_to_dict
from .subsets import elements_of, nonempty_subsets, popcount
from .zvalues import (
    cyclohedron_ztable,
    default_facet_spec,
    facet_hpolytope,
    full_z_table,
    sample_deformation_spec,
    tight_z,
)

logger = get_logger("services")


def _partition_header(partition: CoxeterPartition) -> Dict[str, Any]:
    return {"n": partition.n, "up": list(partition.up_set)}


class SpecService:
    """Chooses the right-hand sides for a command."""

    def __init__(self, config: ComputationConfig):
        self.config = config

    def resolve(
        self,
        partition: CoxeterPartition,
        spec: Optional[FacetZSpec] = None,
        seed: Optional[int] = None,
    ) -> FacetZSpec:
        if spec is not None:
            return spec
        if seed is not None:
            return sample_deformation_spec(
                partition, seed, self.config.sample_magnitude, self.config
            )
        return default_facet_spec(partition)


class DecompositionService:
    """Tables of right-hand sides and Minkowski coefficients."""

    def __init__(self, config: ComputationConfig):
        self.config = config

    def facets(self, partition: CoxeterPartition) -> Dict[str, Any]:
        rows = [
            {
                "diagonal": list(d.endpoints),
                "right_set": elements_of(r),
                "z": format_rational(z),
            }
            for d, r, z in facet_table(partition)
        ]
        return {**_partition_header(partition), "facets": rows}

    @metrics_collector.time_operation("zvalues")
    def zvalues(self, partition: CoxeterPartition, spec: FacetZSpec) -> ZTable:
        return full_z_table(partition, spec)

    def decompose(
        self,
        partition: CoxeterPartition,
        spec: FacetZSpec,
        method: Optional[Method] = None,
    ) -> Dict[str, Any]:
        return self.decompose_table(full_z_table(partition, spec), method)

    @metrics_collector.time_operation("decompose")
    def decompose_table(
        self, ztable: ZTable, method: Optional[Method] = None
    ) -> Dict[str, Any]:
        """
        Coefficients by every applicable method with a per-subset agreement flag,
        or by the single requested method.
        """
        partition = ztable.partition
        default = ztable.provenance is Provenance.DEFAULT
        if method is not None:
            methods = [method]
        elif default:
            methods = [Method.MOEBIUS, Method.FOUR_TERM, Method.PRODUCT]
        else:
            methods = [Method.MOEBIUS, Method.FOUR_TERM]
        if Method.PRODUCT in methods and not default:
            raise ContractViolationError(
                "the product method needs the default right-hand sides"
            )

        values = compare_methods(partition, ztable, methods)
        entries = []
        consistent = True
        for subset in sorted(values, key=lambda s: (popcount(s), elements_of(s))):
            by_method = values[subset]
            agree = len(set(by_method.values())) == 1
            if not agree:
                consistent = False
                logger.warning(
                    "methods disagree at %s for %s: %s",
                    elements_of(subset),
                    partition.describe(),
                    {m.value: str(v) for m, v in by_method.items()},
                )
            entries.append(
                {
                    "set": elements_of(subset),
                    "y": {m.value: format_rational(v) for m, v in by_method.items()},
                    "agree": agree,
                }
            )
        return {
            **_partition_header(partition),
            "total": format_rational(ztable.total),
            "spec": ztable.provenance.value,
            "methods": [m.value for m in methods],
            "entries": entries,
            "consistent": consistent,
        }

    def classify(self, partition: CoxeterPartition) -> Dict[str, Any]:
        entries = []
        for subset in sorted(
            nonempty_subsets(partition.n), key=lambda s: (popcount(s), elements_of(s))
        ):
            decomposition = decompose(partition, subset)
            entry: Dict[str, Any] = {
                "set": elements_of(subset),
                "type": [decomposition.type_v, decomposition.type_w],
                "frame": None,
                "case": None,
            }
            if decomposition.is_nested:
                frame = four_diagonal_frame(partition, subset)
                label = classify_frame(partition, subset)
                entry["frame"] = {
                    "a": frame.a,
                    "b": frame.b,
                    "gamma": frame.gamma,
                    "Gamma": frame.Gamma,
                    "proper": sorted(frame.shape),
                }
                entry["case"] = str(label) if label is not None else None
            entries.append(entry)
        return {**_partition_header(partition), "entries": entries}


class OracleService:
    """Vertex enumeration and the cyclohedron check."""

    def __init__(self, config: ComputationConfig):
        self.config = config

    @metrics_collector.time_operation("vertices")
    def vertices(
        self, partition: CoxeterPartition, spec: FacetZSpec
    ) -> Dict[str, Any]:
        polytope = facet_hpolytope(spec)
        vertices = enumerate_vertices(polytope, self.config.max_enumeration_n)
        facets = facet_rows(polytope, vertices)
        metrics_collector.record_vertex_count(
            partition.describe(), vertices.vertex_count
        )
        return {
            **_partition_header(partition),
            "spec": spec.provenance.value,
            "vertex_count": vertices.vertex_count,
            "facet_count": len(facets),
            "catalan": catalan(partition.n),
            "vertices": vertices_to_list(vertices),
        }

    @metrics_collector.time_operation("cyclo_check")
    def cyclo_check(self) -> Dict[str, Any]:
        ztable = cyclohedron_ztable()
        ytable = full_y_table(ztable.partition, ztable, Method.MOEBIUS)
        sides = minkowski_sides(ztable, ytable)
        left, right = (side.vertex_count for side in sides)
        metrics_collector.record_vertex_count("cyclohedron_left", left)
        metrics_collector.record_vertex_count("cyclohedron_right", right)
        logger.info("cyclohedron sides: %d and %d vertices", left, right)
        return {
            "left": left,
            "right": right,
            "prop_2_3_holds": polytopes_equal(*sides),
            "y": ytable_to_dict(ytable, ztable.total)["entries"],
        }


@dataclass
class _Context:
    """Per-partition data shared by the suites."""

    partition: CoxeterPartition
    polygon: LabeledPolygon
    spec: FacetZSpec
    ztable: ZTable
    tables: Dict[Method, YTable] = field(default_factory=dict)


Case = Tuple[_Context, int]


class VerificationService:
    """Exhaustive invariant suites over all partitions up to a bound."""

    def __init__(self, config: ComputationConfig):
        self.config = config
        self._contexts: Dict[CoxeterPartition, _Context] = {}
        self._polytopes: Dict[CoxeterPartition, Tuple[int, VPolytope]] = {}

    def _context(self, partition: CoxeterPartition) -> _Context:
        if partition not in self._contexts:
            spec = default_facet_spec(partition)
            ztable = full_z_table(partition, spec)
            tables = {
                method: full_y_table(partition, ztable, method) for method in Method
            }
            self._contexts[partition] = _Context(
                partition, build_polygon(partition), spec, ztable, tables
            )
        return self._contexts[partition]

    def _partitions(self, max_n: int) -> Iterator[CoxeterPartition]:
        for n in range(2, max_n + 1):
            yield from all_partitions(n)

    def _subset_cases(self, max_n: int) -> Iterator[Case]:
        for partition in self._partitions(max_n):
            context = self._context(partition)
            for subset in nonempty_subsets(partition.n):
                yield context, subset

    def _run(
        self,
        name: str,
        cases: Iterable[Any],
        check: Callable[[Any], bool],
        describe: Callable[[Any], str],
    ) -> SuiteResult:
        result = SuiteResult(name)
        for case in cases:
            result.checked += 1
            try:
                ok = check(case)
                detail = describe(case)
            except AssocMinkError as e:
                ok = False
                detail = f"{describe(case)}: {type(e).__name__}: {e}"
            if not ok:
                result.failed += 1
                if result.first_failure is None:
                    result.first_failure = detail
        metrics_collector.record_check(
            name, result.checked - result.failed, result.failed
        )
        level = logger.info if result.passed else logger.error
        level("%s: %d checked, %d failed", name, result.checked, result.failed)
        return result

    @staticmethod
    def _describe_partition(partition: CoxeterPartition) -> str:
        return partition.describe()

    @staticmethod
    def _describe_case(case: Case) -> str:
        context, subset = case
        return f"{context.partition.describe()}, I={elements_of(subset)}"

    # === Polygon ===

    def _check_diagonals(self, partition: CoxeterPartition) -> bool:
        polygon = build_polygon(partition)
        proper = proper_diagonals(polygon)
        n = partition.n
        if len(proper) != (n + 2) * (n - 1) // 2:
            return False
        sets = [right_set(polygon, d) for d in proper]
        if len(set(sets)) != len(sets):
            return False
        return all(0 < r < partition.full_mask for r in sets)

    def _check_right_set_types(self, partition: CoxeterPartition) -> bool:
        polygon = build_polygon(partition)
        for d in proper_diagonals(polygon):
            decomposition = decompose(partition, right_set(polygon, d))
            kind = (decomposition.type_v, decomposition.type_w)
            if kind not in {(1, 0), (1, 1), (1, 2)}:
                return False
        return True

    # === Decomposition ===

    def _check_partition_property(self, case: Case) -> bool:
        context, subset = case
        decomposition = decompose(context.partition, subset)
        covered = 0
        for component in decomposition.components:
            for part in [component.down.elements] + [u.elements for u in component.ups]:
                if covered & part:
                    return False
                covered |= part
        return covered == subset and decomposition.type_w == sum(
            c.w for c in decomposition.components
        )

    def _check_reconstruction(self, case: Case) -> bool:
        context, subset = case
        if subset == context.partition.full_mask:
            return True
        components = associated_diagonals(context.partition, subset)
        return all(c.rightmost is not None for c in components)

    def _check_non_crossing(self, case: Case) -> bool:
        context, subset = case
        diagonals = [
            c.diagonals[j - 1]
            for c in associated_diagonals(context.partition, subset)
            for j in c.proper_index_set
        ]
        pairs = combinations(diagonals, 2)
        return not any(diagonals_cross(context.polygon, d, e) for d, e in pairs)

    def _nested_proper_cases(self, max_n: int) -> Iterator[Case]:
        for context, subset in self._subset_cases(max_n):
            if subset == context.partition.full_mask:
                continue
            if decompose(context.partition, subset).is_nested:
                yield context, subset

    def _check_frame_shape(self, case: Case) -> bool:
        context, subset = case
        frame = four_diagonal_frame(context.partition, subset)
        if frame.shape in IMPOSSIBLE_SHAPES:
            return False
        label = classify_frame(context.partition, subset)
        return label is not None and label.shape == frame.shape

    def _check_missing_diagonals(self, case: Case) -> bool:
        context, subset = case
        return missing_diagonals_hold(context.partition, subset)

    # === Right-hand sides ===

    def _check_facet_agreement(self, partition: CoxeterPartition) -> bool:
        context = self._context(partition)
        return all(
            context.ztable.entries[r] == z for r, z in context.spec.values.items()
        )

    def _check_additivity(self, case: Case) -> bool:
        context, subset = case
        components = decompose(context.partition, subset).components
        parts = sum(
            (
                tight_z(context.partition, c.mask, context.spec)
                for c in components
            ),
            Fraction(0),
        )
        return parts == context.ztable.entries[subset]

    # === Coefficients ===

    def _check_three_way(self, case: Case) -> bool:
        context, subset = case
        values = {t.coefficients[subset] for t in context.tables.values()}
        return len(values) == 1

    def _check_inverse_pair(self, partition: CoxeterPartition) -> bool:
        context = self._context(partition)
        return all(
            z_from_y(context.tables[method]).entries == context.ztable.entries
            for method in (Method.MOEBIUS, Method.FOUR_TERM)
        )

    def _check_zero(self, case: Case) -> bool:
        context, subset = case
        product = context.tables[Method.PRODUCT].coefficients[subset]
        return is_zero_coefficient(context.partition, subset) == (product == 0)

    def _check_signs(self, case: Case) -> bool:
        context, subset = case
        return sign_identities_hold(context.partition, subset)

    def _check_vanishing(self, case: Case) -> bool:
        context, subset = case
        if decompose(context.partition, subset).is_nested:
            return True
        return y_moebius(context.partition, subset, context.ztable) == 0

    def _check_frame_sum(self, case: Case) -> bool:
        context, subset = case
        moebius = context.tables[Method.MOEBIUS].coefficients[subset]
        return y_frame_sum(context.partition, subset, context.ztable) == moebius

    # === Polytopes ===

    def _polytope(self, partition: CoxeterPartition) -> Tuple[int, VPolytope]:
        if partition not in self._polytopes:
            polytope = facet_hpolytope(self._context(partition).spec)
            vertices = enumerate_vertices(polytope, self.config.max_enumeration_n)
            facets = len(facet_rows(polytope, vertices))
            self._polytopes[partition] = (facets, vertices)
        return self._polytopes[partition]

    def _check_vertex_count(self, partition: CoxeterPartition) -> bool:
        facets, vertices = self._polytope(partition)
        n = partition.n
        return (
            vertices.vertex_count == catalan(n) and facets == (n + 2) * (n - 1) // 2
        )

    def _check_tightness(self, partition: CoxeterPartition) -> bool:
        context = self._context(partition)
        _, vertices = self._polytope(partition)
        return all(
            min_linear(vertices, s) == context.ztable.entries[s]
            for s in nonempty_subsets(partition.n)
        )

    def _check_decomposition(self, partition: CoxeterPartition) -> bool:
        context = self._context(partition)
        return decomposition_check(
            partition, context.ztable, context.tables[Method.MOEBIUS]
        )

    def _sampled_cases(self, max_n: int) -> Iterator[Tuple[CoxeterPartition, int]]:
        for partition in self._partitions(max_n):
            for seed in range(self.config.sampled_tight_specs):
                yield partition, seed

    def _check_sampled_tightness(self, case: Tuple[CoxeterPartition, int]) -> bool:
        partition, seed = case
        spec = sample_deformation_spec(
            partition, seed, self.config.sample_magnitude, self.config
        )
        ztable = full_z_table(partition, spec)
        vertices = enumerate_vertices(
            facet_hpolytope(spec), self.config.max_enumeration_n
        )
        return all(
            min_linear(vertices, s) == ztable.entries[s]
            for s in nonempty_subsets(partition.n)
        )

    @metrics_collector.time_operation("verify")
    def run_all(self, max_n: Optional[int] = None) -> List[SuiteResult]:
        max_n = max_n if max_n is not None else self.config.verify_max_n
        polytope_n = min(max_n, self.config.tight_check_max_n)
        partitions = self._describe_partition
        case = self._describe_case

        results = [
            self._run(
                "diagonal_count",
                self._partitions(max_n),
                self._check_diagonals,
                partitions,
            ),
            self._run(
                "right_set_types",
                self._partitions(max_n),
                self._check_right_set_types,
                partitions,
            ),
            self._run(
                "partition_property",
                self._subset_cases(max_n),
                self._check_partition_property,
                case,
            ),
            self._run(
                "reconstruction",
                self._subset_cases(max_n),
                self._check_reconstruction,
                case,
            ),
            self._run(
                "non_crossing",
                self._subset_cases(max_n),
                self._check_non_crossing,
                case,
            ),
            self._run(
                "frame_shapes",
                self._nested_proper_cases(max_n),
                self._check_frame_shape,
                case,
            ),
            self._run(
                "missing_frame_diagonals",
                self._nested_proper_cases(max_n),
                self._check_missing_diagonals,
                case,
            ),
            self._run(
                "facet_agreement",
                self._partitions(max_n),
                self._check_facet_agreement,
                partitions,
            ),
            self._run(
                "component_additivity",
                self._subset_cases(max_n),
                self._check_additivity,
                case,
            ),
            self._run(
                "three_way", self._subset_cases(max_n), self._check_three_way, case
            ),
            self._run(
                "inverse_pair",
                self._partitions(max_n),
                self._check_inverse_pair,
                partitions,
            ),
            self._run(
                "zero_characterization",
                self._subset_cases(max_n),
                self._check_zero,
                case,
            ),
            self._run(
                "sign_identities",
                self._nested_proper_cases(max_n),
                self._check_signs,
                case,
            ),
            self._run(
                "vanishing", self._subset_cases(max_n), self._check_vanishing, case
            ),
            self._run(
                "frame_sum",
                self._nested_proper_cases(max_n),
                self._check_frame_sum,
                case,
            ),
            self._run(
                "vertex_count",
                self._partitions(polytope_n),
                self._check_vertex_count,
                partitions,
            ),
            self._run(
                "tightness",
                self._partitions(polytope_n),
                self._check_tightness,
                partitions,
            ),
            self._run(
                "minkowski_decomposition",
                self._partitions(polytope_n),
                self._check_decomposition,
                partitions,
            ),
            self._run(
                "sampled_tightness",
                self._sampled_cases(polytope_n),
                self._check_sampled_tightness,
                lambda c: f"{c[0].describe()}, seed {c[1]}",
            ),
        ]
        seeds = range(self.config.robust_specs)
        for partition in self._partitions(min(max_n, self.config.robust_max_n)):
            results.append(self.robust_equivalence(partition, seeds))
        return results

    def robust_equivalence(
        self, partition: CoxeterPartition, seeds: Iterable[int]
    ) -> SuiteResult:
        """Moebius and four-term agree on sampled deformations of the facet values."""

        def check(seed: int) -> bool:
            spec = sample_deformation_spec(
                partition, seed, self.config.sample_magnitude, self.config
            )
            ztable = full_z_table(partition, spec)
            values = compare_methods(
                partition, ztable, [Method.MOEBIUS, Method.FOUR_TERM]
            )
            return all(len(set(v.values())) == 1 for v in values.values())

        return self._run(
            f"robust_equivalence[{partition.describe()}]",
            seeds,
            check,
            lambda seed: f"{partition.describe()}, seed {seed}",
        )
