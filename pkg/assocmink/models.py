"""
Data models and domain entities for assocmink.

Subsets of [n] are bitmasks: element i is bit i - 1.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, FrozenSet, Optional, Tuple

from .exceptions import InvalidPartitionError, PolytopeError

LIBRARY_MAX_N = 24
CLI_MAX_N = 16
ENUMERATION_MAX_N = 8

Point = Tuple[Fraction, ...]


@dataclass(frozen=True)
class CoxeterPartition:
    """Splitting of [n] into a down set and an up set; 1 and n are down."""

    n: int
    up_set: Tuple[int, ...] = ()
    down_set: Tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        if self.n < 2:
            raise InvalidPartitionError(f"n must be at least 2, got {self.n}")
        if self.n > LIBRARY_MAX_N:
            raise InvalidPartitionError(
                f"n={self.n} exceeds the supported maximum {LIBRARY_MAX_N}"
            )
        ups = tuple(sorted(set(self.up_set)))
        if len(ups) != len(self.up_set):
            raise InvalidPartitionError(f"duplicate up labels in {self.up_set}")
        bad = [u for u in ups if not 1 < u < self.n]
        if bad:
            raise InvalidPartitionError(
                f"up labels must lie strictly between 1 and {self.n}: {bad}"
            )
        object.__setattr__(self, "up_set", ups)
        downs = tuple(i for i in range(1, self.n + 1) if i not in ups)
        object.__setattr__(self, "down_set", downs)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def up_mask(self) -> int:
        mask = 0
        for u in self.up_set:
            mask |= 1 << (u - 1)
        return mask

    @property
    def down_mask(self) -> int:
        return self.full_mask & ~self.up_mask

    @property
    def closed_down(self) -> Tuple[int, ...]:
        """Down labels with 0 and n+1 attached; index r holds d_r."""
        return (0,) + self.down_set + (self.n + 1,)

    @property
    def ell(self) -> int:
        return len(self.down_set)

    @property
    def m(self) -> int:
        return len(self.up_set)

    def is_up(self, label: int) -> bool:
        return label in self.up_set

    def describe(self) -> str:
        ups = ",".join(str(u) for u in self.up_set)
        return f"n={self.n}, Up={{{ups}}}"


@dataclass(frozen=True)
class LabeledPolygon:
    """Labeled (n+2)-gon; increasing cycle index is counter-clockwise."""

    partition: CoxeterPartition
    cycle: Tuple[int, ...]
    position: Dict[int, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "position", {label: i for i, label in enumerate(self.cycle)}
        )

    @property
    def size(self) -> int:
        return len(self.cycle)


class DiagonalKind(Enum):
    PROPER = "proper"
    NON_PROPER = "non_proper_boundary"
    DEGENERATE = "degenerate"


@dataclass(frozen=True, order=True)
class Diagonal:
    """Unordered label pair, stored with x <= y."""

    x: int
    y: int
    kind: DiagonalKind = field(compare=False)

    @property
    def endpoints(self) -> Tuple[int, int]:
        return (self.x, self.y)

    @property
    def is_proper(self) -> bool:
        return self.kind is DiagonalKind.PROPER

    def label(self) -> str:
        return f"{{{self.x},{self.y}}}"


@dataclass(frozen=True)
class DownInterval:
    """Open down interval (a, b); empty ones keep their gap index r."""

    a: int
    b: int
    elements: int
    empty_marker: Optional[int] = None

    @property
    def is_empty(self) -> bool:
        return self.elements == 0


@dataclass(frozen=True)
class UpInterval:
    """Closed up interval [alpha, beta], never empty."""

    alpha: int
    beta: int
    elements: int


@dataclass(frozen=True)
class NestedComponent:
    """A down interval with the up intervals it hosts."""

    down: DownInterval
    ups: Tuple[UpInterval, ...] = ()
    diagonals: Tuple[Diagonal, ...] = ()
    proper_index_set: Tuple[int, ...] = ()
    rightmost: Optional[int] = None

    @property
    def mask(self) -> int:
        mask = self.down.elements
        for interval in self.ups:
            mask |= interval.elements
        return mask

    @property
    def w(self) -> int:
        return len(self.ups)


@dataclass(frozen=True)
class UpDownDecomposition:
    subject: int
    type_v: int
    type_w: int
    components: Tuple[NestedComponent, ...]

    @property
    def is_nested(self) -> bool:
        return self.type_v == 1


@dataclass(frozen=True)
class FourDiagonalFrame:
    """The diagonals {a,b}, {a,Gamma}, {gamma,b}, {gamma,Gamma} of a nested subset."""

    gamma: int
    Gamma: int
    a: int
    b: int
    delta1: Diagonal
    delta2: Diagonal
    delta3: Diagonal
    delta4: Diagonal

    @property
    def deltas(self) -> Tuple[Diagonal, Diagonal, Diagonal, Diagonal]:
        return (self.delta1, self.delta2, self.delta3, self.delta4)

    @property
    def shape(self) -> FrozenSet[int]:
        """Indices 1..4 of the proper diagonals."""
        return frozenset(i for i, d in enumerate(self.deltas, 1) if d.is_proper)

    @property
    def proper_subset(self) -> Tuple[Diagonal, ...]:
        return tuple(d for d in self.deltas if d.is_proper)


class CaseLabel(Enum):
    """Admissible shapes of the proper frame diagonals with their sub-cases."""

    SINGLE = ("{d1}", "")
    D1_D4_A = ("{d1,d4}", "a")
    D1_D4_B = ("{d1,d4}", "b")
    D2_D3_A = ("{d2,d3}", "a")
    D2_D3_B = ("{d2,d3}", "b")
    D1_D2_D3_A = ("{d1,d2,d3}", "a")
    D1_D2_D3_B = ("{d1,d2,d3}", "b")
    D1_D2_D4_A = ("{d1,d2,d4}", "a")
    D1_D2_D4_B = ("{d1,d2,d4}", "b")
    D1_D2_D4_C = ("{d1,d2,d4}", "c")
    D1_D3_D4_A = ("{d1,d3,d4}", "a")
    D1_D3_D4_B = ("{d1,d3,d4}", "b")
    D1_D3_D4_C = ("{d1,d3,d4}", "c")
    D2_D3_D4 = ("{d2,d3,d4}", "")
    FULL = ("{d1,d2,d3,d4}", "")

    @property
    def shape(self) -> FrozenSet[int]:
        return frozenset(int(part) for part in self.value[0][2:-1].split(",d"))

    @property
    def subcase(self) -> str:
        return self.value[1]

    @property
    def full_diagonal(self) -> Optional[int]:
        """
        Index of the missing frame diagonal whose right set is [n].

        Every other missing diagonal has an empty right set.
        """
        return _FULL_DIAGONAL.get(self)

    def __str__(self) -> str:
        base, letter = self.value
        return f"{base}({letter})" if letter else base


_FULL_DIAGONAL: Dict[CaseLabel, int] = {
    CaseLabel.D1_D4_A: 2,
    CaseLabel.D1_D3_D4_A: 2,
    CaseLabel.D1_D4_B: 3,
    CaseLabel.D1_D2_D4_A: 3,
    CaseLabel.D2_D3_A: 4,
    CaseLabel.D2_D3_B: 4,
    CaseLabel.D1_D2_D3_B: 4,
}


class Provenance(Enum):
    DEFAULT = "default"
    CUSTOM = "custom"


class Method(Enum):
    MOEBIUS = "moebius"
    FOUR_TERM = "four-term"
    PRODUCT = "product"


@dataclass
class FacetZSpec:
    """Right-hand sides on the right sets of proper diagonals."""

    partition: CoxeterPartition
    values: Dict[int, Fraction]
    total: Fraction
    provenance: Provenance = Provenance.DEFAULT


@dataclass
class ZTable:
    partition: CoxeterPartition
    entries: Dict[int, Fraction]
    provenance: Provenance = Provenance.DEFAULT

    @property
    def total(self) -> Fraction:
        return self.entries[self.partition.full_mask]

    def get(self, mask: int) -> Fraction:
        """Entry lookup with z of the empty set equal to 0."""
        if mask == 0:
            return Fraction(0)
        return self.entries[mask]


@dataclass
class YTable:
    partition: CoxeterPartition
    coefficients: Dict[int, Fraction]
    method: Method


@dataclass(frozen=True)
class SignedLengths:
    k_gamma: int
    k_Gamma: int


@dataclass(frozen=True)
class HPolytope:
    """Sum of x_i over I >= z_I for each row, on the hyperplane sum x = level."""

    dim_ambient: int
    equality_level: Fraction
    inequalities: Tuple[Tuple[int, Fraction], ...]

    def __post_init__(self) -> None:
        full = (1 << self.dim_ambient) - 1
        masks = [mask for mask, _ in self.inequalities]
        if any(mask <= 0 or mask >= full for mask in masks):
            raise PolytopeError("inequality rows need a non-empty proper subset")
        if len(set(masks)) != len(masks):
            raise PolytopeError("inequality rows must be deduplicated by subset")


@dataclass(frozen=True)
class VPolytope:
    dim_ambient: int
    vertices: Tuple[Point, ...]

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)


@dataclass
class ComputationConfig:
    """Computation limits and defaults."""

    max_cli_n: int = CLI_MAX_N
    max_enumeration_n: int = ENUMERATION_MAX_N
    sample_magnitude: Fraction = Fraction(1, 10)
    sample_retries: int = 8
    robust_specs: int = 20
    verify_max_n: int = 6
    tight_check_max_n: int = 5
    robust_max_n: int = 5
    sampled_tight_specs: int = 3


@dataclass
class CommandConfig:
    """One CLI invocation."""

    subcommand: str
    n: int = 0
    up: Tuple[int, ...] = ()
    z_file: Optional[str] = None
    method: Optional[Method] = None
    format: str = "json"
    seed: Optional[int] = None
    max_n: Optional[int] = None
    output: Optional[str] = None
    metrics_file: Optional[str] = None
    z_table: Optional[str] = None
    spec_out: Optional[str] = None


@dataclass
class SuiteResult:
    """Outcome of one verification suite."""

    name: str
    checked: int = 0
    failed: int = 0
    first_failure: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failed == 0
