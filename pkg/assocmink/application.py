"""
Application facade wiring configuration, repositories and services for the CLI.
"""

from typing import Any, Dict, Optional, Sequence, Tuple

from .exceptions import IncompleteSpecError, InvalidPartitionError, SpecError
from .logging_config import get_logger
from .models import (
    CommandConfig,
    ComputationConfig,
    CoxeterPartition,
    FacetZSpec,
    ZTable,
)
from .repository import TableRepository, ztable_to_dict
from .services import (
    DecompositionService,
    OracleService,
    SpecService,
    VerificationService,
)

Report = Dict[str, Any]


class AssocMinkApplication:
    """
    Facade over the services; each command returns a report dict and
    whether the checks it carries passed.
    """

    def __init__(
        self, data_dir: str = ".", config: Optional[ComputationConfig] = None
    ):
        # Logger
        self.logger = get_logger("application")

        # Configuration
        self.config = config or ComputationConfig()

        # Repositories
        self.table_repo = TableRepository(data_dir)

        # Services
        self.spec_service = SpecService(self.config)
        self.decomposition_service = DecompositionService(self.config)
        self.oracle_service = OracleService(self.config)
        self.verification_service = VerificationService(self.config)

    # === Inputs ===

    def partition(self, n: int, up: Sequence[int] = ()) -> CoxeterPartition:
        if n > self.config.max_cli_n:
            raise InvalidPartitionError(
                f"n={n} exceeds the command-line maximum {self.config.max_cli_n}"
            )
        return CoxeterPartition(n, tuple(up))

    def load_spec(self, partition: CoxeterPartition, z_file: str) -> FacetZSpec:
        spec = self.table_repo.load_facet_spec(z_file)
        if spec.partition != partition:
            raise IncompleteSpecError(
                f"{z_file} is for {spec.partition.describe()}, "
                f"the command asks for {partition.describe()}"
            )
        return spec

    def load_table(self, partition: CoxeterPartition, z_table: str) -> ZTable:
        table = self.table_repo.load_ztable(z_table)
        if table.partition != partition:
            raise IncompleteSpecError(
                f"{z_table} is for {table.partition.describe()}, "
                f"the command asks for {partition.describe()}"
            )
        return table

    def _spec(self, config: CommandConfig, partition: CoxeterPartition) -> FacetZSpec:
        loaded = self.load_spec(partition, config.z_file) if config.z_file else None
        spec = self.spec_service.resolve(partition, loaded, config.seed)
        if config.spec_out:
            self.table_repo.save_facet_spec(spec, config.spec_out)
        return spec

    # === Commands ===

    def facets(self, config: CommandConfig) -> Tuple[Report, bool]:
        partition = self.partition(config.n, config.up)
        return self.decomposition_service.facets(partition), True

    def zvalues(self, config: CommandConfig) -> Tuple[Report, bool]:
        partition = self.partition(config.n, config.up)
        table = self.decomposition_service.zvalues(
            partition, self._spec(config, partition)
        )
        return ztable_to_dict(table), True

    def decompose(self, config: CommandConfig) -> Tuple[Report, bool]:
        partition = self.partition(config.n, config.up)
        if config.z_table:
            if config.z_file or config.seed is not None or config.spec_out:
                raise SpecError(
                    "--z-table cannot be combined with --z-file, --seed or --spec-out"
                )
            report = self.decomposition_service.decompose_table(
                self.load_table(partition, config.z_table), config.method
            )
        else:
            report = self.decomposition_service.decompose(
                partition, self._spec(config, partition), config.method
            )
        if not report["consistent"]:
            self.logger.error(
                "coefficient methods disagree for %s", partition.describe()
            )
        return report, report["consistent"]

    def classify(self, config: CommandConfig) -> Tuple[Report, bool]:
        partition = self.partition(config.n, config.up)
        return self.decomposition_service.classify(partition), True

    def vertices(self, config: CommandConfig) -> Tuple[Report, bool]:
        partition = self.partition(config.n, config.up)
        spec = self._spec(config, partition)
        return self.oracle_service.vertices(partition, spec), True

    def cyclo_check(self, config: CommandConfig) -> Tuple[Report, bool]:
        return self.oracle_service.cyclo_check(), True

    def verify(self, config: CommandConfig) -> Tuple[Report, bool]:
        max_n = config.max_n if config.max_n is not None else self.config.verify_max_n
        if not 2 <= max_n <= self.config.max_cli_n:
            raise InvalidPartitionError(
                f"--max-n must lie in [2, {self.config.max_cli_n}], got {max_n}"
            )
        results = self.verification_service.run_all(max_n)
        passed = all(r.passed for r in results)
        report = {
            "max_n": max_n,
            "passed": passed,
            "suites": [
                {
                    "name": r.name,
                    "checked": r.checked,
                    "failed": r.failed,
                    "first_failure": r.first_failure,
                }
                for r in results
            ],
        }
        if not passed:
            failing = [r.name for r in results if not r.passed]
            self.logger.error("verification failed in %s", ", ".join(failing))
        return report, passed

    def run(self, config: CommandConfig) -> Tuple[Report, bool]:
        handlers = {
            "facets": self.facets,
            "zvalues": self.zvalues,
            "decompose": self.decompose,
            "classify": self.classify,
            "vertices": self.vertices,
            "cyclo-check": self.cyclo_check,
            "verify": self.verify,
        }
        report, ok = handlers[config.subcommand](config)
        if config.output:
            self.table_repo.save_report(report, config.output)
        return report, ok


def get_application(
    data_dir: str = ".", config: Optional[ComputationConfig] = None
) -> AssocMinkApplication:
    """Get application instance."""
    return AssocMinkApplication(data_dir, config)
