"""
Repository layer for JSON persistence of tables, facet specs and reports.

Rationals are stored as canonical "p/q" strings ("p" for integers) and
subsets as ascending integer lists.
"""

import json
import os
from abc import ABC
from fractions import Fraction
from typing import Any, Dict, List, Optional

from .exceptions import FileCorruptedError, InvalidPartitionError, StorageError
from .logging_config import get_logger
from .models import (
    CoxeterPartition,
    FacetZSpec,
    Provenance,
    VPolytope,
    YTable,
    ZTable,
)
from .subsets import elements_of, mask_of
from .zvalues import custom_facet_spec

logger = get_logger("repository")


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: Any) -> Fraction:
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    return Fraction(text.strip())


def ztable_to_dict(table: ZTable) -> Dict[str, Any]:
    return {
        "n": table.partition.n,
        "up": list(table.partition.up_set),
        "total": format_rational(table.total),
        "provenance": table.provenance.value,
        "entries": [
            {"set": elements_of(s), "z": format_rational(z)}
            for s, z in sorted(table.entries.items(), key=_subset_order)
        ],
    }


def ytable_to_dict(table: YTable, total: Fraction) -> Dict[str, Any]:
    return {
        "n": table.partition.n,
        "up": list(table.partition.up_set),
        "total": format_rational(total),
        "method": table.method.value,
        "entries": [
            {"set": elements_of(s), "y": format_rational(y)}
            for s, y in sorted(table.coefficients.items(), key=_subset_order)
        ],
    }


def facet_spec_to_dict(spec: FacetZSpec) -> Dict[str, Any]:
    return {
        "n": spec.partition.n,
        "up": list(spec.partition.up_set),
        "total": format_rational(spec.total),
        "entries": [
            {"set": elements_of(s), "z": format_rational(z)}
            for s, z in sorted(spec.values.items(), key=_subset_order)
        ],
    }


def vertices_to_list(polytope: VPolytope) -> List[List[str]]:
    return [[format_rational(c) for c in v] for v in polytope.vertices]


def _subset_order(item: Any) -> Any:
    """Subsets by size, then lexicographically."""
    elements = elements_of(item[0])
    return (len(elements), elements)


class BaseRepository(ABC):
    """Base repository with guarded JSON reads and atomic writes."""

    def __init__(self, data_dir: str = "."):
        self.data_dir = data_dir

    def _resolve(self, file_path: str) -> str:
        return os.path.join(self.data_dir, file_path)

    def _safe_file_read(self, file_path: str) -> Optional[Dict[str, Any]]:
        """Safely read JSON file with error handling."""
        path = self._resolve(file_path)
        if not os.path.exists(path):
            return None

        try:
            with open(path, "r") as f:
                data = json.load(f)
        except (json.JSONDecodeError, UnicodeDecodeError, IOError) as e:
            raise FileCorruptedError(f"Failed to read {path}: {e}")
        if not isinstance(data, dict):
            raise FileCorruptedError(f"{path} does not hold a JSON object")
        return data

    def _safe_file_write(self, file_path: str, data: Dict[str, Any]) -> None:
        """Safely write JSON file with error handling."""
        path = self._resolve(file_path)
        try:
            directory = os.path.dirname(path)
            if directory:
                os.makedirs(directory, exist_ok=True)

            # Atomic write: write to temp file first, then rename
            temp_path = path + ".tmp"
            with open(temp_path, "w") as f:
                json.dump(data, f, indent=2, sort_keys=True)
                f.write("\n")
            os.replace(temp_path, path)
        except (IOError, OSError) as e:
            raise StorageError(f"Failed to write {path}: {e}")


class TableRepository(BaseRepository):
    """Repository for z tables, facet specs and reports."""

    def _require(self, file_path: str) -> Dict[str, Any]:
        data = self._safe_file_read(file_path)
        if data is None:
            raise StorageError(f"No such file: {self._resolve(file_path)}")
        return data

    def _read_entries(
        self, data: Dict[str, Any], key: str, file_path: str
    ) -> Dict[int, Fraction]:
        try:
            return {
                mask_of(entry["set"]): parse_rational(entry[key])
                for entry in data["entries"]
            }
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise FileCorruptedError(f"Malformed entries in {file_path}: {e}")

    def _read_partition(self, data: Dict[str, Any], file_path: str) -> CoxeterPartition:
        try:
            return CoxeterPartition(int(data["n"]), tuple(data.get("up", [])))
        except (KeyError, TypeError, ValueError) as e:
            raise FileCorruptedError(f"Malformed partition in {file_path}: {e}")
        except InvalidPartitionError as e:
            raise FileCorruptedError(f"Invalid partition in {file_path}: {e}")

    def load_ztable(self, file_path: str) -> ZTable:
        data = self._require(file_path)
        partition = self._read_partition(data, file_path)
        entries = self._read_entries(data, "z", file_path)
        expected = set(range(1, partition.full_mask + 1))
        if set(entries) != expected:
            raise FileCorruptedError(
                f"{file_path} must list every non-empty subset of [{partition.n}]"
            )
        try:
            provenance = Provenance(data.get("provenance", Provenance.CUSTOM.value))
        except ValueError as e:
            raise FileCorruptedError(f"Unknown provenance in {file_path}: {e}")
        return ZTable(partition, entries, provenance)

    def load_facet_spec(self, file_path: str) -> FacetZSpec:
        """Facet values in the z table format, restricted to the facet sets."""
        data = self._require(file_path)
        partition = self._read_partition(data, file_path)
        values = self._read_entries(data, "z", file_path)
        try:
            total = parse_rational(data["total"])
        except (KeyError, ValueError, ZeroDivisionError) as e:
            raise FileCorruptedError(f"Missing or malformed total in {file_path}: {e}")
        return custom_facet_spec(partition, values, total)

    def save_facet_spec(self, spec: FacetZSpec, file_path: str) -> None:
        self._safe_file_write(file_path, facet_spec_to_dict(spec))

    def save_report(self, report: Dict[str, Any], file_path: str) -> None:
        self._safe_file_write(file_path, report)
        logger.info("report saved to %s", file_path)
