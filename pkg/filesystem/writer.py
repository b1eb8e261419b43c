import contextlib
import csv
import json
import logging
import math
import os
import shutil
import tempfile
from enum import Enum
from typing import Any, Dict, List

import numpy as np

from utilities import __version__
from utilities.functions import format_elapsed_time

logger = logging.getLogger(__name__)


def to_plain(value: Any) -> Any:
    """Convert numpy scalars, enums and containers into JSON-friendly values"""
    if isinstance(value, dict):
        return {str(key): to_plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [to_plain(item) for item in value]
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        # JSON has no NaN or infinity
        return value if math.isfinite(value) else None
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": float(value.real), "im": float(value.imag)}
    return value


class ResultWriter:
    """Writes command tables and the run manifest into an output directory"""

    def __init__(self, directory: str, fmt: str = "csv"):
        self.directory = directory
        self.fmt = fmt

    def _path(self, name: str) -> str:
        return os.path.join(self.directory, name)

    @staticmethod
    def _write_csv(path: str, rows: List[Dict[str, Any]]) -> None:
        columns: List[str] = []
        for row in rows:
            columns.extend(key for key in row if key not in columns)
        with open(path, "w", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=columns, lineterminator="\n")
            writer.writeheader()
            for row in rows:
                writer.writerow({key: _csv_cell(row.get(key)) for key in columns})

    def write(self, result, config: Dict[str, Any]) -> List[str]:
        """Write every table of the result plus a JSON manifest, returning the written paths.

        Files are staged in a hidden directory and moved into place only once all of them
        exist; on failure nothing is left behind.
        """
        os.makedirs(self.directory, exist_ok=True)
        staging = tempfile.mkdtemp(prefix=".staging-", dir=self.directory)
        moved: List[str] = []
        try:
            names = self._stage(staging, result, config)
            for name in names:
                target = self._path(name)
                os.replace(os.path.join(staging, name), target)
                moved.append(target)
        except BaseException:
            for path in moved:
                with contextlib.suppress(OSError):
                    os.remove(path)
            raise
        finally:
            shutil.rmtree(staging, ignore_errors=True)
        logger.info("wrote %d files to %s", len(moved), self.directory)
        return moved

    def _stage(self, staging: str, result, config: Dict[str, Any]) -> List[str]:
        names = []
        if self.fmt == "csv":
            for name, rows in result.tables.items():
                names.append(f"{result.command}_{name}.csv")
                self._write_csv(os.path.join(staging, names[-1]), rows)
        else:
            names.append(f"{result.command}.json")
            with open(os.path.join(staging, names[-1]), "w") as f:
                json.dump(to_plain(result.tables), f, indent=2)

        manifest = {
            "version": __version__,
            "command": result.command,
            "config": to_plain(config),
            "summary": to_plain(result.summary),
            "solver": result.solver_name,
            "time_ms": result.time,
            "elapsed": format_elapsed_time(result.time),
            "files": list(names),
        }
        names.append(f"{result.command}_manifest.json")
        with open(os.path.join(staging, names[-1]), "w") as f:
            json.dump(manifest, f, indent=2)
        return names


def _csv_cell(value: Any) -> Any:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (tuple, list)):
        return " ".join(str(item) for item in value)
    return "" if value is None else value
