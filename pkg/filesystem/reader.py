import json
import logging
from typing import Any, Dict

from utilities.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

# Keys accepted in a configuration file, mirroring the command-line flags
CONFIG_KEYS = frozenset({
    "delta", "pump", "kappa", "kappa_e", "dim", "sweep", "grid", "out", "format", "threads",
    "log_level", "log_file", "levels", "crossings", "kind", "sector", "mode", "ramp_time", "ramp_kind",
    "t_max", "points", "method", "compare_reduced", "dark_dissipation",
})


class ConfigFileReader:
    """Handles reading and validating JSON run configurations"""

    @staticmethod
    def read_file(filename: str) -> Dict[str, Any]:
        try:
            with open(filename) as f:
                content = json.load(f)
        except OSError as error:
            raise ConfigurationError(f"Could not read config file {filename}: {error}") from error
        except json.JSONDecodeError as error:
            raise ConfigurationError(f"Failed to parse {filename}: {error}") from error

        if not isinstance(content, dict):
            raise ConfigurationError(f"{filename} must hold a JSON object, got {type(content).__name__}")

        # Flag names may be written with dashes or underscores
        values = {key.replace("-", "_"): value for key, value in content.items()}
        unknown = sorted(set(values) - CONFIG_KEYS)
        if unknown:
            raise ConfigurationError(f"Unknown keys in {filename}: {', '.join(unknown)}")
        if isinstance(values.get("sweep"), str):
            values["sweep"] = [values["sweep"]]

        logger.debug("loaded %d settings from %s", len(values), filename)
        return values
