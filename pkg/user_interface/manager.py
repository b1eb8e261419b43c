# Import argparse for the command-line surface
import argparse
# Import logging for run milestones
import logging
# Import typing hints
from typing import Any, Dict, List, Optional, Sequence

# Import numpy for its linear-algebra error type
import numpy as np

# Import the config reader and result writer
from filesystem import ConfigFileReader, ResultWriter
# Import the shared error types and records
from utilities import __version__, configure_logging
from utilities.exceptions import ConfigurationError, NumericalError, ParameterError
from utilities.typehints import ModelParams
# Import the MVC components
from .components.controllers import CONTROLLERS
from .components.models import COMMANDS, FORMATS, GridSpec, RunConfig, SweepSpec
from .components.views import ConsoleView

logger = logging.getLogger(__name__)

# Exit codes of the command-line front end
EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

# Values used when neither the command line nor a config file sets a flag
DEFAULTS: Dict[str, Any] = {
    "delta": 0.0, "pump": 1.0, "kappa": 0.0, "kappa_e": 0.0, "dim": None, "sweep": [], "grid": None,
    "out": "results", "format": "csv", "threads": 1, "log_level": "WARNING", "log_file": None,
}
# Keys of the run options passed on to the controllers
OPTION_KEYS = ("levels", "crossings", "kind", "sector", "mode", "ramp_time", "ramp_kind", "t_max", "points",
               "method", "compare_reduced", "dark_dissipation")


# Argument parser that raises instead of exiting
class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigurationError(message)


# Main class wiring the parser, controllers, view and writer together
class CLIManager:
    # Initialize the manager with its view
    def __init__(self, view: Optional[ConsoleView] = None):
        self.view = view or ConsoleView()
        self.parser = self._build_parser()

    # Build the argument parser with one subcommand per controller
    @staticmethod
    def _build_parser() -> argparse.ArgumentParser:
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("--delta", type=float, help="detuning Delta / U")
        common.add_argument("--pump", type=float, help="three-photon drive G / U")
        common.add_argument("--kappa", type=float, help="single-photon loss rate kappa / U")
        common.add_argument("--kappa-e", dest="kappa_e", type=float, help="engineered dissipation rate / U")
        common.add_argument("--dim", type=int, help="Fock-space dimension")
        common.add_argument("--sweep", action="append", help="parameter sweep VAR:FROM:TO:N, repeatable")
        common.add_argument("--grid", help="Wigner or potential grid RE:IM:N")
        common.add_argument("--out", help="output directory")
        common.add_argument("--format", choices=FORMATS, help="table format")
        common.add_argument("--threads", type=int, help="worker threads for sweeps")
        common.add_argument("--config", help="JSON file with default flag values")
        common.add_argument("--log-level", dest="log_level", help="logging level")
        common.add_argument("--log-file", dest="log_file", help="also log to this file")

        parser = _Parser(prog="threekpo", description="Three-photon Kerr parametric oscillator toolkit")
        parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
        commands = parser.add_subparsers(dest="command", parser_class=_Parser)
        commands.required = True

        commands.add_parser("phase-diagram", parents=[common], help="semiclassical phase diagram")

        spectrum = commands.add_parser("spectrum", parents=[common], help="quasi-energy spectrum")
        spectrum.add_argument("--levels", type=int, help="levels per sweep point")
        spectrum.add_argument("--crossings", action="store_true", default=None,
                              help="locate ground-state crossings along a pump sweep")

        states = commands.add_parser("states", parents=[common], help="closed-form states")
        states.add_argument("--kind", help="cats, exact, overlap, squeezing or airy")

        evolve = commands.add_parser("evolve", parents=[common], help="time evolution")
        evolve.add_argument("--mode", help="prepare, cat-decay, superposition or reduced")
        evolve.add_argument("--ramp-time", dest="ramp_time", type=float, help="ramp time in 1/U")
        evolve.add_argument("--ramp-kind", dest="ramp_kind", help="cubic or quartic")
        evolve.add_argument("--sector", type=int, help="initial cat or Fock state index")
        evolve.add_argument("--t-max", dest="t_max", type=float, help="final time in 1/U")
        evolve.add_argument("--points", type=int, help="number of time samples")
        evolve.add_argument("--compare-reduced", dest="compare_reduced", action="store_true", default=None,
                            help="also report the three-level model lifetime")
        evolve.add_argument("--dark-dissipation", dest="dark_dissipation", action="store_true", default=None,
                            help="add the jump a^2 - g a^dagger at rate kappa-e")

        steady = commands.add_parser("steady", parents=[common], help="steady state of the lossy oscillator")
        steady.add_argument("--method", help="null, long-time or both")
        return parser

    # Merge command-line values over config-file values over defaults
    @staticmethod
    def _merge(arguments: argparse.Namespace) -> Dict[str, Any]:
        values = dict(DEFAULTS)
        if arguments.config:
            values.update(ConfigFileReader.read_file(arguments.config))
        values.update({key: value for key, value in vars(arguments).items()
                       if value is not None and key != "config"})
        return values

    # Resolve the merged values into a validated run configuration
    @staticmethod
    def resolve(values: Dict[str, Any]) -> RunConfig:
        try:
            params = ModelParams(delta=float(values["delta"]), pump=float(values["pump"]),
                                 kappa=float(values["kappa"]), kappa_e=float(values["kappa_e"]))
        except (TypeError, ValueError) as error:
            raise ConfigurationError(f"invalid model parameters: {error}") from error
        sweeps = tuple(SweepSpec.parse(text) for text in values.get("sweep") or [])
        grid = GridSpec.parse(values["grid"]) if values.get("grid") else None
        options = {key: values[key] for key in OPTION_KEYS if values.get(key) is not None}
        return RunConfig(command=values["command"], params=params, dim=values.get("dim"), sweeps=sweeps, grid=grid,
                         output=values["out"], fmt=values["format"], threads=int(values["threads"]),
                         options=options)

    # Parse, run, write; returns the process exit code
    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        try:
            arguments = self.parser.parse_args(argv)
            values = self._merge(arguments)
            configure_logging(values["log_level"], values.get("log_file"))
            config = self.resolve(values)
        except (ConfigurationError, ParameterError, OSError) as error:
            self.view.show_error(str(error))
            return EXIT_CONFIG

        logger.info("running %s with %s", config.command, config.params)
        controller = CONTROLLERS[config.command]()
        try:
            result = controller.execute(config)
        except (ConfigurationError, ParameterError, OSError) as error:
            self.view.show_error(str(error))
            return EXIT_CONFIG
        except (NumericalError, np.linalg.LinAlgError, ValueError, ArithmeticError) as error:
            self.view.show_error(f"{type(error).__name__}: {error}")
            return EXIT_NUMERICAL

        # Files are written only once the command has succeeded
        try:
            written: List[str] = ResultWriter(config.output, config.fmt).write(result, config.as_dict())
        except OSError as error:
            self.view.show_error(f"could not write results to {config.output}: {error}")
            return EXIT_CONFIG
        self.view.show_result(result)
        self.view.show_written(written)
        return EXIT_OK


__all__ = ["CLIManager", "COMMANDS", "EXIT_OK", "EXIT_CONFIG", "EXIT_NUMERICAL"]
