# Import sys for the output streams
import sys
# Import typing hints
from typing import Any, Iterable, TextIO

# Import numpy for scalar formatting
import numpy as np

# Import the run records
from .models import CommandResult


# Console view printing run summaries and diagnostics
class ConsoleView:
    # Initialize the view with its output streams
    def __init__(self, stream: TextIO = None, error_stream: TextIO = None):
        self.stream = stream or sys.stdout
        self.error_stream = error_stream or sys.stderr

    # Format one summary value for display
    @staticmethod
    def format_value(value: Any) -> str:
        if isinstance(value, (float, np.floating)):
            return f"{float(value):.6g}"
        if isinstance(value, (tuple, list)):
            return ", ".join(ConsoleView.format_value(item) for item in value)
        return str(value)

    # Print the summary block of a finished command
    def show_result(self, result: CommandResult) -> None:
        header = f"{result.command}"
        if result.solver_name:
            header += f" [{result.solver_name}]"
        print(header, file=self.stream)
        width = max((len(key) for key in result.summary), default=0)
        for key, value in result.summary.items():
            print(f"  {key.ljust(width)}  {self.format_value(value)}", file=self.stream)
        for name, rows in result.tables.items():
            print(f"  table {name}: {len(rows)} rows", file=self.stream)

    # Print the files written by the run
    def show_written(self, paths: Iterable[str]) -> None:
        for path in paths:
            print(f"wrote {path}", file=self.stream)

    # Print a one-line error message
    def show_error(self, message: str) -> None:
        print(f"error: {message}", file=self.error_stream)
