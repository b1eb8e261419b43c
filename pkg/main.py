# Import sys for the process exit code
import sys
# Import typing hints for the argument list
from typing import Optional, Sequence

# The CLIManager parses the command line, runs the requested computation and writes its data files
from user_interface import CLIManager


# Entry point of the command-line tool, returning the exit code
def main(argv: Optional[Sequence[str]] = None) -> int:
    return CLIManager().run(argv)


if __name__ == "__main__":
    sys.exit(main())
