"""
Import the CLIManager class from the manager module.
"""

from .manager import CLIManager, EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL
