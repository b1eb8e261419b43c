from .reader import ConfigFileReader, CONFIG_KEYS
from .writer import ResultWriter, to_plain
