from .checks import *
