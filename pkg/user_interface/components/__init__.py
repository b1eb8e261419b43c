"""
Imports all the necessary classes and functions from the user_interface.components package.
"""

from .models import *
from .views import *
from .controllers import *
