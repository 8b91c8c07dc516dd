"""This file is part of majsim, a simulator for Majorana braiding circuits.

License:  MIT
"""

# Standard library imports ...
import sys

# Third party library imports ...
from packaging.version import parse
import numpy as np
import scipy

# Do not change the format of this next line!  Doing so risks breaking
# the build backend.
version = "0.1.0"

version_tuple = parse(version).release

__doc__ = f"""\
This is majsim **{version}**

* numpy version:  **{np.__version__}**
"""

info = f"""\
Summary of majsim configuration
-------------------------------

majsim        {version}
Python        {sys.version}
sys.platform  {sys.platform}
sys.maxsize   {sys.maxsize}
numpy         {np.__version__}
scipy         {scipy.__version__}
"""
