"""QFI and QCRB of SU(1,1) interferometers with cat, squeezed-vacuum and coherent inputs."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
