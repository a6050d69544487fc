"""Mixed Gaussian orthogonal ensemble simulation kernels."""

from ._mgoe import *  # noqa: F401,F403
from ._mgoe import __version__  # noqa: F401
