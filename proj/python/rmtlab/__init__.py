"""Monte Carlo laboratory for eigenvalue fluctuation scaling of random matrices.

Thin wrapper over the C++ core; see the extension module `rmtlab._core` for
the full surface.
"""

from rmtlab._core import *  # noqa: F401,F403
from rmtlab._core import __version__  # noqa: F401
