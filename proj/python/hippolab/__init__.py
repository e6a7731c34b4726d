"""HiPPO state-space laboratory: python surface of the C++ core."""

from ._hippolab import *  # noqa: F401,F403
from ._hippolab import __doc__  # noqa: F401
