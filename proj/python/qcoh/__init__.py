"""Coherence and mixedness numerics backed by the qcoh C++ core."""

from ._qcoh import *  # noqa: F401,F403
from ._qcoh import QcohError, __version__  # noqa: F401
