"""Generalized cosecant sums C_n(nu), alternating sums and Watson's sum S_n.

Direct evaluation, finite/infinite/integral representations, asymptotic
expansions with rigorous brackets, and a numerical identity catalog.
"""

__version__ = "0.1.0"

from .core import *  # noqa: F401,F403
from .special import *  # noqa: F401,F403
from .direct import *  # noqa: F401,F403
from .quadrature import *  # noqa: F401,F403
from .representations import *  # noqa: F401,F403
from .asymptotics import *  # noqa: F401,F403
from .identities import *  # noqa: F401,F403
from . import core, special, direct, quadrature, representations, asymptotics, identities  # noqa: F401
