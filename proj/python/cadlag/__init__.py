"""Computable weak convergence on cadlag path space.

Exact Skorokhod metrics and cadlag moduli, exact random-walk identities,
series-evaluated limit laws, and seeded pre-limit process simulation.
"""

from ._cadlag import *  # noqa: F401,F403
from ._cadlag import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
