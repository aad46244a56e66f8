from ._cpt import *  # noqa: F401,F403
