"""Forbidden 0-1 submatrix patterns.

Containment with witnesses, constructive extraction of large homogeneous
submatrices from pattern-free matrices, exact brute-force oracles, input
generators and the totally balanced / chordal bipartite applications.
"""

from .applications import *  # noqa: F401,F403
from .applications import __all__ as _app_all
from .blocks import Dichotomy, ExtractionOutcome, HomogeneousBlock
from .constructions import *  # noqa: F401,F403
from .constructions import __all__ as _con_all
from .containment import *  # noqa: F401,F403
from .containment import __all__ as _cont_all
from .errors import *  # noqa: F401,F403
from .errors import __all__ as _err_all
from .extractors import *  # noqa: F401,F403
from .extractors import __all__ as _ext_all
from .kernels import BACKEND
from .matrix import *  # noqa: F401,F403
from .matrix import __all__ as _mat_all
from .oracle import *  # noqa: F401,F403
from .oracle import __all__ as _ora_all
from .patterns import *  # noqa: F401,F403
from .patterns import __all__ as _pat_all

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Dichotomy",
    "ExtractionOutcome",
    "HomogeneousBlock",
    *_err_all,
    *_mat_all,
    *_pat_all,
    *_cont_all,
    *_ext_all,
    *_con_all,
    *_ora_all,
    *_app_all,
]
