"""Angular separation index (ASI) of labeled points on a circle or sphere.

Also ships a small nPSO network generator and a coalescent-style hyperbolic
embedding, enough to reproduce community-separation experiments end to end.
"""

from .asi2d import GroupLabeling, mistakes_2d, worst_case_theoretical
from .asi3d import mistakes_3d
from .geometry import AngularCoords, InputError, NumericalError
from .significance import AsiConfig, AsiReport, evaluate, total_mistakes

__all__ = [
    "AngularCoords",
    "AsiConfig",
    "AsiReport",
    "GroupLabeling",
    "InputError",
    "NumericalError",
    "evaluate",
    "mistakes_2d",
    "mistakes_3d",
    "total_mistakes",
    "worst_case_theoretical",
]
