"""Special geometry: prepotentials, Kahler data, GW generating functions, anomaly and OSV."""

from .prepotential import *  # noqa: F401,F403
from .gromov_witten import *  # noqa: F401,F403
from .anomaly import *  # noqa: F401,F403
from .osv import *  # noqa: F401,F403
