from ._dsii import (
    __version__,
    evolve_nls1d,
    is_riemann_matrix,
    qfun,
    theta,
    wfield,
)

__all__ = [
    "__version__",
    "evolve_nls1d",
    "is_riemann_matrix",
    "qfun",
    "theta",
    "wfield",
]
