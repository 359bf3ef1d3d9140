"""Python bindings for the sphull C++ library."""

from ._sphull import (
    RadialLaw,
    SphullError,
    __version__,
    h_survival,
    hull_bruteforce,
    hull_stats,
    k_survival,
    marginal_survival,
    norming,
    parse_law,
    predict,
    run_config,
    sample,
    scaling_w,
    simulate,
    vn_bounds,
)

__all__ = [
    "RadialLaw",
    "SphullError",
    "__version__",
    "h_survival",
    "hull_bruteforce",
    "hull_stats",
    "k_survival",
    "marginal_survival",
    "norming",
    "parse_law",
    "predict",
    "run_config",
    "sample",
    "scaling_w",
    "simulate",
    "vn_bounds",
]
