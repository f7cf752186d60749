"""Numerics for bounded analytic functions on the unit disk.

Blaschke products with a continuous argument branch, Herglotz transforms of
boundary measures, Riemann-Liouville fractional integrals along radii,
Frostman-type integrals of complete measures, and sweeps that compare the two.
"""
from .blaschke import (
    BlaschkeValue,
    ProductLog,
    Tail,
    ZeroSequence,
    blaschke_sum,
    factor,
    factor_arg,
    log_blaschke_many,
    on_cut,
    product_eval,
    product_log,
)
from .bounded import log_f, log_f_many
from .errors import (
    AtZeroError,
    DegenerateDenominatorError,
    DiskargError,
    QuadratureError,
    TailBoundExceeded,
)
from .fraccalc import (
    FracResult,
    RadialFunction,
    convergence_class_integral,
    kernel_bound_ratio,
    rl_integral,
    rl_integral_many,
)
from .geometry import (
    BoundaryPoint,
    StolzRegion,
    a_kernel,
    gpv_ratio,
    in_stolz,
    point_on_pi4_ray,
    pseudo_disk,
    pseudo_disk_offset,
    stolz_half_aperture,
)
from .herglotz import HerglotzSpec, arg_g, example2_measure, g_psi, h_psi
from .local_zeros import LocalCount, L_value, local_count, lower_bound_constant, tsuji_bound_check
from .measures import (
    BoundaryMeasure,
    BoundedFunctionSpec,
    CompleteMeasure,
    FrostmanResult,
    complete_measure_ball,
    divisor_split,
    dominates,
    frostman_integral,
    frostman_sum,
    frostman_via_modulus,
    modulus_of_continuity,
)

__version__ = "0.1.0"

__all__ = [
    "a_kernel",
    "arg_g",
    "AtZeroError",
    "blaschke_sum",
    "BlaschkeValue",
    "BoundaryMeasure",
    "BoundaryPoint",
    "BoundedFunctionSpec",
    "complete_measure_ball",
    "CompleteMeasure",
    "convergence_class_integral",
    "DegenerateDenominatorError",
    "DiskargError",
    "divisor_split",
    "dominates",
    "example2_measure",
    "factor",
    "factor_arg",
    "FracResult",
    "frostman_integral",
    "frostman_sum",
    "frostman_via_modulus",
    "FrostmanResult",
    "g_psi",
    "gpv_ratio",
    "h_psi",
    "HerglotzSpec",
    "in_stolz",
    "kernel_bound_ratio",
    "L_value",
    "local_count",
    "LocalCount",
    "log_blaschke_many",
    "log_f",
    "log_f_many",
    "lower_bound_constant",
    "modulus_of_continuity",
    "on_cut",
    "point_on_pi4_ray",
    "product_eval",
    "product_log",
    "ProductLog",
    "pseudo_disk",
    "pseudo_disk_offset",
    "QuadratureError",
    "RadialFunction",
    "rl_integral",
    "rl_integral_many",
    "stolz_half_aperture",
    "StolzRegion",
    "Tail",
    "TailBoundExceeded",
    "tsuji_bound_check",
    "ZeroSequence",
]
