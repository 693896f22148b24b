"""Usual and extended Floater-Hormann interpolation with stability diagnostics."""

from fhstab.extended import (
    ConfigError,
    ExtendedConfig,
    ExtendedInterpolant,
    ExtrapolationMap,
    LinearMap,
    compensated_reduced_coeffs,
    denominator,
    extended_eval,
    extended_weights,
    extrapolate_matrix,
    extrapolate_taylor,
    extrapolation_coeffs,
    general_reduced_coeffs,
    reduced_coeffs,
    reduced_eval,
)
from fhstab.fh import (
    WeightVector,
    barycentric,
    derivative_matrices,
    derivative_rows,
    fh_eval_barycentric,
    fh_eval_blended,
    fh_weights,
)
from fhstab.functions import SampleFunction, get_function
from fhstab.grid import EquispacedGrid, ExtendedGrid, extend, make_equispaced
from fhstab.lebesgue import (
    LebesgueReport,
    Theorem1Report,
    extended_lebesgue_constant,
    extended_lebesgue_function,
    fh_lebesgue_constant,
    fh_lebesgue_function,
    kappa,
    naive_bound_function,
    poly_lebesgue_constant,
    theorem1_check,
    worst_case_vector,
)
from fhstab.precision import PRECISE, WORKING, PrecisionPolicy, Rounding, RoundingMonitor, monitor_rounding
from fhstab.stability import (
    StabilityReport,
    detect_backward_instability,
    directed_rounding_experiment,
    error_harness,
    inject_noise,
)
