"""Continuous wavelet analysis of spin-weighted functions on the sphere.

Geometry and group algebra (zyz Euler angles, Wigner d/D), spin-weighted
harmonic transforms, degree reproducing kernels, rotation-group quadrature
and zonal products, admissible scale families with an invertible wavelet
transform, plus an sklearn-style wrapper and a CLI.
"""

from .euler import EulerAngles, compose, euler_to_matrix, inverse, matrix_to_euler
from .sphere import (
    SphereGrid,
    SpherePoint,
    rotated_frame_coords,
    rotated_frame_coords_multi,
    third_angle_kappa,
)
from .wigner import (
    WignerTable,
    jacobi_all_degrees,
    jacobi_poly,
    legendre_assoc,
    wigner_D,
    wigner_D_matrix,
    wigner_d,
    wigner_d_column,
    wigner_d_tables,
)
from .fields import GridField, SpinField
from .transforms import (
    analyze,
    eth_lower,
    eth_raise,
    evaluate_at,
    inner_product,
    sy_eval,
    synthesize,
)
from .kernels import (
    JacobiBoundReport,
    KernelBoundReport,
    jacobi_bound_check,
    kernel_bound_scan,
    kernel_closed,
    kernel_closed_batch,
    kernel_sum,
    kernel_sum_batch,
    project_degree,
    project_degree_quadrature,
)
from .so3 import (
    DOrthogonalityReport,
    SO3Grid,
    d_orthogonality_check,
    rotate_field_harmonic,
    rotate_field_spatial,
    zonal_product_quadrature,
    zonal_product_series,
)
from .wavelets import (
    AdmissibilityReport,
    ScaleGrid,
    WaveletCoefficients,
    WaveletFamily,
    admissibility_check,
    cwt_forward,
    cwt_inverse,
    example_family,
    phase_space_inner,
    reconstruction_factors,
)
from .estimator import SphericalWaveletTransform

__version__ = "0.1.0"

__all__ = [
    "EulerAngles",
    "compose",
    "inverse",
    "euler_to_matrix",
    "matrix_to_euler",
    "SpherePoint",
    "SphereGrid",
    "rotated_frame_coords",
    "rotated_frame_coords_multi",
    "third_angle_kappa",
    "jacobi_all_degrees",
    "jacobi_poly",
    "legendre_assoc",
    "wigner_d",
    "wigner_d_column",
    "wigner_d_tables",
    "wigner_D",
    "wigner_D_matrix",
    "WignerTable",
    "SpinField",
    "GridField",
    "sy_eval",
    "synthesize",
    "analyze",
    "evaluate_at",
    "inner_product",
    "eth_raise",
    "eth_lower",
    "kernel_sum",
    "kernel_sum_batch",
    "kernel_closed",
    "kernel_closed_batch",
    "project_degree",
    "project_degree_quadrature",
    "kernel_bound_scan",
    "KernelBoundReport",
    "jacobi_bound_check",
    "JacobiBoundReport",
    "SO3Grid",
    "rotate_field_harmonic",
    "rotate_field_spatial",
    "zonal_product_quadrature",
    "zonal_product_series",
    "d_orthogonality_check",
    "DOrthogonalityReport",
    "WaveletFamily",
    "example_family",
    "ScaleGrid",
    "AdmissibilityReport",
    "admissibility_check",
    "reconstruction_factors",
    "WaveletCoefficients",
    "cwt_forward",
    "cwt_inverse",
    "phase_space_inner",
    "SphericalWaveletTransform",
    "__version__",
]
