"""High-resolution flow simulation with conjugate DSC filters.

Spatial derivatives come from banded discrete-singular-convolution
stencils (Hermite or regularized Shannon kernels); spurious oscillations
are removed by the conjugate low-pass filter, realized as half-grid
prediction and restoration and activated by a total-variation switch.
"""

__version__ = "0.1.0"

from .benchmarks import CaseConfig, default_config, load_config, run_case
from .fields import ErrorReport, Field, norms
from .filters import (ConjugateFilterBank, apply_conjugate_lowpass, apply_derivative,
                      total_variation, tv_switch_decide)
from .kernels import (HERMITE, RSK, KernelSpec, StencilWeights, halfgrid_stencil,
                      hermite_kernel_value, rsk_kernel_value, stencil)
from .spectral import FrequencyResponse, case_feasibility, effective_band, frequency_response
from .timestepping import StepControl, compute_dt, rk3_projection_step, rk4_step
from .euler import (EulerState, IncompressibleState, ProjectionOperator, euler_rhs_1d,
                    euler_rhs_2d, incompressible_rhs, primitive_from_conservative, project)

__all__ = [
    "CaseConfig", "ConjugateFilterBank", "ErrorReport", "EulerState", "Field",
    "FrequencyResponse", "HERMITE", "IncompressibleState", "KernelSpec",
    "ProjectionOperator", "RSK", "StencilWeights", "StepControl",
    "apply_conjugate_lowpass", "apply_derivative", "case_feasibility", "compute_dt",
    "default_config", "effective_band", "euler_rhs_1d", "euler_rhs_2d",
    "frequency_response", "halfgrid_stencil", "hermite_kernel_value",
    "incompressible_rhs", "load_config", "norms", "primitive_from_conservative",
    "project", "rk3_projection_step", "rk4_step", "rsk_kernel_value", "run_case",
    "stencil", "total_variation", "tv_switch_decide",
]
