"""Effective degrees of freedom for near-field XL-MIMO links.

Five transceiver designs (dipole UPA, patch UPA, ULA, continuous plane,
continuous line segment), two channel kernels (scalar and polarized
Green's functions), direct matrix estimators, continuous-aperture
quadrature estimators, closed-form expressions, mutual coupling, and a
sweep/CSV workbench.
"""

from ._backend import backend_name, set_backend
from .capacity import CapacityInputs, capacity, overall_gain
from .channel import (ChannelMatrix, LinkConfig, PolarizationSet,
                      assemble_dyadic, assemble_patch_scalar, assemble_scalar,
                      dump_channel, gram, load_channel)
from .closedform import (Cap2dClosedParams, cap1d_edof_closed,
                         cap2d_edof_approx_large_tx, cap2d_edof_closed,
                         channel_gain_gamma, phi_coefficient,
                         ula_edof_closed, upa_edof_closed)
from .coupling import (CouplingParams, ImpedanceMatrix, coupled_edof,
                       coupling_matrix, load_impedance_matrix,
                       mutual_impedance_matrix, mutual_mixing_matrix,
                       save_impedance_matrix, self_impedance)
from .edof import (EdofResult, cap_edof_dense_grid, cap_edof_polarized,
                   cap_edof_scalar_quadrature, edof_threshold,
                   edof_trace_ratio, patch_edof)
from .errors import (ArgumentError, ConfigError, DegenerateInputError,
                     NfedofError, NumericalError, ResourceLimitError,
                     SingularityError)
from .geometry import (CapLine, CapPlane, PatchUpaGeometry, UlaGeometry,
                       UpaGeometry, WaveParams, rayleigh_distance)
from .greens import DyadicSample, dyadic_green, scalar_green
from .numerics import (QuadratureRule, SeededSampler, cosine_integral,
                       gauss_legendre, hermitian_eigenvalues, sine_integral)
from .workbench import (SweepSpec, SweepRow, emit_csv, figure_preset,
                        load_sweep_spec, run_sweep)

__version__ = "0.1.0"
