"""Sampling discretization and lattice cubature on the torus.

Trigonometric polynomial arithmetic, classical kernels, dyadic block
analysis of mixed-smoothness classes, rank-1 lattice cubature with exact
dual-lattice worst-case errors, discretization-error machinery, and a
config-driven experiment runner.
"""

from .coeffio import read_coeffs, write_coeffs
from .cubature import (CubatureRule, ErrorReport, LatticeInfo, apply_rule,
                       cbc_search, character_sum, dual_lattice,
                       dual_weight_sum, fibonacci_number, fibonacci_rule,
                       hoeffding_bound, korobov_rule, mc_baseline,
                       random_rule, rule_from_nodes, worst_case_error)
from .discretization import (DiscretizationReport, defect, disc_error,
                             er_upper_transfer, er_witness, estimate_er)
from .dyadic import (FOURIER_HULL, HOELDER_H, SOBOLEV_W, BlockIndex,
                     ClassSpec, block_norm, block_project, blocks_for_box,
                     h_seminorm, mixed_difference, quasi_algebra_ratio,
                     reconstruct, sample_h_ball)
from .kernels import (DivergenceError, bernoulli, block_kernel,
                      block_kernel_nd, dirichlet, fejer, vallee_poussin)
from .rates import RateFit, fit_rate
from .runner import ExperimentConfig, config_from_mapping, load_config, run_experiment
from .trig import (AliasingError, GridFunction, TrigPoly, evaluate,
                   evaluate_many, forward_coeffs, lp_norm, product, tensor)

__version__ = "0.1.0"
