"""Helicity-entanglement observables for tree-level QED scattering.

Computes predictability, visibility and concurrence (the complete
complementarity triplet) of two-particle helicity states before and after
six 2->2 QED processes, plus Bell-basis transformation tables, entanglement
regimes, infinite-momentum closed forms and cross-section-weighted averages.
"""

__version__ = "0.1.0"

from .amplitudes import (FERMIONIC_PROCESSES, MUON_ELECTRON_MASS_RATIO,
                         PHOTONIC_PROCESSES, HelicityAmplitudeSet, Kinematics,
                         Process, amplitude, amplitude_matrix, amplitude_set)
from .averages import ThetaDomain, WeightedAverages, weighted_average
from .bell import (BellTableRow, TransformationCheck, TwoTermMix,
                   bell_compose, bell_decompose, bell_pattern, bell_table,
                   iterate_scatter, mixing_angle, transformation_orthogonality,
                   two_term_mix)
from .errors import (CcrError, DegenerateOutcomeError, DomainError,
                     NormalizationError, NotTwoTermMixError, PreconditionError,
                     QuadratureError, SingularDenominatorError,
                     ZeroInitialEntanglementError)
from .limits import LimitCcr, relativistic_limit_ccr
from .measures import (CcrReport, MaxEntanglementCondition, ccr_report,
                       concurrence, entanglement_entropy_from_concurrence,
                       entropic_triplet, hilbert_schmidt_triplet,
                       is_maximally_entangled, linear_entropy,
                       max_entanglement_condition, predictability,
                       probability_decomposition, pvc, reduced_density_matrix,
                       visibility)
from .regimes import (FamilyState, Regime, RegimeVerdict, classify, delta_c,
                      delta_c_curve)
from .scattering import (ScanResult, ScanRow, ScatteringOutcome, ccr_scan,
                         default_theta_grid, scatter, scatter_coefficients)
from .states import (BELL_LABELS, TwoQubitState, basis_state, bell_state,
                     canonical_phase, general_state, product_superposition)

__all__ = [name for name in dir() if not name.startswith("_")]
