"""Exact I-functions, GKZ systems and transition checks for degree-4 extremal transitions."""
from .kernels import BACKEND
from .algebra import (CohElem, NonUnitError, RatFuncZ, RingMismatchError,
                      RingPresentation, ring_invert, ring_mul, scalar_normalize,
                      scalar_ring, x_ambient_ring, y_ambient_ring)
from .series import DualCoeff, HalfInt, LogSeries, series_mul
from .operators import (DiffOp, OperatorSystem, change_frame, check_identity,
                        op_apply, op_compose)
from .models import (MODELS, ModelSpec, build_I_X, build_I_Y, derive_gkz,
                     get_model)
from .frobenius import frobenius_solve, scan_exponents, verify_annihilation
from .reconcile import (DiscrepancyLedger, ReconciliationError, build_Ibar_Y,
                        reconcile_printed)
from .analysis import (ConjectureReport, MonodromyClass, classify_monodromy,
                       extract_components, restrict_to_divisor,
                       run_conjecture_pipeline, solution_rank)
from .instantons import InstantonTable, instanton_numbers
from .schubert import lines_oracle

__version__ = "0.1.0"
