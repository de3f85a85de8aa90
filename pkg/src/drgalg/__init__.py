"""Bose-Mesner, dual Bose-Mesner and Terwilliger algebras of Q-polynomial distance-regular graphs."""

from .bose_mesner import (BoseMesnerData, IdentityViolation, build_bose_mesner, canonical, check_q_polynomial,
                          find_q_polynomial_orderings, krein_parameters, reorder)
from .dual import DualData, build_dual, verify_triple_products
from .fields import QQ, FieldElement, NumberField
from .graphs import (Graph, GraphSpec, GraphSpecError, IntersectionData, NotDRG, build_graph,
                     certify_distance_regular, distance_matrices)
from .kernels import BACKEND
from .linalg import (DEFAULT_TOL, ExactMatrix, FloatMatrix, SubspaceBasis, ToleranceContext, exact_spectrum,
                     symmetric_eigendecomposition)
from .report import Report, RunConfig, emit_json, load_golden, run
from .schemes import (RestrictedAlgebra, SchemeVerdict, detect_scheme, match_named_scheme, restrict_algebra,
                      restrict_corner)
from .terwilliger import (CornerAlgebra, DimensionCapError, MatrixAlgebra, TerwilligerAlgebra, check_all_symmetric,
                          check_commutative, corner, generate_algebra, terwilliger_algebra)
from .tmodules import (DecompositionError, ProfileError, TModule, TModuleDecomposition, commutant,
                       decompose_standard_module, modules_isomorphic, wedderburn_report)

__version__ = "0.1.0"
