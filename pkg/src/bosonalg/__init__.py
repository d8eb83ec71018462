"""bosonalg: exact verification and spectral analysis of gamma-deformed
boson-realized polynomial algebras (su(2), su(1,1), their quadratic,
cubic, and Higgs-type fusions) over the ring Q(i)[parameters].
"""

__version__ = "0.1.0"

from .scalars import (GAMMA, I, MU, W0, W0M, ScalarError, ScalarExpr,
                      num, rational_bindings, standard_bindings, sym)
from .weyl import OperatorExpr
from .exprparse import EvalError, ParseError, parse, parse_and_eval
from .fock import (FockSector, MatrixRep, apply_operator,
                   boundary_safe_compare, build_charge_sector,
                   oracle_eigensolve, represent, represent_exact)
from .realizations import (AlgebraInstance, RelationSpec,
                           fuse_boson_cubic, fuse_boson_quadratic,
                           fuse_su2_su11, fuse_two_su2, hahn_operators,
                           higgs_hamiltonians, js_su2_deformed,
                           js_su11_deformed, killing_metric,
                           structure_constants, su2_ops, su11_ops)
from .verifier import (ORACLE_TOL, SUITES, ZERO_TOL, OracleDisagreement,
                       UnknownSuite, VerifierError, check_casimir,
                       check_pt, check_relation, report_json, run_suite)
from .spectral import (CharPolySequence, SpectralError, TridiagonalSpec,
                       build_j0_matrix, char_poly, closed_form_a_roots,
                       eigenvector, gershgorin, paper_diff, pt_classify,
                       represent_j0, spectral_report, spectrum,
                       sweep_rows, tridiagonal_residual, verify_roots)

__all__ = [name for name in dir() if not name.startswith("_")]
