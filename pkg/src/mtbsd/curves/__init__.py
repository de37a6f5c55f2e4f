from .lfunction import (analytic_rank, functional_equation_sign,
                        l_derivative_at_1, l_value_at_1)
from .minimal import is_minimal, minimal_model, reduced_form
from .periods import PeriodData, curve_lattice, model_lattice, period_data
from .points import an_coefficients, ap, count_points, torsion_bound, torsion_order
from .record import CurveRecord
from .tate import (ADDITIVE, GOOD, NONSPLIT, SPLIT, LocalData, all_local_data,
                   conductor, local_data)
from .weierstrass import (CurveModel, SingularCurveError, compute_invariants,
                          curve_from_c_invariants, transform, valuation)
