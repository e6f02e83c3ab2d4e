"""Reduced digital nets over prime fields.

Generation, row/column reduction, quality certification, discrepancy bounds
and fast structured products ``XA`` with the point matrix of a reduced net.
"""

from rednets.discrepancy import (
    BoundInputs,
    DiscBound,
    ProductWeights,
    a_coeff,
    exact_star_discrepancy,
    exact_weighted_star_discrepancy,
    local_discrepancy,
    weighted_disc_bound,
)
from rednets.errors import BudgetExceededError, RednetsError, SequenceRequiredError, ValidationError
from rednets.gf import GfMatrix, mat_vec, rank, rows_independent
from rednets.integrate import Integrand, error_report, qmc_quadrature, qmc_reduced
from rednets.kernels import get_backend, has_compiled
from rednets.nets import (
    DigitalNet,
    GeneratingSet,
    generate_net,
    pascal_extended_generating_set,
    pascal_generating_set,
    random_generating_set,
)
from rednets.products import (
    OpCounts,
    column_reduced_product,
    column_row_reduced_product,
    fast_product,
    row_reduced_product,
    standard_product,
    theoretical_costs,
)
from rednets.quality import (
    check_column_row_bounds,
    check_mixed_bounds,
    check_projection_bounds,
    check_row_reduced_bounds,
    min_t,
    oracle_min_t,
    quality_report,
    rho_m,
)
from rednets.reduction import (
    ReductionIndices,
    column_reduce,
    column_row_reduce,
    mixed_reduce,
    row_reduce,
    s_star,
    schedule,
)

__version__ = "0.1.0"
