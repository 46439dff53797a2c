"""Exact and certified verification of lower bounds on P[X >= E X] for binomial and Poisson laws."""

from .binomial import (
    BinomialLaw,
    BinomialParams,
    CeilDecomposition,
    ceil_decompose,
    mad,
    mean_exceedance_prob,
    median_lower_check,
    pmf,
    pmf_table,
    positive_part_mean,
    tail,
    tce,
    tce_factorized,
)
from .bounds import (
    BoundKind,
    Ordering,
    greenberg_mohri_bound,
    quarter_threshold_check,
    rigollet_tong_bound,
    tce_upper_bound_integer_mean,
    theorem1_bound,
    veraar_bound,
)
from .errors import DomainError, NullEventError, PrecisionExhausted
from .interval import PrecisionPolicy, ProbInterval, Relation, Verdict, certify, exp_interval, interval_sqrt
from .orders import (
    OrderCheckReport,
    OrderKind,
    check_hazard_rate_order,
    check_likelihood_ratio_order,
    check_tce_monotone_in_p,
)
from .poisson import (
    PoissonParams,
    poisson_integer_mean_tce_check,
    poisson_mad,
    poisson_pmf,
    poisson_tail,
    poisson_tce,
    poisson_theorem_bound,
    stirling_check,
)

__version__ = "0.1.0"
