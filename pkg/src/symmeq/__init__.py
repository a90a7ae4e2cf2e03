"""Equilibrium hierarchy tools for symmetric bimatrix games.

Exact computation and certification of symmetric Nash equilibria,
exchangeable equilibria (conditionally i.i.d. correlated play), and
symmetric correlated equilibria, plus N-exchangeable extendability and
linear optimization over each set.
"""

from .exchange import (
    CorrelationScheme,
    CPFactorization,
    ExchangeabilityVerdict,
    certify_conditionally_iid,
    cp_factorize,
    is_psd_exact,
    scheme_from_factorization,
    verify_scheme_equilibrium,
)
from .games import (
    DimensionError,
    JointDistribution,
    MixedStrategy,
    SymmetricGame,
    expected_utility,
    npow_utility,
    outer,
    symmetrize,
    uniform_distribution,
)
from .nash import (
    NashEnumeration,
    NashPoint,
    enumerate_nash,
    enumerate_symmetric_nash,
    rational_exchangeable_point,
    verify_nash,
)
from .optimize import (
    CE_SYM,
    CONV_NASH_SYM,
    IN,
    INCONCLUSIVE,
    OUT,
    XE_SYM,
    DegenerateGameError,
    MembershipVerdict,
    UtilityOptimum,
    canonical_set_name,
    max_utility,
    membership,
)
from .orbits import (
    BudgetExceededError,
    EquilibriumCheck,
    ExtendabilityResult,
    OrbitDistribution,
    bivariate_marginal,
    drop_one_marginal,
    envelope_simulate,
    extendability_lp,
    extension_lp,
    iid_orbits,
    minority_game,
    minority_parity_suite,
    minority_pi,
    n_exchangeable_equilibrium_check,
)
from .polytope import SymCEIndex, UnboundedPolytopeError, ce_system, enumerate_vertices
from .sdp import SdpProblem, SdpResult, dnn_ce_problem, problem_from_system, sdp_solve
from .simplex import (
    FarkasCertificate,
    LinearSystem,
    LPResult,
    lp_solve,
    verify_farkas,
)

__all__ = [
    "BudgetExceededError",
    "CE_SYM",
    "CONV_NASH_SYM",
    "CPFactorization",
    "CorrelationScheme",
    "DegenerateGameError",
    "DimensionError",
    "EquilibriumCheck",
    "ExchangeabilityVerdict",
    "ExtendabilityResult",
    "FarkasCertificate",
    "IN",
    "INCONCLUSIVE",
    "JointDistribution",
    "LPResult",
    "LinearSystem",
    "MembershipVerdict",
    "MixedStrategy",
    "NashEnumeration",
    "NashPoint",
    "OUT",
    "OrbitDistribution",
    "SdpProblem",
    "SdpResult",
    "SymCEIndex",
    "SymmetricGame",
    "UnboundedPolytopeError",
    "UtilityOptimum",
    "XE_SYM",
    "bivariate_marginal",
    "canonical_set_name",
    "ce_system",
    "certify_conditionally_iid",
    "cp_factorize",
    "dnn_ce_problem",
    "drop_one_marginal",
    "enumerate_nash",
    "enumerate_symmetric_nash",
    "enumerate_vertices",
    "envelope_simulate",
    "expected_utility",
    "extendability_lp",
    "extension_lp",
    "iid_orbits",
    "is_psd_exact",
    "lp_solve",
    "max_utility",
    "membership",
    "minority_game",
    "minority_parity_suite",
    "minority_pi",
    "n_exchangeable_equilibrium_check",
    "npow_utility",
    "outer",
    "problem_from_system",
    "rational_exchangeable_point",
    "scheme_from_factorization",
    "sdp_solve",
    "symmetrize",
    "uniform_distribution",
    "verify_farkas",
    "verify_nash",
    "verify_scheme_equilibrium",
]
