"""Distorted stochastic dominance: power-distorted orders between FSD and SSD,
their risk-loving and mixed variants, and distorted expectations."""

from .distortions import (
    GP,
    ConvexityOrder,
    Custom,
    Distortion,
    Dual,
    Identity,
    PhiM,
    Power,
    arrow_pratt,
    at_least_as_convex,
    compare_convexity,
    dual,
    is_concave,
    is_convex,
    parse_distortion,
)
from .distributions import (
    DiscreteDistribution,
    Extreme,
    Family,
    LocationScaleDistribution,
    cdf,
    constant,
    discrete,
    expectation,
    from_spec,
    logistic,
    negate,
    normal,
    order_statistic_extreme,
    quantile,
    to_spec,
    uniform,
)
from .dominance import (
    CrossingInfo,
    DominanceVerdict,
    GapCurve,
    Method,
    check_fsd,
    check_hdsd,
    check_icx,
    check_mixed,
    check_risk_loving_hdsd,
    check_ssd,
    check_t3_shortcut,
    detect_single_crossing,
    gap_curve,
)
from .errors import (
    DomainError,
    NotApplicableError,
    NotInvertibleError,
    SingularDerivativeError,
    UnsupportedOperationError,
)
from .integrals import distorted_mean, partial_distorted_mean
from .kstar import KStarKind, KStarResult, Side, distorted_standard_mean, find_kstar
from .risk_measures import (
    GiniReport,
    IsotonicityReport,
    RiskMeasureSpec,
    distorted_expectation,
    generalized_gini,
    isotonicity_check,
    tail_form_expectation,
)

__version__ = "0.1.0"
