"""Exact generalised (Hahn) series with derivations, asymptotic integration and a CLI."""
from .asympint import (
    GlbKind,
    GlbResult,
    IntegrationResult,
    ThetaInfo,
    asymptotic_integral,
    integrate,
    rosenlicht_u0,
    theta_glb,
    theta_info,
)
from .config import Budgets, Session, load_session, parse_config
from .derivation import (
    Condition,
    ConditionReport,
    DerivationSchema,
    ExplicitTable,
    GeneralShift,
    IndexOffset,
    LogExpChain,
    RealIndexedPower,
    RuleSchema,
    ShiftMonomial,
    Verdict,
    Witness,
    check_condition,
    derive,
    derive_monomial,
    log_derivative,
    position,
    support_isomorphism,
)
from .errors import (
    ConfigError,
    DivisionByZero,
    DomainError,
    HahnError,
    NoAsymptoticIntegral,
    ParseError,
    SchemaDomainError,
    SearchExhausted,
    WindowError,
)
from .hardy import (
    HardyReport,
    check_constants,
    check_h3prime,
    check_hfield,
    hardy_report,
    verify_lhospital,
    verify_log_compat,
)
from .monomial import (
    ONE,
    ONE_MONOMIAL,
    FiniteChain,
    FundamentalChain,
    IntegerChain,
    Monomial,
    RationalChain,
    abs_sign,
    compare,
    leading_exponent,
    leading_fundamental,
    log_exp_chain,
    pow_scalar,
)
from .series import Series, SeriesDecomposition, decompose, dominance, equivalent, invert, leading_data
from .text import format_monomial, format_series, parse_monomial, parse_series

__version__ = "0.1.0"

__all__ = [
    "__version__", "abs_sign", "asymptotic_integral", "Budgets", "check_condition",
    "check_constants", "check_h3prime", "check_hfield", "compare", "Condition", "ConditionReport",
    "ConfigError", "decompose", "DerivationSchema", "derive", "derive_monomial", "DivisionByZero",
    "DomainError", "dominance", "equivalent", "ExplicitTable", "FiniteChain", "format_monomial",
    "format_series", "FundamentalChain", "GeneralShift", "GlbKind", "GlbResult", "HahnError",
    "hardy_report", "HardyReport", "IndexOffset", "IntegerChain", "integrate", "IntegrationResult",
    "invert", "leading_data", "leading_exponent", "leading_fundamental", "load_session",
    "log_derivative", "log_exp_chain", "LogExpChain", "Monomial", "NoAsymptoticIntegral", "ONE",
    "ONE_MONOMIAL", "parse_config", "parse_monomial", "parse_series", "ParseError", "position",
    "pow_scalar", "RationalChain", "RealIndexedPower", "rosenlicht_u0", "RuleSchema",
    "SchemaDomainError", "SearchExhausted", "Series", "SeriesDecomposition", "Session",
    "ShiftMonomial", "support_isomorphism", "theta_glb", "theta_info", "ThetaInfo", "Verdict",
    "verify_lhospital", "verify_log_compat", "WindowError", "Witness",
]
