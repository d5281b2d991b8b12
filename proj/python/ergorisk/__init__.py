"""Failure rates and lifetime failure probabilities for structures under
rare-hazard load processes, with record-to-record and system-parameter
uncertainty kept separate."""

from ._core import (
    CalibrationStrategy,
    CaseResult,
    FragilityProfileRow,
    FrameCase,
    LognormalSpec,
    PointConstraint,
    PowerLaw,
    PulseLognormal,
    PulseSimConfig,
    QuadratureSettings,
    RateConstraint,
    RateConvention,
    RiskReport,
    SimEstimate,
    SweepAxis,
    SweepRow,
    Tabulated,
    TargetRow,
    ToyProblem,
    YMode,
    annual_rate,
    annual_rate_cdf_form,
    assess,
    back_calc_rate,
    builtin_cases,
    calibrate_case,
    calibrate_group,
    calibrate_power_law,
    compose,
    conditional_capacity,
    conditional_rate,
    decompose,
    density,
    err_pct_lambda,
    err_pct_pf,
    error_parameter,
    exceedance,
    fragility_profiles,
    lifetime_exact,
    lifetime_from_rate,
    limit_state,
    load_hazard_csv,
    lognormal_cdf,
    lognormal_pdf,
    lognormal_quantile,
    make_tabulated,
    product_density_numeric,
    reference_targets,
    reproduce,
    simulate,
    simulate_rate,
    std_normal_cdf,
    std_normal_pdf,
    std_normal_quantile,
    toy_conditional_rate,
    toy_ensemble_pf,
    toy_ensemble_rate,
    toy_error_sweep,
    toy_exact_pf,
    two_percent_in_50yr_rate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
