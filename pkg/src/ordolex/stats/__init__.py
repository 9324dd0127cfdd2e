from .inference import AnovaResult, CellSummary, TestResult, mixed_anova, t_test_ind
from .ols import (FChange, HierarchicalReport, HierarchicalStep, OlsFit, f_change,
                  hierarchical_from_design, hierarchical_regression, ols_fit)
from .special import (f_log10_sf, f_sf, log_reg_inc_beta, reg_inc_beta, t_log10_sf2,
                      t_sf2)

__all__ = [
    "AnovaResult", "CellSummary", "TestResult", "mixed_anova", "t_test_ind",
    "FChange", "HierarchicalReport", "HierarchicalStep", "OlsFit", "f_change",
    "hierarchical_from_design", "hierarchical_regression", "ols_fit",
    "f_log10_sf", "f_sf", "log_reg_inc_beta", "reg_inc_beta", "t_log10_sf2", "t_sf2",
]
