"""
How much does each predictor block add?
=======================================

A chain of nested least-squares fits on a 0/1 word-order outcome:
N1 ratio, then area, then family, then noun and verb lengths. Each step is
judged by the F test on the drop in residual sum of squares.
"""

from ordolex import report
from ordolex.stats import hierarchical_regression, ols_fit
from ordolex.synthetic import regression_suite

# the label depends on the N1 ratio and the length gap only
records, stats = regression_suite(n=400, seed=0)
rep = hierarchical_regression(records, stats, condition="synthetic")
print(report.render_table2({"synthetic": rep}))

# the family block should add little, the length block a lot
for step in rep.steps[1:]:
    print(f"level {step.model_level} ({step.label}): F change {step.f_change:.2f}, p {step.f_change_p:.2g}")

# plain OLS on its own
fit = ols_fit([[1.0], [2.0], [3.0], [5.0]], [1.0, 2.0, 3.0, 4.0])
print("slope", fit.coefficients[1], "R^2", round(fit.r_squared, 4))
