"""Textbook split-plot sums of squares from cell means (long format)."""

import numpy as np


def split_plot(data):
    groups = sorted({g for g, _, _ in data})
    Y = np.array([[y1, y2] for _, y1, y2 in data], dtype=float)
    lab = np.array([g for g, _, _ in data])
    N, k = len(Y), len(groups)
    G = Y.mean()
    ss_total = ((Y - G) ** 2).sum()
    ss_subjects = 2 * ((Y.mean(axis=1) - G) ** 2).sum()
    n_g = np.array([(lab == g).sum() for g in groups])
    gm = np.array([Y[lab == g].mean() for g in groups])
    ss_a = 2 * (n_g * (gm - G) ** 2).sum()
    ss_sa = ss_subjects - ss_a
    ss_b = N * ((Y.mean(axis=0) - G) ** 2).sum()
    cells = np.array([Y[lab == g].mean(axis=0) for g in groups])
    ss_cells = (n_g[:, None] * (cells - G) ** 2).sum()
    ss_ab = ss_cells - ss_a - ss_b
    ss_err = ss_total - ss_subjects - ss_b - ss_ab
    df_sa = N - k
    return {
        "between": (ss_a / (k - 1)) / (ss_sa / df_sa),
        "within": ss_b / (ss_err / df_sa),
        "interaction": (ss_ab / (k - 1)) / (ss_err / df_sa),
        "df": (k - 1, 1, df_sa),
    }


def type3_within(data):
    """Within-factor F from regressing difference scores on effect-coded groups."""
    groups = sorted({g for g, _, _ in data})
    d = np.array([y1 - y2 for _, y1, y2 in data], dtype=float)
    lab = [g for g, _, _ in data]
    k = len(groups)
    X = np.zeros((len(d), k))
    X[:, 0] = 1.0
    for i, g in enumerate(lab):
        j = groups.index(g)
        if j < k - 1:
            X[i, j + 1] = 1.0
        else:
            X[i, 1:] = -1.0
    beta, *_ = np.linalg.lstsq(X, d, rcond=None)
    resid = d - X @ beta
    mse = resid @ resid / (len(d) - k)
    cov = mse * np.linalg.inv(X.T @ X)
    return beta[0] ** 2 / cov[0, 0]
