"""
Filling in missing word-order labels
====================================

A one-feature Gaussian naive Bayes model on the N1 ratio, fit on labeled
languages and applied to the rest.
"""

import numpy as np

from ordolex.experiments import impute_labels
from ordolex.gnb import gnb_fit, gnb_predict
from ordolex.synthetic import fixture_specs, fixture_unlabeled, generate_corpus, records_for
from ordolex.metrics import length_stats

specs = fixture_specs()
hidden = fixture_unlabeled(specs)
records = records_for(specs, hidden)
stats = {s.code: length_stats(generate_corpus(s, 150, seed=i)) for i, s in enumerate(specs)}

result = impute_labels(records, stats)
truth = {s.code: s.label for s in specs}
for code in result.predicted:
    print(f"{code}: predicted {result.labels[code].value:<4} "
          f"(p={result.posteriors[code]:.3f}), true {truth[code].value}")
print("class totals:", result.totals)

# the fitted model, one mean and variance per class
m = result.model
for c, mu, var in zip(m.classes, m.means, m.variances):
    print(f"{c:<4} mean N1 {mu[0]:.2f}  sd {np.sqrt(var[0]):.2f}")

# the same machinery works on any feature vectors
from ordolex.features import FeatureVector
from ordolex.ingest import OrderLabel

rng = np.random.default_rng(0)
pts = [FeatureVector(f"p{i}", rng.normal(3.0 * (lab is OrderLabel.VS), 1.0, size=2), ("u", "v"), lab)
       for lab in (OrderLabel.SV, OrderLabel.VS) for i in range(30)]
model = gnb_fit(pts)
print(gnb_predict(model, [1.5, 1.5]).posteriors)
