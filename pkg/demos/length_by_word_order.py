"""
Do noun and verb lengths depend on word order?
==============================================

A mixed ANOVA with word-order class between languages and word class
(noun, verb) within languages.
"""

from ordolex.experiments import length_order_analysis
from ordolex.ingest import OrderLabel
from ordolex.metrics import length_stats
from ordolex.synthetic import generate_corpus, language_suite, records_for

O = OrderLabel
# nouns built longer than verbs in SV languages, shorter in VS ones
specs = language_suite({O.SV: 20, O.VS: 12, O.FREE: 6}, seed=11,
                       length_gap={O.SV: 1.4, O.VS: -0.6, O.FREE: 0.6})
stats = {s.code: length_stats(generate_corpus(s, 150, seed=i)) for i, s in enumerate(specs)}
res = length_order_analysis(records_for(specs), stats)

anova = res["frequency"]
for eff in anova.effects():
    print(f"{eff.effect:<12} F({eff.df1:.0f},{eff.df2:.0f}) = {eff.statistic:7.2f}  p = {eff.p_value:.2g}")
for cell in anova.cells:
    print(f"{cell.group:<5} nouns {cell.mean_1:.2f}  verbs {cell.mean_2:.2f}")

# pooled over all languages: are arguments longer than predicates?
t = res.ttest
print(f"args vs preds t = {t.statistic:.2f}, p = {t.p_value:.2g}")
