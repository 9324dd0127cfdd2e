"""
N1 ratio and word lengths of one corpus
=======================================

Reads a tagged corpus, counts which of noun and verb comes first in each
sentence, and reports type- and token-weighted mean lengths.
"""

from ordolex import length_stats, n1_ratio
from ordolex.metrics import ARGUMENT_PREDICATE, NOUN_VERB
from ordolex.synthetic import toy_corpus

toy = toy_corpus()
for sent in toy.sentences:
    print(" ".join(f"{t.form}/{t.word_class.name}" for t in sent.tokens))

# two noun-first sentences against one verb-first sentence
print("noun-verb N1:", n1_ratio(toy, NOUN_VERB))
print("argument-predicate N1:", n1_ratio(toy, ARGUMENT_PREDICATE))

# a larger synthetic corpus, built to be noun-initial about 80% of the time
from ordolex.synthetic import LanguageSpec, generate_corpus
from ordolex.ingest import OrderLabel

spec = LanguageSpec("dem", OrderLabel.SV, noun_first=0.8, noun_len=7.0, verb_len=5.5)
stats = length_stats(generate_corpus(spec, n_sentences=400, seed=1))

# 0.8 / 0.2 = 4 in expectation
print(f"N1 ratio {stats.n1_ratio_np:.2f}")
print(f"nouns: {stats.noun_len_type:.2f} per type, {stats.noun_len_token:.2f} per token")
print(f"verbs: {stats.verb_len_type:.2f} per type, {stats.verb_len_token:.2f} per token")
