"""How AAI settles as the sample grows from 1 to 60 articles.

Run: python3 demos/05_convergence.py
"""

from aaidx import testkit
from aaidx.elite import assemble, build_elite_set, build_tier1
from aaidx.sampling import convergence_series, sample_articles

spec = testkit.GenSpec(seed=7, journals=1, articles_per_journal=120, elite_fraction_per_journal=(0.3,),
                       years=(2012, 2020))
corpus, truth, universe = testkit.gen_corpus(spec)
lists = testkit.universe_ranking_lists(universe)
elite = assemble(build_elite_set(lists), build_tier1(lists), universe.aliases)

journal = corpus.journals[0]
sample = sample_articles(corpus, journal, m=60)
series = convergence_series(sample, elite)
for m, value in series:
    if m in (1, 5, 10, 20, 30, 40, 50, 60):
        print(f"m = {m:2d}  AAI = {value:.3f}  {'#' * round(value * 60)}")
print(f"planted elite fraction: {truth.journal_fraction[journal]}")
