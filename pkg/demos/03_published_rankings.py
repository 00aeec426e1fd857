"""Re-emit the bundled published top-50 ranking and show competition ranks on ties.

Run: python3 demos/03_published_rankings.py
"""

from aaidx import reference
from aaidx.indices import JournalScore
from aaidx.report import emit_ranking_table
from aaidx.stats import rank_descending

rows = reference.published_table("top58")
scores = [JournalScore(r.journal, r.num("index"), r.num("index"), r.num("d"), 60, r.num("jif"), r.num("es"))
          for r in rows]

print(emit_ranking_table(scores, sort_key="AAID", fmt="text", top_k=10))

# Equal values share the best rank and the next distinct value skips ahead.
print(rank_descending([0.333, 0.333, 0.326]).ranks)
