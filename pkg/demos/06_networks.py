"""Keyword co-occurrence, institutional collaboration and institution output tables.

Run: python3 demos/06_networks.py
"""

from aaidx import testkit
from aaidx.networks import (
    citing_institution_table,
    collaboration_network,
    institution_output_table,
    keyword_cooccurrence,
)
from aaidx.report import emit_citing_table, emit_institution_table

corpus, _, _ = testkit.gen_corpus(testkit.GenSpec(seed=3, journals=1, articles_per_journal=150))
articles = list(corpus)

keywords = keyword_cooccurrence(articles, min_cooccurrence=3)
print(f"keyword network: {len(keywords.nodes)} nodes, {len(keywords.edges)} edges")
nodes, edges = keywords.to_csv()
print("\n".join(edges.splitlines()[:6]))

collab = collaboration_network(articles)
print(f"collaboration network: {len(collab.nodes)} institutions, {len(collab.edges)} links")

print(emit_institution_table(institution_output_table(testkit.output_table_fixture(), top_k=5)))
print(emit_citing_table(citing_institution_table(testkit.citing_table_fixture(), top_k=5)))
