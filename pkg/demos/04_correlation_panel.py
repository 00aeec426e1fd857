"""Spearman correlation panel between the new indices and citation-based metrics.

Run: python3 demos/04_correlation_panel.py
"""

from aaidx import reference
from aaidx.report import emit_panel
from aaidx.stats import build_panel, spearman

rows = reference.published_table("top58")
table = {
    "JIF": [r.num("jif") for r in rows],
    "ES": [r.num("es") for r in rows],
    "AAI": [r.num("index") for r in rows],
    "D": [r.num("d") for r in rows],
    "AAID": [r.num("index") * r.num("d") for r in rows],
}
print(emit_panel(build_panel(table), "text", "Published top 50"))

rho, p = spearman(table["AAI"], table["JIF"])
print(f"AAI vs JIF: rho = {rho:.3f}, p = {p:.2e}")
