"""Report formatting. Golden panel files come from the testkit oracle:
``python tests/test_report.py`` rewrites them."""

import csv
import io
import math
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aaidx import reference, testkit
from aaidx.indices import JournalScore
from aaidx.report import (
    emit_citing_table,
    emit_convergence_csv,
    emit_institution_table,
    emit_panel,
    emit_panels,
    emit_ranking_table,
    emit_scores_csv,
    fixed,
    read_scores_csv,
)
from aaidx.stats import CorrelationPanel, build_panel, rank_descending

GOLDEN = Path(__file__).parent / "golden"


def _published_scores():
    return [
        JournalScore(r.journal, r.num("index"), r.num("index"), r.num("d"), 60, r.num("jif"), r.num("es"))
        for r in reference.published_table("top58")
    ]


def _published_panel_table():
    rows = reference.published_table("top58")
    return {
        "JIF": [r.num("jif") for r in rows],
        "ES": [r.num("es") for r in rows],
        "AAI": [r.num("index") for r in rows],
        "D": [r.num("d") for r in rows],
        "AAID": [r.num("product") for r in rows],
    }


def _oracle_panel(table) -> CorrelationPanel:
    o = testkit.oracle_panel(table)
    labels = list(table)
    k = len(labels)
    rho, p = np.eye(k), np.zeros((k, k))
    stars = [[""] * k for _ in range(k)]
    for (a, b), (r, pv, s) in o["pairs"].items():
        i, j = labels.index(a), labels.index(b)
        rho[i, j] = rho[j, i] = r
        p[i, j] = p[j, i] = pv
        stars[i][j] = stars[j][i] = s
    return CorrelationPanel(tuple(labels), o["n"], tuple(o["means"]), tuple(o["std_devs"]), rho, p,
                            tuple(map(tuple, stars)))


@pytest.mark.parametrize(
    "value, digits, text",
    [(0.4345, 3, "0.435"), (-0.4345, 3, "-0.435"), (1.2605, 3, "1.261"), (0.000195, 5, "0.00020"),
     (2.5, 0, "3"), (-0.0001, 3, "0.000"), (None, 3, ""), (float("nan"), 3, ""), (2017.25, 1, "2017.3")],
)
def test_fixed_rounds_half_away_from_zero(value, digits, text):
    assert fixed(value, digits) == text


def test_table1_numeric_columns_reemit_verbatim():
    rows = reference.published_table("top58")
    text = emit_ranking_table(_published_scores(), sort_key="AAI")
    out = list(csv.DictReader(io.StringIO(text)))
    # equal printed AAI values were ordered on unrounded values, so match rows by name
    by_name = {r.journal: r for r in rows}
    assert sorted(r["journal"] for r in out) == sorted(by_name)
    for got in out:
        want = by_name[got["journal"]]
        assert (got["aai"], got["d"], got["jif"], got["es"]) == (want.index, want.d, want.jif, want.es)
        # the product is computed from the printed factors, never stored
        product = want.num("index") * want.num("d")
        assert got["aaid"] == fixed(product, 3)
        assert abs(product - want.num("product")) <= 0.002


def test_single_journal_all_ranks_one():
    text = emit_ranking_table([JournalScore("Only", 0.2, 0.22, 1.5, 60, 1.1, 0.001)])
    row = text.splitlines()[1].split(",")
    assert row[0] == "Only" and row[2::2] == ["1"] * 5


def test_missing_indicators_leave_blank_cells():
    scores = [JournalScore("A", 0.2, 0.2, 1.0, 60), JournalScore("B", 0.3, 0.3, 1.0, 60, 1.0, 0.001)]
    out = list(csv.DictReader(io.StringIO(emit_ranking_table(scores))))
    assert out[1]["journal"] == "A" and out[1]["jif"] == "" and out[1]["r_jif"] == ""
    assert out[0]["r_jif"] == "1"


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(0, 1, allow_nan=False), min_size=1, max_size=40), st.sampled_from(["AAI", "D", "AAIWD"]))
def test_displayed_order_follows_ranks(values, key):
    scores = [JournalScore(f"J{i:02d}", v, min(1.0, v * 1.1), 2 * v, 60) for i, v in enumerate(values)]
    out = list(csv.DictReader(io.StringIO(emit_ranking_table(scores, sort_key=key, top_k=10))))
    assert len(out) == min(10, len(values))
    col = {"AAI": "aai", "D": "d", "AAIWD": "aaiwd"}[key]
    ranks = rank_descending([s.value(key) for s in scores]).ranks
    shown = [int(r[f"r_{col}"]) for r in out]
    assert shown == sorted(shown)
    assert shown == sorted(ranks)[: len(shown)]


def test_ranking_formats_and_errors():
    scores = _published_scores()[:5]
    md = emit_ranking_table(scores, fmt="markdown", sort_key="AAID")
    assert md.splitlines()[0].startswith("| Journal | AAI | R_AAI |")
    txt = emit_ranking_table(scores, fmt="text", family="AAIW")
    assert txt.splitlines()[0].split()[:3] == ["Journal", "AAIW", "R_AAIW"]
    with pytest.raises(ValueError):
        emit_ranking_table(scores, sort_key="H")
    with pytest.raises(ValueError):
        emit_ranking_table(scores, fmt="xml")
    with pytest.raises(ValueError):
        emit_ranking_table([])


def test_scores_csv_roundtrip_is_exact():
    scores = [JournalScore("A, with comma", 1 / 3, 0.4, math.log(7), 57, None, 0.00012),
              JournalScore("B", 0.0, 0.0, 0.0, 60, 2.5, None)]
    assert read_scores_csv(emit_scores_csv(scores)) == scores


def test_convergence_csv():
    assert emit_convergence_csv([]) == "m,aai\n"
    assert emit_convergence_csv([(1, 0.5), (2, 1 / 3)]) == "m,aai\n1,0.500000\n2,0.333333\n"


@pytest.mark.parametrize("fmt, ext", [("text", "txt"), ("markdown", "md"), ("csv", "csv")])
def test_panel_matches_oracle_golden(fmt, ext):
    panel = build_panel(_published_panel_table())
    expected = (GOLDEN / f"panel_top58.{ext}").read_text(encoding="utf-8")
    assert emit_panel(panel, fmt, "Published top 50") == expected


def test_panel_diagonal_prints_plain_one():
    panel = build_panel({"a": [1.0, 2.0, 3.0], "b": [1.0, 2.0, 3.0]})
    lines = emit_panel(panel, "csv").splitlines()
    assert lines[1].split(",")[4] == "1" and lines[2].split(",")[4:] == ["1.000***", "1"]


def test_emit_panels_csv_and_text():
    panel = build_panel(_published_panel_table())
    text = emit_panels({"Panel A": panel, "Panel C": panel}, "text")
    assert text.count("(n = 50)") == 2
    rows = emit_panels({"Panel A": panel}, "csv").splitlines()
    assert rows[0].startswith("panel,n,Order") and rows[1].startswith("Panel A,50,1,JIF")


def test_institution_tables_emit():
    rows = testkit.output_table_fixture()
    from aaidx.networks import citing_institution_table, institution_output_table

    text = emit_institution_table(institution_output_table(rows, 2))
    assert text.splitlines()[1] == "1,Univ Calif San Diego,6,7.41,41,6.83,2017.5"
    ctext = emit_citing_table(citing_institution_table(testkit.citing_table_fixture(), 1))
    assert ctext.splitlines()[1] == "1,UCL,10,2.78,2017.6"


def test_emission_is_deterministic():
    scores = _published_scores()
    assert emit_ranking_table(scores, "AAID", fmt="text") == emit_ranking_table(list(scores), "AAID", fmt="text")


if __name__ == "__main__":
    panel = _oracle_panel(_published_panel_table())
    GOLDEN.mkdir(exist_ok=True)
    for fmt, ext in (("text", "txt"), ("markdown", "md"), ("csv", "csv")):
        (GOLDEN / f"panel_top58.{ext}").write_text(emit_panel(panel, fmt, "Published top 50"), encoding="utf-8")
