import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aaidx import reference, testkit
from aaidx.elite import assemble
from aaidx.errors import EmptySample, NoAuthors
from aaidx.indices import (
    ArticleTally,
    ScoreConfig,
    aai,
    aaid,
    aaiw,
    aaiwd,
    diversity,
    read_indicators,
    score_corpus,
    score_journal,
    shannon_entropy,
    tally_article,
)
from aaidx.records import ArticleRecord, AuthorEntry, Corpus, DocType, filter_doc_types

ES = assemble(["One Univ", "Two Univ"], ["One Univ"], {"One Univ": ["Univ One"], "Two Univ": ["Univ Two"]})


def _art(affs_per_author, rid="a", year=2020, journal="J", seq=0):
    authors = tuple(AuthorEntry(f"Author{k}, X", tuple(a)) for k, a in enumerate(affs_per_author))
    return ArticleRecord(rid, journal, year, DocType("Article"), authors, record_sequence=seq)


def test_tally_three_authors_two_elite():
    t = tally_article(_art([["Univ One, A"], ["Univ Two, B"], ["Other Coll, C"]]), ES)
    assert (t.x, t.y, t.n) == (2, 1, 3)
    assert t.weighted_x == pytest.approx(2.2)
    assert t.elite_counts == {"One Univ": 1, "Two Univ": 1}


def test_author_counted_once_with_two_elite_affiliations():
    t = tally_article(_art([["Univ Two, B", "Univ One, A"], ["Other Coll"]]), ES)
    assert (t.x, t.n, t.weighted_x) == (1, 2, 1.2)
    assert t.elite_counts == {"One Univ": 1}


def test_no_elite_and_no_authors():
    t = tally_article(_art([["Other Coll"]]), ES)
    assert t.x == 0 and t.weighted_x == 0 and t.elite_counts == {}
    with pytest.raises(NoAuthors):
        tally_article(ArticleRecord("z", "J", 2020, DocType("Article"), ()), ES)


def test_tally_invariants():
    with pytest.raises(ValueError):
        ArticleTally(2, 2, 3)
    with pytest.raises(ValueError):
        ArticleTally(1, 0, 1, {})


def test_interval_endpoints_and_empty():
    full = [ArticleTally(2, 0, 2, {"A": 2}, 2.0)] * 5
    none = [ArticleTally(0, 3, 3)] * 5
    assert aai(full) == 1.0 and aai(none) == 0.0
    with pytest.raises(EmptySample):
        aai([])


def test_jpcc_fixture_tallies():
    tallies = testkit.tallies_for_aai(0.434)
    assert abs(aai(tallies) - 0.434) <= 1 / (2 * 60 * 20)


def test_entropy_examples():
    assert shannon_entropy([5]) == 0.0
    assert shannon_entropy([]) == 0.0
    assert shannon_entropy([3, 3, 3, 3]) == pytest.approx(1.386294361, abs=1e-9)
    counts = [6, 6, 4, 4, 3, 2, 1]
    assert shannon_entropy(counts) == pytest.approx(testkit.oracle_entropy(counts), abs=1e-12)
    assert diversity([]) == 0.0


def test_products():
    assert abs(aaid(0.434, 2.906) - 1.260) <= 0.002
    assert abs(aaiwd(0.464, 2.906) - 1.348) <= 0.002
    assert aaid(0.7, 0.0) == 0.0 and aaiwd(0.9, 0.0) == 0.0


def test_table_rows_satisfy_product_identity():
    for name in ("top58", "top13", "weighted"):
        for row in reference.published_table(name):
            assert abs(aaid(row.num("index"), row.num("d")) - row.num("product")) <= 0.002, (name, row.journal)


def _random_tallies(rng, m):
    out = []
    for _ in range(m):
        n = int(rng.integers(1, 8))
        x = int(rng.integers(0, n + 1))
        insts = rng.choice(["A", "B", "C", "D"], size=x)
        tier1 = rng.random(x) < 0.4
        counts = {}
        for i in insts:
            counts[str(i)] = counts.get(str(i), 0) + 1
        out.append((ArticleTally(x, n - x, n, counts, float(np.sum(np.where(tier1, 1.2, 1.0)))),
                    [1.2 if t else 1.0 for t in tier1]))
    return out


def test_indices_match_oracles_on_1000_seeded_cases():
    rng = np.random.default_rng(np.random.PCG64(1000))
    worst = 0.0
    for _ in range(1000):
        pairs = _random_tallies(rng, int(rng.integers(1, 61)))
        tallies = [t for t, _ in pairs]
        a, w = aai(tallies), aaiw(tallies)
        worst = max(
            worst,
            abs(a - testkit.oracle_aai((t.x, t.n) for t in tallies)),
            abs(w - testkit.oracle_aaiw((ws, t.n) for t, ws in pairs)),
        )
        counts = {}
        for t in tallies:
            for k, v in t.elite_counts.items():
                counts[k] = counts.get(k, 0) + v
        worst = max(worst, abs(diversity(tallies) - testkit.oracle_entropy(counts.values())))
        assert a - 1e-12 <= w <= 1.2 * a + 1e-12
    assert worst <= 1e-12


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 9), st.integers(0, 9)), min_size=1, max_size=60))
def test_unit_weights_make_aaiw_equal_aai(rows):
    tallies = [ArticleTally(min(x, n), n - min(x, n), n, {"A": min(x, n)} if min(x, n) else {}, float(min(x, n)))
               for n, x in rows]
    assert aaiw(tallies) == aai(tallies)
    assert 0.0 <= aai(tallies) <= 1.0


def test_score_journal_endpoints():
    names = [f"Inst{k} Univ" for k in range(5)]
    es = assemble(names, [])
    arts = [_art([[names[i % 5] + ", X"]], rid=f"e{i}", seq=i) for i in range(60)]
    arts += [_art([["Other Coll, Y"]], rid=f"z{i}", journal="Zero", seq=100 + i) for i in range(10)]
    corpus = Corpus(arts)
    s = score_journal(corpus, "J", es)
    assert s.aai == 1.0 and s.d == pytest.approx(math.log(5)) and s.aaid == pytest.approx(math.log(5))
    z = score_journal(corpus, "Zero", es)
    assert (z.aai, z.aaiw, z.d, z.aaid, z.aaiwd) == (0.0, 0.0, 0.0, 0.0, 0.0)


def test_generated_scores_match_label_oracle(small_generated):
    corpus, truth, universe = small_generated
    es = assemble(universe.elite, universe.tier1, universe.aliases)
    scores = score_corpus(filter_doc_types(corpus), es, ScoreConfig(60, 2020), workers=3)
    oracle = testkit.oracle_journal_scores(corpus, truth)
    assert [s.journal_name for s in scores] == sorted(oracle)
    for s in scores:
        o = oracle[s.journal_name]
        assert s.m_used == o["m_used"]
        assert abs(s.aai - o["aai"]) <= 1e-12
        assert abs(s.aaiw - o["aaiw"]) <= 1e-12
        assert abs(s.d - o["d"]) <= 1e-12


def test_single_institution_generated_journal():
    spec = testkit.GenSpec(seed=5, journals=2, articles_per_journal=70, elite_fraction_per_journal=(1.0, 0.0),
                           institution_concentration=0.0, second_affiliation_rate=0.0)
    corpus, _, universe = testkit.gen_corpus(spec)
    es = assemble(universe.elite, universe.tier1, universe.aliases)
    full, empty = score_corpus(filter_doc_types(corpus), es)
    assert (full.aai, full.d) == (1.0, 0.0)
    assert (empty.aai, empty.aaiw, empty.d) == (0.0, 0.0, 0.0)


def test_uniform_concentration_entropy_approaches_ln_k():
    spec = testkit.GenSpec(seed=6, journals=1, articles_per_journal=2000, elite_fraction_per_journal=(1.0,),
                           institution_concentration=math.inf, elite_pool=8, years=(2020, 2020))
    corpus, _, universe = testkit.gen_corpus(spec)
    es = assemble(universe.elite, universe.tier1, universe.aliases)
    s = score_journal(filter_doc_types(corpus), corpus.journals[0], es, ScoreConfig(m=2000))
    assert abs(s.d - math.log(8)) < 0.01


def test_read_indicators():
    ind = read_indicators("journal,jif,es\nJournal  of X,1.5,0.00012\nY,,\n")
    assert ind == {"journal of x": (1.5, 0.00012), "y": (None, None)}
