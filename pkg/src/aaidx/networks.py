"""Keyword co-occurrence, institution output tables and collaboration networks."""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .records import ArticleRecord


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected weighted graph; ``edges`` hold node indices with ``a < b``.

    ``candidates`` is the number of distinct labels seen before thresholding.
    """

    nodes: tuple[tuple[str, int], ...]
    edges: tuple[tuple[int, int, int], ...]
    candidates: int = 0

    def labels(self) -> list[str]:
        return [lab for lab, _ in self.nodes]

    def weight(self, a: str, b: str) -> int:
        idx = {lab: i for i, (lab, _) in enumerate(self.nodes)}
        if a not in idx or b not in idx:
            return 0
        i, j = sorted((idx[a], idx[b]))
        for u, v, w in self.edges:
            if (u, v) == (i, j):
                return w
        return 0

    def to_csv(self) -> tuple[str, str]:
        """``(nodes_csv, edges_csv)`` with columns ``label,count`` and ``source,target,weight``."""
        nbuf, ebuf = io.StringIO(), io.StringIO()
        nw = csv.writer(nbuf, lineterminator="\n")
        nw.writerow(["label", "count"])
        nw.writerows(self.nodes)
        ew = csv.writer(ebuf, lineterminator="\n")
        ew.writerow(["source", "target", "weight"])
        for a, b, w in self.edges:
            ew.writerow([self.nodes[a][0], self.nodes[b][0], w])
        return nbuf.getvalue(), ebuf.getvalue()


def _graph(occurrence: Counter, pairs: Counter, min_weight: int) -> WeightedGraph:
    kept = {p: w for p, w in pairs.items() if w >= min_weight}
    labels = sorted({lab for p in kept for lab in p})
    index = {lab: i for i, lab in enumerate(labels)}
    edges = sorted((index[a], index[b], w) for (a, b), w in kept.items())
    return WeightedGraph(
        nodes=tuple((lab, occurrence[lab]) for lab in labels),
        edges=tuple(edges),
        candidates=len(occurrence),
    )


def _cooccurrence(label_sets: Iterable[set[str]]) -> tuple[Counter, Counter]:
    occurrence: Counter[str] = Counter()
    pairs: Counter[tuple[str, str]] = Counter()
    for labels in label_sets:
        occurrence.update(labels)
        pairs.update(combinations(sorted(labels), 2))
    return occurrence, pairs


def normalize_keyword(kw: str) -> str:
    return " ".join(kw.split()).lower()


def keyword_cooccurrence(articles: Iterable[ArticleRecord], min_cooccurrence: int = 2) -> WeightedGraph:
    """Full-counting author-keyword co-occurrence.

    Edge weight is the number of articles listing both keywords; only edges
    with weight >= ``min_cooccurrence`` and their endpoints are kept.
    ``candidates`` is the number of distinct keywords overall.
    """
    sets = ({normalize_keyword(k) for k in a.author_keywords if k.strip()} for a in articles)
    occurrence, pairs = _cooccurrence(sets)
    return _graph(occurrence, pairs, min_cooccurrence)


def institution_label(raw_affiliation: str) -> str:
    """First comma segment with whitespace collapsed, e.g. ``"Univ Calif San Diego"``."""
    return " ".join(raw_affiliation.split(",", 1)[0].split())


def article_institutions(article: ArticleRecord) -> set[str]:
    """Distinct institution labels across all authors of an article."""
    labels = {}
    for author in article.authors:
        for aff in author.raw_affiliations:
            lab = institution_label(aff)
            if lab:
                labels.setdefault(lab.casefold(), lab)
    return set(labels.values())


@dataclass(frozen=True)
class InstitutionRow:
    institution: str
    tp: int
    rho_pct: float
    tc: int
    tc_per_tp: float
    avg_py: float


@dataclass(frozen=True)
class CitingRow:
    institution: str
    cp: int
    rho_pct: float
    avg_py: float


def _whole_counts(articles):
    """Per institution: list of articles crediting it (once per article)."""
    credited: dict[str, list[ArticleRecord]] = {}
    canon: dict[str, str] = {}
    for art in articles:
        for lab in article_institutions(art):
            key = canon.setdefault(lab.casefold(), lab)
            credited.setdefault(key, []).append(art)
    return credited


def institution_output_table(articles: Iterable[ArticleRecord], top_k: int | None = 20) -> list[InstitutionRow]:
    """Whole-counting output table: TP, share of the corpus, citations, mean year.

    Sorted by TP, then TC (both descending), then name.
    """
    articles = list(articles)
    size = len(articles)
    rows = []
    for inst, arts in _whole_counts(articles).items():
        tp = len(arts)
        tc = sum(a.times_cited for a in arts)
        rows.append(
            InstitutionRow(
                institution=inst,
                tp=tp,
                rho_pct=100.0 * tp / size,
                tc=tc,
                tc_per_tp=tc / tp,
                avg_py=math.fsum(a.pub_year for a in arts) / tp,
            )
        )
    rows.sort(key=lambda r: (-r.tp, -r.tc, r.institution))
    return rows if top_k is None else rows[:top_k]


def citing_institution_table(citing_articles: Iterable[ArticleRecord], top_k: int | None = 20) -> list[CitingRow]:
    """Same whole counting over a corpus of citing papers; sorted by CP then name."""
    citing_articles = list(citing_articles)
    size = len(citing_articles)
    rows = [
        CitingRow(
            institution=inst,
            cp=len(arts),
            rho_pct=100.0 * len(arts) / size,
            avg_py=math.fsum(a.pub_year for a in arts) / len(arts),
        )
        for inst, arts in _whole_counts(citing_articles).items()
    ]
    rows.sort(key=lambda r: (-r.cp, r.institution))
    return rows if top_k is None else rows[:top_k]


def collaboration_network(articles: Iterable[ArticleRecord]) -> WeightedGraph:
    """Institutions as nodes (count = articles); edge weight = articles spanning both.

    Institutions that never collaborate stay in the graph as isolated nodes.
    """
    occurrence, pairs = _cooccurrence(article_institutions(a) for a in articles)
    labels = sorted(occurrence)
    index = {lab: i for i, lab in enumerate(labels)}
    edges = sorted((index[a], index[b], w) for (a, b), w in pairs.items())
    return WeightedGraph(tuple((lab, occurrence[lab]) for lab in labels), tuple(edges), len(labels))
