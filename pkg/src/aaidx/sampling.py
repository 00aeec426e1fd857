"""Per-journal sample selection and AAI convergence series."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import UnknownJournal
from .records import ArticleRecord, Corpus

log = logging.getLogger(__name__)

DEFAULT_M = 60
DEFAULT_ANCHOR_YEAR = 2020


@dataclass(frozen=True)
class SampleSet:
    journal_name: str
    articles: tuple[ArticleRecord, ...]
    m_requested: int
    excluded: int = 0  # newer articles skipped because no author had an affiliation

    @property
    def m_used(self) -> int:
        return len(self.articles)

    @property
    def shortfall(self) -> int:
        return self.m_requested - self.m_used


def _has_affiliation(article: ArticleRecord) -> bool:
    return any(a.raw_affiliations for a in article.authors)


def sample_articles(
    corpus: Corpus,
    journal_name: str,
    m: int = DEFAULT_M,
    anchor_year: int = DEFAULT_ANCHOR_YEAR,
) -> SampleSet:
    """Take the ``m`` newest articles published up to ``anchor_year``.

    Articles are ordered by ``order_key`` (year, volume, issue, file position),
    newest first. Articles in which no author carries any affiliation are
    skipped and the next-newest article takes their place. The corpus is
    expected to be doc-type filtered already.
    """
    if journal_name not in corpus.journal_index:
        raise UnknownJournal(journal_name)
    if m < 1:
        raise ValueError("m must be >= 1")
    pool = sorted(
        (a for a in corpus.journal_articles(journal_name) if a.pub_year <= anchor_year),
        key=lambda a: a.order_key,
        reverse=True,
    )
    picked, excluded = [], 0
    for art in pool:
        if len(picked) == m:
            break
        if _has_affiliation(art) and art.authors:
            picked.append(art)
        else:
            excluded += 1
    if excluded:
        log.info("%s: skipped %d article(s) without affiliations", journal_name, excluded)
    if len(picked) < m:
        log.warning("%s: only %d of %d sample articles available", journal_name, len(picked), m)
    return SampleSet(journal_name, tuple(picked), m, excluded)


def convergence_series(sample: SampleSet, elite_set, m_max: int | None = None) -> list[tuple[int, float]]:
    """AAI over the ``m`` newest sample articles, for ``m = 1 .. m_max``."""
    from .indices import tally_article

    if m_max is None:
        m_max = sample.m_used
    if m_max > sample.m_used:
        raise ValueError(f"m_max={m_max} exceeds sample size {sample.m_used}")
    fractions = np.array(
        [t.x / t.n for t in (tally_article(a, elite_set) for a in sample.articles[:m_max])],
        dtype=float,
    )
    return running_aai(fractions)


def running_aai(elite_fractions) -> list[tuple[int, float]]:
    """Cumulative mean of per-article elite fractions, as ``(m, AAI_m)`` pairs."""
    fr = np.asarray(elite_fractions, dtype=float)
    if fr.size == 0:
        return []
    means = np.cumsum(fr) / np.arange(1, fr.size + 1)
    return [(i + 1, float(v)) for i, v in enumerate(means)]
