"""Per-article tallies and the journal-level AAI family of indices.

For a journal's sample of articles ``i`` with ``x_i`` elite authors out of
``n_i`` authors::

    AAI   = sum(x_i / n_i) / sum((x_i + y_i) / n_i)
    AAIW  = sum(sum_{elite authors j} w_ij / n_i) / sum((x_i + y_i) / n_i)
    D     = -sum_j p_j ln p_j       (p_j: share of elite authors at institution j)
    AAID  = AAI * D
    AAIWD = AAIW * D
"""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .elite import EliteSet
from .errors import EmptySample, InputError, NoAuthors
from .records import ArticleRecord, Corpus
from .sampling import DEFAULT_ANCHOR_YEAR, DEFAULT_M, sample_articles


@dataclass(frozen=True)
class ArticleTally:
    x: int
    y: int
    n: int
    elite_counts: Mapping[str, int] = field(default_factory=dict)
    weighted_x: float = 0.0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.x < 0 or self.y < 0 or self.x + self.y != self.n:
            raise ValueError(f"tally needs x + y = n, got x={self.x} y={self.y} n={self.n}")
        if sum(self.elite_counts.values()) != self.x:
            raise ValueError("elite_counts must sum to x")


def tally_article(article: ArticleRecord, elite_set: EliteSet) -> ArticleTally:
    """Classify each author once as elite or not; see :meth:`EliteSet.resolve_author`."""
    if not article.authors:
        raise NoAuthors(article.record_id)
    counts: Counter[str] = Counter()
    weights = []
    for author in article.authors:
        inst = elite_set.resolve_author(author.raw_affiliations)
        if inst is not None:
            counts[inst.canonical_name] += 1
            weights.append(inst.weight)
    x = len(weights)
    n = len(article.authors)
    return ArticleTally(x=x, y=n - x, n=n, elite_counts=dict(counts), weighted_x=math.fsum(weights))


def _denominator(tallies: Sequence[ArticleTally]) -> float:
    if not tallies:
        raise EmptySample("no articles in sample")
    den = math.fsum((t.x + t.y) / t.n for t in tallies)
    # x + y = n makes every term exactly 1
    assert den == len(tallies), den
    return den


def aai(tallies: Sequence[ArticleTally]) -> float:
    den = _denominator(tallies)
    return math.fsum(t.x / t.n for t in tallies) / den


def aaiw(tallies: Sequence[ArticleTally]) -> float:
    """Weighted AAI; each elite author contributes its institution weight instead of 1."""
    den = _denominator(tallies)
    return math.fsum(t.weighted_x / t.n for t in tallies) / den


def shannon_entropy(counts: Iterable[float]) -> float:
    """Natural-log Shannon entropy of a count vector (zero counts ignored)."""
    counts = [c for c in counts if c > 0]
    total = math.fsum(counts)
    if total == 0 or len(counts) == 1:
        return 0.0
    return -math.fsum((c / total) * math.log(c / total) for c in counts)


def elite_author_counts(tallies: Iterable[ArticleTally]) -> Counter:
    total: Counter[str] = Counter()
    for t in tallies:
        total.update(t.elite_counts)
    return total


def diversity(tallies: Iterable[ArticleTally]) -> float:
    """Entropy of elite authors across elite institutions; 0 when no elite authors."""
    return shannon_entropy(elite_author_counts(tallies).values())


def aaid(aai_value: float, d_value: float) -> float:
    return aai_value * d_value


def aaiwd(aaiw_value: float, d_value: float) -> float:
    return aaiw_value * d_value


@dataclass(frozen=True)
class JournalScore:
    journal_name: str
    aai: float
    aaiw: float
    d: float
    m_used: int
    jif: float | None = None
    es: float | None = None

    @property
    def aaid(self) -> float:
        return aaid(self.aai, self.d)

    @property
    def aaiwd(self) -> float:
        return aaiwd(self.aaiw, self.d)

    def value(self, key: str) -> float | None:
        """Look up an indicator by name (``"AAI"``, ``"AAIWD"``, ``"JIF"``...)."""
        return getattr(self, key.lower())


@dataclass(frozen=True)
class ScoreConfig:
    m: int = DEFAULT_M
    anchor_year: int = DEFAULT_ANCHOR_YEAR


def normalize_journal(name: str) -> str:
    return " ".join(name.split()).casefold()


def score_tallies(journal_name: str, tallies: Sequence[ArticleTally], indicators=None) -> JournalScore:
    ind = (indicators or {}).get(normalize_journal(journal_name), (None, None))
    return JournalScore(
        journal_name=journal_name,
        aai=aai(tallies),
        aaiw=aaiw(tallies),
        d=diversity(tallies),
        m_used=len(tallies),
        jif=ind[0],
        es=ind[1],
    )


def score_journal(
    corpus: Corpus,
    journal_name: str,
    elite_set: EliteSet,
    config: ScoreConfig = ScoreConfig(),
    indicators: Mapping[str, tuple[float | None, float | None]] | None = None,
) -> JournalScore:
    """Sample a journal and compute all five indices.

    ``indicators`` maps normalized journal names (see :func:`normalize_journal`)
    to ``(jif, es)``.
    """
    sample = sample_articles(corpus, journal_name, config.m, config.anchor_year)
    if not sample.articles:
        raise EmptySample(journal_name)
    tallies = [tally_article(a, elite_set) for a in sample.articles]
    return score_tallies(journal_name, tallies, indicators)


def score_corpus(
    corpus: Corpus,
    elite_set: EliteSet,
    config: ScoreConfig = ScoreConfig(),
    indicators=None,
    journals: Iterable[str] | None = None,
    workers: int = 1,
) -> list[JournalScore]:
    """Score every journal (sorted by name). Journals with an empty sample are skipped."""
    names = sorted(journals if journals is not None else corpus.journals)

    def one(name):
        try:
            return score_journal(corpus, name, elite_set, config, indicators)
        except EmptySample:
            return None

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, names))
    else:
        results = [one(n) for n in names]
    return [r for r in results if r is not None]


def read_indicators(stream) -> dict[str, tuple[float | None, float | None]]:
    """Read a ``journal,jif,es`` CSV; blank cells become ``None``."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    reader = csv.DictReader(stream)
    if not {"journal", "jif", "es"} <= set(reader.fieldnames or ()):
        raise InputError("indicator file needs columns journal,jif,es")
    out = {}
    for lineno, row in enumerate(reader, start=2):
        try:
            jif = float(row["jif"]) if (row["jif"] or "").strip() else None
            es = float(row["es"]) if (row["es"] or "").strip() else None
        except ValueError:
            raise InputError(f"indicator file line {lineno}: bad number") from None
        out[normalize_journal(row["journal"])] = (jif, es)
    return out
