"""Synthetic corpora with ground truth, and brute-force oracles.

Random draws use NumPy's ``Generator`` over the PCG64 bit generator, seeded
explicitly, so a given :class:`GenSpec` yields the same corpus bytes on every
platform.

The oracles deliberately avoid the main code paths: plain Python loops,
``statistics`` and ``mpmath`` instead of NumPy/SciPy.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import statistics
from dataclasses import asdict, dataclass, field

import mpmath
import numpy as np

from .elite import AnnualRankingList
from .errors import InvalidSpec
from .records import ArticleRecord, AuthorEntry, Corpus, DocType

_SYLLABLES = (
    "ba be bi bo bu da de di do du fa fe fi fo ka ke ki ko ku la le li lo lu ma me mi mo mu "
    "na ne ni no nu pa pe pi po ra re ri ro ru sa se si so ta te ti to va ve vi vo za ze zo"
).split()
_COUNTRIES = ("Arland", "Bresca", "Corvia", "Dantel", "Esmor")


@dataclass(frozen=True)
class GenSpec:
    """Parameters for :func:`gen_corpus`.

    ``elite_fraction_per_journal`` is recycled when shorter than ``journals``.
    ``institution_concentration`` is a Dirichlet concentration over the
    ``elite_pool`` institutions a journal draws from: ``0`` puts every elite
    author in one institution, ``math.inf`` is uniform.
    """

    seed: int = 0
    journals: int = 5
    articles_per_journal: int = 80
    elite_fraction_per_journal: tuple[float, ...] = (0.3,)
    institution_concentration: float = 1.0
    authors_per_article: tuple[int, int] = (1, 5)
    keyword_pool: int = 60
    keywords_per_article: tuple[int, int] = (2, 6)
    n_elite: int = 58
    n_tier1: int = 13
    n_other: int = 150
    elite_pool: int | None = None
    years: tuple[int, int] = (2015, 2021)
    excluded_type_rate: float = 0.05
    missing_affiliation_rate: float = 0.0
    second_affiliation_rate: float = 0.1
    tier1_weight: float = 1.2

    def validate(self):
        fr = tuple(self.elite_fraction_per_journal)
        if not fr or any(not 0.0 <= p <= 1.0 for p in fr):
            raise InvalidSpec("elite fractions must lie in [0, 1]")
        lo, hi = self.authors_per_article
        if not 1 <= lo <= hi:
            raise InvalidSpec("authors_per_article must satisfy 1 <= lo <= hi")
        klo, khi = self.keywords_per_article
        if not 0 <= klo <= khi or khi > self.keyword_pool:
            raise InvalidSpec("keywords_per_article must fit in keyword_pool")
        if self.journals < 1 or self.articles_per_journal < 0:
            raise InvalidSpec("need at least one journal")
        if not 1 <= self.n_tier1 <= self.n_elite or self.n_other < 1:
            raise InvalidSpec("need 1 <= n_tier1 <= n_elite and n_other >= 1")
        if self.elite_pool is not None and not 1 <= self.elite_pool <= self.n_elite:
            raise InvalidSpec("elite_pool must be within 1..n_elite")
        if self.institution_concentration < 0:
            raise InvalidSpec("institution_concentration must be >= 0")
        if self.years[0] > self.years[1]:
            raise InvalidSpec("years must be (first, last)")


@dataclass
class Universe:
    """Synthetic institutions: elite (first ``n_tier1`` are tier 1) and others."""

    elite: list[str]
    tier1: list[str]
    others: list[str]
    aliases: dict[str, list[str]]

    def alias_table_text(self) -> str:
        return "".join(f"{n}|{'|'.join(a)}\n" for n, a in self.aliases.items())


@dataclass
class GroundTruth:
    """Labels behind a generated corpus.

    ``author_labels`` maps record id to one entry per author: the canonical
    elite institution or ``None``.
    """

    spec: dict
    elite: list[str]
    tier1: list[str]
    tier1_weight: float
    journal_fraction: dict[str, float]
    author_labels: dict[str, list[str | None]] = field(default_factory=dict)
    admitted: dict[str, bool] = field(default_factory=dict)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "GroundTruth":
        return cls(**json.loads(text))

    def weight(self, inst: str | None) -> float:
        if inst is None:
            return 0.0
        return self.tier1_weight if inst in self.tier1 else 1.0


def _words(rng, count, taken):
    out = []
    while len(out) < count:
        w = "".join(rng.choice(_SYLLABLES, size=3)).capitalize()
        if w not in taken:
            taken.add(w)
            out.append(w)
    return out


def gen_universe(spec: GenSpec, rng=None) -> Universe:
    rng = rng if rng is not None else np.random.default_rng(spec.seed)
    taken: set[str] = set()
    ewords = _words(rng, spec.n_elite, taken)
    owords = _words(rng, spec.n_other, taken)
    elite = [f"University of {w}" for w in ewords]
    aliases = {f"University of {w}": [f"Univ {w}"] for w in ewords}
    others = [f"{w} {'Coll' if i % 2 else 'Inst Educ'}" for i, w in enumerate(owords)]
    return Universe(elite, elite[: spec.n_tier1], others, aliases)


def universe_ranking_lists(universe: Universe, final_year: int = 2020, top_n: int = 50, tier1_top_n: int = 10):
    """Annual lists for which the elite/tier-1 builders recover ``universe`` exactly.

    Needs ``len(elite) >= top_n`` and ``tier1_top_n <= len(tier1) <= 4 * tier1_top_n``.
    """
    elite, tier1 = universe.elite, universe.tier1
    if len(elite) < top_n or not tier1_top_n <= len(tier1) <= 4 * tier1_top_n:
        raise InvalidSpec("universe too small for ranking-list construction")
    if tier1 != elite[: len(tier1)]:
        raise InvalidSpec("tier-1 institutions must lead the elite list")
    head, extra_t1 = tier1[:tier1_top_n], tier1[tier1_top_n:]
    set_a = elite[:top_n]
    set_b = elite[top_n:]
    decoys = universe.others[:6]
    prior = [final_year - 3, final_year - 2, final_year - 1]
    lists = {}
    for k, year in enumerate(prior):
        top = list(head)
        for i, name in enumerate(extra_t1):
            if i % 3 == k:
                top[tier1_top_n - 1 - (i // 3) % tier1_top_n] = name
        b_here = [n for i, n in enumerate(set_b) if i % 3 != k]  # each in two of three years
        d_here = [n for i, n in enumerate(decoys) if i % 3 == k]
        filler = [n for n in set_a if n not in top]
        body = b_here + d_here
        body = filler[: top_n - len(top) - len(body)] + body
        if len(top) + len(body) != top_n:
            raise InvalidSpec("too many set-B institutions for the list length")
        names = top + body
        lists[year] = AnnualRankingList(year, [(r + 1, n, "") for r, n in enumerate(names)])
    final = [(r + 1, n, "") for r, n in enumerate(set_a)] + [(top_n + 1, n, "") for n in set_b]
    lists[final_year] = AnnualRankingList(final_year, final)
    return lists


def ranking_lists_csv(lists) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["year", "rank", "name", "location"])
    for y in sorted(lists):
        for rank, name, loc in lists[y].entries:
            w.writerow([y, rank, name, loc])
    return buf.getvalue()


def _distinct(rng, pool_size: int, k: int) -> list[int]:
    """``k`` distinct indices below ``pool_size`` in draw order (rejection sampling)."""
    picked: list[int] = []
    while len(picked) < k:
        i = int(rng.integers(pool_size))
        if i not in picked:
            picked.append(i)
    return picked


def _affiliation(rng, inst: str, universe: Universe) -> str:
    country = _COUNTRIES[int(rng.integers(len(_COUNTRIES)))]
    if inst in universe.aliases:
        short = universe.aliases[inst][0]
        form = int(rng.integers(3))
        if form == 0:
            return f"{short}, Fac Educ, {country}"
        if form == 1:
            return f"Dept Educ, {short}, {country}"
        return f"{inst}, {country}"
    return f"{inst}, {country}"


def _elite_probs(rng, spec: GenSpec) -> np.ndarray:
    k = spec.elite_pool or spec.n_elite
    probs = np.zeros(spec.n_elite)
    pool = rng.permutation(spec.n_elite)[:k]
    alpha = spec.institution_concentration
    if alpha == 0:
        probs[pool[0]] = 1.0
    elif math.isinf(alpha):
        probs[pool] = 1.0 / k
    else:
        probs[pool] = rng.dirichlet(np.full(k, alpha))
    return probs


def gen_corpus(spec: GenSpec) -> tuple[Corpus, GroundTruth, Universe]:
    """Generate a corpus whose elite authorship is known author by author.

    Each author is elite with the journal's planted probability; elite
    authors pick an institution from the journal's concentration-driven
    distribution. Some authors get an extra non-elite affiliation, some
    records get an excluded document type or lose all affiliations.
    """
    spec.validate()
    rng = np.random.default_rng(np.random.PCG64(spec.seed))
    universe = gen_universe(spec, rng)
    fractions = spec.elite_fraction_per_journal
    truth = GroundTruth(
        spec=json.loads(json.dumps(asdict(spec))),  # JSON-native so round trips compare equal
        elite=list(universe.elite),
        tier1=list(universe.tier1),
        tier1_weight=spec.tier1_weight,
        journal_fraction={},
    )
    surnames = _words(rng, 400, set(w.split()[-1] for w in universe.elite))
    keywords = [f"{w.lower()} studies" for w in _words(rng, spec.keyword_pool, set(surnames))]
    sampled_types = ("Article", "Article", "Article", "Review", "Proceedings Paper",
                     "Article; Proceedings Paper", "Book Chapter")
    y0, y1 = spec.years

    articles = []
    seq = 0
    for j in range(spec.journals):
        journal = f"Journal of Synthetic Studies {j + 1:03d}"
        p = float(fractions[j % len(fractions)])
        truth.journal_fraction[journal] = p
        cdf = np.cumsum(_elite_probs(rng, spec))
        for a in range(spec.articles_per_journal):
            rid = f"GEN:{j + 1:03d}:{a + 1:05d}"
            n = int(rng.integers(spec.authors_per_article[0], spec.authors_per_article[1] + 1))
            names = [f"{s}, {chr(65 + int(rng.integers(26)))}" for s in (surnames[i] for i in _distinct(rng, len(surnames), n))]
            bare = rng.random() < spec.missing_affiliation_rate
            authors, labels = [], []
            for name in names:
                if rng.random() < p:
                    k = int(np.searchsorted(cdf, rng.random() * cdf[-1], side="right"))
                    inst = universe.elite[min(k, spec.n_elite - 1)]
                    label = inst
                else:
                    inst = universe.others[int(rng.integers(len(universe.others)))]
                    label = None
                affs = [_affiliation(rng, inst, universe)]
                if rng.random() < spec.second_affiliation_rate:
                    extra = universe.others[int(rng.integers(len(universe.others)))]
                    affs.append(_affiliation(rng, extra, universe))
                if bare:
                    affs, label = [], None
                authors.append(AuthorEntry(name, tuple(dict.fromkeys(affs))))
                labels.append(label)
            if rng.random() < spec.excluded_type_rate:
                dt = "Editorial Material"
            else:
                dt = sampled_types[int(rng.integers(len(sampled_types)))]
            year = int(rng.integers(y0, y1 + 1))
            kcount = int(rng.integers(spec.keywords_per_article[0], spec.keywords_per_article[1] + 1))
            kws = [keywords[i] for i in _distinct(rng, len(keywords), kcount)]
            articles.append(
                ArticleRecord(
                    record_id=rid,
                    journal_name=journal,
                    pub_year=year,
                    doc_type=DocType(dt),
                    authors=tuple(authors),
                    volume=year - 2000,
                    issue=int(rng.integers(1, 5)),
                    record_sequence=seq,
                    author_keywords=tuple(kws),
                    times_cited=int(rng.poisson(4.0)),
                    title=f"Synthetic article {rid}",
                )
            )
            truth.author_labels[rid] = labels
            truth.admitted[rid] = dt != "Editorial Material"
            seq += 1
    return Corpus(articles), truth, universe


# --------------------------------------------------------------------------
# oracles


def oracle_rank(values) -> list[int]:
    """Descending competition ranks: 1 + number of strictly greater values."""
    return [1 + sum(1 for v in values if v > x) for x in values]


def oracle_average_ranks(values) -> list[float]:
    out = []
    for x in values:
        less = sum(1 for v in values if v < x)
        equal = sum(1 for v in values if v == x)
        out.append(less + (equal + 1) / 2)
    return out


def oracle_pearson(a, b) -> float:
    n = len(a)
    ma, mb = math.fsum(a) / n, math.fsum(b) / n
    sab = math.fsum((x - ma) * (y - mb) for x, y in zip(a, b))
    saa = math.fsum((x - ma) ** 2 for x in a)
    sbb = math.fsum((y - mb) ** 2 for y in b)
    return sab / math.sqrt(saa * sbb)


def oracle_spearman(x, y) -> float:
    return oracle_pearson(oracle_average_ranks(list(x)), oracle_average_ranks(list(y)))


def oracle_t_pvalue(rho: float, n: int) -> float:
    """Two-sided p for rho under the t approximation, via the incomplete beta function."""
    if abs(rho) >= 1:
        return 0.0
    with mpmath.workdps(40):
        r2 = mpmath.mpf(rho) ** 2
        df = mpmath.mpf(n - 2)
        # x = df / (df + t^2) with t^2 = r2 df / (1 - r2) simplifies to 1 - r2
        return float(mpmath.betainc(df / 2, 0.5, 0, 1 - r2, regularized=True))


def oracle_spearman_exact_p(x, y) -> float:
    """Exact two-sided permutation p-value (n <= 8)."""
    n = len(x)
    if n > 8:
        raise ValueError("exact permutation p-value limited to n <= 8")
    rx, ry = oracle_average_ranks(list(x)), oracle_average_ranks(list(y))
    observed = abs(oracle_pearson(rx, ry))
    hits = total = 0
    for perm in itertools.permutations(ry):
        total += 1
        if abs(oracle_pearson(rx, list(perm))) >= observed - 1e-12:
            hits += 1
    return hits / total


def oracle_entropy(counts) -> float:
    counts = [c for c in counts if c > 0]
    total = sum(counts)
    h = 0.0
    for c in counts:
        p = c / total
        h -= p * math.log(p)
    return h + 0.0


def oracle_aai(articles) -> float:
    """``articles``: iterable of ``(elite_authors, total_authors)`` pairs."""
    articles = list(articles)
    return sum(x / n for x, n in articles) / len(articles)


def oracle_aaiw(articles) -> float:
    """``articles``: iterable of ``(elite_author_weights, total_authors)`` pairs."""
    articles = list(articles)
    return sum(sum(w) / n for w, n in articles) / len(articles)


def oracle_stars(p: float) -> str:
    for level, stars in ((0.0001, "***"), (0.001, "**"), (0.05, "*")):
        if p < level:
            return stars
    return ""


def oracle_journal_scores(corpus: Corpus, truth: GroundTruth, m: int = 60, anchor_year: int = 2020) -> dict:
    """Per-journal ``{aai, aaiw, d, m_used}`` computed from generator labels."""
    out = {}
    by_journal: dict[str, list[ArticleRecord]] = {}
    for art in corpus:
        by_journal.setdefault(art.journal_name, []).append(art)
    for journal, arts in sorted(by_journal.items()):
        eligible = [
            a for a in arts
            if truth.admitted[a.record_id]
            and a.pub_year <= anchor_year
            and any(au.raw_affiliations for au in a.authors)
        ]
        eligible.sort(
            key=lambda a: (a.pub_year, a.volume if a.volume is not None else -1,
                           a.issue if a.issue is not None else -1, a.record_sequence),
            reverse=True,
        )
        sample = eligible[:m]
        if not sample:
            continue
        labels = [truth.author_labels[a.record_id] for a in sample]
        counts: dict[str, int] = {}
        for lab in labels:
            for inst in lab:
                if inst is not None:
                    counts[inst] = counts.get(inst, 0) + 1
        out[journal] = {
            "aai": oracle_aai((sum(i is not None for i in lab), len(lab)) for lab in labels),
            "aaiw": oracle_aaiw(([truth.weight(i) for i in lab if i is not None], len(lab)) for lab in labels),
            "d": oracle_entropy(counts.values()),
            "m_used": len(sample),
        }
    return out


def oracle_panel(table: dict) -> dict:
    """Means, sample std devs, rho, p and stars for every lower-triangle pair."""
    labels = list(table)
    n_rows = len(table[labels[0]])
    keep = [
        i for i in range(n_rows)
        if all(table[k][i] is not None and not math.isnan(table[k][i]) for k in labels)
    ]
    cols = {k: [float(table[k][i]) for i in keep] for k in labels}
    n = len(keep)
    pairs = {}
    for i, a in enumerate(labels):
        for b in labels[:i]:
            rho = oracle_spearman(cols[a], cols[b])
            p = oracle_t_pvalue(rho, n)
            pairs[(a, b)] = (rho, p, oracle_stars(p))
    return {
        "n": n,
        "means": [statistics.fmean(cols[k]) for k in labels],
        "std_devs": [statistics.stdev(cols[k]) for k in labels],
        "pairs": pairs,
    }


# --------------------------------------------------------------------------
# fixtures engineered to match published tables


def tallies_for_aai(target: float, m: int = 60, authors: int = 20):
    """``m`` articles of ``authors`` authors whose mean elite fraction is ``target``
    to within ``1 / (2 * m * authors)``."""
    from .indices import ArticleTally

    total = round(target * m * authors)
    base, extra = divmod(total, m)
    out = []
    for i in range(m):
        x = base + (1 if i < extra else 0)
        out.append(ArticleTally(x=x, y=authors - x, n=authors, elite_counts={"elite": x} if x else {},
                                weighted_x=float(x)))
    return out


def _spread(total: int, parts: int) -> list[int]:
    base, extra = divmod(total, parts)
    return [base + (1 if i < extra else 0) for i in range(parts)]


def _institution_corpus(rows, size, journal, count_key, tc_key=None, id_prefix="FIX"):
    """Single-institution articles reproducing published per-institution rows,
    padded with one-off filler institutions up to ``size`` articles."""
    articles = []
    seq = 0
    for row in rows:
        tp = int(row[count_key])
        years = _spread(round(float(row["avg_py"]) * tp), tp)
        cites = _spread(int(row[tc_key]), tp) if tc_key else [0] * tp
        for y, c in zip(years, cites):
            articles.append((row["institution"], y, c))
    filler = size - len(articles)
    if filler < 0:
        raise ValueError("published rows exceed corpus size")
    for k in range(filler):
        articles.append((f"Filler Inst {k + 1:03d}", 2018, 0))
    out = []
    for inst, year, cites in articles:
        out.append(
            ArticleRecord(
                record_id=f"{id_prefix}:{seq + 1:04d}",
                journal_name=journal,
                pub_year=year,
                doc_type=DocType("Article"),
                authors=(AuthorEntry("Author, A", (f"{inst}, Somewhere",)),),
                record_sequence=seq,
                times_cited=cites,
            )
        )
        seq += 1
    return Corpus(out)


def output_table_fixture() -> Corpus:
    """81 records whose whole-counting output table reproduces the published top 20."""
    from .reference import published_output_table

    return _institution_corpus(published_output_table(), 81, "Journal of Professional Capital and Community",
                               "tp", "tc")


def citing_table_fixture(size: int = 360) -> Corpus:
    """Citing-paper corpus reproducing the published citing-institution top 20.

    The printed shares (10 papers = 2.78%) imply 360 citing records.
    """
    from .reference import published_citing_table

    return _institution_corpus(published_citing_table(), size, "Citing", "cp", id_prefix="CIT")


def indicator_csv(corpus: Corpus, seed: int = 0) -> str:
    """Made-up ``journal,jif,es`` values, one row per journal."""
    rng = np.random.default_rng(np.random.PCG64(seed + 7919))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["journal", "jif", "es"])
    for name in corpus.journals:
        jif = float(rng.lognormal(0.4, 0.6))
        es = float(rng.lognormal(-6.5, 0.8))
        w.writerow([name, f"{jif:.3f}", f"{es:.5f}"])
    return buf.getvalue()
