"""Journal rankings by the Author Affiliation Index and its diversity-weighted variants."""

from .elite import (
    AnnualRankingList,
    EliteInstitution,
    EliteSet,
    Tier,
    assemble,
    build_elite_set,
    build_tier1,
    load_elite_set,
    match_affiliation,
)
from .indices import (
    ArticleTally,
    JournalScore,
    ScoreConfig,
    aai,
    aaid,
    aaiw,
    aaiwd,
    diversity,
    score_corpus,
    score_journal,
    tally_article,
)
from .records import (
    ArticleRecord,
    AuthorEntry,
    Corpus,
    DocKind,
    DocType,
    filter_doc_types,
    parse_canonical_jsonlines,
    parse_tagged_records,
)
from .sampling import SampleSet, convergence_series, sample_articles
from .stats import CorrelationPanel, build_panel, rank_descending, spearman, star_code

__version__ = "0.1.0"
