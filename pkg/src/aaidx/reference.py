"""Published reference values for the 263-journal SSCI education study.

The ranking tables (top 50 rows each), the institution output tables, and
the correlation panels are transcribed verbatim. The correlation panels need
the full 263-journal Web of Science corpus and cannot be recomputed from the
50 published rows; they are kept here as documented constants only.

The 2017-2019 subject ranking lists are not published. The bundled
``qs_education_2017_2020.csv`` keeps the published 2020 ranks of all 58 elite
institutions and fills the earlier years with lists constructed to be
consistent with the published outcome (58 elite institutions, 13 tier-1).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources

from . import elite

FULL_STUDY_JOURNALS = 263

# (mean, std dev) per indicator and lower-triangle rho with stars
PANELS = {
    "A": {
        "labels": ("JIF", "ES", "AAI", "D", "AAID"),
        "means": (1.779, 0.002, 0.170, 2.086, 0.387),
        "std_devs": (1.111, 0.002, 0.090, 0.572, 0.245),
        "rho": {
            ("ES", "JIF"): (0.646, "***"),
            ("AAI", "JIF"): (0.210, "**"),
            ("AAI", "ES"): (0.343, "***"),
            ("D", "JIF"): (0.316, "***"),
            ("D", "ES"): (0.429, "***"),
            ("D", "AAI"): (0.696, "***"),
            ("AAID", "JIF"): (0.269, "**"),
            ("AAID", "ES"): (0.398, "***"),
            ("AAID", "AAI"): (0.969, "***"),
            ("AAID", "D"): (0.826, "***"),
        },
    },
    "B": {
        "labels": ("JIF", "ES", "AAI", "D", "AAID"),
        "means": (1.779, 0.002, 0.058, 0.992, 0.070),
        "std_devs": (1.111, 0.002, 0.045, 0.507, 0.071),
        "rho": {
            ("ES", "JIF"): (0.632, "***"),
            ("AAI", "JIF"): (0.094, ""),
            ("AAI", "ES"): (0.258, "***"),
            ("D", "JIF"): (0.135, "*"),
            ("D", "ES"): (0.254, "***"),
            ("D", "AAI"): (0.662, "***"),
            ("AAID", "JIF"): (0.101, ""),
            ("AAID", "ES"): (0.278, "***"),
            ("AAID", "AAI"): (0.934, "***"),
            ("AAID", "D"): (0.860, "***"),
        },
    },
    "C": {
        "labels": ("JIF", "ES", "AAIW", "D", "AAIWD"),
        "means": (1.779, 0.002, 0.181, 2.086, 0.412),
        "std_devs": (1.111, 0.002, 0.097, 0.572, 0.263),
        "rho": {
            ("ES", "JIF"): (0.646, "***"),
            ("AAIW", "JIF"): (0.205, "**"),
            ("AAIW", "ES"): (0.343, "***"),
            ("D", "JIF"): (0.316, "***"),
            ("D", "ES"): (0.429, "***"),
            ("D", "AAIW"): (0.698, "***"),
            ("AAIWD", "JIF"): (0.263, "***"),
            ("AAIWD", "ES"): (0.396, "***"),
            ("AAIWD", "AAIW"): (0.972, "***"),
            ("AAIWD", "D"): (0.824, "***"),
        },
    },
}

TABLES = {
    # elite set of 58, unweighted
    "top58": "table_top58.csv",
    # tier-1 institutions only
    "top13": "table_top13.csv",
    # 58 institutions, tier-1 weighted 1.2
    "weighted": "table_weighted.csv",
}


@dataclass(frozen=True)
class PublishedRow:
    """One printed ranking-table row; numeric cells kept as printed strings."""

    journal: str
    index: str
    index_rank: int
    d: str
    d_rank: int
    product: str
    product_rank: int
    jif: str
    jif_rank: int
    es: str
    es_rank: int

    def num(self, column: str) -> float:
        return float(getattr(self, column))


def _open(name: str):
    return resources.files("aaidx.data").joinpath(name).open(encoding="utf-8")


def data_path(name: str):
    return resources.files("aaidx.data").joinpath(name)


def published_table(name: str) -> list[PublishedRow]:
    with _open(TABLES[name]) as fh:
        rows = []
        for r in csv.DictReader(fh):
            for k in ("index_rank", "d_rank", "product_rank", "jif_rank", "es_rank"):
                r[k] = int(r[k])
            rows.append(PublishedRow(**r))
    return rows


def published_output_table() -> list[dict]:
    """Top-20 institutions by output among the 81 JPCC publications."""
    with _open("institutions_output.csv") as fh:
        return list(csv.DictReader(fh))


def published_citing_table() -> list[dict]:
    """Top-20 institutions among the papers citing JPCC."""
    with _open("institutions_citing.csv") as fh:
        return list(csv.DictReader(fh))


def education_ranking_lists() -> dict[int, elite.AnnualRankingList]:
    with _open("qs_education_2017_2020.csv") as fh:
        return elite.read_ranking_lists(fh)


def education_aliases() -> dict[str, list[str]]:
    with _open("elite_aliases.txt") as fh:
        return elite.read_alias_table(fh)


def education_elite_set(tier1_weight: float = elite.TIER1_WEIGHT) -> elite.EliteSet:
    """The 58-institution education elite set with WoS-style aliases."""
    return elite.load_elite_set(education_ranking_lists(), education_aliases(), tier1_weight)
