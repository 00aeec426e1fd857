"""Command-line entry point: ``aaidx <subcommand> [options]``.

Exit status is 1 for invalid arguments or inputs that violate a
precondition, 2 when an input file cannot be parsed. Failures print one JSON
line to stderr: ``{"error": <kind>, "detail": <message>}``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from . import elite as elite_mod
from . import networks, reference, report, stats, testkit
from .errors import AaidxError, InputError, ValidationError
from .indices import ScoreConfig, read_indicators, score_corpus
from .records import Corpus, dump_canonical_jsonlines, filter_doc_types, read_corpora
from .sampling import convergence_series, sample_articles

log = logging.getLogger("aaidx")


class CliValidationError(ValidationError):
    pass


@dataclass(frozen=True)
class RunConfig:
    corpus_paths: tuple[str, ...] = ()
    elite_lists_path: str | None = None
    alias_path: str | None = None
    indicators_path: str | None = None
    m: int = 60
    anchor_year: int = 2020
    tier1_weight: float = 1.2
    output_dir: str = "."

    def __post_init__(self):
        if self.m < 1:
            raise CliValidationError("--m must be >= 1")
        if self.tier1_weight < 1:
            raise CliValidationError("--tier1-weight must be >= 1")

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        return cls(
            corpus_paths=tuple(getattr(args, "corpus", None) or ()),
            elite_lists_path=getattr(args, "elite_lists", None),
            alias_path=getattr(args, "aliases", None),
            indicators_path=getattr(args, "indicators", None),
            m=getattr(args, "m", 60),
            anchor_year=getattr(args, "anchor_year", 2020),
            tier1_weight=getattr(args, "tier1_weight", 1.2),
            output_dir=getattr(args, "out", "."),
        )


# --------------------------------------------------------------------------
# helpers


def _load_corpus(cfg: RunConfig, strict: bool = False) -> Corpus:
    if not cfg.corpus_paths:
        raise CliValidationError("--corpus is required")
    corpus = read_corpora(cfg.corpus_paths, strict=strict)
    if len(corpus) == 0:
        raise InputError("corpus contains no parseable records")
    return corpus


def _load_elite(cfg: RunConfig):
    """Elite set from ``--elite-lists``/``--aliases``, else the bundled education lists."""
    if cfg.elite_lists_path:
        with open(cfg.elite_lists_path, encoding="utf-8") as fh:
            lists = elite_mod.read_ranking_lists(fh)
        aliases = {}
    else:
        lists = reference.education_ranking_lists()
        aliases = reference.education_aliases()
    if cfg.alias_path:
        with open(cfg.alias_path, encoding="utf-8") as fh:
            aliases = elite_mod.read_alias_table(fh)
    return elite_mod.load_elite_set(lists, aliases, cfg.tier1_weight)


def _load_indicators(cfg: RunConfig):
    if not cfg.indicators_path:
        return None
    with open(cfg.indicators_path, encoding="utf-8") as fh:
        return read_indicators(fh)


def _write(out_dir: str, name: str, text: str) -> Path:
    path = Path(out_dir) / name
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
    log.info("wrote %s", path)
    return path


def _slug(name: str) -> str:
    return re.sub(r"[^a-z0-9]+", "_", name.lower()).strip("_")


def _scores(cfg: RunConfig, elite_set, strict=False):
    corpus = filter_doc_types(_load_corpus(cfg, strict))
    scores = score_corpus(corpus, elite_set, ScoreConfig(cfg.m, cfg.anchor_year), _load_indicators(cfg))
    if not scores:
        raise InputError("no journal has eligible sample articles")
    return scores


# --------------------------------------------------------------------------
# subcommands


def cmd_ingest(args) -> int:
    cfg = RunConfig.from_args(args)
    corpus = _load_corpus(cfg, args.strict)
    _write(cfg.output_dir, "corpus.jsonl", dump_canonical_jsonlines(corpus))
    print(f"{len(corpus)} records, {len(corpus.journal_index)} journals, {len(corpus.problems)} skipped")
    return 0


def cmd_elite(args) -> int:
    cfg = RunConfig.from_args(args)
    es = _load_elite(cfg)
    print(f"{es.h} institutions ({len(es.tier1)} tier-1, {len(es.tier2)} tier-2)")
    if args.out:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "location", "tier", "weight"])
        for inst in sorted(es.institutions, key=lambda i: (i.tier.value, i.canonical_name)):
            w.writerow([inst.canonical_name, inst.location, inst.tier.value, repr(inst.weight)])
        _write(cfg.output_dir, "elite.csv", buf.getvalue())
    return 0


def cmd_score(args) -> int:
    cfg = RunConfig.from_args(args)
    es = _load_elite(cfg)
    if args.scope == "tier1":
        es = es.restrict(i.canonical_name for i in es.tier1)
    scores = _scores(cfg, es, args.strict)
    _write(cfg.output_dir, "scores.csv", report.emit_scores_csv(scores))
    print(f"scored {len(scores)} journals")
    return 0


_EXT = {"csv": "csv", "text": "txt", "markdown": "md"}


def cmd_rank(args) -> int:
    cfg = RunConfig.from_args(args)
    path = args.scores or str(Path(cfg.output_dir) / "scores.csv")
    if not Path(path).is_file():
        raise FileNotFoundError(f"scores file not found: {path} (run `aaidx score` first)")
    with open(path, encoding="utf-8") as fh:
        try:
            scores = report.read_scores_csv(fh)
        except (KeyError, ValueError) as exc:
            raise InputError(f"bad scores file: {exc}") from None
    if not scores:
        raise InputError("scores file is empty")
    text = report.emit_ranking_table(scores, args.sort_key, args.top_k, args.format)
    _write(cfg.output_dir, f"rankings.{_EXT[args.format]}", text)
    if args.format != "csv":
        sys.stdout.write(text)
    return 0


def cmd_compare(args) -> int:
    cfg = RunConfig.from_args(args)
    full = _load_elite(cfg)
    top = full.restrict(i.canonical_name for i in full.tier1)
    scores_full = _scores(cfg, full, args.strict)
    scores_top = _scores(cfg, top, args.strict)
    panels = {
        "Panel A": stats.panel_from_scores(scores_full, "AAI"),
        "Panel B": stats.panel_from_scores(scores_top, "AAI"),
        "Panel C": stats.panel_from_scores(scores_full, "AAIW"),
    }
    text = report.emit_panels(panels, "text")
    _write(cfg.output_dir, "panel.txt", text)
    _write(cfg.output_dir, "panel.csv", report.emit_panels(panels, "csv"))
    sys.stdout.write(text)
    return 0


def cmd_converge(args) -> int:
    cfg = RunConfig.from_args(args)
    es = _load_elite(cfg)
    corpus = filter_doc_types(_load_corpus(cfg))
    journals = args.journal or corpus.journals
    for name in journals:
        sample = sample_articles(corpus, name, cfg.m, cfg.anchor_year)
        m_max = min(args.m_max or sample.m_used, sample.m_used)
        text = report.emit_convergence_csv(convergence_series(sample, es, m_max))
        fname = "convergence.csv" if len(journals) == 1 else f"convergence_{_slug(name)}.csv"
        _write(cfg.output_dir, fname, text)
    return 0


def cmd_network(args) -> int:
    cfg = RunConfig.from_args(args)
    corpus = filter_doc_types(_load_corpus(cfg))
    arts = list(corpus) if not args.journal else corpus.journal_articles(args.journal)
    if args.journal and not arts:
        raise CliValidationError(f"journal not in corpus: {args.journal}")
    kw = networks.keyword_cooccurrence(arts, args.min_cooccurrence)
    nodes, edges = kw.to_csv()
    _write(cfg.output_dir, "keywords_nodes.csv", nodes)
    _write(cfg.output_dir, "keywords_edges.csv", edges)
    collab = networks.collaboration_network(arts)
    nodes, edges = collab.to_csv()
    _write(cfg.output_dir, "collab_nodes.csv", nodes)
    _write(cfg.output_dir, "collab_edges.csv", edges)
    rows = networks.institution_output_table(arts, args.top_k)
    _write(cfg.output_dir, "institutions.csv", report.emit_institution_table(rows))
    if args.citing:
        citing = read_corpora(args.citing)
        crow = networks.citing_institution_table(citing, args.top_k)
        _write(cfg.output_dir, "citing_institutions.csv", report.emit_citing_table(crow))
    print(f"{kw.candidates} keywords, {len(kw.nodes)} displayed at threshold {args.min_cooccurrence}")
    return 0


def cmd_gen(args) -> int:
    try:
        spec = testkit.GenSpec(
            seed=args.seed,
            journals=args.journals,
            articles_per_journal=args.articles_per_journal,
            elite_fraction_per_journal=tuple(args.elite_fraction),
            institution_concentration=args.concentration,
        )
        corpus, truth, universe = testkit.gen_corpus(spec)
        lists = testkit.universe_ranking_lists(universe)
    except AaidxError as exc:
        raise CliValidationError(str(exc)) from None
    out = args.out
    _write(out, "corpus.jsonl", dump_canonical_jsonlines(corpus))
    _write(out, "truth.json", truth.to_json())
    _write(out, "ranking_lists.csv", testkit.ranking_lists_csv(lists))
    _write(out, "aliases.txt", universe.alias_table_text())
    _write(out, "indicators.csv", testkit.indicator_csv(corpus, args.seed))
    print(f"generated {len(corpus)} records in {spec.journals} journals")
    return 0


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="aaidx", description="Diversity-based Author Affiliation Index rankings.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, corpus=True, elite=True, sample=True):
        if corpus:
            sp.add_argument("--corpus", action="append", help="tagged (.txt) or canonical (.jsonl) file; repeatable")
            sp.add_argument("--strict", action="store_true", help="abort on the first malformed record")
        if elite:
            sp.add_argument("--elite-lists", help="CSV with year,rank,name,location (default: bundled education lists)")
            sp.add_argument("--aliases", help="alias table: canonical|alias|alias")
            sp.add_argument("--tier1-weight", type=float, default=1.2)
        if sample:
            sp.add_argument("--m", type=int, default=60, help="sample articles per journal")
            sp.add_argument("--anchor-year", type=int, default=2020)
        sp.add_argument("--out", default=".", help="output directory")

    sp = sub.add_parser("ingest", help="parse corpus files into canonical JSON lines")
    common(sp, elite=False, sample=False)
    sp.set_defaults(func=cmd_ingest)

    sp = sub.add_parser("elite", help="build the tiered elite set and report its size")
    common(sp, corpus=False, sample=False)
    sp.set_defaults(func=cmd_elite, out=None)

    sp = sub.add_parser("score", help="per-journal AAI, AAIW, D, AAID, AAIWD")
    common(sp)
    sp.add_argument("--indicators", help="CSV with journal,jif,es")
    sp.add_argument("--scope", choices=("full", "tier1"), default="full", help="elite set used")
    sp.set_defaults(func=cmd_score)

    sp = sub.add_parser("rank", help="ranking table from scores.csv")
    sp.add_argument("--scores", help="scores CSV (default: <out>/scores.csv)")
    sp.add_argument("--sort-key", default="AAI", type=str.upper, choices=report.SORT_KEYS)
    sp.add_argument("--top-k", type=int)
    sp.add_argument("--format", default="csv", choices=report.FORMATS)
    sp.add_argument("--out", default=".")
    sp.set_defaults(func=cmd_rank)

    sp = sub.add_parser("compare", help="Spearman panels A (AAI), B (tier-1 only), C (AAIW)")
    common(sp)
    sp.add_argument("--indicators", help="CSV with journal,jif,es")
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("converge", help="AAI as a function of sample size")
    common(sp)
    sp.add_argument("--journal", action="append", help="journal name; repeatable (default: all)")
    sp.add_argument("--m-max", type=int)
    sp.set_defaults(func=cmd_converge)

    sp = sub.add_parser("network", help="keyword/collaboration networks and institution tables")
    common(sp, elite=False, sample=False)
    sp.add_argument("--journal")
    sp.add_argument("--citing", action="append", help="corpus of citing papers; repeatable")
    sp.add_argument("--min-cooccurrence", type=int, default=2)
    sp.add_argument("--top-k", type=int, default=20)
    sp.set_defaults(func=cmd_network)

    sp = sub.add_parser("gen", help="synthetic corpus with ground truth")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--journals", type=int, default=20)
    sp.add_argument("--articles-per-journal", type=int, default=80)
    sp.add_argument("--elite-fraction", type=float, nargs="+", default=[0.1, 0.2, 0.3, 0.4])
    sp.add_argument("--concentration", type=float, default=1.0)
    sp.add_argument("--out", default=".")
    sp.set_defaults(func=cmd_gen)
    return p


def _error(kind: str, detail: str):
    print(json.dumps({"error": kind, "detail": detail}), file=sys.stderr)


def main(argv=None) -> int:
    logging.basicConfig(
        level=os.environ.get("AAIDX_LOG", "WARNING").upper(),
        format="%(levelname)s %(name)s: %(message)s",
    )
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return args.func(args)
    except InputError as exc:
        _error(type(exc).__name__, str(exc))
        return 2
    except (ValidationError, ValueError) as exc:
        _error(type(exc).__name__, str(exc))
        return 1
    except OSError as exc:
        _error(type(exc).__name__, str(exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())
