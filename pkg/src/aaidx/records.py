"""Bibliographic records: the in-memory corpus plus its two file formats.

Two on-disk formats are supported:

* the field-tagged flat file exported by Web of Science (``PT``/``AU``/``C1``
  ... lines, ``ER`` after each record, ``EF`` at the end), and
* a canonical JSON-lines format, one article per line, which is lossless for
  everything this package uses.
"""

from __future__ import annotations

import enum
import io
import json
import logging
import re
import unicodedata
from dataclasses import dataclass, replace
from typing import Iterable, Iterator

from .errors import MalformedRecord, SchemaError

log = logging.getLogger(__name__)


class DocKind(enum.Enum):
    ARTICLE = "Article"
    PROCEEDINGS_PAPER = "Proceedings Paper"
    REVIEW = "Review"
    BOOK_CHAPTER = "Book Chapter"
    OTHER = "Other"


#: Document kinds admitted to sampling.
SAMPLED_KINDS = frozenset(
    {DocKind.ARTICLE, DocKind.PROCEEDINGS_PAPER, DocKind.REVIEW, DocKind.BOOK_CHAPTER}
)

_KIND_BY_LABEL = {k.value.lower(): k for k in DocKind if k is not DocKind.OTHER}


@dataclass(frozen=True)
class DocType:
    """Document type as written in the source, e.g. ``"Article; Proceedings Paper"``.

    Compound labels are split on ``;``; each component maps to a :class:`DocKind`
    (unrecognised components become ``OTHER``).
    """

    label: str

    @property
    def kinds(self) -> frozenset[DocKind]:
        parts = [p.strip().lower() for p in self.label.split(";") if p.strip()]
        if not parts:
            return frozenset({DocKind.OTHER})
        return frozenset(_KIND_BY_LABEL.get(p, DocKind.OTHER) for p in parts)

    def admitted(self, allowed: Iterable[DocKind]) -> bool:
        return bool(self.kinds & frozenset(allowed))


@dataclass(frozen=True)
class AuthorEntry:
    display_name: str
    raw_affiliations: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.display_name.strip():
            raise ValueError("author display_name must be non-empty")
        object.__setattr__(self, "raw_affiliations", tuple(self.raw_affiliations))


@dataclass(frozen=True)
class ArticleRecord:
    record_id: str
    journal_name: str
    pub_year: int
    doc_type: DocType
    authors: tuple[AuthorEntry, ...]
    volume: int | None = None
    issue: int | None = None
    record_sequence: int = 0
    author_keywords: tuple[str, ...] = ()
    times_cited: int = 0
    title: str = ""

    def __post_init__(self):
        object.__setattr__(self, "authors", tuple(self.authors))
        object.__setattr__(self, "author_keywords", tuple(self.author_keywords))
        if self.times_cited < 0:
            raise ValueError("times_cited must be non-negative")

    @property
    def order_key(self) -> tuple[int, int, int, int]:
        # absent volume/issue sort below any present value
        return (
            self.pub_year,
            -1 if self.volume is None else self.volume,
            -1 if self.issue is None else self.issue,
            self.record_sequence,
        )

    @property
    def n_authors(self) -> int:
        return len(self.authors)


class Corpus:
    """Immutable collection of articles indexed by journal.

    Iteration order is the stored article order; ``journal_index`` maps each
    journal name to its record ids in that order.
    """

    def __init__(self, articles: Iterable[ArticleRecord] = (), problems=()):
        self._articles = tuple(articles)
        self._by_id: dict[str, ArticleRecord] = {}
        index: dict[str, list[str]] = {}
        for art in self._articles:
            if art.record_id in self._by_id:
                raise ValueError(f"duplicate record_id {art.record_id!r}")
            self._by_id[art.record_id] = art
            index.setdefault(art.journal_name, []).append(art.record_id)
        self._index = {k: tuple(v) for k, v in index.items()}
        self.problems = tuple(problems)

    @property
    def articles(self) -> tuple[ArticleRecord, ...]:
        return self._articles

    @property
    def journal_index(self) -> dict[str, tuple[str, ...]]:
        return dict(self._index)

    @property
    def journals(self) -> list[str]:
        return sorted(self._index)

    def journal_articles(self, journal_name: str) -> list[ArticleRecord]:
        return [self._by_id[i] for i in self._index.get(journal_name, ())]

    def get(self, record_id: str) -> ArticleRecord:
        return self._by_id[record_id]

    def __len__(self):
        return len(self._articles)

    def __iter__(self) -> Iterator[ArticleRecord]:
        return iter(self._articles)

    def __eq__(self, other):
        if not isinstance(other, Corpus):
            return NotImplemented
        return self._articles == other._articles

    def __repr__(self):
        return f"Corpus({len(self)} articles, {len(self._index)} journals)"

    @classmethod
    def merge(cls, corpora: Iterable["Corpus"]) -> "Corpus":
        """Concatenate corpora, renumbering ``record_sequence`` by position."""
        arts = [a for c in corpora for a in c]
        return cls(_resequence(arts))


def _resequence(articles):
    return [replace(a, record_sequence=i) for i, a in enumerate(articles)]


def filter_doc_types(corpus: Corpus, allowed: Iterable[DocKind] = SAMPLED_KINDS) -> Corpus:
    """Keep articles with at least one doc-type component in ``allowed``."""
    allowed = frozenset(allowed)
    return Corpus([a for a in corpus if a.doc_type.admitted(allowed)], corpus.problems)


# --------------------------------------------------------------------------
# name keys used to attach C1 affiliations to AU authors

_PUNCT = re.compile(r"[^\w\s]", re.UNICODE)


def strip_diacritics(text: str) -> str:
    decomposed = unicodedata.normalize("NFKD", text)
    return "".join(c for c in decomposed if not unicodedata.combining(c))


def author_key(name: str) -> str:
    """``"Smith, John A."`` -> ``"smith j"``: surname plus first initial."""
    name = strip_diacritics(name).lower()
    if "," in name:
        surname, _, given = name.partition(",")
    else:
        surname, given = name, ""
    surname = " ".join(_PUNCT.sub(" ", surname).split())
    given = _PUNCT.sub(" ", given).split()
    initial = given[0][0] if given else ""
    return f"{surname} {initial}".strip()


# --------------------------------------------------------------------------
# field-tagged flat files

_C1_BRACKET = re.compile(r"^\[(?P<names>[^\]]*)\]\s*(?P<inst>.*)$")
_HEADER_TAGS = {"FN", "VR"}


def _int_or_none(text: str | None) -> int | None:
    if text is None:
        return None
    m = re.match(r"\s*(\d+)", text)
    return int(m.group(1)) if m else None


def _iter_blocks(lines: Iterable[str]) -> Iterator[dict[str, list[str]]]:
    fields: dict[str, list[str]] = {}
    tag = None
    for raw in lines:
        line = raw.rstrip("\r\n")
        if line.startswith("﻿"):
            line = line[1:]
        if not line.strip():
            continue
        if line.startswith("   ") and tag is not None:
            fields[tag].append(line.strip())
            continue
        head = line[:2]
        if head == "ER":
            if fields:
                yield fields
            fields, tag = {}, None
            continue
        if head == "EF":
            break
        if head in _HEADER_TAGS:
            tag = None
            continue
        tag = head
        fields.setdefault(tag, []).append(line[3:].strip())
    if fields:
        # unterminated trailing block
        yield fields


def _block_to_record(fields: dict[str, list[str]], ordinal: int) -> ArticleRecord:
    journal = " ".join(fields.get("SO", [])).strip()
    if not journal:
        raise MalformedRecord(ordinal, "missing SO")
    year = _int_or_none(" ".join(fields.get("PY", [])) or None)
    if year is None:
        raise MalformedRecord(ordinal, "missing PY")

    names = [n for n in fields.get("AU", []) if n]
    affs: list[list[str]] = [[] for _ in names]
    keys = [author_key(n) for n in names]
    for entry in fields.get("C1", []):
        m = _C1_BRACKET.match(entry)
        if m is None:
            for lst in affs:
                if entry not in lst:
                    lst.append(entry)
            continue
        inst = m.group("inst").strip()
        for bracket_name in m.group("names").split(";"):
            if not bracket_name.strip():
                continue
            k = author_key(bracket_name)
            hits = [i for i, ak in enumerate(keys) if ak == k]
            if not hits:
                log.warning("record %d: C1 name %r matches no author", ordinal, bracket_name.strip())
            for i in hits:
                if inst not in affs[i]:
                    affs[i].append(inst)

    kw_text = " ".join(fields.get("DE", []))
    keywords = tuple(k.strip() for k in kw_text.split(";") if k.strip())
    tc = _int_or_none(" ".join(fields.get("TC", [])) or None) or 0
    ut = " ".join(fields.get("UT", [])).strip()
    return ArticleRecord(
        record_id=ut or f"rec{ordinal:06d}",
        journal_name=journal,
        pub_year=year,
        doc_type=DocType(" ".join(fields.get("DT", [])).strip() or "Other"),
        authors=tuple(AuthorEntry(n, tuple(a)) for n, a in zip(names, affs)),
        volume=_int_or_none(" ".join(fields.get("VL", [])) or None),
        issue=_int_or_none(" ".join(fields.get("IS", [])) or None),
        record_sequence=ordinal,
        author_keywords=keywords,
        times_cited=tc,
        title=" ".join(fields.get("TI", [])).strip(),
    )


def _as_text_lines(stream) -> Iterable[str]:
    if isinstance(stream, (bytes, bytearray)):
        return io.StringIO(bytes(stream).decode("utf-8-sig"))
    if isinstance(stream, str):
        return io.StringIO(stream)
    if isinstance(stream.read(0), bytes):
        return io.TextIOWrapper(stream, encoding="utf-8-sig")
    return stream


def parse_tagged_records(stream, strict: bool = False) -> Corpus:
    """Parse a field-tagged export into a :class:`Corpus`.

    ``stream`` may be a text or binary file object, or the file contents as
    ``str``/``bytes``. Blocks lacking ``SO`` or ``PY`` raise
    :class:`MalformedRecord` when ``strict``; otherwise they are logged,
    skipped and kept in ``Corpus.problems``.
    """
    articles, problems, seen = [], [], set()
    for ordinal, fields in enumerate(_iter_blocks(_as_text_lines(stream))):
        try:
            rec = _block_to_record(fields, ordinal)
            if rec.record_id in seen:
                raise MalformedRecord(ordinal, f"duplicate UT {rec.record_id}")
        except MalformedRecord as exc:
            if strict:
                raise
            log.warning("skipping %s", exc)
            problems.append(exc)
            continue
        seen.add(rec.record_id)
        articles.append(rec)
    return Corpus(articles, problems)


def dump_tagged_records(corpus: Iterable[ArticleRecord]) -> str:
    """Serialize articles to the field-tagged format read by :func:`parse_tagged_records`."""
    out = ["FN Clarivate Analytics Web of Science", "VR 1.0"]

    def put(tag, values):
        values = list(values)
        if not values:
            return
        out.append(f"{tag} {values[0]}")
        out.extend(f"   {v}" for v in values[1:])

    for art in corpus:
        put("PT", ["J"])
        put("AU", [a.display_name for a in art.authors])
        if art.title:
            put("TI", [art.title])
        put("SO", [art.journal_name])
        put("DT", [art.doc_type.label])
        if art.author_keywords:
            put("DE", ["; ".join(art.author_keywords)])
        groups: dict[str, list[str]] = {}
        for a in art.authors:
            for aff in a.raw_affiliations:
                groups.setdefault(aff, []).append(a.display_name)
        put("C1", [f"[{'; '.join(ns)}] {aff}" for aff, ns in groups.items()])
        put("TC", [str(art.times_cited)])
        put("PY", [str(art.pub_year)])
        if art.volume is not None:
            put("VL", [str(art.volume)])
        if art.issue is not None:
            put("IS", [str(art.issue)])
        put("UT", [art.record_id])
        out.append("ER")
        out.append("")
    out.append("EF")
    return "\n".join(out) + "\n"


# --------------------------------------------------------------------------
# canonical JSON lines

_REQUIRED = ("journal", "year", "volume", "issue", "doc_type", "authors", "keywords", "times_cited")


def record_to_dict(art: ArticleRecord) -> dict:
    return {
        "id": art.record_id,
        "journal": art.journal_name,
        "year": art.pub_year,
        "volume": art.volume,
        "issue": art.issue,
        "doc_type": art.doc_type.label,
        "title": art.title,
        "authors": [
            {"name": a.display_name, "affiliations": list(a.raw_affiliations)} for a in art.authors
        ],
        "keywords": list(art.author_keywords),
        "times_cited": art.times_cited,
    }


def _record_from_dict(obj: dict, lineno: int, seq: int) -> ArticleRecord:
    for key in _REQUIRED:
        if key not in obj:
            raise SchemaError(lineno, key)
    try:
        authors = tuple(
            AuthorEntry(str(a["name"]), tuple(str(s) for s in a.get("affiliations", ())))
            for a in obj["authors"]
        )
    except (KeyError, TypeError, ValueError):
        raise SchemaError(lineno, "authors") from None
    if not isinstance(obj["year"], int):
        raise SchemaError(lineno, "year")
    return ArticleRecord(
        record_id=str(obj.get("id") or f"rec{seq:06d}"),
        journal_name=str(obj["journal"]),
        pub_year=obj["year"],
        doc_type=DocType(str(obj["doc_type"])),
        authors=authors,
        volume=obj["volume"],
        issue=obj["issue"],
        record_sequence=seq,
        author_keywords=tuple(str(k) for k in obj["keywords"]),
        times_cited=int(obj["times_cited"] or 0),
        title=str(obj.get("title") or ""),
    )


def parse_canonical_jsonlines(stream) -> Corpus:
    articles = []
    seq = 0
    for lineno, line in enumerate(_as_text_lines(stream), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError:
            raise SchemaError(lineno, "<json>") from None
        if not isinstance(obj, dict):
            raise SchemaError(lineno, "<object>")
        articles.append(_record_from_dict(obj, lineno, seq))
        seq += 1
    return Corpus(articles)


def dump_canonical_jsonlines(corpus: Iterable[ArticleRecord]) -> str:
    return "".join(
        json.dumps(record_to_dict(a), ensure_ascii=False, sort_keys=True) + "\n" for a in corpus
    )


def read_corpora(paths: Iterable, strict: bool = False) -> Corpus:
    parts = []
    for p in paths:
        p = str(p)
        with open(p, encoding="utf-8-sig") as fh:
            if p.endswith((".jsonl", ".json", ".ndjson")):
                parts.append(parse_canonical_jsonlines(fh))
            else:
                parts.append(parse_tagged_records(fh, strict=strict))
    if len(parts) == 1:
        return parts[0]
    return Corpus.merge(parts)
