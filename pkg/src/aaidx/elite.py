"""Elite-institution sets built from annual subject rankings, and affiliation matching."""

from __future__ import annotations

import csv
import enum
import io
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import DuplicateAlias, InputError, MissingYear, TierNotSubset
from .records import strip_diacritics

TIER1_WEIGHT = 1.2


class Tier(enum.Enum):
    TIER1 = 1
    TIER2 = 2


_NON_ALNUM = re.compile(r"[^0-9a-z]+")


def normalize_name(text: str) -> str:
    """Lowercase, drop diacritics and punctuation, collapse whitespace."""
    text = strip_diacritics(text).lower().replace("'", "")
    return " ".join(_NON_ALNUM.sub(" ", text).split())


@dataclass(frozen=True)
class AnnualRankingList:
    year: int
    entries: tuple[tuple[int, str, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(tuple(e) for e in self.entries))
        ranks = [r for r, _, _ in self.entries]
        if any(b < a for a, b in zip(ranks, ranks[1:])):
            raise ValueError(f"{self.year}: ranks must be non-decreasing in list order")
        if any(r < 1 for r in ranks):
            raise ValueError(f"{self.year}: ranks must be positive")

    def top(self, n: int) -> list[str]:
        """Names whose rank value is <= n (ties at the cutoff are all kept)."""
        return [name for rank, name, _ in self.entries if rank <= n]


def read_ranking_lists(stream) -> dict[int, AnnualRankingList]:
    """Read a ``year,rank,name,location`` CSV into per-year lists."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    rows: dict[int, list] = {}
    reader = csv.DictReader(stream)
    missing = {"year", "rank", "name", "location"} - set(reader.fieldnames or ())
    if missing:
        raise InputError(f"ranking list missing columns: {sorted(missing)}")
    for lineno, row in enumerate(reader, start=2):
        try:
            year, rank = int(row["year"]), int(row["rank"])
        except (TypeError, ValueError):
            raise InputError(f"ranking list line {lineno}: bad year/rank") from None
        rows.setdefault(year, []).append((rank, row["name"].strip(), (row["location"] or "").strip()))
    return {y: AnnualRankingList(y, sorted(e, key=lambda t: t[0])) for y, e in rows.items()}


def read_alias_table(stream) -> dict[str, list[str]]:
    """Read ``canonical|alias|alias`` lines; ``#`` starts a comment line."""
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    table: dict[str, list[str]] = {}
    for line in stream:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, *aliases = [p.strip() for p in line.split("|")]
        table.setdefault(name, []).extend(a for a in aliases if a)
    return table


def _require(lists: Mapping[int, AnnualRankingList], years):
    for y in years:
        if y not in lists:
            raise MissingYear(y)


def build_elite_set(lists: Mapping[int, AnnualRankingList], top_n: int = 50, final_year: int = 2020) -> set[str]:
    """Union of the final year's top ``top_n`` with names that made the top ``top_n``
    at least twice in the three preceding years."""
    prior = (final_year - 3, final_year - 2, final_year - 1)
    _require(lists, prior + (final_year,))
    counts = Counter(name for y in prior for name in set(lists[y].top(top_n)))
    set_b = {name for name, c in counts.items() if c >= 2}
    return set(lists[final_year].top(top_n)) | set_b


def build_tier1(lists: Mapping[int, AnnualRankingList], top_n: int = 10, final_year: int = 2020) -> set[str]:
    """Union of each year's top ``top_n`` over the four years ending at ``final_year``."""
    years = tuple(range(final_year - 3, final_year + 1))
    _require(lists, years)
    return {name for y in years for name in lists[y].top(top_n)}


@dataclass(frozen=True)
class EliteInstitution:
    canonical_name: str
    location: str
    tier: Tier
    weight: float
    aliases: frozenset[str]


@dataclass(frozen=True)
class EliteSet:
    institutions: tuple[EliteInstitution, ...]
    alias_index: Mapping[str, EliteInstitution] = field(repr=False)
    _match_cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    @property
    def h(self) -> int:
        return len(self.institutions)

    @property
    def tier1(self) -> list[EliteInstitution]:
        return [i for i in self.institutions if i.tier is Tier.TIER1]

    @property
    def tier2(self) -> list[EliteInstitution]:
        return [i for i in self.institutions if i.tier is Tier.TIER2]

    def __getitem__(self, canonical_name: str) -> EliteInstitution:
        for inst in self.institutions:
            if inst.canonical_name == canonical_name:
                return inst
        raise KeyError(canonical_name)

    def __contains__(self, canonical_name) -> bool:
        return any(i.canonical_name == canonical_name for i in self.institutions)

    def restrict(self, names: Iterable[str]) -> "EliteSet":
        """Sub-set with the same tiers, weights and aliases."""
        keep = set(names)
        insts = tuple(i for i in self.institutions if i.canonical_name in keep)
        return EliteSet(insts, {a: i for a, i in self.alias_index.items() if i.canonical_name in keep})

    def match(self, raw: str) -> EliteInstitution | None:
        """Memoized :func:`match_affiliation`; corpora repeat affiliation strings a lot."""
        try:
            return self._match_cache[raw]
        except KeyError:
            hit = self._match_cache[raw] = match_affiliation(raw, self)
            return hit

    def resolve_author(self, affiliations: Iterable[str]) -> EliteInstitution | None:
        """Single institution for an author: highest weight, then first canonical name."""
        hits = {m.canonical_name: m for m in map(self.match, affiliations) if m is not None}
        if not hits:
            return None
        return min(hits.values(), key=lambda i: (-i.weight, i.canonical_name))


def assemble(
    elite_names: Iterable[str],
    tier1_names: Iterable[str],
    alias_table: Mapping[str, Iterable[str]] | None = None,
    tier1_weight: float = TIER1_WEIGHT,
    locations: Mapping[str, str] | None = None,
) -> EliteSet:
    elite_names = sorted(set(elite_names))
    tier1_names = set(tier1_names)
    stray = tier1_names - set(elite_names)
    if stray:
        raise TierNotSubset(f"tier-1 names not in elite set: {sorted(stray)}")
    if tier1_weight <= 0:
        raise ValueError("tier1_weight must be positive")
    alias_table = alias_table or {}
    locations = locations or {}

    institutions = []
    alias_index: dict[str, EliteInstitution] = {}
    for name in elite_names:
        aliases = {normalize_name(name)} | {normalize_name(a) for a in alias_table.get(name, ())}
        aliases.discard("")
        tier = Tier.TIER1 if name in tier1_names else Tier.TIER2
        inst = EliteInstitution(
            canonical_name=name,
            location=locations.get(name, ""),
            tier=tier,
            weight=tier1_weight if tier is Tier.TIER1 else 1.0,
            aliases=frozenset(aliases),
        )
        for alias in aliases:
            other = alias_index.get(alias)
            if other is not None:
                raise DuplicateAlias(f"alias {alias!r} maps to both {other.canonical_name!r} and {name!r}")
            alias_index[alias] = inst
        institutions.append(inst)
    return EliteSet(tuple(institutions), alias_index)


def match_affiliation(raw: str, elite_set: EliteSet) -> EliteInstitution | None:
    """Resolve a raw affiliation string to an elite institution.

    The leading comma-delimited segment is tried as an exact alias first.
    Failing that, any alias occurring as a whole-token run anywhere in the
    string matches; the longest such alias wins, then canonical-name order.

    Substring matching accepts some false positives: ``"Univ Toronto Press
    Inc"`` resolves to University of Toronto when ``univ toronto`` is an alias.
    """
    lead = normalize_name(raw.split(",", 1)[0])
    hit = elite_set.alias_index.get(lead)
    if hit is not None:
        return hit
    padded = f" {normalize_name(raw)} "
    best = None
    for alias, inst in elite_set.alias_index.items():
        if f" {alias} " in padded:
            key = (-len(alias), inst.canonical_name)
            if best is None or key < best[0]:
                best = (key, inst)
    return None if best is None else best[1]


def load_elite_set(
    lists: Mapping[int, AnnualRankingList],
    alias_table: Mapping[str, Iterable[str]] | None = None,
    tier1_weight: float = TIER1_WEIGHT,
    top_n: int = 50,
    tier1_top_n: int = 10,
    final_year: int = 2020,
) -> EliteSet:
    """Build the full tiered elite set straight from ranking lists."""
    elite = build_elite_set(lists, top_n, final_year)
    tier1 = build_tier1(lists, tier1_top_n, final_year)
    locations = {}
    for y in sorted(lists):
        for _, name, loc in lists[y].entries:
            locations[name] = loc
    return assemble(elite, tier1, alias_table, tier1_weight, locations)
