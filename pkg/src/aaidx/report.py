"""Deterministic text/CSV emitters for rankings, panels, series and tables.

Indices print with 3 decimals, ES with 5, using half-away-from-zero rounding
and a ``.`` decimal separator regardless of locale.
"""

from __future__ import annotations

import csv
import io
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable, Sequence

import numpy as np

from .indices import JournalScore
from .stats import CorrelationPanel, rank_descending

SORT_KEYS = ("AAI", "AAIW", "AAID", "AAIWD", "D", "JIF", "ES")
FORMATS = ("csv", "text", "markdown")
_DECIMALS = {"ES": 5}


def fixed(value: float | None, digits: int) -> str:
    """Format with ``digits`` decimals, rounding halves away from zero."""
    if value is None or (isinstance(value, float) and np.isnan(value)):
        return ""
    q = Decimal(repr(float(value))).quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_UP)
    if q == 0:
        q = abs(q)
    return f"{q:f}"


def _family_for(sort_key: str) -> str:
    return "AAIW" if sort_key in ("AAIW", "AAIWD") else "AAI"


def _global_ranks(values: Sequence[float | None]) -> list[int | None]:
    present = [i for i, v in enumerate(values) if v is not None]
    out: list[int | None] = [None] * len(values)
    if present:
        ranks = rank_descending([values[i] for i in present]).ranks
        for i, r in zip(present, ranks):
            out[i] = r
    return out


def ranking_rows(scores: Sequence[JournalScore], sort_key: str = "AAI", family: str | None = None):
    """Rows of ``(journal, [(value, rank), ...])`` sorted by ``sort_key``.

    Columns are index, D, index x D, JIF, ES for the chosen family. Ranks are
    competition ranks over all ``scores``.
    """
    sort_key = sort_key.upper()
    if sort_key not in SORT_KEYS:
        raise ValueError(f"sort_key must be one of {SORT_KEYS}")
    family = (family or _family_for(sort_key)).upper()
    product = "AAID" if family == "AAI" else "AAIWD"
    columns = [family, "D", product, "JIF", "ES"]
    values = {c: [s.value(c) for s in scores] for c in columns + [sort_key]}
    ranks = {c: _global_ranks(values[c]) for c in columns}
    order = sorted(
        range(len(scores)),
        key=lambda i: (values[sort_key][i] is None, -(values[sort_key][i] or 0.0), scores[i].journal_name),
    )
    rows = [
        (scores[i].journal_name, [(values[c][i], ranks[c][i]) for c in columns]) for i in order
    ]
    return columns, rows


def _write_table(header: list[str], body: list[list[str]], fmt: str, left: int = 1) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(body)
        return buf.getvalue()
    if fmt == "markdown":
        lines = ["| " + " | ".join(header) + " |"]
        lines.append("|" + "|".join([":---"] * left + ["---:"] * (len(header) - left)) + "|")
        lines += ["| " + " | ".join(r) + " |" for r in body]
        return "\n".join(lines) + "\n"
    if fmt == "text":
        widths = [max(len(str(x)) for x in col) for col in zip(header, *body)]

        def line(cells):
            parts = [
                c.ljust(w) if k < left else c.rjust(w) for k, (c, w) in enumerate(zip(cells, widths))
            ]
            return "  ".join(parts).rstrip()

        return "\n".join([line(header)] + [line(r) for r in body]) + "\n"
    raise ValueError(f"format must be one of {FORMATS}")


def emit_ranking_table(
    scores: Sequence[JournalScore],
    sort_key: str = "AAI",
    top_k: int | None = None,
    fmt: str = "csv",
    family: str | None = None,
) -> str:
    if not scores:
        raise ValueError("no scores to rank")
    columns, rows = ranking_rows(scores, sort_key, family)
    if top_k is not None:
        rows = rows[:top_k]
    if fmt == "csv":
        header = ["journal"] + [h for c in columns for h in (c.lower(), f"r_{c.lower()}")]
    else:
        header = ["Journal"] + [h for c in columns for h in (c, f"R_{c}")]
    body = []
    for name, cells in rows:
        out = [name]
        for c, (v, r) in zip(columns, cells):
            out += [fixed(v, _DECIMALS.get(c, 3)), "" if r is None else str(r)]
        body.append(out)
    return _write_table(header, body, fmt)


# --------------------------------------------------------------------------
# scores (full precision, used between CLI steps)

SCORE_COLUMNS = ["journal", "m_used", "aai", "aaiw", "d", "aaid", "aaiwd", "jif", "es"]


def emit_scores_csv(scores: Iterable[JournalScore]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SCORE_COLUMNS)
    for s in scores:
        w.writerow(
            [s.journal_name, s.m_used]
            + [repr(float(v)) for v in (s.aai, s.aaiw, s.d, s.aaid, s.aaiwd)]
            + ["" if v is None else repr(float(v)) for v in (s.jif, s.es)]
        )
    return buf.getvalue()


def read_scores_csv(stream) -> list[JournalScore]:
    if isinstance(stream, str):
        stream = io.StringIO(stream)
    out = []
    for row in csv.DictReader(stream):
        out.append(
            JournalScore(
                journal_name=row["journal"],
                aai=float(row["aai"]),
                aaiw=float(row["aaiw"]),
                d=float(row["d"]),
                m_used=int(row["m_used"]),
                jif=float(row["jif"]) if row["jif"] else None,
                es=float(row["es"]) if row["es"] else None,
            )
        )
    return out


# --------------------------------------------------------------------------


def emit_convergence_csv(series: Iterable[tuple[int, float]]) -> str:
    lines = ["m,aai"]
    lines += [f"{m},{fixed(v, 6)}" for m, v in series]
    return "\n".join(lines) + "\n"


def _panel_cells(panel: CorrelationPanel, i: int) -> list[str]:
    cells = []
    for j in range(i + 1):
        if i == j:
            cells.append("1")
        else:
            cells.append(fixed(panel.rho[i, j], 3) + panel.stars[i][j])
    return cells


def emit_panel(panel: CorrelationPanel, fmt: str = "text", title: str | None = None) -> str:
    """Order, indicator, mean, std. dev., then the lower triangle of rho with stars."""
    k = len(panel.labels)
    header = ["Order", "Indicators", "Mean", "Std.Dev"] + [str(j + 1) for j in range(k)]
    body = []
    for i, lab in enumerate(panel.labels):
        # pad the lower triangle to full width; text output strips trailing blanks
        cells = _panel_cells(panel, i) + [""] * (k - i - 1)
        body.append([str(i + 1), lab, fixed(panel.means[i], 3), fixed(panel.std_devs[i], 3)] + cells)
    text = _write_table(header, body, fmt, left=2)
    if title and fmt != "csv":
        gap = "\n" if fmt == "markdown" else ""
        text = f"{title} (n = {panel.n})\n{gap}{text}"
    return text


def emit_panels(panels: dict[str, CorrelationPanel], fmt: str = "text") -> str:
    if fmt == "csv":
        parts = []
        for name, panel in panels.items():
            body = emit_panel(panel, "csv").splitlines()
            if not parts:
                parts.append("panel,n," + body[0])
            parts += [f"{name},{panel.n},{line}" for line in body[1:]]
        return "\n".join(parts) + "\n"
    return "\n".join(emit_panel(p, fmt, title=name) for name, p in panels.items())


def emit_institution_table(rows, fmt: str = "csv") -> str:
    header = ["rank", "institution", "tp", "rho_pct", "tc", "tc_per_tp", "avg_py"]
    body = [
        [str(k), r.institution, str(r.tp), fixed(r.rho_pct, 2), str(r.tc), fixed(r.tc_per_tp, 2), fixed(r.avg_py, 1)]
        for k, r in enumerate(rows, start=1)
    ]
    return _write_table(header, body, fmt, left=2)


def emit_citing_table(rows, fmt: str = "csv") -> str:
    header = ["rank", "institution", "cp", "rho_pct", "avg_py"]
    body = [
        [str(k), r.institution, str(r.cp), fixed(r.rho_pct, 2), fixed(r.avg_py, 1)]
        for k, r in enumerate(rows, start=1)
    ]
    return _write_table(header, body, fmt, left=2)
