"""Rankings, Spearman correlation and correlation panels."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from scipy import stats as sps

from .errors import DegenerateInput, InsufficientData, LengthMismatch


@dataclass(frozen=True)
class RankVector:
    values: tuple[float, ...]
    ranks: tuple[int, ...]


def rank_descending(values: Sequence[float]) -> RankVector:
    """Competition ("1224") ranks, largest value first."""
    v = np.asarray(values, dtype=float)
    if v.size == 0:
        raise ValueError("cannot rank an empty list")
    ranks = sps.rankdata(-v, method="min").astype(int)
    return RankVector(tuple(float(x) for x in v), tuple(int(r) for r in ranks))


def average_ranks(values: Sequence[float]) -> np.ndarray:
    """Ascending ranks with tied values sharing the mean of their positions."""
    return sps.rankdata(np.asarray(values, dtype=float), method="average")


def spearman(x: Sequence[float], y: Sequence[float]) -> tuple[float, float]:
    """Spearman's rho with a two-sided p-value from the t approximation.

    Ties get average ranks. A constant input gives ``(nan, 1.0)`` and emits
    :class:`DegenerateInput`.
    """
    if len(x) != len(y):
        raise LengthMismatch(f"len(x)={len(x)} != len(y)={len(y)}")
    n = len(x)
    if n < 3:
        raise InsufficientData(f"need at least 3 pairs, got {n}")
    rx, ry = average_ranks(x), average_ranks(y)
    dx, dy = rx - rx.mean(), ry - ry.mean()
    sxx, syy = float(dx @ dx), float(dy @ dy)
    if sxx == 0 or syy == 0:
        warnings.warn("constant input; rank correlation undefined", DegenerateInput, stacklevel=2)
        return math.nan, 1.0
    rho = float(dx @ dy) / math.sqrt(sxx * syy)
    rho = max(-1.0, min(1.0, rho))
    return rho, spearman_pvalue(rho, n)


def spearman_pvalue(rho: float, n: int) -> float:
    if abs(rho) >= 1.0:
        return 0.0
    t = rho * math.sqrt((n - 2) / (1.0 - rho * rho))
    return float(2.0 * sps.t.sf(abs(t), n - 2))


def star_code(p: float) -> str:
    """Significance stars: *** p<0.0001, ** p<0.001, * p<0.05."""
    if p < 0.0001:
        return "***"
    if p < 0.001:
        return "**"
    if p < 0.05:
        return "*"
    return ""


@dataclass(frozen=True)
class CorrelationPanel:
    """Descriptives and pairwise Spearman results for a set of indicators.

    ``rho``, ``p`` and ``stars`` are full symmetric ``k x k`` arrays with a
    unit diagonal; reports print the lower triangle.
    """

    labels: tuple[str, ...]
    n: int
    means: tuple[float, ...]
    std_devs: tuple[float, ...]
    rho: np.ndarray
    p: np.ndarray
    stars: tuple[tuple[str, ...], ...]

    def pair(self, a: str, b: str) -> tuple[float, float, str]:
        i, j = self.labels.index(a), self.labels.index(b)
        return float(self.rho[i, j]), float(self.p[i, j]), self.stars[i][j]


def complete_rows(table: Mapping[str, Sequence[float | None]]) -> dict[str, np.ndarray]:
    """Listwise deletion: drop every row with a missing or NaN value in any column."""
    cols = {k: list(v) for k, v in table.items()}
    lengths = {len(v) for v in cols.values()}
    if len(lengths) > 1:
        raise LengthMismatch(f"columns have different lengths: {sorted(lengths)}")
    n = lengths.pop() if lengths else 0
    keep = [
        i
        for i in range(n)
        if all(c[i] is not None and not math.isnan(c[i]) for c in cols.values())
    ]
    return {k: np.array([v[i] for i in keep], dtype=float) for k, v in cols.items()}


def build_panel(table: Mapping[str, Sequence[float | None]]) -> CorrelationPanel:
    """Panel over the columns of ``table`` in insertion order."""
    data = complete_rows(table)
    labels = tuple(data)
    n = len(next(iter(data.values()))) if data else 0
    if n < 3:
        raise InsufficientData(f"need at least 3 complete rows, got {n}")
    k = len(labels)
    rho = np.eye(k)
    p = np.zeros((k, k))
    stars = [["" for _ in range(k)] for _ in range(k)]
    for i in range(k):
        for j in range(i):
            r, pv = spearman(data[labels[i]], data[labels[j]])
            rho[i, j] = rho[j, i] = r
            p[i, j] = p[j, i] = pv
            stars[i][j] = stars[j][i] = star_code(pv)
    return CorrelationPanel(
        labels=labels,
        n=n,
        means=tuple(float(np.mean(data[lab])) for lab in labels),
        std_devs=tuple(float(np.std(data[lab], ddof=1)) for lab in labels),
        rho=rho,
        p=p,
        stars=tuple(tuple(r) for r in stars),
    )


def panel_from_scores(scores, family: str = "AAI") -> CorrelationPanel:
    """JIF, ES, index, D, index x D for a list of journal scores.

    ``family`` is ``"AAI"`` (unweighted) or ``"AAIW"`` (tier-weighted).
    """
    family = family.upper()
    if family not in ("AAI", "AAIW"):
        raise ValueError(f"unknown family {family!r}")
    product = "AAID" if family == "AAI" else "AAIWD"
    table = {
        "JIF": [s.jif for s in scores],
        "ES": [s.es for s in scores],
        family: [s.value(family) for s in scores],
        "D": [s.d for s in scores],
        product: [s.value(product) for s in scores],
    }
    return build_panel(table)
