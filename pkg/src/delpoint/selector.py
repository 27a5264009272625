"""Scan the dataset and pick the point whose d_v is closest to the target.

The selected "perfect deleted point" minimizes distance = |d_v - target|
with target = 2 Phi_inv(1 - alpha).  If even the minimum distance exceeds
the tolerance delta, no point qualifies and ``best`` is None.

Tie-breaking (``tie_break``):

* ``norm-first`` (default): candidates within 1e-9 of the minimum distance
  form a tie set; inside it prefer the smallest feature norm (smallest
  risk-change bounds), then nonnegative eps_v over negative (zero privacy
  floor), then the lowest original id.
* ``paper``: faithful single-pass semantics of the published scan loop,
  where a candidate at distance <= the running minimum replaces the
  incumbent, so the LAST point attaining the minimum wins and a distance
  exactly equal to delta is accepted.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import Dataset, HyperParams
from .errors import DomainError
from .snr import CandidateScore, scan_arrays

SELECTION_JSON_FORMAT_VERSION = 1

TIE_WINDOW = 1e-9

_TIE_BREAKS = ("norm-first", "paper")


@dataclass(frozen=True)
class SelectionResult:
    """Full scan plus the chosen candidate (None when none clears delta)."""

    target: float
    best: Optional[CandidateScore]
    all_scores: list[CandidateScore]


def _check_tie_break(tie_break: str) -> None:
    if tie_break not in _TIE_BREAKS:
        raise DomainError(f"tie_break must be one of {_TIE_BREAKS}, got {tie_break!r}")


def _choose_position(dist: np.ndarray, fnorm: np.ndarray, eps: np.ndarray,
                     ids: np.ndarray, delta: float, tie_break: str) -> Optional[int]:
    m = float(dist.min())
    if m > delta:
        return None
    if tie_break == "paper":
        return int(np.flatnonzero(dist == m)[-1])
    tie = np.flatnonzero(dist <= m + TIE_WINDOW)
    order = np.lexsort((ids[tie], (eps[tie] < 0).astype(np.int64), fnorm[tie]))
    return int(tie[order[0]])


def _rank_positions(dist, fnorm, eps, ids, tie_break: str) -> np.ndarray:
    if tie_break == "paper":
        # distance ascending; equal distances ordered last-wins first
        return np.lexsort((-ids, dist))
    m = float(dist.min())
    tie = dist <= m + TIE_WINDOW
    neg = (eps < 0).astype(np.int64)
    tie_idx = np.flatnonzero(tie)
    rest_idx = np.flatnonzero(~tie)
    tie_order = tie_idx[np.lexsort((ids[tie_idx], neg[tie_idx], fnorm[tie_idx]))]
    rest_order = rest_idx[np.lexsort(
        (ids[rest_idx], neg[rest_idx], fnorm[rest_idx], dist[rest_idx]))]
    return np.concatenate([tie_order, rest_order])


def find_perfect_deleted_point(ds: Dataset, w, hp: HyperParams,
                               tie_break: str = "norm-first") -> SelectionResult:
    """Score every point and return the argmin-of-distance selection.

    O(n d + d^2) time, O(n) extra space; deterministic for fixed inputs.
    """
    _check_tie_break(tie_break)
    a = scan_arrays(ds, w, hp)
    pos = _choose_position(a["distance"], a["feature_norm"], a["eps_v"],
                           a["ids"], hp.delta, tie_break)
    scores = _materialize(a, np.arange(ds.n))
    best = None if pos is None else scores[pos]
    return SelectionResult(target=a["target"], best=best, all_scores=scores)


def select_position(ds: Dataset, w, hp: HyperParams,
                    tie_break: str = "norm-first") -> Optional[int]:
    """Position (not id) of the selected point; scan-only fast path."""
    _check_tie_break(tie_break)
    a = scan_arrays(ds, w, hp)
    return _choose_position(a["distance"], a["feature_norm"], a["eps_v"],
                            a["ids"], hp.delta, tie_break)


def rank_candidates(ds: Dataset, w, hp: HyperParams, k: int,
                    tie_break: str = "norm-first") -> list[CandidateScore]:
    """Top-k candidates by ascending distance, in selection tie order."""
    _check_tie_break(tie_break)
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    a = scan_arrays(ds, w, hp)
    order = _rank_positions(a["distance"], a["feature_norm"], a["eps_v"],
                            a["ids"], tie_break)
    return _materialize(a, order[:k])


def _materialize(a, positions) -> list[CandidateScore]:
    return [
        CandidateScore(
            index=int(a["ids"][i]),
            d_v=float(a["d_v"][i]),
            eps_v=float(a["eps_v"][i]),
            distance=float(a["distance"][i]),
            advantage=float(a["advantage"][i]),
            feature_norm=float(a["feature_norm"][i]),
        )
        for i in positions
    ]


def _score_dict(s: CandidateScore) -> dict:
    return {
        "index": s.index,
        "d_v": s.d_v,
        "eps_v": s.eps_v,
        "distance": s.distance,
        "advantage": s.advantage,
        "feature_norm": s.feature_norm,
    }


def selection_to_json(result: SelectionResult) -> str:
    """Canonical JSON serialization; byte-stable for identical inputs."""
    doc = {
        "format_version": SELECTION_JSON_FORMAT_VERSION,
        "target": result.target,
        "best": None if result.best is None else _score_dict(result.best),
        "scores": [_score_dict(s) for s in result.all_scores],
    }
    return json.dumps(doc, indent=2) + "\n"
