"""Sentiment arcs: tokenization, per-word valence series, smoothing,
windowed summaries and agglomerative clustering of arc shapes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace

import numpy as np

from .lexicon import Lexicon

# Tokens are maximal runs of letters, optionally joined by internal
# apostrophes ("don't" stays one token). Digits and punctuation separate.
# U+2019 is the typographic apostrophe common in Gutenberg texts.
_TOKEN_RE = re.compile(r"[^\W\d_]+(?:['’][^\W\d_]+)*")


@dataclass(frozen=True)
class SentimentArc:
    """Per-token valence series for one story.

    `raw` holds one valence per token in story order; `smooth` is the
    moving-average trend of the same length (equal to `raw` until
    :func:`smooth` is applied). `coverage` is the fraction of tokens found
    in the lexicon.
    """

    story_id: str
    raw: np.ndarray
    smooth: np.ndarray
    coverage: float
    n_tokens: int


@dataclass(frozen=True)
class WindowSummary:
    """Non-overlapping window means and population standard deviations."""

    window_size: int
    means: np.ndarray
    stds: np.ndarray


@dataclass(frozen=True)
class Merge:
    """One agglomeration step: clusters `a` and `b` (named by their
    lexicographically smallest member id) merged at `height` into a
    cluster of `size` arcs."""

    a: str
    b: str
    height: float
    size: int


def tokenize(text: str) -> list[str]:
    """Lowercased word tokens in order of appearance."""
    return _TOKEN_RE.findall(text.lower())


def sentiment_series(tokens: list[str], lexicon: Lexicon, story_id: str = "") -> SentimentArc:
    """Map tokens to their valence values.

    Out-of-vocabulary tokens score the lexicon's neutral value. Coverage is
    0 for an empty token list.
    """
    n = len(tokens)
    raw = np.empty(n, dtype=float)
    hits = 0
    for i, tok in enumerate(tokens):
        if tok in lexicon:
            hits += 1
        raw[i] = lexicon.valence(tok)
    coverage = hits / n if n else 0.0
    return SentimentArc(
        story_id=story_id, raw=raw, smooth=raw.copy(), coverage=coverage, n_tokens=n
    )


def window_summary(arc: SentimentArc, window_size: int = 30) -> WindowSummary:
    """Mean and population std of `raw` over consecutive non-overlapping windows.

    The final partial window is summarized over its actual length.
    """
    if window_size < 1:
        raise ValueError(f"window_size must be >= 1, got {window_size}")
    n = arc.n_tokens
    n_windows = -(-n // window_size)  # ceil
    means = np.empty(n_windows, dtype=float)
    stds = np.empty(n_windows, dtype=float)
    for k in range(n_windows):
        chunk = arc.raw[k * window_size : (k + 1) * window_size]
        means[k] = chunk.mean()
        stds[k] = chunk.std()
    return WindowSummary(window_size=window_size, means=means, stds=stds)


def smooth(arc: SentimentArc, fraction: float = 0.05) -> SentimentArc:
    """Fill `smooth` with a centered moving average of `raw`.

    The window is max(3, round(fraction * n_tokens)), forced odd (rounded
    up). At the edges the window truncates to whatever fits, so the output
    has the same length as the input. `raw` is unchanged. This smoothing
    only feeds visualization output; the fluctuation analysis does its own
    detrending.
    """
    if not 0.0 < fraction <= 1.0:
        raise ValueError(f"fraction must be in (0, 1], got {fraction}")
    n = arc.n_tokens
    if n < 1:
        raise ValueError("cannot smooth an empty arc")
    width = max(3, round(fraction * n))
    if width % 2 == 0:
        width += 1
    half = width // 2
    idx = np.arange(n)
    lo = np.maximum(idx - half, 0)
    hi = np.minimum(idx + half + 1, n)
    csum = np.concatenate(([0.0], np.cumsum(arc.raw)))
    smoothed = (csum[hi] - csum[lo]) / (hi - lo)
    # every window mean lies within the raw extremes; trim rounding residue
    smoothed = np.clip(smoothed, arc.raw.min(), arc.raw.max())
    return replace(arc, smooth=smoothed)


RESAMPLE_POINTS = 100


def _cluster_shape(arc: SentimentArc, n_points: int = RESAMPLE_POINTS) -> np.ndarray:
    """Smoothed arc resampled to a fixed length and z-normalized."""
    if arc.n_tokens < 2:
        raise ValueError(f"arc {arc.story_id!r} too short to resample ({arc.n_tokens} tokens)")
    grid = np.linspace(0.0, arc.n_tokens - 1, n_points)
    resampled = np.interp(grid, np.arange(arc.n_tokens), arc.smooth)
    sd = resampled.std()
    if sd == 0.0:
        return np.zeros(n_points)
    return (resampled - resampled.mean()) / sd


def cluster_arcs(arcs: list[SentimentArc], k: int) -> tuple[dict[str, int], list[Merge]]:
    """Ward-linkage agglomerative clustering of arc shapes.

    Each smoothed arc is resampled to 100 points and z-normalized, so the
    grouping reflects shape rather than level or amplitude. Clusters are
    merged by the minimum-variance (Ward) criterion; distance ties merge
    the lexicographically smallest id pair, which makes the tree
    deterministic regardless of input order.

    Returns a map story_id -> cluster index (clusters numbered 0..k-1 in
    order of their smallest member id) and the full merge list.
    """
    m = len(arcs)
    if not 1 <= k <= m:
        raise ValueError(f"need |arcs| >= k >= 1, got {m} arcs and k={k}")
    ids = [a.story_id for a in arcs]
    if len(set(ids)) != m:
        raise ValueError("duplicate story ids in clustering input")

    shapes = np.array([_cluster_shape(a) for a in arcs])
    diff = shapes[:, None, :] - shapes[None, :, :]
    d2 = np.einsum("ijk,ijk->ij", diff, diff)

    members: dict[int, list[str]] = {i: [ids[i]] for i in range(m)}
    rep = {i: ids[i] for i in range(m)}  # smallest member id per cluster
    sizes = {i: 1 for i in range(m)}
    active = set(range(m))
    merges: list[Merge] = []

    for _ in range(m - k):
        best = None
        for i in sorted(active):
            for j in sorted(active):
                if j <= i:
                    continue
                pair_ids = tuple(sorted((rep[i], rep[j])))
                cand = (d2[i, j], pair_ids, i, j)
                if best is None or cand[0] < best[0] or (cand[0] == best[0] and pair_ids < best[1]):
                    best = cand
        _, _, i, j = best
        height = float(np.sqrt(d2[i, j]))
        ni, nj = sizes[i], sizes[j]
        merged_rep = min(rep[i], rep[j])
        other = min(rep[i], rep[j]), max(rep[i], rep[j])
        merges.append(Merge(a=other[0], b=other[1], height=height, size=ni + nj))

        # Lance-Williams update for Ward linkage on squared distances.
        for h in active:
            if h in (i, j):
                continue
            nh = sizes[h]
            d2_new = (
                (ni + nh) * d2[h, i] + (nj + nh) * d2[h, j] - nh * d2[i, j]
            ) / (ni + nj + nh)
            d2[h, i] = d2[i, h] = d2_new
        members[i] = members[i] + members[j]
        rep[i] = merged_rep
        sizes[i] = ni + nj
        active.remove(j)

    clusters = sorted((rep[c], c) for c in active)
    labels: dict[str, int] = {}
    for index, (_, c) in enumerate(clusters):
        for sid in members[c]:
            labels[sid] = index
    return labels, merges
