"""Hurst exponent estimation by adaptive fractal analysis (AFA).

The estimator integrates the mean-centered input into a profile, removes a
smooth global trend built from overlapping local polynomial fits, and reads
the scaling exponent off the log-log relation between window size and the
RMS residual:

    F(w) = sqrt( (1/N) sum_i (u(i) - v(i))^2 )  ~  w^H

Segments have odd length w = 2n+1 and start every n samples, so neighbors
share n+1 points. In the shared region the two local fits are combined
with weights falling off linearly with distance from each segment center,
which removes jumps at segment boundaries and leaves a trend that is
smooth away from them. A slope above 0.5 means persistent fluctuations,
below 0.5 anti-persistent ones.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSeriesError, SeriesTooShortError

#: Shortest series the estimator accepts.
MIN_SERIES_LENGTH = 60

#: Smallest usable window (2n+1 with n = 2).
MIN_WINDOW = 5

#: Number of log-spaced windows in the default schedule.
DEFAULT_N_WINDOWS = 15


@dataclass(frozen=True)
class AfaConfig:
    """Estimator settings.

    `window_sizes` of None derives a log-spaced schedule of odd windows
    covering [5, N/4] from the series length at estimation time. With
    `adaptive_order` each segment picks its own polynomial order in 1..3
    by adjusted R^2 instead of using `poly_order` everywhere; this mode is
    experimental and `poly_order` is ignored while it is on.
    """

    poly_order: int = 1
    window_sizes: tuple[int, ...] | None = None
    min_windows_for_fit: int = 5
    adaptive_order: bool = False

    def __post_init__(self):
        if self.poly_order < 0:
            raise ValueError(f"poly_order must be >= 0, got {self.poly_order}")
        if self.min_windows_for_fit < 2:
            raise ValueError("min_windows_for_fit must be >= 2")
        if self.window_sizes is not None:
            ws = tuple(int(w) for w in self.window_sizes)
            object.__setattr__(self, "window_sizes", ws)
            for w in ws:
                if w < MIN_WINDOW or w % 2 == 0:
                    raise ValueError(f"window sizes must be odd and >= {MIN_WINDOW}, got {w}")
            if any(b <= a for a, b in zip(ws, ws[1:])):
                raise ValueError("window sizes must be strictly ascending")


@dataclass(frozen=True)
class AfaResult:
    """Fitted scaling relation: `hurst` is the slope of log2 F(w) on
    log2 w, `points` the surviving (log2_w, log2_F) pairs behind it."""

    hurst: float
    intercept: float
    r_squared: float
    points: tuple[tuple[float, float], ...]

    @property
    def n_points(self) -> int:
        return len(self.points)


def profile(series) -> np.ndarray:
    """Cumulative sum of the mean-centered series.

    The running sum turns a noise-like series into a walk whose wandering
    the trend removal can grade; its final value is zero up to rounding.
    """
    x = np.asarray(series, dtype=float)
    if x.size < 2:
        raise ValueError(f"series must have at least 2 samples, got {x.size}")
    return np.cumsum(x - x.mean())


def segment_starts(n_samples: int, w: int) -> np.ndarray:
    """Start offsets of the length-w segments covering a series.

    Regular starts are 0, n, 2n, ... with n = (w-1)/2. When the chain does
    not land exactly on the last sample, one extra segment is appended,
    right-anchored to end there.
    """
    _check_window(n_samples, w)
    n = (w - 1) // 2
    last = n_samples - 1 - 2 * n
    starts = np.arange(0, last + 1, n)
    if starts[-1] != last:
        starts = np.append(starts, last)
    return starts


def blend_weights(step: int) -> tuple[np.ndarray, np.ndarray]:
    """Linear cross-fade weights over a blend region of `step`+1 points.

    Position j = 0..step sits j samples past the left segment's center;
    its weights are w1 = 1 - j/step toward the left fit and w2 = j/step
    toward the right one, so w1 + w2 = 1 everywhere.
    """
    if step < 1:
        raise ValueError(f"step must be >= 1, got {step}")
    w2 = np.arange(step + 1) / step
    return 1.0 - w2, w2


def _check_window(n_samples: int, w: int) -> None:
    if w % 2 == 0:
        raise ValueError(f"window size must be odd, got {w}")
    if w < 3:
        raise ValueError(f"window size must be >= 3, got {w}")
    if w > n_samples:
        raise ValueError(f"window size {w} exceeds series length {n_samples}")


def _segment_fits(segments: np.ndarray, w: int, order: int) -> np.ndarray:
    """Least-squares polynomial fit of every row at once.

    Rows share one design matrix over a local coordinate centered at the
    segment midpoint, which keeps the normal equations well conditioned.
    """
    t = np.arange(w, dtype=float) - (w - 1) / 2
    design = np.vander(t, order + 1, increasing=True)
    coefs = segments @ np.linalg.pinv(design).T
    return coefs @ design.T


def _adaptive_fits(segments: np.ndarray, w: int) -> np.ndarray:
    """Per-segment order selection over 1..3 by adjusted R^2."""
    candidates = []
    scores = []
    tss = ((segments - segments.mean(axis=1, keepdims=True)) ** 2).sum(axis=1)
    for order in (1, 2, 3):
        fitted = _segment_fits(segments, w, order)
        rss = ((segments - fitted) ** 2).sum(axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            r2 = np.where(tss > 0, 1.0 - rss / np.where(tss > 0, tss, 1.0), 1.0)
        adj = 1.0 - (1.0 - r2) * (w - 1) / (w - order - 1)
        candidates.append(fitted)
        scores.append(adj)
    best = np.argmax(np.column_stack(scores), axis=1)
    stacked = np.stack(candidates)
    return stacked[best, np.arange(segments.shape[0]), :]


def global_trend(u, w: int, order: int = 1, adaptive_order: bool = False) -> np.ndarray:
    """Smooth global trend of the profile at window size w.

    Overlapping segments are fitted independently; between the centers of
    neighboring segments the two fits are cross-faded with
    :func:`blend_weights`. Before the first center and after the last the
    single covering fit is used as is. The final segment may be
    right-anchored, in which case its blend region is shorter than n.
    """
    u = np.asarray(u, dtype=float)
    n_samples = u.size
    _check_window(n_samples, w)
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")

    n = (w - 1) // 2
    starts = segment_starts(n_samples, w)
    centers = starts + n
    anchored = starts.size >= 2 and (starts[-1] - starts[-2]) != n
    n_regular = starts.size - 1 if anchored else starts.size

    segments = u[starts[:, None] + np.arange(w)[None, :]]
    if adaptive_order:
        fits = _adaptive_fits(segments, w)
    else:
        fits = _segment_fits(segments, w, order)

    v = np.empty(n_samples)
    v[: n + 1] = fits[0, : n + 1]
    if n_regular >= 2:
        g = np.arange(n, n_regular * n)
        left = g // n - 1
        frac = (g - (left + 1) * n) / n
        v[g] = (1.0 - frac) * fits[left, g - left * n] + frac * fits[left + 1, g - (left + 1) * n]
    if anchored:
        step = int(starts[-1] - starts[-2])
        w1, w2 = blend_weights(step)
        g = np.arange(centers[-2], centers[-1] + 1)
        v[g] = w1 * fits[-2, g - starts[-2]] + w2 * fits[-1, g - starts[-1]]
    v[centers[-1] :] = fits[-1, centers[-1] - starts[-1] :]
    return v


def fluctuation(u, v) -> float:
    """RMS residual between profile and trend."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise ValueError(f"profile and trend lengths differ: {u.shape} vs {v.shape}")
    return float(np.sqrt(np.mean((u - v) ** 2)))


def default_window_sizes(
    n_samples: int,
    n_windows: int = DEFAULT_N_WINDOWS,
    min_window: int = MIN_WINDOW,
) -> tuple[int, ...]:
    """Log-spaced odd window sizes covering [min_window, n_samples/4]."""
    max_window = n_samples // 4
    if max_window % 2 == 0:
        max_window -= 1
    if max_window < min_window:
        raise SeriesTooShortError(
            f"series of {n_samples} samples leaves no window range "
            f"[{min_window}, {n_samples // 4}]"
        )
    if max_window == min_window:
        return (min_window,)
    grid = np.logspace(np.log2(min_window), np.log2(max_window), n_windows, base=2.0)
    odd = (2.0 * np.round((grid - 1.0) / 2.0) + 1.0).astype(int)
    odd = np.unique(np.clip(odd, min_window, max_window))
    return tuple(int(w) for w in odd)


def estimate_hurst(series, config: AfaConfig | None = None) -> AfaResult:
    """Estimate the Hurst exponent of a series.

    Builds the profile once, computes the fluctuation function over the
    window schedule, drops windows with zero residual, and fits ordinary
    least squares of log2 F(w) on log2 w. The slope is the estimate; the
    line's R^2 grades how well the scaling relation holds.

    Raises SeriesTooShortError below 60 samples or when the largest
    window exceeds the series, and DegenerateSeriesError when fewer than
    `min_windows_for_fit` windows produce a nonzero residual (constant
    input, for example).
    """
    x = np.asarray(series, dtype=float)
    n_samples = x.size
    if config is None:
        config = AfaConfig()
    if n_samples < MIN_SERIES_LENGTH:
        raise SeriesTooShortError(
            f"series has {n_samples} samples; at least {MIN_SERIES_LENGTH} required"
        )
    windows = config.window_sizes
    if windows is None:
        windows = default_window_sizes(n_samples)
    elif windows[-1] > n_samples:
        raise SeriesTooShortError(
            f"largest window {windows[-1]} exceeds series length {n_samples}"
        )
    if len(windows) < config.min_windows_for_fit:
        raise ValueError(
            f"schedule has {len(windows)} windows; "
            f"min_windows_for_fit is {config.min_windows_for_fit}"
        )
    # rounding in the mean can leave a constant series with a nonzero
    # profile, so rule it out exactly rather than through F(w)
    if np.all(x == x[0]):
        raise DegenerateSeriesError("degenerate series: constant input")

    u = profile(x)
    points = []
    for w in windows:
        v = global_trend(u, w, config.poly_order, config.adaptive_order)
        f = fluctuation(u, v)
        if f > 0.0:
            points.append((float(np.log2(w)), float(np.log2(f))))
    if len(points) < config.min_windows_for_fit:
        raise DegenerateSeriesError(
            f"degenerate series: only {len(points)} of {len(windows)} windows "
            "produced a nonzero fluctuation"
        )

    log_w = np.array([p[0] for p in points])
    log_f = np.array([p[1] for p in points])
    slope, intercept = np.polyfit(log_w, log_f, 1)
    predicted = slope * log_w + intercept
    ss_res = float(np.sum((log_f - predicted) ** 2))
    ss_tot = float(np.sum((log_f - log_f.mean()) ** 2))
    r_squared = 1.0 - ss_res / ss_tot if ss_tot > 0.0 else 1.0
    r_squared = min(max(r_squared, 0.0), 1.0)
    return AfaResult(
        hurst=float(slope),
        intercept=float(intercept),
        r_squared=r_squared,
        points=tuple(points),
    )
