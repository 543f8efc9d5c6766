"""sentarc: word-valence story arcs, Hurst exponents via adaptive fractal
analysis, and correlations against reader ratings."""

__version__ = "0.1.0"

from .afa import (
    AfaConfig,
    AfaResult,
    default_window_sizes,
    estimate_hurst,
    fluctuation,
    global_trend,
    profile,
)
from .arc import (
    Merge,
    SentimentArc,
    WindowSummary,
    cluster_arcs,
    sentiment_series,
    smooth,
    tokenize,
    window_summary,
)
from .corpus import (
    RatingRecord,
    Story,
    StoryRecord,
    analyze_corpus,
    correlate,
    load_corpus,
    load_id_mapping,
    load_ratings,
)
from .errors import (
    AfaError,
    CorpusError,
    DegenerateSeriesError,
    LexiconError,
    RatingsError,
    SentarcError,
    SeriesTooShortError,
)
from .lexicon import Lexicon, load_lexicon, save_lexicon
from .stats import (
    CorrelationReport,
    distance_correlation,
    distance_correlation_test,
    kendall_tau,
    midranks,
    pearson,
    spearman,
)
from .synth import SynthSpec, fgn, fgn_autocovariance, white_noise

__all__ = [
    "AfaConfig",
    "AfaResult",
    "AfaError",
    "CorpusError",
    "CorrelationReport",
    "DegenerateSeriesError",
    "Lexicon",
    "LexiconError",
    "Merge",
    "RatingRecord",
    "RatingsError",
    "SentarcError",
    "SentimentArc",
    "SeriesTooShortError",
    "Story",
    "StoryRecord",
    "SynthSpec",
    "WindowSummary",
    "analyze_corpus",
    "cluster_arcs",
    "correlate",
    "default_window_sizes",
    "distance_correlation",
    "distance_correlation_test",
    "estimate_hurst",
    "fgn",
    "fgn_autocovariance",
    "fluctuation",
    "global_trend",
    "kendall_tau",
    "load_corpus",
    "load_id_mapping",
    "load_lexicon",
    "load_ratings",
    "midranks",
    "pearson",
    "profile",
    "save_lexicon",
    "sentiment_series",
    "smooth",
    "spearman",
    "tokenize",
    "white_noise",
    "window_summary",
]
