"""Command-line entry point.

Subcommands cover the pipeline stages: `arc` (valence series for one
story), `hurst` (scaling exponent of a story or numeric series),
`analyze` (whole-corpus study), `correlate` (re-run correlations on an
existing results table), `cluster` (group arc shapes), and `synth`
(fractional Gaussian noise with known exponent).

Exit codes: 0 success, 1 user error (bad arguments or input files),
2 internal error. Diagnostics go to stderr; data goes to files or stdout.
`-` names stdin/stdout for single-series inputs and outputs.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import logging
import os
import sys
from pathlib import Path

from . import __version__
from . import arc as arc_mod
from . import corpus as corpus_mod
from . import serialize
from .afa import AfaConfig, estimate_hurst
from .errors import SentarcError
from .lexicon import load_lexicon
from .synth import SynthSpec, fgn

log = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    """argparse with user errors mapped to exit code 1."""

    def error(self, message):
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_bytes().decode("utf-8")
    except FileNotFoundError:
        raise SentarcError(f"no such file: {path}") from None
    except (OSError, UnicodeDecodeError) as exc:
        raise SentarcError(f"cannot read {path}: {exc}") from exc


def _read_series(path: str) -> list[float]:
    """One-column numeric series; an optional non-numeric first line is a header."""
    text = _read_text(path)
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        item = line.split(",")[0].strip()
        if not item:
            continue
        try:
            values.append(float(item))
        except ValueError:
            if lineno == 1:
                continue
            raise SentarcError(f"{path}:{lineno}: not a number: {item!r}") from None
    return values


@contextlib.contextmanager
def _open_out(path: str | None):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def _parse_windows(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(w) for w in text.split(","))
    except ValueError:
        raise SentarcError(f"--windows expects comma-separated integers, got {text!r}") from None


def _afa_config(args) -> AfaConfig:
    windows = _parse_windows(args.windows) if args.windows else None
    try:
        return AfaConfig(
            poly_order=args.order,
            window_sizes=windows,
            min_windows_for_fit=args.min_windows_for_fit,
            adaptive_order=args.per_segment_order,
        )
    except ValueError as exc:
        raise SentarcError(str(exc)) from exc


def _add_afa_flags(parser) -> None:
    parser.add_argument(
        "--order", type=int, default=1, help="polynomial order of the local fits (default 1)"
    )
    parser.add_argument(
        "--per-segment-order",
        action="store_true",
        help="experimental: pick each segment's order in 1..3 by adjusted R^2",
    )
    parser.add_argument(
        "--windows",
        metavar="W1,W2,...",
        help="explicit odd window sizes (default: log-spaced over [5, N/4])",
    )
    parser.add_argument(
        "--min-windows-for-fit",
        type=int,
        default=5,
        metavar="K",
        help="minimum usable window count for the log-log fit (default 5)",
    )
    parser.add_argument(
        "--smoothed",
        action="store_true",
        help="estimate on the smoothed series instead of the raw one",
    )
    parser.add_argument(
        "--smooth-fraction",
        type=float,
        default=0.05,
        metavar="F",
        help="moving-average window as a fraction of series length (default 0.05)",
    )


def _story_values(args, text: str, story_id: str):
    lexicon = load_lexicon(args.lexicon)
    tokens = arc_mod.tokenize(text)
    series = arc_mod.sentiment_series(tokens, lexicon, story_id=story_id)
    if args.smoothed and series.n_tokens >= 1:
        return arc_mod.smooth(series, args.smooth_fraction).smooth
    return series.raw


def _cmd_arc(args) -> int:
    lexicon = load_lexicon(args.lexicon)
    text = _read_text(args.story)
    story_id = "stdin" if args.story == "-" else Path(args.story).stem
    tokens = arc_mod.tokenize(text)
    series = arc_mod.sentiment_series(tokens, lexicon, story_id=story_id)
    if series.n_tokens >= 1:
        series = arc_mod.smooth(series, args.smooth_fraction)
    with _open_out(args.out) as fh:
        serialize.write_arc_csv(series, fh)
    if args.windows_out:
        summary = arc_mod.window_summary(series, args.window)
        with _open_out(args.windows_out) as fh:
            serialize.write_window_csv(summary, fh)
    return 0


def _cmd_hurst(args) -> int:
    if (args.story is None) == (args.series is None):
        raise SentarcError("give exactly one of a story file or --series")
    if args.story is not None:
        if not args.lexicon:
            raise SentarcError("a story input requires --lexicon")
        values = _story_values(args, _read_text(args.story), Path(args.story).stem)
    else:
        values = _read_series(args.series)
    result = estimate_hurst(values, _afa_config(args))
    with _open_out(args.out) as fh:
        fh.write(serialize.hurst_json(result) + "\n")
    if args.points_out:
        with _open_out(args.points_out) as fh:
            serialize.write_points_csv(result, fh)
    return 0


def _cmd_analyze(args) -> int:
    lexicon = load_lexicon(args.lexicon)
    stories = corpus_mod.load_corpus(args.corpus)
    ratings = corpus_mod.load_ratings(args.ratings)
    mapping = corpus_mod.load_id_mapping(args.mapping) if args.mapping else None
    records = corpus_mod.analyze_corpus(
        stories,
        lexicon,
        config=_afa_config(args),
        ratings=ratings,
        mapping=mapping,
        use_smoothed=args.smoothed,
        smooth_fraction=args.smooth_fraction,
        jobs=args.jobs,
    )

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    with open(out_dir / "results.csv", "w", encoding="utf-8", newline="") as fh:
        serialize.write_results_csv(records, fh)
    with open(out_dir / "scatter.csv", "w", encoding="utf-8", newline="") as fh:
        serialize.write_scatter_csv(records, fh)
    with open(out_dir / "ratings_scatter.csv", "w", encoding="utf-8", newline="") as fh:
        serialize.write_ratings_scatter_csv(records, fh)

    thresholds = sorted(set(args.min_ratings if args.min_ratings else [0, 30]))
    reports = []
    for threshold in thresholds:
        try:
            reports.append(
                corpus_mod.correlate(
                    records,
                    min_ratings=threshold,
                    dcor_permutations=args.dcor_permutations,
                    seed=args.seed,
                )
            )
        except SentarcError as exc:
            log.warning("threshold %d skipped: %s", threshold, exc)
    with open(out_dir / "report.json", "w", encoding="utf-8") as fh:
        fh.write(serialize.reports_json(reports))
    return 0


def _records_from_results_csv(path: str) -> list[corpus_mod.StoryRecord]:
    text = _read_text(path)
    rows = list(csv.reader(text.splitlines()))
    if not rows or rows[0] != serialize.RESULTS_HEADER:
        raise SentarcError(f"{path}: not a results.csv (unexpected header)")
    records = []
    for row in rows[1:]:
        rec = dict(zip(serialize.RESULTS_HEADER, row))
        records.append(
            corpus_mod.StoryRecord(
                id=rec["id"],
                title=rec["title"],
                n_tokens=int(rec["n_tokens"]),
                coverage=float(rec["coverage"]),
                hurst=float(rec["hurst"]) if rec["hurst"] else None,
                r_squared=float(rec["r_squared"]) if rec["r_squared"] else None,
                avg_rating=float(rec["avg_rating"]) if rec["avg_rating"] else None,
                n_ratings=int(rec["n_ratings"]) if rec["n_ratings"] else None,
                sweet_spot=rec["sweet_spot"] == "true",
                status=rec["status"],
            )
        )
    return records


def _cmd_correlate(args) -> int:
    records = _records_from_results_csv(args.results)
    thresholds = sorted(set(args.min_ratings if args.min_ratings else [30]))
    reports = []
    for threshold in thresholds:
        try:
            reports.append(
                corpus_mod.correlate(
                    records,
                    min_ratings=threshold,
                    dcor_permutations=args.dcor_permutations,
                    seed=args.seed,
                )
            )
        except SentarcError as exc:
            raise SentarcError(f"threshold {threshold}: {exc}") from exc
    with _open_out(args.out) as fh:
        fh.write(serialize.reports_json(reports))
    return 0


def _cmd_cluster(args) -> int:
    lexicon = load_lexicon(args.lexicon)
    stories = corpus_mod.load_corpus(args.corpus)
    arcs = []
    for story in stories:
        series = arc_mod.sentiment_series(
            arc_mod.tokenize(story.text), lexicon, story_id=story.id
        )
        if series.n_tokens < 2:
            log.warning("%s: %d tokens, too short to cluster, skipped", story.id, series.n_tokens)
            continue
        arcs.append(arc_mod.smooth(series, args.smooth_fraction))
    try:
        labels, merges = arc_mod.cluster_arcs(arcs, args.k)
    except ValueError as exc:
        raise SentarcError(str(exc)) from exc
    with _open_out(args.out) as fh:
        serialize.write_labels_csv(labels, fh)
    if args.tree_out:
        with _open_out(args.tree_out) as fh:
            serialize.write_merges_csv(merges, fh)
    return 0


def _cmd_synth(args) -> int:
    try:
        spec = SynthSpec(target_h=args.h, n=args.n, seed=args.seed)
    except ValueError as exc:
        raise SentarcError(str(exc)) from exc
    values = fgn(spec)
    with _open_out(args.out) as fh:
        serialize.write_series_csv(values, fh)
    return 0


def build_parser() -> _Parser:
    parser = _Parser(
        prog="sentarc",
        description="Story arcs, Hurst exponents and rating correlations.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_arc = sub.add_parser(
        "arc",
        help="emit one story's valence series",
        description="Tokenize a story and emit its per-word valence series.",
        epilog=(
            "Output columns: index (token position), raw (valence in [0,1]), "
            "smooth (centered moving average). The --windows-out file has "
            "columns: window (index), mean, std (population) over consecutive "
            "windows of --window tokens."
        ),
    )
    p_arc.add_argument("story", help="story text file, or - for stdin")
    p_arc.add_argument("--lexicon", required=True, help="tab-separated valence lexicon")
    p_arc.add_argument(
        "--smooth-fraction",
        type=float,
        default=0.05,
        metavar="F",
        help="moving-average window as a fraction of story length (default 0.05)",
    )
    p_arc.add_argument(
        "--window", type=int, default=30, help="summary window in tokens (default 30)"
    )
    p_arc.add_argument("--out", default="-", help="arc CSV destination (default stdout)")
    p_arc.add_argument("--windows-out", metavar="PATH", help="also write windowed mean/std CSV")
    p_arc.set_defaults(func=_cmd_arc)

    p_hurst = sub.add_parser(
        "hurst",
        help="estimate a series' Hurst exponent",
        description=(
            "Estimate the Hurst exponent of a story's valence series or of a "
            "one-column numeric CSV."
        ),
        epilog=(
            "Output JSON fields: hurst (log-log slope), intercept, r_squared "
            "(fit quality in [0,1]), n_points (windows used). The --points-out "
            "file has columns: log2_w, log2_F."
        ),
    )
    p_hurst.add_argument("story", nargs="?", help="story text file (needs --lexicon)")
    p_hurst.add_argument("--series", metavar="PATH", help="one-column numeric CSV, or -")
    p_hurst.add_argument("--lexicon", help="tab-separated valence lexicon")
    _add_afa_flags(p_hurst)
    p_hurst.add_argument("--out", default="-", help="JSON destination (default stdout)")
    p_hurst.add_argument("--points-out", metavar="PATH", help="also write the scaling points CSV")
    p_hurst.set_defaults(func=_cmd_hurst)

    p_analyze = sub.add_parser(
        "analyze",
        help="run the full corpus study",
        description=(
            "Analyze every story in a corpus directory, join ratings, and write "
            "the study outputs into --out."
        ),
        epilog=(
            "Files written: results.csv with columns id, title, n_tokens, "
            "coverage, hurst, r_squared, avg_rating, n_ratings, sweet_spot "
            "(true when 0.55 <= hurst <= 0.65), status (ok | too_short | "
            "degenerate); report.json, an array with one correlation report "
            "per --min-ratings threshold (fields: min_ratings_filter, n, "
            "pearson_r, pearson_p, spearman_rho, spearman_p, kendall_tau, "
            "kendall_p, distance_corr, distance_corr_p); scatter.csv with "
            "columns hurst, avg_rating, n_ratings, title; ratings_scatter.csv "
            "with columns id, n_ratings, avg_rating."
        ),
    )
    p_analyze.add_argument("--corpus", required=True, help="directory of *.txt stories")
    p_analyze.add_argument("--lexicon", required=True, help="tab-separated valence lexicon")
    p_analyze.add_argument("--ratings", required=True, help="CSV id,title,avg_rating,n_ratings")
    p_analyze.add_argument("--mapping", metavar="PATH", help="CSV file_id,ratings_id join aliases")
    p_analyze.add_argument("--out", required=True, help="output directory")
    p_analyze.add_argument(
        "--min-ratings",
        type=int,
        action="append",
        metavar="N",
        help="keep stories with more than N ratings; repeatable (default: 0 and 30)",
    )
    p_analyze.add_argument(
        "--jobs",
        type=int,
        default=os.cpu_count() or 1,
        help="parallel story analyses (default: logical cores)",
    )
    p_analyze.add_argument(
        "--dcor-permutations",
        type=int,
        nargs="?",
        const=9999,
        metavar="B",
        help="permutation p-value for the distance correlation (default off; 9999 draws when enabled bare)",
    )
    p_analyze.add_argument("--seed", type=int, default=0, help="seed for permutation draws")
    _add_afa_flags(p_analyze)
    p_analyze.set_defaults(func=_cmd_analyze)

    p_corr = sub.add_parser(
        "correlate",
        help="correlations from an existing results.csv",
        description="Re-run the rating correlations on a results.csv produced by analyze.",
        epilog=(
            "Output: a JSON array with one report per --min-ratings threshold; "
            "fields: min_ratings_filter, n, pearson_r, pearson_p, spearman_rho, "
            "spearman_p, kendall_tau, kendall_p, distance_corr, distance_corr_p."
        ),
    )
    p_corr.add_argument("--results", required=True, help="results.csv from analyze")
    p_corr.add_argument(
        "--min-ratings",
        type=int,
        action="append",
        metavar="N",
        help="keep stories with more than N ratings; repeatable (default: 30)",
    )
    p_corr.add_argument(
        "--dcor-permutations",
        type=int,
        nargs="?",
        const=9999,
        metavar="B",
        help="permutation p-value for the distance correlation (default off; 9999 draws when enabled bare)",
    )
    p_corr.add_argument("--seed", type=int, default=0, help="seed for permutation draws")
    p_corr.add_argument("--out", default="-", help="JSON destination (default stdout)")
    p_corr.set_defaults(func=_cmd_correlate)

    p_cluster = sub.add_parser(
        "cluster",
        help="group stories by arc shape",
        description=(
            "Cluster the corpus' smoothed arcs (resampled to 100 points and "
            "z-normalized) with Ward-linkage agglomeration."
        ),
        epilog=(
            "Output columns: id, cluster (0..k-1). The --tree-out file has "
            "columns: step, cluster_a, cluster_b (smallest member ids), "
            "height (merge distance), size (merged cluster size)."
        ),
    )
    p_cluster.add_argument("--corpus", required=True, help="directory of *.txt stories")
    p_cluster.add_argument("--lexicon", required=True, help="tab-separated valence lexicon")
    p_cluster.add_argument("--k", type=int, required=True, help="number of clusters")
    p_cluster.add_argument(
        "--smooth-fraction",
        type=float,
        default=0.05,
        metavar="F",
        help="moving-average window as a fraction of story length (default 0.05)",
    )
    p_cluster.add_argument("--out", default="-", help="labels CSV destination (default stdout)")
    p_cluster.add_argument("--tree-out", metavar="PATH", help="also write the merge tree CSV")
    p_cluster.set_defaults(func=_cmd_cluster)

    p_synth = sub.add_parser(
        "synth",
        help="generate fractional Gaussian noise",
        description=(
            "Generate fractional Gaussian noise with a known Hurst exponent, "
            "one value per line, consumable by `hurst --series`."
        ),
        epilog="Output: a single numeric column with no header.",
    )
    p_synth.add_argument("--h", type=float, required=True, help="target Hurst exponent in (0,1)")
    p_synth.add_argument("--n", type=int, required=True, help="series length, a power of two >= 64")
    p_synth.add_argument("--seed", type=int, default=1, help="generator seed (default 1)")
    p_synth.add_argument("--out", default="-", help="CSV destination (default stdout)")
    p_synth.set_defaults(func=_cmd_synth)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (SentarcError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
