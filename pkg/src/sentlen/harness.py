"""Batch orchestration: analyze every book in a directory, bundle the
15 pairwise comparisons and six DFA estimates per book, and aggregate
corpus-level distributions and acceptance tables."""

from __future__ import annotations

import csv
import dataclasses
import hashlib
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from pathlib import Path

import numpy as np

from . import correlation, dfa, distribution, textpipe
from .exceptions import DegenerateInputError, IngestionError
from .series import CANONICAL_ORDER, MeasureKind, extract_all

log = logging.getLogger(__name__)

#: Canonical enumeration of the 15 measure pairs (indices into CANONICAL_ORDER).
PAIR_INDICES: tuple[tuple[int, int], ...] = tuple(combinations(range(6), 2))


@dataclass(frozen=True)
class AnalysisConfig:
    stopwords_path: str | None = None
    lemmas_path: str | None = None
    dfa_degree: int = 1
    dfa_min_window: int = dfa.DEFAULT_MIN_WINDOW
    dfa_max_fraction: float = dfa.DEFAULT_MAX_FRACTION
    dfa_points: int = dfa.DEFAULT_NUM_WINDOWS
    seed: int = 0
    p_threshold: float = 0.01
    min_sentences: int = 200
    hist_bin_width: int = 1000
    #: shuffled controls averaged per series; a single permutation leaves
    #: ~0.03 estimator noise on h*, averaging tightens the control
    n_shuffles: int = 8


@dataclass(frozen=True)
class ComparisonResult:
    pair: tuple[MeasureKind, MeasureKind]
    pearson: correlation.PearsonResult
    spearman: correlation.RankTestResult
    kendall: correlation.RankTestResult
    gamma: correlation.RankTestResult
    ks_plain: distribution.KsResult
    ks_mapped: distribution.KsResult
    linear_map: distribution.LinearMap


@dataclass(frozen=True)
class BookReport:
    book_id: str
    sentence_count: int
    comparisons: tuple[ComparisonResult, ...]
    hurst: dict[MeasureKind, dfa.HurstEstimate]
    max_abs_delta_h: float


@dataclass(frozen=True)
class SkippedBook:
    book_id: str
    reason: str


@dataclass(frozen=True)
class CorpusSummary:
    book_count: int
    skipped: tuple[SkippedBook, ...]
    sentence_count_histogram: tuple[tuple[int, int], ...]
    r_values: np.ndarray = field(repr=False)
    kappa_values: np.ndarray = field(repr=False)
    delta_h_values: np.ndarray = field(repr=False)
    acceptance_plain: np.ndarray = field(repr=False)  # 6x6, upper triangle, %
    acceptance_mapped: np.ndarray = field(repr=False)
    h_vs_length_r: float | None


@lru_cache(maxsize=4)
def _resources(stopwords_path, lemmas_path):
    stops = (textpipe.StopwordList.from_file(stopwords_path)
             if stopwords_path else textpipe.default_stopwords())
    lexicon = (textpipe.LemmaLexicon.from_file(lemmas_path)
               if lemmas_path else textpipe.default_lemma_lexicon())
    return stops, lexicon


def _shuffle_seed(config: AnalysisConfig, book_id: str, kind: MeasureKind,
                  index: int = 0) -> int:
    # stable across runs and worker scheduling; hash() is salted, so use sha256
    digest = hashlib.sha256(f"{book_id}/{kind.label}/{index}".encode()).digest()
    return (config.seed << 64) ^ int.from_bytes(digest[:8], "big")


def analyze_book(path, config: AnalysisConfig) -> BookReport | SkippedBook:
    """Full per-book pipeline.  Returns SkippedBook for books below the
    sentence floor; raises IngestionError for unreadable files."""
    path = Path(path)
    stops, lexicon = _resources(config.stopwords_path, config.lemmas_path)
    doc = textpipe.load_document(path, stops, lexicon)
    if doc.sentence_count < config.min_sentences:
        return SkippedBook(
            book_id=doc.id,
            reason=(f"only {doc.sentence_count} sentences "
                    f"(floor {config.min_sentences})"),
        )
    series = extract_all(doc)

    comparisons = []
    for i, j in PAIR_INDICES:
        x = series[i].values.astype(float)
        y = series[j].values.astype(float)
        comparisons.append(ComparisonResult(
            pair=(CANONICAL_ORDER[i], CANONICAL_ORDER[j]),
            pearson=correlation.pearson(x, y),
            spearman=correlation.spearman(x, y, config.p_threshold),
            kendall=correlation.kendall_tau(x, y, config.p_threshold),
            gamma=correlation.goodman_kruskal_gamma(x, y, config.p_threshold),
            ks_plain=distribution.ks_two_sample(
                distribution.mean_normalize(x),
                distribution.mean_normalize(y),
                config.p_threshold,
            ),
            ks_mapped=distribution.ks_after_linear_map(x, y, config.p_threshold),
            linear_map=correlation.fit_linear_map(x, y),
        ))

    hurst = {}
    for s in series:
        cfg = dfa.default_config(
            len(s), detrend_degree=config.dfa_degree,
            min_window=config.dfa_min_window,
            max_fraction=config.dfa_max_fraction,
            num=config.dfa_points,
            shuffle_seed=_shuffle_seed(config, doc.id, s.kind),
        )
        est = dfa.hurst_of_series(s.values, cfg)
        h_star = float(np.mean([
            dfa.shuffled_hurst(s.values, dataclasses.replace(
                cfg, shuffle_seed=_shuffle_seed(config, doc.id, s.kind, k)))
            for k in range(config.n_shuffles)
        ]))
        hurst[s.kind] = dataclasses.replace(est, h_shuffled=h_star)

    hs = [hurst[k].h for k in CANONICAL_ORDER]
    max_delta = max(abs(hs[i] - hs[j]) for i, j in PAIR_INDICES)
    return BookReport(
        book_id=doc.id,
        sentence_count=doc.sentence_count,
        comparisons=tuple(comparisons),
        hurst=hurst,
        max_abs_delta_h=max_delta,
    )


def _safe_analyze(path, config):
    try:
        return analyze_book(path, config)
    except (IngestionError, DegenerateInputError) as exc:
        return SkippedBook(book_id=Path(path).stem, reason=str(exc))


def hurst_length_correlation(reports) -> float:
    """Pearson r between per-book sentence count and the Words-measure
    Hurst exponent."""
    reports = list(reports)
    if len(reports) < 3:
        raise DegenerateInputError("need at least 3 books")
    counts = [r.sentence_count for r in reports]
    hs = [r.hurst[MeasureKind.WORDS].h for r in reports]
    return correlation.pearson(counts, hs).r


def _histogram(counts, bin_width):
    if not counts:
        return ()
    n_bins = max(c for c in counts) // bin_width + 1
    bins = [0] * n_bins
    for c in counts:
        bins[c // bin_width] += 1
    return tuple((b * bin_width, bins[b]) for b in range(n_bins))


def summarize(reports, skipped, config: AnalysisConfig) -> CorpusSummary:
    reports = sorted(reports, key=lambda r: r.book_id)
    r_values = np.sort([c.pearson.r for rep in reports for c in rep.comparisons])
    kappa_values = np.sort([c.ks_plain.kappa for rep in reports
                            for c in rep.comparisons])
    delta_h = []
    for rep in reports:
        hs = [rep.hurst[k].h for k in CANONICAL_ORDER]
        delta_h.extend(abs(hs[i] - hs[j]) for i, j in PAIR_INDICES)
    delta_h = np.sort(delta_h)

    plain = np.full((6, 6), np.nan)
    mapped = np.full((6, 6), np.nan)
    if reports:
        for idx, (i, j) in enumerate(PAIR_INDICES):
            plain[i, j] = 100.0 * np.mean(
                [rep.comparisons[idx].ks_plain.accepted for rep in reports])
            mapped[i, j] = 100.0 * np.mean(
                [rep.comparisons[idx].ks_mapped.accepted for rep in reports])

    h_vs_len = None
    if len(reports) >= 3:
        try:
            h_vs_len = hurst_length_correlation(reports)
        except DegenerateInputError:
            pass

    return CorpusSummary(
        book_count=len(reports),
        skipped=tuple(sorted(skipped, key=lambda s: s.book_id)),
        sentence_count_histogram=_histogram(
            [r.sentence_count for r in reports], config.hist_bin_width),
        r_values=r_values,
        kappa_values=kappa_values,
        delta_h_values=delta_h,
        acceptance_plain=plain,
        acceptance_mapped=mapped,
        h_vs_length_r=h_vs_len,
    )


def analyze_corpus(directory, config: AnalysisConfig,
                   jobs: int = 1) -> tuple[CorpusSummary, list[BookReport]]:
    directory = Path(directory)
    paths = sorted(p for p in directory.glob("*.txt") if p.is_file())
    if not paths:
        raise IngestionError(f"no .txt files found in {directory}")

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_safe_analyze, paths,
                                     [config] * len(paths)))
    else:
        outcomes = [_safe_analyze(p, config) for p in paths]

    reports = sorted((o for o in outcomes if isinstance(o, BookReport)),
                     key=lambda r: r.book_id)
    skipped = [o for o in outcomes if isinstance(o, SkippedBook)]
    for s in skipped:
        log.warning("skipped %s: %s", s.book_id, s.reason)
    return summarize(reports, skipped, config), reports


# ---------------------------------------------------------------------------
# report emission


def _fmt(x) -> str:
    """All numeric output carries 6 significant digits."""
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".6g")


def _jnum(x):
    if x is None:
        return None
    return float(format(float(x), ".6g"))


def _comparison_record(c: ComparisonResult) -> dict:
    return {
        "pair": [c.pair[0].label, c.pair[1].label],
        "pearson_r": _jnum(c.pearson.r),
        "spearman": {"statistic": _jnum(c.spearman.statistic),
                     "p_value": _jnum(c.spearman.p_value),
                     "rejected": c.spearman.rejected},
        "kendall": {"statistic": _jnum(c.kendall.statistic),
                    "p_value": _jnum(c.kendall.p_value),
                    "rejected": c.kendall.rejected},
        "gamma": {"statistic": _jnum(c.gamma.statistic),
                  "p_value": _jnum(c.gamma.p_value),
                  "rejected": c.gamma.rejected},
        "ks_plain": {"kappa": _jnum(c.ks_plain.kappa),
                     "p_value": _jnum(c.ks_plain.p_value),
                     "accepted": c.ks_plain.accepted},
        "ks_mapped": {"kappa": _jnum(c.ks_mapped.kappa),
                      "p_value": _jnum(c.ks_mapped.p_value),
                      "accepted": c.ks_mapped.accepted},
        "linear_map": {"alpha": _jnum(c.linear_map.alpha),
                       "beta": _jnum(c.linear_map.beta)},
    }


def _book_record(rep: BookReport) -> dict:
    return {
        "book_id": rep.book_id,
        "sentence_count": rep.sentence_count,
        "comparisons": [_comparison_record(c) for c in rep.comparisons],
        "hurst": {
            k.label: {"h": _jnum(est.h),
                      "intercept": _jnum(est.intercept),
                      "fit_r2": _jnum(est.fit_r2),
                      "h_shuffled": _jnum(est.h_shuffled)}
            for k, est in sorted(rep.hurst.items(), key=lambda kv: kv[0].label)
        },
        "max_abs_delta_h": _jnum(rep.max_abs_delta_h),
    }


def _write_json(path: Path, record: dict) -> None:
    path.write_text(json.dumps(record, indent=2, sort_keys=True) + "\n",
                    encoding="utf-8")


def _write_csv(path: Path, header, rows) -> None:
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


_BOOK_CSV_HEADER = [
    "measure_x", "measure_y", "pearson_r",
    "spearman_rho", "spearman_p", "kendall_tau", "kendall_p",
    "gamma", "gamma_p",
    "ks_plain_kappa", "ks_plain_p", "ks_plain_accepted",
    "ks_mapped_kappa", "ks_mapped_p", "ks_mapped_accepted",
    "map_alpha", "map_beta",
    "hurst_x", "hurst_y", "hurst_shuffled_x", "hurst_shuffled_y",
    "abs_delta_h",
]


def _book_csv_rows(rep: BookReport):
    for c in rep.comparisons:
        hx = rep.hurst[c.pair[0]]
        hy = rep.hurst[c.pair[1]]
        yield [
            c.pair[0].label, c.pair[1].label, _fmt(c.pearson.r),
            _fmt(c.spearman.statistic), _fmt(c.spearman.p_value),
            _fmt(c.kendall.statistic), _fmt(c.kendall.p_value),
            _fmt(c.gamma.statistic), _fmt(c.gamma.p_value),
            _fmt(c.ks_plain.kappa), _fmt(c.ks_plain.p_value),
            _fmt(c.ks_plain.accepted),
            _fmt(c.ks_mapped.kappa), _fmt(c.ks_mapped.p_value),
            _fmt(c.ks_mapped.accepted),
            _fmt(c.linear_map.alpha), _fmt(c.linear_map.beta),
            _fmt(hx.h), _fmt(hy.h), _fmt(hx.h_shuffled), _fmt(hy.h_shuffled),
            _fmt(abs(hx.h - hy.h)),
        ]


def _cdf_rows(values):
    n = len(values)
    return [[_fmt(v), _fmt((i + 1) / n)] for i, v in enumerate(values)]


def _acceptance_rows(matrix):
    labels = [k.label for k in CANONICAL_ORDER]
    rows = []
    for i in range(5):
        row = [labels[i]]
        for j in range(1, 6):
            row.append(_fmt(matrix[i, j]) if j > i else "")
        rows.append(row)
    return rows


def _summary_record(summary: CorpusSummary) -> dict:
    return {
        "book_count": summary.book_count,
        "skipped": [{"book_id": s.book_id, "reason": s.reason}
                    for s in summary.skipped],
        "comparison_count": int(summary.r_values.size),
        "mean_pearson_r": _jnum(summary.r_values.mean())
        if summary.r_values.size else None,
        "ks_plain_acceptance_pct": _jnum(
            np.nanmean(summary.acceptance_plain))
        if summary.book_count else None,
        "ks_mapped_acceptance_pct": _jnum(
            np.nanmean(summary.acceptance_mapped))
        if summary.book_count else None,
        "h_vs_length_r": _jnum(summary.h_vs_length_r),
        "sentence_count_histogram": [
            {"bin_start": b, "count": c}
            for b, c in summary.sentence_count_histogram
        ],
    }


def emit_reports(summary: CorpusSummary, reports, out_dir,
                 formats=("json",)) -> list[Path]:
    """Write per-book records, the corpus summary, and plot-ready CSVs.
    Deterministic: identical inputs produce byte-identical files."""
    out_dir = Path(out_dir)
    books_dir = out_dir / "books"
    plots_dir = out_dir / "plots"
    try:
        books_dir.mkdir(parents=True, exist_ok=True)
        plots_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IngestionError(f"cannot create output directory: {exc}") from exc

    written = []
    reports = sorted(reports, key=lambda r: r.book_id)
    for rep in reports:
        if "json" in formats:
            path = books_dir / f"{rep.book_id}.json"
            _write_json(path, _book_record(rep))
            written.append(path)
        if "csv" in formats:
            path = books_dir / f"{rep.book_id}.csv"
            _write_csv(path, _BOOK_CSV_HEADER, _book_csv_rows(rep))
            written.append(path)

    if "json" in formats:
        path = out_dir / "summary.json"
        _write_json(path, _summary_record(summary))
        written.append(path)
    if "csv" in formats:
        path = out_dir / "summary.csv"
        record = _summary_record(summary)
        rows = [
            ["book_count", record["book_count"]],
            ["comparison_count", record["comparison_count"]],
            ["mean_pearson_r", _fmt(record["mean_pearson_r"])],
            ["ks_plain_acceptance_pct", _fmt(record["ks_plain_acceptance_pct"])],
            ["ks_mapped_acceptance_pct", _fmt(record["ks_mapped_acceptance_pct"])],
            ["h_vs_length_r", _fmt(record["h_vs_length_r"])],
        ]
        _write_csv(path, ["key", "value"], rows)
        written.append(path)

    plot_files = [
        ("sentence_count_histogram.csv", ["bin_start", "count"],
         [[b, c] for b, c in summary.sentence_count_histogram]),
        ("pearson_cdf.csv", ["r", "cumulative_fraction"],
         _cdf_rows(summary.r_values)),
        ("ks_kappa_cdf.csv", ["kappa", "cumulative_fraction"],
         _cdf_rows(summary.kappa_values)),
        ("hurst_delta_cdf.csv", ["abs_delta_h", "cumulative_fraction"],
         _cdf_rows(summary.delta_h_values)),
        ("ks_acceptance_plain.csv",
         [""] + [k.label for k in CANONICAL_ORDER][1:],
         _acceptance_rows(summary.acceptance_plain)),
        ("ks_acceptance_mapped.csv",
         [""] + [k.label for k in CANONICAL_ORDER][1:],
         _acceptance_rows(summary.acceptance_mapped)),
    ]
    for name, header, rows in plot_files:
        path = plots_dir / name
        _write_csv(path, header, rows)
        written.append(path)

    if summary.skipped:
        path = out_dir / "skipped.csv"
        _write_csv(path, ["book_id", "reason"],
                   [[s.book_id, s.reason] for s in summary.skipped])
        written.append(path)
    return written


def export_series_csv(series, out_dir) -> Path:
    """CSV export of one length series: sentence_index,value."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{series.book_id}__{series.kind.label}.csv"
    _write_csv(path, ["sentence_index", "value"],
               [[i, int(v)] for i, v in enumerate(series.values)])
    return path
