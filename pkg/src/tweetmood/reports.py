"""Report serialization: scored-tweet CSV, aggregate tables, entity and
keyword files, and the flat run configuration.

All CSV output is RFC-4180 style, UTF-8, LF line endings, with floats
written via repr so files are byte-stable across reruns and parse back
to the exact values.
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from datetime import date, datetime
from pathlib import Path
from typing import Iterable, Sequence

from . import svg
from .analytics import DailyAggregate, EmojiStats, EntityProfile, ScoredTweet
from .engine import SentimentScore
from .ingest import KeywordStat, format_timestamp

SCORED_FIELDS = ["id", "created_at", "raw", "compound", "polarity", "emoji_count"]
DAILY_FIELDS = [
    "date", "n_tweets", "sum_compound", "mean_compound",
    "n_positive", "n_neutral", "n_negative",
]
ENTITY_FIELDS = ["entity", "n_tweets", "mean_compound"]
ENTITY_DAILY_FIELDS = ["entity", "date", "n_tweets", "mean_compound"]
KEYWORD_FIELDS = ["keyword", "tweet_count", "share"]
EMOJI_SUMMARY_FIELDS = ["n_tweets", "n_with_emoji", "fraction_with_emoji"]
EMOJI_COUNT_FIELDS = ["emoji", "count"]


@dataclass
class RunConfig:
    """Pipeline configuration; CLI flags override config-file values."""

    lexicon_path: str | None = None
    emoji_lexicon_path: str | None = None
    entities_path: str | None = None
    out_dir: str = "."
    alpha: float = 15.0
    positive_threshold: float = 0.0
    negative_threshold: float = 0.0
    formats: tuple[str, ...] = ("csv",)

    def __post_init__(self):
        bad = set(self.formats) - {"csv", "json", "svg"}
        if bad:
            raise ValueError(f"unknown report formats: {sorted(bad)}")
        if not self.formats:
            raise ValueError("at least one report format required")


def parse_config_file(path: str | Path) -> dict[str, str]:
    """Flat ``key = value`` document; '#' comments and blanks ignored."""
    values: dict[str, str] = {}
    for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ValueError(f"{path}: line {line_no}: expected key = value")
        key, _, value = stripped.partition("=")
        values[key.strip()] = value.strip()
    return values


def load_entities(path: str | Path) -> list[tuple[str, tuple[str, ...]]]:
    """Entity file: JSON list of {"name": ..., "aliases": [...]}."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, list):
        raise ValueError(f"{path}: expected a JSON list of entities")
    entities = []
    for obj in data:
        name = obj.get("name")
        if not name:
            raise ValueError(f"{path}: entity without a name: {obj!r}")
        aliases = tuple(str(a) for a in obj.get("aliases", []) if str(a))
        entities.append((str(name), aliases or (str(name),)))
    return entities


def _write_csv(path: Path, fieldnames: Sequence[str], rows: Iterable[dict]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fieldnames, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


def _write_json(path: Path, rows: list[dict]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        json.dump(rows, fh, ensure_ascii=False, indent=2)
        fh.write("\n")


def scored_rows(scored: Iterable[ScoredTweet]) -> list[dict]:
    return [
        {
            "id": item.tweet.id,
            "created_at": format_timestamp(item.tweet.created_at),
            "raw": repr(item.score.raw),
            "compound": repr(item.score.compound),
            "polarity": item.score.polarity,
            "emoji_count": item.score.emoji_count,
        }
        for item in scored
    ]


def write_scored_csv(path: str | Path, scored: Sequence[ScoredTweet]) -> None:
    """Scored dataset, one row per tweet, ordered by id."""
    rows = sorted(scored_rows(scored), key=lambda r: r["id"])
    _write_csv(Path(path), SCORED_FIELDS, rows)


def read_scored_csv(path: str | Path) -> dict[str, SentimentScore]:
    """Scores by tweet id, inverse of write_scored_csv."""
    scores: dict[str, SentimentScore] = {}
    with open(path, encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            scores[row["id"]] = SentimentScore(
                raw=float(row["raw"]),
                compound=float(row["compound"]),
                polarity=row["polarity"],
                emoji_count=int(row["emoji_count"]),
            )
    return scores


def daily_rows(series: Iterable[DailyAggregate]) -> list[dict]:
    return [
        {
            "date": agg.date.isoformat(),
            "n_tweets": agg.n_tweets,
            "sum_compound": repr(agg.sum_compound),
            "mean_compound": repr(agg.mean_compound),
            "n_positive": agg.n_positive,
            "n_neutral": agg.n_neutral,
            "n_negative": agg.n_negative,
        }
        for agg in series
    ]


def read_daily_csv(path: str | Path) -> list[DailyAggregate]:
    series = []
    with open(path, encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            series.append(
                DailyAggregate(
                    date=date.fromisoformat(row["date"]),
                    n_tweets=int(row["n_tweets"]),
                    sum_compound=float(row["sum_compound"]),
                    n_positive=int(row["n_positive"]),
                    n_neutral=int(row["n_neutral"]),
                    n_negative=int(row["n_negative"]),
                )
            )
    return series


def entity_rows(profiles: Iterable[EntityProfile]) -> list[dict]:
    return [
        {
            "entity": p.canonical_name,
            "n_tweets": p.n_tweets,
            "mean_compound": repr(p.mean_compound),
        }
        for p in profiles
    ]


def entity_daily_rows(profiles: Iterable[EntityProfile]) -> list[dict]:
    return [
        {
            "entity": p.canonical_name,
            "date": agg.date.isoformat(),
            "n_tweets": agg.n_tweets,
            "mean_compound": repr(agg.mean_compound),
        }
        for p in profiles
        for agg in p.daily
    ]


def keyword_rows(stats: Iterable[KeywordStat]) -> list[dict]:
    return [
        {
            "keyword": s.keyword,
            "tweet_count": s.tweet_count,
            "share": repr(s.share),
        }
        for s in stats
    ]


def read_keywords_csv(path: str | Path) -> list[KeywordStat]:
    stats = []
    with open(path, encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            stats.append(
                KeywordStat(row["keyword"], int(row["tweet_count"]), float(row["share"]))
            )
    return stats


def emoji_summary_rows(stats: EmojiStats) -> list[dict]:
    return [
        {
            "n_tweets": stats.n_tweets,
            "n_with_emoji": stats.n_with_emoji,
            "fraction_with_emoji": repr(stats.fraction_with_emoji),
        }
    ]


def emoji_count_rows(stats: EmojiStats) -> list[dict]:
    return [{"emoji": k, "count": v} for k, v in stats.per_emoji_counts.items()]


@dataclass
class ReportBundle:
    """Everything cmd_report computed, ready to serialize."""

    daily: list[DailyAggregate]
    emoji: EmojiStats
    profiles: list[EntityProfile] = field(default_factory=list)
    keywords: list[KeywordStat] = field(default_factory=list)
    entities_included: bool = False
    keywords_included: bool = False


def write_reports(bundle: ReportBundle, out_dir: str | Path, formats: Sequence[str]) -> list[Path]:
    """Emit the selected report files; returns the paths written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    tables: list[tuple[str, Sequence[str], list[dict]]] = [
        ("daily_sentiment", DAILY_FIELDS, daily_rows(bundle.daily)),
        ("emoji_stats", EMOJI_SUMMARY_FIELDS, emoji_summary_rows(bundle.emoji)),
        ("emoji_counts", EMOJI_COUNT_FIELDS, emoji_count_rows(bundle.emoji)),
    ]
    if bundle.entities_included:
        tables.append(("entities", ENTITY_FIELDS, entity_rows(bundle.profiles)))
        tables.append(
            ("entities_daily", ENTITY_DAILY_FIELDS, entity_daily_rows(bundle.profiles))
        )
    if bundle.keywords_included:
        tables.append(("keyword_frequency", KEYWORD_FIELDS, keyword_rows(bundle.keywords)))

    written: list[Path] = []
    for name, fields, rows in tables:
        if "csv" in formats:
            path = out / f"{name}.csv"
            _write_csv(path, fields, rows)
            written.append(path)
        if "json" in formats:
            path = out / f"{name}.json"
            _write_json(path, rows)
            written.append(path)
    if "svg" in formats:
        written.extend(_write_svgs(bundle, out))
    return written


def _write_svgs(bundle: ReportBundle, out: Path) -> list[Path]:
    charts: list[tuple[str, str]] = [
        (
            "daily_sentiment",
            svg.line_chart(
                [(a.date.isoformat(), a.mean_compound) for a in bundle.daily],
                title="Mean daily sentiment",
                y_min=-1.0,
                y_max=1.0,
            ),
        ),
        (
            "emoji_counts",
            svg.bar_chart(
                list(bundle.emoji.per_emoji_counts.items())[:20],
                title="Emoji frequency",
            ),
        ),
    ]
    if bundle.entities_included:
        charts.append(
            (
                "entity_counts",
                svg.bar_chart(
                    [(p.canonical_name, p.n_tweets) for p in bundle.profiles],
                    title="Tweet volume per entity",
                ),
            )
        )
        charts.append(
            (
                "entity_sentiment",
                svg.bar_chart(
                    [(p.canonical_name, p.mean_compound) for p in bundle.profiles],
                    title="Mean sentiment per entity",
                ),
            )
        )
    if bundle.keywords_included:
        charts.append(
            (
                "keyword_frequency",
                svg.bar_chart(
                    [(s.keyword, s.tweet_count) for s in bundle.keywords],
                    title="Keyword frequency",
                ),
            )
        )
    written = []
    for name, markup in charts:
        path = out / f"{name}.svg"
        path.write_text(markup, encoding="utf-8", newline="\n")
        written.append(path)
    return written
