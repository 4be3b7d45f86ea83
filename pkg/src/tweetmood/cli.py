"""Command-line front end: ingest -> score -> report.

Subcommands mirror the pipeline stages:

    tweetmood ingest   SOURCE --out corpus.jsonl [filters]
    tweetmood score    CORPUS --out scored.csv [--lexicon ...]
    tweetmood report   SCORED CORPUS --out reports/ [--entities ...]
    tweetmood keywords CORPUS --keywords k1,k2 [--min-share 0.05]

SOURCE is a JSONL file or an http(s) endpoint speaking the paged
search protocol. Options may also come from a flat ``key = value``
config file (--config); command-line flags win.
"""
from __future__ import annotations

import argparse
import sys
from collections import Counter
from datetime import datetime, timezone
from pathlib import Path

from . import analytics, ingest, reports
from .engine import EngineConfig, score_text
from .ingest import FetchConfig, FetchError, FilterSpec, RecordError
from .lexicon import (
    LexiconError,
    default_emoji_lexicon,
    default_word_lexicon,
    load_lexicon_file,
    merge_lexicons,
)

_CONFIG_KEYS = {
    "lexicon", "emoji_lexicon", "entities", "out", "format", "alpha",
    "positive_threshold", "negative_threshold", "lang", "keywords",
    "exclude", "start", "end", "min_share", "page_size",
}


class CliError(Exception):
    """Fatal command error; message goes to stderr, exit code 1."""


def _parse_stamp(value: str, end_of_day: bool = False) -> datetime:
    text = value.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    try:
        stamp = datetime.fromisoformat(text)
    except ValueError:
        raise CliError(f"unparseable timestamp {value!r}") from None
    if len(text) == 10 and end_of_day:  # bare date: make the window inclusive
        stamp = stamp.replace(hour=23, minute=59, second=59)
    if stamp.tzinfo is None:
        stamp = stamp.replace(tzinfo=timezone.utc)
    return stamp.astimezone(timezone.utc)


def _split_list(value: str | None) -> tuple[str, ...]:
    if not value:
        return ()
    return tuple(part.strip() for part in value.split(",") if part.strip())


def _merge_config(args: argparse.Namespace) -> argparse.Namespace:
    """Fill unset flags from the --config file; flags win."""
    if not getattr(args, "config", None):
        return args
    try:
        values = reports.parse_config_file(args.config)
    except OSError as exc:
        raise CliError(f"cannot read config file: {exc}") from None
    unknown = set(values) - _CONFIG_KEYS
    if unknown:
        raise CliError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for key, value in values.items():
        attr = key if key != "format" else "formats"
        if hasattr(args, attr) and getattr(args, attr) is None:
            setattr(args, attr, value)
    return args


def _filter_spec(args: argparse.Namespace) -> FilterSpec:
    window = None
    if getattr(args, "start", None) or getattr(args, "end", None):
        if not (args.start and args.end):
            raise CliError("--start and --end must be given together")
        window = (_parse_stamp(args.start), _parse_stamp(args.end, end_of_day=True))
    return FilterSpec(
        include_keywords=_split_list(getattr(args, "keywords", None)),
        exclude_hashtags=_split_list(getattr(args, "exclude", None)),
        required_lang=getattr(args, "lang", None) or "en",
        drop_retweets=not getattr(args, "keep_retweets", False),
        date_window=window,
    )


def _load_lexicons(args: argparse.Namespace):
    try:
        word = (
            load_lexicon_file(args.lexicon)
            if getattr(args, "lexicon", None)
            else default_word_lexicon()
        )
        emoji = (
            load_lexicon_file(args.emoji_lexicon)
            if getattr(args, "emoji_lexicon", None)
            else default_emoji_lexicon()
        )
    except (OSError, LexiconError) as exc:
        raise CliError(f"cannot load lexicon: {exc}") from None
    return merge_lexicons(word, emoji)


def _engine_config(args: argparse.Namespace) -> EngineConfig:
    try:
        return EngineConfig(
            alpha=float(args.alpha if args.alpha is not None else 15.0),
            positive_threshold=float(
                args.positive_threshold if args.positive_threshold is not None else 0.0
            ),
            negative_threshold=float(
                args.negative_threshold if args.negative_threshold is not None else 0.0
            ),
        )
    except ValueError as exc:
        raise CliError(str(exc)) from None


def cmd_ingest(args: argparse.Namespace) -> int:
    args = _merge_config(args)
    spec = _filter_spec(args)
    if not args.out:
        raise CliError("--out corpus path required")

    bad_lines: list[tuple[int, str]] = []
    if args.source.startswith(("http://", "https://")):
        config = FetchConfig(
            rate_per_sec=float(args.rate if args.rate is not None else 1.0),
            max_retries=int(args.retries if args.retries is not None else 3),
        )
        try:
            tweets = ingest.fetch_pages(
                args.source, spec,
                page_size=int(args.page_size if args.page_size is not None else 100),
                config=config,
            )
        except FetchError as exc:
            raise CliError(f"fetch failed: {exc}") from None
    else:
        try:
            tweets, bad_lines = ingest.load_corpus_file(args.source)
        except OSError as exc:
            raise CliError(f"cannot read corpus: {exc}") from None

    stats: Counter[str] = Counter()
    kept_tweets = list(ingest.filter_stream(tweets, spec, stats))
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            ingest.write_corpus(kept_tweets, fh)
    except OSError as exc:
        raise CliError(f"cannot write corpus: {exc}") from None

    print(f"read {len(tweets) + len(bad_lines)}")
    print(f"kept {len(kept_tweets)}")
    if bad_lines:
        print(f"dropped bad_line {len(bad_lines)}")
    for reason in sorted(stats):
        print(f"dropped {reason} {stats[reason]}")
    return 0


def cmd_score(args: argparse.Namespace) -> int:
    args = _merge_config(args)
    if not args.out:
        raise CliError("--out CSV path required")
    lexicon = _load_lexicons(args)
    config = _engine_config(args)
    try:
        tweets, bad_lines = ingest.load_corpus_file(args.corpus)
    except OSError as exc:
        raise CliError(f"cannot read corpus: {exc}") from None
    if bad_lines:
        print(f"skipped {len(bad_lines)} bad corpus lines", file=sys.stderr)
    scored = [
        analytics.ScoredTweet(tweet, score_text(tweet.text, lexicon, config))
        for tweet in tweets
    ]
    try:
        reports.write_scored_csv(args.out, scored)
    except OSError as exc:
        raise CliError(f"cannot write scores: {exc}") from None
    print(f"scored {len(scored)} tweets -> {args.out}")
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    args = _merge_config(args)
    formats = _split_list(args.formats) or ("csv",)
    lexicon = _load_lexicons(args)
    try:
        tweets, _ = ingest.load_corpus_file(args.corpus)
        scores = reports.read_scored_csv(args.scored)
    except OSError as exc:
        raise CliError(f"cannot read inputs: {exc}") from None

    scored = [
        analytics.ScoredTweet(tweet, scores[tweet.id])
        for tweet in tweets
        if tweet.id in scores
    ]
    unmatched = len(tweets) - len(scored)
    if unmatched:
        print(f"warning: {unmatched} corpus tweets missing from scores", file=sys.stderr)

    window = None
    if args.start and args.end:
        window = (
            _parse_stamp(args.start).date(),
            _parse_stamp(args.end, end_of_day=True).date(),
        )
    bundle = reports.ReportBundle(
        daily=analytics.daily_series(scored, window),
        emoji=analytics.emoji_statistics(tweets, lexicon),
    )
    if args.entities:
        try:
            entities = reports.load_entities(args.entities)
        except (OSError, ValueError) as exc:
            raise CliError(f"cannot load entities file: {exc}") from None
        bundle.profiles = analytics.entity_profiles(scored, entities)
        bundle.entities_included = True
    if args.keywords:
        bundle.keywords = ingest.keyword_frequency(tweets, _split_list(args.keywords))
        bundle.keywords_included = True

    try:
        written = reports.write_reports(bundle, args.out or ".", formats)
    except (OSError, ValueError) as exc:
        raise CliError(f"cannot write reports: {exc}") from None
    for path in written:
        print(path)
    return 0


def cmd_keywords(args: argparse.Namespace) -> int:
    args = _merge_config(args)
    official = _split_list(args.keywords)
    if not official:
        raise CliError("--keywords required (comma-separated official keywords)")
    try:
        tweets, _ = ingest.load_corpus_file(args.corpus)
    except OSError as exc:
        raise CliError(f"cannot read corpus: {exc}") from None
    min_share = float(args.min_share if args.min_share is not None else 0.05)
    frequency = ingest.keyword_frequency(tweets, official)
    try:
        suggestions = ingest.suggest_keywords(tweets, official, min_share)
    except ValueError as exc:
        raise CliError(str(exc)) from None

    print("keyword frequency:")
    for stat in frequency:
        print(f"  {stat.keyword}\t{stat.tweet_count}\t{stat.share:.4f}")
    print(f"suggested keywords (share >= {min_share:g}):")
    for stat in suggestions:
        print(f"  {stat.keyword}\t{stat.tweet_count}\t{stat.share:.4f}")

    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        reports._write_csv(
            out / "keyword_frequency.csv", reports.KEYWORD_FIELDS,
            reports.keyword_rows(frequency),
        )
        reports._write_csv(
            out / "suggested_keywords.csv", reports.KEYWORD_FIELDS,
            reports.keyword_rows(suggestions),
        )
        print(out / "keyword_frequency.csv")
        print(out / "suggested_keywords.csv")
    return 0


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key = value config file")
    parser.add_argument("--out", help="output path (file or directory per command)")


def _add_lexicon_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--lexicon", help="word lexicon file (default: bundled)")
    parser.add_argument("--emoji-lexicon", dest="emoji_lexicon",
                        help="emoji lexicon file (default: bundled)")
    parser.add_argument("--alpha", help="normalization constant (default 15)")
    parser.add_argument("--positive-threshold", dest="positive_threshold",
                        help="compound threshold for the positive label (default 0)")
    parser.add_argument("--negative-threshold", dest="negative_threshold",
                        help="compound threshold for the negative label (default 0)")


def _add_filter_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--keywords", help="comma-separated include keywords")
    parser.add_argument("--exclude", help="comma-separated hashtags to exclude")
    parser.add_argument("--lang", help="required language code (default en)")
    parser.add_argument("--keep-retweets", action="store_true",
                        help="keep retweets instead of dropping them")
    parser.add_argument("--start", help="window start (RFC-3339 or date)")
    parser.add_argument("--end", help="window end (RFC-3339 or date)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tweetmood",
        description="Lexicon + emoji sentiment analytics over tweet corpora.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_ingest = sub.add_parser("ingest", help="filter a corpus file or fetch an endpoint")
    p_ingest.add_argument("source", help="JSONL corpus path or http(s) endpoint")
    _add_common(p_ingest)
    _add_filter_flags(p_ingest)
    p_ingest.add_argument("--page-size", dest="page_size", help="endpoint page size")
    p_ingest.add_argument("--rate", help="max endpoint requests per second")
    p_ingest.add_argument("--retries", help="retry budget for transient failures")
    p_ingest.set_defaults(func=cmd_ingest)

    p_score = sub.add_parser("score", help="score a corpus into a CSV dataset")
    p_score.add_argument("corpus", help="JSONL corpus path")
    _add_common(p_score)
    _add_lexicon_flags(p_score)
    p_score.set_defaults(func=cmd_score)

    p_report = sub.add_parser("report", help="aggregate scores into report files")
    p_report.add_argument("scored", help="scored CSV from the score command")
    p_report.add_argument("corpus", help="JSONL corpus path")
    _add_common(p_report)
    _add_lexicon_flags(p_report)
    p_report.add_argument("--entities", help="JSON entity/alias file")
    p_report.add_argument("--keywords", help="comma-separated keywords to tabulate")
    p_report.add_argument("--start", help="report window start date")
    p_report.add_argument("--end", help="report window end date")
    p_report.add_argument("--format", dest="formats",
                          help="comma-separated subset of csv,json,svg (default csv)")
    p_report.set_defaults(func=cmd_report)

    p_kw = sub.add_parser("keywords", help="keyword frequencies and suggestions")
    p_kw.add_argument("corpus", help="JSONL corpus path")
    _add_common(p_kw)
    p_kw.add_argument("--keywords", help="comma-separated official keywords")
    p_kw.add_argument("--min-share", dest="min_share",
                      help="minimum corpus share for suggestions (default 0.05)")
    p_kw.set_defaults(func=cmd_keywords)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (LexiconError, RecordError, FetchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
