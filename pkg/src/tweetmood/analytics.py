"""Aggregation of scored tweets: daily sentiment series, polarity
distributions, emoji usage, and per-entity profiles.

Daily aggregates form a commutative monoid under merge_aggregates
(zero aggregate as identity), so corpora can be aggregated shard-wise
in any order and merged. Days are bucketed by UTC calendar date and
zero-tweet days inside the reporting window are emitted explicitly.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from datetime import date, timedelta
from typing import Iterable, Sequence

from .engine import NEGATIVE, NEUTRAL, POSITIVE, SentimentScore, tokenize
from .ingest import Tweet
from .lexicon import Lexicon


@dataclass(frozen=True)
class ScoredTweet:
    tweet: Tweet
    score: SentimentScore


@dataclass(frozen=True)
class DailyAggregate:
    date: date
    n_tweets: int = 0
    sum_compound: float = 0.0
    n_positive: int = 0
    n_neutral: int = 0
    n_negative: int = 0

    @property
    def mean_compound(self) -> float:
        return self.sum_compound / self.n_tweets if self.n_tweets else 0.0

    @classmethod
    def zero(cls, day: date) -> "DailyAggregate":
        return cls(date=day)

    @classmethod
    def of(cls, day: date, scores: Iterable[SentimentScore]) -> "DailyAggregate":
        agg = cls.zero(day)
        for score in scores:
            agg = _accumulate(agg, score)
        return agg


def _accumulate(agg: DailyAggregate, score: SentimentScore) -> DailyAggregate:
    return DailyAggregate(
        date=agg.date,
        n_tweets=agg.n_tweets + 1,
        sum_compound=agg.sum_compound + score.compound,
        n_positive=agg.n_positive + (score.polarity == POSITIVE),
        n_neutral=agg.n_neutral + (score.polarity == NEUTRAL),
        n_negative=agg.n_negative + (score.polarity == NEGATIVE),
    )


def merge_aggregates(a: DailyAggregate, b: DailyAggregate) -> DailyAggregate:
    """Combine two same-day aggregates; counts and sums add."""
    if a.date != b.date:
        raise ValueError(f"cannot merge aggregates for {a.date} and {b.date}")
    return DailyAggregate(
        date=a.date,
        n_tweets=a.n_tweets + b.n_tweets,
        sum_compound=a.sum_compound + b.sum_compound,
        n_positive=a.n_positive + b.n_positive,
        n_neutral=a.n_neutral + b.n_neutral,
        n_negative=a.n_negative + b.n_negative,
    )


@dataclass(frozen=True)
class EntityProfile:
    canonical_name: str
    aliases: tuple[str, ...]
    n_tweets: int
    mean_compound: float
    daily: tuple[DailyAggregate, ...]


@dataclass(frozen=True)
class EmojiStats:
    n_tweets: int
    n_with_emoji: int
    fraction_with_emoji: float
    per_emoji_counts: dict[str, int]


def _day_range(first: date, last: date) -> Iterable[date]:
    day = first
    while day <= last:
        yield day
        day += timedelta(days=1)


def daily_series(
    scored: Iterable[ScoredTweet],
    window: tuple[date, date] | None = None,
) -> list[DailyAggregate]:
    """One aggregate per UTC calendar day, ascending, gap-filled.

    With a window only tweets inside it are aggregated and every day of
    the window is emitted; otherwise the series spans the days actually
    present in the data.
    """
    buckets: dict[date, DailyAggregate] = {}
    for item in scored:
        day = item.tweet.created_at.date()
        if window is not None and not window[0] <= day <= window[1]:
            continue
        current = buckets.get(day, DailyAggregate.zero(day))
        buckets[day] = _accumulate(current, item.score)
    if window is not None:
        first, last = window
    elif buckets:
        first, last = min(buckets), max(buckets)
    else:
        return []
    return [buckets.get(day, DailyAggregate.zero(day)) for day in _day_range(first, last)]


def _alias_pattern(aliases: Sequence[str]) -> re.Pattern:
    alternatives = "|".join(re.escape(a) for a in sorted(aliases, key=len, reverse=True))
    return re.compile(rf"(?<!\w)(?:{alternatives})(?!\w)", re.IGNORECASE)


def entity_profiles(
    scored: Iterable[ScoredTweet],
    entities: Iterable[tuple[str, Sequence[str]]],
) -> list[EntityProfile]:
    """Per-entity tweet volume, mean sentiment, and daily breakdown.

    A tweet counts toward an entity when any alias occurs in its text
    as a case-insensitive whole word; one tweet may count toward
    several entities.
    """
    corpus = list(scored)
    profiles = []
    for canonical_name, raw_aliases in entities:
        aliases = tuple(raw_aliases)
        if not aliases:
            raise ValueError(f"entity {canonical_name!r} has no aliases")
        if canonical_name not in aliases:
            aliases = (canonical_name, *aliases)
        pattern = _alias_pattern(aliases)
        matched = [item for item in corpus if pattern.search(item.tweet.text)]
        n_tweets = len(matched)
        total = sum(item.score.compound for item in matched)
        profiles.append(
            EntityProfile(
                canonical_name=canonical_name,
                aliases=aliases,
                n_tweets=n_tweets,
                mean_compound=total / n_tweets if n_tweets else 0.0,
                daily=tuple(daily_series(matched)),
            )
        )
    return profiles


def emoji_statistics(tweets: Iterable[Tweet], lexicon: Lexicon) -> EmojiStats:
    """How many tweets carry extractable emoji, and which ones.

    per_emoji_counts holds occurrence counts (a tweet with the same
    emoji twice contributes 2), ordered by count descending.
    """
    n_tweets = 0
    n_with_emoji = 0
    counts: Counter[str] = Counter()
    for tweet in tweets:
        n_tweets += 1
        bag = tokenize(tweet.text, lexicon)
        if bag.emoji_count:
            n_with_emoji += 1
        for key, count in bag.features:
            if key in lexicon.emoji_entries:
                counts[key] += count
    ranked = dict(sorted(counts.items(), key=lambda kv: (-kv[1], kv[0])))
    return EmojiStats(
        n_tweets=n_tweets,
        n_with_emoji=n_with_emoji,
        fraction_with_emoji=n_with_emoji / n_tweets if n_tweets else 0.0,
        per_emoji_counts=ranked,
    )


def polarity_distribution(scored: Iterable[ScoredTweet]) -> tuple[int, int, int]:
    """(n_positive, n_neutral, n_negative) over the input."""
    counts = Counter(item.score.polarity for item in scored)
    return counts[POSITIVE], counts[NEUTRAL], counts[NEGATIVE]
