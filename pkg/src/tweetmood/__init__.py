"""Sentiment analytics for short social-media posts.

Scores text + emoji with a valence lexicon, filters and ingests tweet
corpora, and aggregates sentiment over time, keywords, and entities.
"""

from .analytics import (
    DailyAggregate,
    EmojiStats,
    EntityProfile,
    ScoredTweet,
    daily_series,
    emoji_statistics,
    entity_profiles,
    merge_aggregates,
    polarity_distribution,
)
from .engine import (
    EngineConfig,
    FeatureBag,
    SentimentScore,
    classify,
    normalize,
    raw_score,
    score_text,
    tokenize,
)
from .ingest import (
    FetchConfig,
    FetchError,
    FilterSpec,
    KeywordStat,
    RecordError,
    Tweet,
    fetch_pages,
    filter_stream,
    keyword_frequency,
    parse_tweet_record,
    suggest_keywords,
)
from .lexicon import (
    Lexicon,
    LexiconEntry,
    LexiconError,
    default_lexicon,
    dump_lexicon,
    load_lexicon,
    lookup,
    merge_lexicons,
)

__version__ = "0.1.0"

__all__ = [
    "DailyAggregate", "EmojiStats", "EngineConfig", "EntityProfile",
    "FeatureBag", "FetchConfig", "FetchError", "FilterSpec", "KeywordStat",
    "Lexicon", "LexiconEntry", "LexiconError", "RecordError", "ScoredTweet",
    "SentimentScore", "Tweet", "classify", "daily_series", "default_lexicon",
    "dump_lexicon", "emoji_statistics", "entity_profiles", "fetch_pages",
    "filter_stream", "keyword_frequency", "load_lexicon", "lookup",
    "merge_aggregates", "merge_lexicons", "normalize", "parse_tweet_record",
    "polarity_distribution", "raw_score", "score_text", "suggest_keywords",
    "tokenize",
]
