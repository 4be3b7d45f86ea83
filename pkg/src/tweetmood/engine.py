"""Sentiment scoring engine: tokenize, score, normalize, classify.

The model is a linear valence sum over extracted features (word tokens
and emoji), normalized into [-1, 1]:

    raw      = sum(valence(feature) * count(feature))
    compound = raw / sqrt(raw**2 + alpha)        with alpha = 15

Unknown features contribute 0. Polarity is positive when the compound
score exceeds the positive threshold, negative when below the negative
threshold, neutral otherwise (both thresholds default to strict 0).

All operations are pure functions of immutable inputs; scoring
independent posts in parallel is safe.
"""
from __future__ import annotations

import math
import string
from dataclasses import dataclass
from typing import Callable, Sequence

from .lexicon import Lexicon, lookup

POSITIVE = "positive"
NEUTRAL = "neutral"
NEGATIVE = "negative"

DEFAULT_ALPHA = 15.0

# Leading/trailing ASCII punctuation stripped from word tokens; interior
# characters (apostrophes, hyphens) are kept, so "i'm" stays one token.
_EDGE_PUNCT = string.punctuation

# Beyond this magnitude raw*raw would overflow; the true compound value
# is within one ulp of +-1 anyway.
_RAW_HUGE = 1e100


@dataclass(frozen=True)
class EngineConfig:
    """Scoring knobs.

    raw_adjusters is an extension hook for contextual heuristics
    (boosters, negation, all-caps emphasis and similar): each callable
    receives the feature bag and the raw score so far and returns an
    adjusted raw score. Empty by default, so the default scoring path
    is exactly the linear model above.
    """

    alpha: float = DEFAULT_ALPHA
    positive_threshold: float = 0.0
    negative_threshold: float = 0.0
    raw_adjusters: Sequence[Callable[["FeatureBag", float], float]] = ()

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.negative_threshold > self.positive_threshold:
            raise ValueError("negative_threshold must be <= positive_threshold")


DEFAULT_CONFIG = EngineConfig()


@dataclass(frozen=True)
class FeatureBag:
    """Extracted features of one post.

    features holds (key, count) pairs in first-appearance order;
    total_features is the sum of counts; emoji_count is the number of
    emoji occurrences among them.
    """

    features: tuple[tuple[str, int], ...]
    total_features: int
    emoji_count: int


EMPTY_BAG = FeatureBag(features=(), total_features=0, emoji_count=0)


@dataclass(frozen=True)
class SentimentScore:
    raw: float
    compound: float
    polarity: str
    emoji_count: int


def _clean_word(token: str) -> str:
    return token.strip(_EDGE_PUNCT).casefold()


def tokenize(text: str, lexicon: Lexicon) -> FeatureBag:
    """Split text into a feature bag of word tokens and emoji.

    Text is split on whitespace. Within each chunk, emoji are extracted
    by longest match against the lexicon's emoji keys (so a flag or
    skin-tone sequence wins over its first codepoint), even when glued
    to surrounding words. Remaining word tokens are case-folded and
    stripped of leading/trailing punctuation, which also removes the
    '#' from hashtags and the '@' from mentions; tokens that were pure
    punctuation vanish.
    """
    counts: dict[str, int] = {}
    emoji_count = 0
    index = lexicon.emoji_index

    def add_word(raw: str) -> None:
        word = _clean_word(raw)
        if word:
            counts[word] = counts.get(word, 0) + 1

    for chunk in text.split():
        start = 0
        i = 0
        n = len(chunk)
        while i < n:
            matched = None
            for key in index.get(chunk[i], ()):
                if chunk.startswith(key, i):
                    matched = key
                    break
            if matched is None:
                i += 1
                continue
            if start < i:
                add_word(chunk[start:i])
            counts[matched] = counts.get(matched, 0) + 1
            emoji_count += 1
            i += len(matched)
            start = i
        if start < n:
            add_word(chunk[start:])

    return FeatureBag(
        features=tuple(counts.items()),
        total_features=sum(counts.values()),
        emoji_count=emoji_count,
    )


def raw_score(bag: FeatureBag, lexicon: Lexicon) -> float:
    """Valence-weighted feature sum; features absent from the lexicon
    contribute 0."""
    total = 0.0
    for key, count in bag.features:
        valence = lookup(lexicon, key)
        if valence is not None:
            total += valence * count
    return total


def normalize(raw: float, config: EngineConfig = DEFAULT_CONFIG) -> float:
    """Map an unbounded raw score into (-1, 1), preserving sign and
    order."""
    if raw == 0.0:
        return 0.0
    if abs(raw) > _RAW_HUGE:
        return math.copysign(1.0, raw)
    return raw / math.sqrt(raw * raw + config.alpha)


def classify(compound: float, config: EngineConfig = DEFAULT_CONFIG) -> str:
    """Polarity label for a compound score."""
    if compound > config.positive_threshold:
        return POSITIVE
    if compound < config.negative_threshold:
        return NEGATIVE
    return NEUTRAL


def score_text(
    text: str, lexicon: Lexicon, config: EngineConfig = DEFAULT_CONFIG
) -> SentimentScore:
    """Tokenize and score one post."""
    bag = tokenize(text, lexicon)
    raw = raw_score(bag, lexicon)
    for adjust in config.raw_adjusters:
        raw = adjust(bag, raw)
    compound = normalize(raw, config)
    return SentimentScore(
        raw=raw,
        compound=compound,
        polarity=classify(compound, config),
        emoji_count=bag.emoji_count,
    )
