"""Tweet corpus ingestion: JSONL parsing, collection filters, keyword
statistics, and a paged search-API client.

Corpora are JSON-lines files, one tweet object per line with fields
id, created_at, text, lang, is_retweet, hashtags, author_id. The same
object shape is served page-wise by the search endpoint:

    GET ?query=...&exclude=...&lang=...&start_time=...&end_time=...
        &max_results=N&next_token=T
    -> {"data": [tweet, ...], "meta": {"next_token": "..."}}

Parsing and filtering are pure and single-pass; bad corpus lines are
skipped and counted rather than aborting the stream.
"""
from __future__ import annotations

import json
import logging
import os
import re
import time
from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import IO, Iterable, Iterator

import requests

logger = logging.getLogger(__name__)

TOKEN_ENV_VAR = "TWEETMOOD_BEARER_TOKEN"

_HASHTAG_RE = re.compile(r"#(\w+)")
_TERM_RE = re.compile(r"[a-z0-9][a-z0-9_']*")

# Function words ignored when mining supplementary keyword candidates.
_STOPWORDS = frozenset("""
a about after all also am an and any are as at be because been before but by
can could did do does for from had has have he her here him his how i if in
into is it its just like me more most my no not now of on or our out over so
she some than that the their them then there these they this to too up us
was we were what when where which who will with would you your
""".split())


class RecordError(ValueError):
    """One malformed tweet record (bad JSON, missing field, bad timestamp)."""


@dataclass(frozen=True)
class Tweet:
    id: str
    created_at: datetime
    text: str
    lang: str = "und"
    is_retweet: bool = False
    hashtags: tuple[str, ...] = ()
    author_id: str = ""


@dataclass(frozen=True)
class FilterSpec:
    """Collection-filter predicate.

    Keywords match case-insensitively anywhere in the text or exactly
    against the hashtag list; an empty keyword list disables that
    check. Tweets carrying any excluded hashtag are dropped.
    """

    include_keywords: tuple[str, ...] = ()
    exclude_hashtags: tuple[str, ...] = ()
    required_lang: str | None = "en"
    drop_retweets: bool = True
    date_window: tuple[datetime, datetime] | None = None

    def __post_init__(self):
        if self.date_window is not None:
            start, end = self.date_window
            if start > end:
                raise ValueError("date_window start must be <= end")


@dataclass(frozen=True)
class KeywordStat:
    keyword: str
    tweet_count: int
    share: float


def _normalize_term(term: str) -> str:
    return term.lstrip("#").casefold()


def _parse_timestamp(value) -> datetime:
    if not isinstance(value, str) or not value:
        raise RecordError(f"missing or non-string created_at: {value!r}")
    text = value.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    try:
        stamp = datetime.fromisoformat(text)
    except ValueError:
        raise RecordError(f"unparseable created_at {value!r}") from None
    if stamp.tzinfo is None:
        stamp = stamp.replace(tzinfo=timezone.utc)
    stamp = stamp.astimezone(timezone.utc).replace(microsecond=0)
    if not 1970 <= stamp.year < 2100:
        raise RecordError(f"created_at {value!r} outside [1970, 2100)")
    return stamp


def scan_hashtags(text: str) -> tuple[str, ...]:
    """Lowercased '#'-prefixed tokens found in the text, in order."""
    return tuple(tag.lower() for tag in _HASHTAG_RE.findall(text))


def tweet_from_json(obj: dict) -> Tweet:
    """Build a Tweet from one decoded corpus/API object.

    id, text and created_at are required; hashtags fall back to
    scanning the text; the remaining fields get neutral defaults.
    """
    if not isinstance(obj, dict):
        raise RecordError(f"expected a JSON object, got {type(obj).__name__}")
    tweet_id = obj.get("id")
    if tweet_id is None or str(tweet_id) == "":
        raise RecordError("missing id")
    text = obj.get("text")
    if not isinstance(text, str):
        raise RecordError("missing text")
    created_at = _parse_timestamp(obj.get("created_at"))
    raw_tags = obj.get("hashtags")
    if raw_tags is None:
        hashtags = scan_hashtags(text)
    else:
        hashtags = tuple(
            _normalize_term(str(t)) for t in raw_tags if str(t).strip("#").strip()
        )
    return Tweet(
        id=str(tweet_id),
        created_at=created_at,
        text=text,
        lang=str(obj.get("lang", "und")),
        is_retweet=bool(obj.get("is_retweet", False)),
        hashtags=hashtags,
        author_id=str(obj.get("author_id", "")),
    )


def parse_tweet_record(line: str) -> Tweet:
    """Parse one JSONL corpus line."""
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise RecordError(f"bad JSON: {exc}") from None
    return tweet_from_json(obj)


def format_timestamp(stamp: datetime) -> str:
    """RFC-3339 at second precision in UTC (the corpus wire format)."""
    return stamp.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def tweet_to_json(tweet: Tweet) -> dict:
    return {
        "id": tweet.id,
        "created_at": format_timestamp(tweet.created_at),
        "text": tweet.text,
        "lang": tweet.lang,
        "is_retweet": tweet.is_retweet,
        "hashtags": list(tweet.hashtags),
        "author_id": tweet.author_id,
    }


def write_corpus(tweets: Iterable[Tweet], stream: IO[str]) -> int:
    n = 0
    for tweet in tweets:
        stream.write(json.dumps(tweet_to_json(tweet), ensure_ascii=False) + "\n")
        n += 1
    return n


def iter_corpus(
    lines: Iterable[str], errors: list[tuple[int, str]] | None = None
) -> Iterator[Tweet]:
    """Yield tweets from JSONL lines, skipping and counting bad ones.

    Blank lines are ignored; each failure is appended to ``errors`` as
    (line_no, message) when a list is supplied.
    """
    for line_no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            yield parse_tweet_record(line)
        except RecordError as exc:
            logger.debug("corpus line %d skipped: %s", line_no, exc)
            if errors is not None:
                errors.append((line_no, str(exc)))


def load_corpus_file(path: str | Path) -> tuple[list[Tweet], list[tuple[int, str]]]:
    errors: list[tuple[int, str]] = []
    with open(path, encoding="utf-8") as fh:
        tweets = list(iter_corpus(fh, errors))
    return tweets, errors


def _lang_matches(tweet_lang: str, required: str) -> bool:
    return tweet_lang.split("-")[0].casefold() == required.split("-")[0].casefold()


def _matches_keywords(tweet: Tweet, keywords: tuple[str, ...]) -> bool:
    text = tweet.text.casefold()
    for keyword in keywords:
        norm = _normalize_term(keyword)
        if norm and (norm in text or norm in tweet.hashtags):
            return True
    return False


def drop_reason(tweet: Tweet, spec: FilterSpec) -> str | None:
    """First collection rule the tweet violates, or None if it passes."""
    if spec.drop_retweets and tweet.is_retweet:
        return "retweet"
    if spec.required_lang is not None and not _lang_matches(
        tweet.lang, spec.required_lang
    ):
        return "lang"
    if spec.date_window is not None:
        start, end = spec.date_window
        if not start <= tweet.created_at <= end:
            return "date"
    if spec.include_keywords and not _matches_keywords(tweet, spec.include_keywords):
        return "keyword"
    if spec.exclude_hashtags:
        excluded = {_normalize_term(t) for t in spec.exclude_hashtags}
        if excluded.intersection(tweet.hashtags):
            return "excluded_hashtag"
    return None


def filter_stream(
    tweets: Iterable[Tweet], spec: FilterSpec, stats: Counter | None = None
) -> Iterator[Tweet]:
    """Apply the collection filters, preserving order.

    Duplicate ids are dropped (first occurrence kept). When a Counter
    is supplied it accumulates per-reason drop counts.
    """
    seen: set[str] = set()
    for tweet in tweets:
        if tweet.id in seen:
            if stats is not None:
                stats["duplicate"] += 1
            continue
        seen.add(tweet.id)
        reason = drop_reason(tweet, spec)
        if reason is not None:
            if stats is not None:
                stats[reason] += 1
            continue
        yield tweet


def keyword_frequency(
    tweets: Iterable[Tweet], keywords: Iterable[str]
) -> list[KeywordStat]:
    """Per-keyword tweet counts over a corpus, sorted descending.

    A tweet counts for a keyword when the keyword appears in the text
    (case-insensitive) or exactly in the hashtag list; shares are
    fractions of corpus size and may overlap across keywords.
    """
    corpus = list(tweets)
    total = len(corpus)
    stats = []
    for keyword in keywords:
        count = sum(
            _matches_keywords(tweet, (keyword,)) for tweet in corpus
        )
        stats.append(
            KeywordStat(keyword, count, count / total if total else 0.0)
        )
    stats.sort(key=lambda s: (-s.tweet_count, s.keyword))
    return stats


def suggest_keywords(
    tweets: Iterable[Tweet],
    official_keywords: Iterable[str],
    min_share: float = 0.05,
) -> list[KeywordStat]:
    """Candidate supplementary keywords co-occurring with the official
    ones.

    Counts, per tweet, the distinct hashtags and plain word tokens
    (stopwords and the official keywords themselves excluded) and
    returns the terms present in at least ``min_share`` of the corpus,
    ranked by share descending.
    """
    if not 0 < min_share <= 1:
        raise ValueError(f"min_share must be in (0, 1], got {min_share}")
    official = {_normalize_term(k) for k in official_keywords}
    corpus = list(tweets)
    counts: Counter[str] = Counter()
    for tweet in corpus:
        terms = set(tweet.hashtags)
        terms.update(_TERM_RE.findall(tweet.text.casefold()))
        for term in terms:
            if len(term) < 2 or term.isdigit():
                continue
            if term in _STOPWORDS or term in official:
                continue
            counts[term] += 1
    total = len(corpus)
    stats = [
        KeywordStat(term, count, count / total)
        for term, count in counts.items()
        if total and count / total >= min_share
    ]
    stats.sort(key=lambda s: (-s.tweet_count, s.keyword))
    return stats


class FetchError(RuntimeError):
    """Paged fetch aborted; pages_fetched tells how far it got."""

    def __init__(self, message: str, pages_fetched: int = 0):
        super().__init__(message)
        self.pages_fetched = pages_fetched


@dataclass(frozen=True)
class FetchConfig:
    rate_per_sec: float = 1.0
    max_retries: int = 3
    timeout: float = 10.0
    backoff_base: float = 0.5
    backoff_cap: float = 8.0
    bearer_token: str | None = None


def _query_params(spec: FilterSpec, page_size: int) -> dict[str, str]:
    params = {"max_results": str(page_size)}
    if spec.include_keywords:
        params["query"] = " ".join(spec.include_keywords)
    if spec.exclude_hashtags:
        params["exclude"] = ",".join(spec.exclude_hashtags)
    if spec.required_lang is not None:
        params["lang"] = spec.required_lang
    if spec.date_window is not None:
        params["start_time"] = format_timestamp(spec.date_window[0])
        params["end_time"] = format_timestamp(spec.date_window[1])
    return params


def fetch_pages(
    endpoint: str,
    spec: FilterSpec,
    page_size: int = 100,
    config: FetchConfig = FetchConfig(),
) -> list[Tweet]:
    """Fetch the whole result set of a paged search endpoint.

    Follows the ``next_token`` cursor until absent, parses and
    deduplicates tweets, spaces requests to the configured rate, and
    retries 5xx/timeouts with capped exponential backoff. Client errors
    (4xx) and an exhausted retry budget abort with FetchError.
    """
    if page_size <= 0:
        raise ValueError("page_size must be positive")
    session = requests.Session()
    token = config.bearer_token or os.environ.get(TOKEN_ENV_VAR)
    if token:
        session.headers["Authorization"] = f"Bearer {token}"

    base_params = _query_params(spec, page_size)
    tweets: list[Tweet] = []
    seen: set[str] = set()
    next_token: str | None = None
    pages = 0
    min_interval = 1.0 / config.rate_per_sec if config.rate_per_sec > 0 else 0.0
    last_request = 0.0

    while True:
        params = dict(base_params)
        if next_token:
            params["next_token"] = next_token

        payload = None
        for attempt in range(config.max_retries + 1):
            wait = last_request + min_interval - time.monotonic()
            if wait > 0:
                time.sleep(wait)
            last_request = time.monotonic()
            try:
                response = session.get(endpoint, params=params, timeout=config.timeout)
            except (requests.ConnectionError, requests.Timeout) as exc:
                failure = f"request failed: {exc}"
            else:
                if response.status_code < 400:
                    try:
                        payload = response.json()
                    except ValueError as exc:
                        raise FetchError(f"invalid JSON page: {exc}", pages)
                    break
                if response.status_code < 500:
                    raise FetchError(
                        f"client error {response.status_code} from {endpoint}", pages
                    )
                failure = f"server error {response.status_code}"
            if attempt == config.max_retries:
                raise FetchError(
                    f"{failure}; retry budget exhausted after "
                    f"{config.max_retries} retries", pages
                )
            backoff = min(config.backoff_base * 2**attempt, config.backoff_cap)
            logger.debug("retrying page %d in %.2fs (%s)", pages + 1, backoff, failure)
            time.sleep(backoff)

        pages += 1
        for obj in payload.get("data", []):
            try:
                tweet = tweet_from_json(obj)
            except RecordError as exc:
                logger.debug("page %d: record skipped: %s", pages, exc)
                continue
            if tweet.id not in seen:
                seen.add(tweet.id)
                tweets.append(tweet)
        next_token = (payload.get("meta") or {}).get("next_token")
        if not next_token:
            return tweets
