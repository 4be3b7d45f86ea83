"""Valence lexicons for word tokens and emoji sequences.

A lexicon maps case-folded word tokens and literal emoji codepoint
sequences to valences in [-4, +4]. Lexicons are loaded from UTF-8
tab-separated files (``key<TAB>valence``, ``#`` comment lines ignored)
and are immutable after load, so one instance can be shared freely
across concurrent scorers.

Emoji keys may be written either as the literal UTF-8 sequence or in
``U+XXXX`` codepoint notation (space- or hyphen-joined for
multi-codepoint sequences such as flags and skin-tone modifiers).
"""
from __future__ import annotations

import io
import logging
import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import IO, Iterable

logger = logging.getLogger(__name__)

VALENCE_MIN = -4.0
VALENCE_MAX = 4.0

WORD = "word"
EMOJI = "emoji"

# U+1F60E or U+2764 U+FE0F or U+1F1F6-U+1F1E6
_CODEPOINT_KEY_RE = re.compile(r"U\+([0-9A-Fa-f]{2,6})(?:[ -]U\+([0-9A-Fa-f]{2,6}))*\Z")
_CODEPOINT_RE = re.compile(r"U\+([0-9A-Fa-f]{2,6})")


class LexiconError(ValueError):
    """Raised for unreadable or malformed lexicon files.

    ``line_no`` is the 1-based offending line, or None for file-level
    problems such as an empty lexicon.
    """

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


@dataclass(frozen=True)
class LexiconEntry:
    """One key/valence pair; kind is 'emoji' iff the key contains a
    codepoint outside ASCII."""

    key: str
    valence: float
    kind: str

    @classmethod
    def make(cls, key: str, valence: float) -> "LexiconEntry":
        kind = EMOJI if any(ord(c) > 127 for c in key) else WORD
        return cls(key=key, valence=valence, kind=kind)


@dataclass(frozen=True)
class Lexicon:
    """Immutable valence table for words and emoji.

    word_entries keys are case-folded; emoji_entries keys are literal
    codepoint sequences matched exactly.
    """

    word_entries: dict[str, float] = field(default_factory=dict)
    emoji_entries: dict[str, float] = field(default_factory=dict)
    name: str = ""

    @property
    def entry_count(self) -> int:
        return len(self.word_entries) + len(self.emoji_entries)

    @cached_property
    def emoji_index(self) -> dict[str, list[str]]:
        """Emoji keys grouped by first character, longest first.

        Used by the tokenizer for longest-match extraction so that
        multi-codepoint sequences (flags, skin tones, ZWJ) win over
        their single-codepoint prefixes.
        """
        index: dict[str, list[str]] = {}
        for key in self.emoji_entries:
            index.setdefault(key[0], []).append(key)
        for keys in index.values():
            keys.sort(key=len, reverse=True)
        return index

    def entries(self) -> Iterable[LexiconEntry]:
        for key, valence in self.word_entries.items():
            yield LexiconEntry(key, valence, WORD)
        for key, valence in self.emoji_entries.items():
            yield LexiconEntry(key, valence, EMOJI)


EMPTY_LEXICON = Lexicon(name="empty")


def _decode_key(raw_key: str) -> str:
    """Decode U+XXXX notation to literal codepoints; pass anything else
    through unchanged."""
    if _CODEPOINT_KEY_RE.fullmatch(raw_key):
        return "".join(chr(int(h, 16)) for h in _CODEPOINT_RE.findall(raw_key))
    return raw_key


def _parse_valence(text: str, line_no: int) -> float:
    try:
        valence = float(text)
    except ValueError:
        raise LexiconError(f"non-numeric valence {text!r}", line_no) from None
    if not math.isfinite(valence):
        raise LexiconError(f"non-finite valence {text!r}", line_no)
    if not VALENCE_MIN <= valence <= VALENCE_MAX:
        raise LexiconError(
            f"valence {valence} outside [{VALENCE_MIN:g}, {VALENCE_MAX:g}]", line_no
        )
    return valence


def load_lexicon(source: IO, name: str = "") -> Lexicon:
    """Load a lexicon from a byte or text stream.

    Every well-formed ``key<TAB>valence`` line becomes one entry; blank
    lines and ``#`` comments are skipped. Duplicate keys resolve to the
    last occurrence (a warning totals them). Raises LexiconError on the
    first malformed line, or if no entries remain.
    """
    if isinstance(source, (bytes, bytearray)):
        source = io.BytesIO(source)
    text = source.read()
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise LexiconError(f"not valid UTF-8: {exc}") from None

    words: dict[str, float] = {}
    emoji: dict[str, float] = {}
    duplicates = 0
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = line.rstrip("\n").split("\t")
        if len(fields) != 2:
            raise LexiconError(
                f"expected 2 tab-separated fields, got {len(fields)}", line_no
            )
        raw_key, raw_valence = fields[0].strip(), fields[1].strip()
        if not raw_key:
            raise LexiconError("empty key", line_no)
        valence = _parse_valence(raw_valence, line_no)
        key = _decode_key(raw_key)
        if any(c.isspace() for c in key):
            raise LexiconError(f"key {key!r} contains whitespace", line_no)
        entry = LexiconEntry.make(key, valence)
        if entry.kind == EMOJI:
            duplicates += key in emoji
            emoji[key] = valence
        else:
            key = key.casefold()
            duplicates += key in words
            words[key] = valence
    if not words and not emoji:
        raise LexiconError("empty lexicon")
    if duplicates:
        logger.warning("lexicon %r: %d duplicate keys (last occurrence kept)",
                       name, duplicates)
    return Lexicon(word_entries=words, emoji_entries=emoji, name=name)


def load_lexicon_file(path: str | Path) -> Lexicon:
    path = Path(path)
    with open(path, "rb") as fh:
        return load_lexicon(fh, name=path.stem)


def dump_lexicon(lexicon: Lexicon, stream: IO[str]) -> None:
    """Write the tab-separated lexicon format; load(dump(lex)) == lex."""
    for key in sorted(lexicon.word_entries):
        stream.write(f"{key}\t{lexicon.word_entries[key]!r}\n")
    for key in sorted(lexicon.emoji_entries):
        stream.write(f"{key}\t{lexicon.emoji_entries[key]!r}\n")


def lookup(lexicon: Lexicon, feature: str) -> float | None:
    """Valence of one feature, or None if absent.

    Emoji keys match exactly; word keys match case-insensitively.
    """
    value = lexicon.emoji_entries.get(feature)
    if value is not None:
        return value
    return lexicon.word_entries.get(feature.casefold())


def merge_lexicons(base: Lexicon, overlay: Lexicon) -> Lexicon:
    """Union of entries; overlay wins on key conflicts."""
    name = base.name
    if overlay.name and overlay.name != base.name:
        name = f"{base.name}+{overlay.name}" if base.name else overlay.name
    return Lexicon(
        word_entries={**base.word_entries, **overlay.word_entries},
        emoji_entries={**base.emoji_entries, **overlay.emoji_entries},
        name=name,
    )


def default_word_lexicon() -> Lexicon:
    """The bundled English word lexicon."""
    data = resources.files("tweetmood.data").joinpath("word_lexicon.txt").read_bytes()
    return load_lexicon(io.BytesIO(data), name="word_lexicon")


def default_emoji_lexicon() -> Lexicon:
    """The bundled emoji lexicon."""
    data = resources.files("tweetmood.data").joinpath("emoji_lexicon.txt").read_bytes()
    return load_lexicon(io.BytesIO(data), name="emoji_lexicon")


def default_lexicon() -> Lexicon:
    """Bundled word + emoji lexicons merged."""
    return merge_lexicons(default_word_lexicon(), default_emoji_lexicon())
