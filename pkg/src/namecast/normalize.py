"""Name cleaning and first-name extraction.

Cleaning runs a fixed six-step sequence (after a mojibake-repair pass on the
raw text): (1) drop honorific/stop tokens, matched on whitespace- and
punctuation-delimited tokens so "Dr.John" sheds its prefix; (2) compatibility
decomposition with combining marks removed; (3) case folding; (4) whitespace
trim; (5) digit removal; (6) removal of everything outside [a-z].  Degenerate
input yields an empty token list, never an error.

First-name rule: a single surviving token is the first name; with two or
more tokens the one immediately before the last (assumed surname) is taken.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass

DEFAULT_STOP_TOKENS = frozenset({
    "mr", "mrs", "ms", "miss", "dr", "prof", "rev", "sir", "lil",
    "jr", "sr", "ii", "iii", "iv",
    "and", "the", "of", "a", "an", "aka",
})

# token boundaries for stop-word matching: anything that is not a letter
# or digit (underscore included as a boundary)
_BOUNDARY = re.compile(r"[\W_]+", flags=re.UNICODE)
_DIGITS = re.compile(r"\d+", flags=re.UNICODE)
_MOJIBAKE_HINT = re.compile(r"[Â-Åâ]")


@dataclass(frozen=True)
class CleanName:
    """A normalized first-name token; token is always nonempty [a-z]+."""

    token: str
    source: str
    token_count_before_rule: int


def load_stop_tokens(path) -> frozenset[str]:
    """Stop-list override file: one lowercase token per line, '#' comments."""
    tokens = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            entry = line.split("#", 1)[0].strip()
            if entry:
                tokens.add(entry.lower())
    return frozenset(tokens)


def _repair_encoding(text: str) -> str:
    """Undo the common UTF-8-read-as-Latin-1 mangling ("JosÃ©" -> "José").
    Applied only when telltale lead bytes are present and the reverse
    round-trip decodes cleanly; otherwise the text is returned unchanged."""
    if not _MOJIBAKE_HINT.search(text):
        return text
    try:
        repaired = text.encode("latin-1").decode("utf-8")
    except (UnicodeEncodeError, UnicodeDecodeError):
        return text
    return repaired


def _strip_marks(text: str) -> str:
    decomposed = unicodedata.normalize("NFKD", text)
    return "".join(ch for ch in decomposed if not unicodedata.combining(ch))


def clean_text(raw: str, stop_tokens: frozenset[str] = DEFAULT_STOP_TOKENS) -> list[str]:
    """Normalize a raw profile name to lowercase letter-only tokens."""
    if not raw:
        return []
    # encoding repair precedes tokenization: the mangled byte pairs contain
    # punctuation that would otherwise be consumed as token boundaries
    raw = _repair_encoding(raw)
    # (1) stop tokens, on punctuation-delimited boundaries
    parts = [t for t in _BOUNDARY.split(raw) if t]
    parts = [t for t in parts if t.casefold() not in stop_tokens]
    text = " ".join(parts)
    # (2) compatibility decomposition, marks stripped
    text = _strip_marks(text)
    # (3) case folding
    text = text.casefold()
    # (4) trim
    text = text.strip()
    # (5) digits
    text = _DIGITS.sub("", text)
    # (6) anything that is not a-z goes, then tokenize; the stop filter runs
    # once more because normalization can mint stop tokens ("à" -> "a"),
    # and extraction must be idempotent on its own output
    tokens = []
    for part in text.split():
        letters = "".join(ch for ch in part if "a" <= ch <= "z")
        if letters and letters not in stop_tokens:
            tokens.append(letters)
    return tokens


def extract_first_name(raw: str, stop_tokens: frozenset[str] = DEFAULT_STOP_TOKENS) -> CleanName | None:
    """First-name token per the unigram/preceding-last rule, or None when
    nothing survives cleaning."""
    tokens = clean_text(raw, stop_tokens)
    if not tokens:
        return None
    if len(tokens) == 1:
        return CleanName(tokens[0], raw, 1)
    return CleanName(tokens[len(tokens) - 2], raw, len(tokens))


def cleaned_display_name(raw: str, stop_tokens: frozenset[str] = DEFAULT_STOP_TOKENS) -> str:
    """All cleaned tokens joined by single spaces ("" when none survive)."""
    return " ".join(clean_text(raw, stop_tokens))
