"""Feature extraction for the learned gender methods.

N-gram features: character n-grams over the cleaned display name padded with
'^'/'$' boundary markers, plus word-unigram features (stored under a "w:"
prefix so they never collide with character grams).  Values are binary
presence.  The vocabulary is built from training rows only.

Linguistic-structure features: eight counts/flags over the extracted first
name, using configurable vowel and round/sharp ("bouba"/"kiki") character
classes.  Syllables are approximated by maximal vowel runs (floor one), so a
name like "mckayla" counts 2; that undercount is accepted behavior.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ml.data import FeatureVector

WORD_PREFIX = "w:"

LING_FEATURE_NAMES = [
    "syllables", "vowels", "consonants",
    "bouba_vowels", "kiki_vowels",
    "bouba_consonants", "kiki_consonants",
    "ends_in_vowel",
]


@dataclass(frozen=True)
class CharClasses:
    vowels: frozenset = frozenset("aeiouy")
    bouba_vowels: frozenset = frozenset("ou")
    kiki_vowels: frozenset = frozenset("ie")
    bouba_consonants: frozenset = frozenset("bmlnw")
    kiki_consonants: frozenset = frozenset("ktpxz")


DEFAULT_CLASSES = CharClasses()


def load_char_classes(path) -> CharClasses:
    """Override file: one [section] per class, one character per line,
    '#' comments allowed.  Unlisted sections keep their defaults."""
    sections: dict[str, set[str]] = {}
    current = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            entry = line.split("#", 1)[0].strip()
            if not entry:
                continue
            if entry.startswith("[") and entry.endswith("]"):
                current = entry[1:-1].strip()
                if current not in CharClasses.__dataclass_fields__:
                    raise ValueError(f"{path}:{lineno}: unknown class {current!r}")
                sections[current] = set()
                continue
            if current is None:
                raise ValueError(f"{path}:{lineno}: character before any [section]")
            if len(entry) != 1 or not ("a" <= entry <= "z"):
                raise ValueError(f"{path}:{lineno}: expected a single a-z character")
            sections[current].add(entry)
    kwargs = {name: frozenset(chars) for name, chars in sections.items()}
    return CharClasses(**kwargs)


@dataclass
class NgramConfig:
    char_n_min: int = 1
    char_n_max: int = 3
    include_word_unigrams: bool = True
    min_document_frequency: int = 2
    max_features: int = 50_000


@dataclass
class NgramVocabulary:
    index: dict[str, int]
    config: NgramConfig = field(default_factory=NgramConfig)

    @property
    def size(self):
        return len(self.index)


def _grams(cleaned_name: str, cfg: NgramConfig) -> set[str]:
    grams = set()
    padded = "^" + cleaned_name + "$"
    for n in range(cfg.char_n_min, cfg.char_n_max + 1):
        for i in range(len(padded) - n + 1):
            grams.add(padded[i:i + n])
    if cfg.include_word_unigrams:
        for token in cleaned_name.split():
            grams.add(WORD_PREFIX + token)
    return grams


def build_vocabulary(cleaned_names, config: NgramConfig | None = None) -> NgramVocabulary:
    """Document-frequency-filtered vocabulary over training names.  Caps at
    max_features by document frequency (lexicographic tie-break) and assigns
    indices in sorted-key order."""
    cfg = config or NgramConfig()
    if not (1 <= cfg.char_n_min <= cfg.char_n_max):
        raise ValueError("need 1 <= char_n_min <= char_n_max")
    df: dict[str, int] = {}
    for name in cleaned_names:
        for gram in _grams(name, cfg):
            df[gram] = df.get(gram, 0) + 1
    survivors = [g for g, c in df.items() if c >= cfg.min_document_frequency]
    if len(survivors) > cfg.max_features:
        survivors.sort(key=lambda g: (-df[g], g))
        survivors = survivors[:cfg.max_features]
    survivors.sort()
    if not survivors:
        raise ValueError("empty n-gram vocabulary after frequency filtering")
    return NgramVocabulary({g: i for i, g in enumerate(survivors)}, cfg)


def featurize_ngrams(cleaned_name: str, vocab: NgramVocabulary) -> FeatureVector:
    """Binary presence vector; grams outside the vocabulary are ignored."""
    hits = sorted(
        vocab.index[g] for g in _grams(cleaned_name, vocab.config) if g in vocab.index)
    return FeatureVector(
        np.array(hits, dtype=np.int32),
        np.ones(len(hits), dtype=np.float64),
        vocab.size)


@dataclass(frozen=True)
class LinguisticFeatures:
    syllables: int
    vowels: int
    consonants: int
    bouba_vowels: int
    kiki_vowels: int
    bouba_consonants: int
    kiki_consonants: int
    ends_in_vowel: int

    def to_vector(self) -> FeatureVector:
        return FeatureVector.from_dense([
            self.syllables, self.vowels, self.consonants,
            self.bouba_vowels, self.kiki_vowels,
            self.bouba_consonants, self.kiki_consonants,
            self.ends_in_vowel,
        ])


def count_syllables(token: str, vowels: frozenset = DEFAULT_CLASSES.vowels) -> int:
    """Maximal vowel runs, floored at one for all-consonant tokens."""
    if not token:
        raise ValueError("empty token")
    runs = 0
    in_run = False
    for ch in token:
        if ch in vowels:
            if not in_run:
                runs += 1
                in_run = True
        else:
            in_run = False
    return max(1, runs)


def extract_linguistic(token: str, classes: CharClasses = DEFAULT_CLASSES) -> LinguisticFeatures:
    """All eight structure features of a cleaned first-name token."""
    if not token:
        raise ValueError("empty token")
    vowels = sum(1 for ch in token if ch in classes.vowels)
    return LinguisticFeatures(
        syllables=count_syllables(token, classes.vowels),
        vowels=vowels,
        consonants=len(token) - vowels,
        bouba_vowels=sum(1 for ch in token if ch in classes.bouba_vowels),
        kiki_vowels=sum(1 for ch in token if ch in classes.kiki_vowels),
        bouba_consonants=sum(1 for ch in token if ch in classes.bouba_consonants),
        kiki_consonants=sum(1 for ch in token if ch in classes.kiki_consonants),
        ends_in_vowel=1 if token[-1] in classes.vowels else 0,
    )
