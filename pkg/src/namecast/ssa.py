"""First-name matching against historical US SSA baby-name counts.

Yearly national files hold "Name,Sex,Count" records with the year encoded as
four digits in the filename (the layout of the published yob*.txt files).
Counts are summed per lowercased name across all years >= min_year; a lookup
returns p_female = female/(female+male) with no smoothing.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass

from .errors import LoadError
from .normalize import CleanName
from .records import METHOD_SSA, GenderPrediction

_YEAR = re.compile(r"(\d{4})")
_TOKEN = re.compile(r"^[a-z]+$")

DEFAULT_MIN_YEAR = 1940


@dataclass
class NameStats:
    """name -> (female_count, male_count), plus the loaded year span."""

    counts: dict[str, tuple[int, int]]
    min_year: int
    max_year: int

    def __contains__(self, token):
        return token in self.counts

    def __len__(self):
        return len(self.counts)

    def lookup(self, token):
        return self.counts.get(token)


def load_ssa_corpus(paths, min_year: int = DEFAULT_MIN_YEAR) -> NameStats:
    """Sum yearly files into one table.  Files whose filename year falls
    before min_year are skipped entirely."""
    counts: dict[str, list[int]] = {}
    years = []
    for path in paths:
        match = _YEAR.search(os.path.basename(str(path)))
        if not match:
            raise LoadError(f"{path}: cannot find a 4-digit year in the filename")
        year = int(match.group(1))
        if year < min_year:
            continue
        years.append(year)
        _load_file(path, counts)
    if not counts:
        raise LoadError("no SSA records loaded (empty corpus after year filter)")
    return NameStats({k: (v[0], v[1]) for k, v in counts.items()},
                     min(years), max(years))


def _load_file(path, counts):
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 3:
                raise LoadError(f"{path}:{lineno}: expected 'Name,Sex,Count'")
            name, sex, count_text = parts
            name = name.strip().lower()
            sex = sex.strip().upper()
            if not _TOKEN.match(name):
                raise LoadError(f"{path}:{lineno}: bad name token {name!r}")
            if sex not in ("F", "M"):
                raise LoadError(f"{path}:{lineno}: sex must be F or M, got {sex!r}")
            try:
                count = int(count_text)
            except ValueError:
                raise LoadError(f"{path}:{lineno}: bad count {count_text!r}") from None
            if count < 1:
                raise LoadError(f"{path}:{lineno}: count must be >= 1")
            entry = counts.setdefault(name, [0, 0])
            entry[0 if sex == "F" else 1] += count


def classify_ssa(name: CleanName | None, stats: NameStats) -> GenderPrediction:
    """Covered prediction with the raw female share when the token is known;
    otherwise an uncovered prediction."""
    if name is None:
        return GenderPrediction.uncovered(METHOD_SSA)
    entry = stats.lookup(name.token)
    if entry is None:
        return GenderPrediction.uncovered(METHOD_SSA)
    female, male = entry
    return GenderPrediction.of_probability(METHOD_SSA, female / (female + male))
