"""Sentiment lexica and trigger word lists.

A lexicon maps (entry, pos) keys to signed scores whose magnitude lives on a
1-to-5 scale for subjective words. Raw scores with magnitude at most 1 (the
"senticon_raw" scale) are rescaled onto that range at load time. Merging
keeps (sum, count) provenance so that averaging stays associative and
order-independent.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import (
    LexiconParseError,
    LexiconRangeError,
    ScaleMismatchError,
    UsageError,
    WordListParseError,
)
from .util import format_so

logger = logging.getLogger(__name__)

SFU = "sfu"
SENTICON_RAW = "senticon_raw"
SCALES = (SFU, SENTICON_RAW)

POS_TAGS = ("ADJ", "NOUN", "ADV", "VERB", "*")


def scale_senticon(so_raw: float) -> float:
    """Map a raw score with magnitude in (0, 1] onto the 1-to-5 scale.

    Sign-preserving affine map of the magnitude: m -> 1 + 4m, so the maximum
    raw magnitude 1.0 lands exactly on 5.0. Zero is rejected because
    zero-polarity entries are never stored.
    """
    if so_raw == 0:
        raise UsageError("zero-polarity scores are not stored and cannot be rescaled")
    if abs(so_raw) > 1:
        raise UsageError(f"raw score {so_raw} outside [-1, 1]")
    return math.copysign(1.0 + 4.0 * abs(so_raw), so_raw)


@dataclass(slots=True)
class LexiconEntry:
    """One (entry, pos) key with merge provenance.

    ``so_sum`` is the sum of every score that ever contributed to this key
    and ``count`` how many there were, so the effective score is their mean
    and re-merging stays order-independent.
    """

    entry: str
    pos: str
    so_sum: float
    count: int

    @property
    def so(self) -> float:
        return self.so_sum / self.count

    @property
    def neutralized(self) -> bool:
        """True when contributions cancelled out exactly; ignored by lookup."""
        return self.so == 0.0


@dataclass
class SentimentLexicon:
    """Mapping from (lowercased entry, pos) to scored entries."""

    name: str
    scale: str = SFU
    entries: dict[tuple[str, str], LexiconEntry] = field(default_factory=dict)

    def add(self, entry: str, pos: str, so: float, count: int = 1) -> None:
        """Fold one contribution (or a pre-aggregated sum) into the lexicon."""
        key = (entry, pos)
        existing = self.entries.get(key)
        if existing is None:
            self.entries[key] = LexiconEntry(entry, pos, so, count)
        else:
            existing.so_sum += so
            existing.count += count

    def lookup(self, form: str, lemma: str, upos: str) -> float:
        """Score for a token, 0.0 when absent.

        Keys are tried in order: (form, upos), (lemma, upos), (form, "*"),
        (lemma, "*"), everything lowercased. The first present key wins;
        a neutralized entry counts as a hit and contributes 0.
        """
        form = form.lower()
        lemma = lemma.lower()
        for key in ((form, upos), (lemma, upos), (form, "*"), (lemma, "*")):
            hit = self.entries.get(key)
            if hit is not None:
                return 0.0 if hit.neutralized else hit.so
        return 0.0

    def sizes(self) -> dict[str, int]:
        """Entry counts per PoS tag, in the fixed tag order."""
        counts = {pos: 0 for pos in POS_TAGS}
        for _, pos in self.entries:
            counts[pos] = counts.get(pos, 0) + 1
        return counts

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, key: tuple[str, str]) -> bool:
        return key in self.entries


def load_lexicon(path: str | Path, scale: str = SFU) -> SentimentLexicon:
    """Load a ``entry<TAB>pos<TAB>so`` lexicon file.

    ``scale`` declares the scale of the file's scores. senticon_raw scores
    must have magnitude at most 1 and are rescaled before storage, so the
    returned lexicon is always on the sfu scale. Duplicate (entry, pos) lines
    are merged by averaging; zero-valued lines are dropped.
    """
    if scale not in SCALES:
        raise UsageError(f"unknown lexicon scale {scale!r}")
    path = Path(path)
    lexicon = SentimentLexicon(name=path.stem, scale=SFU)
    for line_no, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        columns = line.split("\t")
        if len(columns) != 3:
            raise LexiconParseError(
                f"expected 3 tab-separated fields, got {len(columns)}", str(path), line_no
            )
        entry, pos, so_text = columns
        if pos not in POS_TAGS:
            raise LexiconParseError(f"unknown PoS tag {pos!r}", str(path), line_no)
        try:
            so = float(so_text)
        except ValueError:
            raise LexiconParseError(f"non-numeric score {so_text!r}", str(path), line_no) from None
        if not math.isfinite(so):
            raise LexiconParseError(f"non-finite score {so_text!r}", str(path), line_no)
        if scale == SENTICON_RAW:
            if abs(so) > 1:
                raise LexiconRangeError(
                    f"score {so} outside [-1, 1] for scale senticon_raw", str(path), line_no
                )
            if so == 0:
                continue
            so = scale_senticon(so)
        else:
            if abs(so) > 5:
                raise LexiconRangeError(
                    f"score {so} outside [-5, 5] for scale sfu", str(path), line_no
                )
            if so == 0:
                continue
        lexicon.add(entry.lower(), pos, so)
    return lexicon


def sniff_scale(path: str | Path) -> str | None:
    """Return the scale declared in a leading ``# scale: ...`` comment, if any."""
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line:
            continue
        if not line.startswith("#"):
            return None
        body = line.lstrip("#").strip()
        if body.lower().startswith("scale:"):
            return body.split(":", 1)[1].strip()
    return None


def merge_lexica(sources: Sequence[SentimentLexicon], name: str) -> SentimentLexicon:
    """Average lexica entry-wise, weighting by contribution counts.

    The merged (sum, count) pair per key is the component-wise total over all
    sources (summed with :func:`math.fsum`, so source order cannot change the
    result). Keys whose contributions cancel to exactly 0 are retained as
    neutralized entries so that merge statistics stay auditable.
    """
    if not sources:
        raise UsageError("merge requires at least one source lexicon")
    for lex in sources:
        if lex.scale != SFU:
            raise ScaleMismatchError(
                f"lexicon {lex.name!r} is on scale {lex.scale!r}; rescale it first"
            )
    merged = SentimentLexicon(name=name, scale=SFU)
    keys: set[tuple[str, str]] = set()
    for lex in sources:
        keys.update(lex.entries)
    for key in sorted(keys):
        contributions = [lex.entries[key] for lex in sources if key in lex.entries]
        so_sum = math.fsum(entry.so_sum for entry in contributions)
        count = sum(entry.count for entry in contributions)
        merged.add(key[0], key[1], so_sum, count)
    return merged


def dump_lexicon(lexicon: SentimentLexicon) -> str:
    """Serialize a lexicon in the file schema, sorted by (entry, pos).

    Only the effective score survives; provenance counts are not part of the
    schema, so chain merges should be done in one call to keep the weighting.
    """
    lines = [f"# scale: {lexicon.scale}\n"]
    for (entry, pos), item in sorted(lexicon.entries.items()):
        lines.append(f"{entry}\t{pos}\t{format_so(item.so)}\n")
    return "".join(lines)


@dataclass
class WordList:
    """A set of trigger words, optionally carrying per-word booster values."""

    name: str
    words: dict[str, float | None] = field(default_factory=dict)

    def __contains__(self, word: str) -> bool:
        return word in self.words

    def __len__(self) -> int:
        return len(self.words)

    def value(self, word: str) -> float | None:
        return self.words.get(word)


def load_wordlist(path: str | Path, name: str | None = None) -> WordList:
    """Load a word list file: one ``entry`` or ``entry<TAB>value`` per line."""
    path = Path(path)
    wordlist = WordList(name=name or path.stem)
    for line_no, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        columns = line.split("\t")
        if len(columns) > 2:
            raise WordListParseError(
                f"expected at most 2 tab-separated fields, got {len(columns)}",
                str(path),
                line_no,
            )
        entry = columns[0].lower()
        value: float | None = None
        if len(columns) == 2:
            try:
                value = float(columns[1])
            except ValueError:
                raise WordListParseError(
                    f"non-numeric value {columns[1]!r}", str(path), line_no
                ) from None
            if not math.isfinite(value):
                raise WordListParseError(
                    f"non-finite value {columns[1]!r}", str(path), line_no
                )
        if entry in wordlist.words:
            logger.warning("%s:%d: duplicate entry %r, keeping the last value", path, line_no, entry)
        wordlist.words[entry] = value
    return wordlist


def load_wordlists(directory: str | Path) -> dict[str, WordList]:
    """Load every ``*.txt``/``*.tsv`` file in a directory, keyed by file stem."""
    directory = Path(directory)
    if not directory.is_dir():
        raise FileNotFoundError(f"word list directory not found: {directory}")
    lists: dict[str, WordList] = {}
    for path in sorted(directory.glob("*")):
        if path.suffix in (".txt", ".tsv") and path.is_file():
            lists[path.stem] = load_wordlist(path)
    return lists
