"""Transcript tokenization and word-level edits.

A transcript is an ordered sequence of word tokens plus the separator text
needed to reconstruct the original string exactly. Separators (whitespace and
punctuation) ride along as the ``leading_sep`` of the following token; text
after the last word lands in ``Transcript.trailing``. This makes
``detokenize(tokenize(raw)) == raw`` hold for any input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources


class EmptyTranscriptError(ValueError):
    """An edit (or tokenization) would leave no word tokens."""


class MultiwordCandidateError(ValueError):
    """A replacement candidate was empty or contained whitespace."""


# Word cores: alphanumeric runs, optionally joined by apostrophes or hyphens
# ("don't", "well-known" stay single tokens).
_WORD_RE = re.compile(r"[A-Za-z0-9]+(?:['’-][A-Za-z0-9]+)*")

_STOPWORDS: frozenset[str] | None = None


def default_stopwords() -> frozenset[str]:
    """Bundled English stop-word list (lowercase)."""
    global _STOPWORDS
    if _STOPWORDS is None:
        text = (
            resources.files("lingua_spoof.data").joinpath("stopwords.txt").read_text("utf-8")
        )
        _STOPWORDS = frozenset(text.split())
    return _STOPWORDS


def is_stopword(surface: str, stopwords: frozenset[str] | None = None) -> bool:
    """True when the surface form is on the stop-word list.

    Contracted forms count via their stem: "don't" matches "don".
    """
    words = default_stopwords() if stopwords is None else stopwords
    low = surface.lower()
    if low in words:
        return True
    stem = re.split(r"['’]", low, maxsplit=1)[0]
    return stem in words


@dataclass(frozen=True)
class Token:
    """One word token.

    surface: the word exactly as written.
    index: position in the transcript (0-based, equals list position).
    is_stopword: excluded from perturbation when the policy says so.
    leading_sep: separator text preceding this token in the raw string.
    """

    surface: str
    index: int
    is_stopword: bool
    leading_sep: str

    def __post_init__(self) -> None:
        if not self.surface:
            raise ValueError("token surface must be non-empty")
        if self.index < 0:
            raise ValueError("token index must be >= 0")


@dataclass(frozen=True)
class Transcript:
    """An identified utterance text split into tokens.

    ``raw`` is the exact source string; ``trailing`` is whatever followed the
    last word (final punctuation, newline remnants). Derived transcripts
    rebuild ``raw`` from their tokens so the round-trip invariant keeps
    holding after edits.
    """

    id: str
    tokens: tuple[Token, ...]
    raw: str
    trailing: str = ""

    def __post_init__(self) -> None:
        if not self.tokens:
            raise EmptyTranscriptError(f"transcript {self.id!r} has no tokens")
        for pos, tok in enumerate(self.tokens):
            if tok.index != pos:
                raise ValueError(f"token index {tok.index} != position {pos}")

    @property
    def surfaces(self) -> tuple[str, ...]:
        return tuple(tok.surface for tok in self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)


def tokenize(
    raw: str,
    transcript_id: str = "",
    stopwords: frozenset[str] | None = None,
) -> Transcript:
    """Split ``raw`` into word tokens, preserving every separator byte.

    Raises EmptyTranscriptError when the string contains no word characters.
    """
    tokens: list[Token] = []
    cursor = 0
    for match in _WORD_RE.finditer(raw):
        tokens.append(
            Token(
                surface=match.group(),
                index=len(tokens),
                is_stopword=is_stopword(match.group(), stopwords),
                leading_sep=raw[cursor : match.start()],
            )
        )
        cursor = match.end()
    if not tokens:
        raise EmptyTranscriptError(f"no word tokens in {raw!r}")
    return Transcript(id=transcript_id, tokens=tuple(tokens), raw=raw, trailing=raw[cursor:])


def detokenize(t: Transcript) -> str:
    """Inverse of tokenize: concatenation of separators and surfaces."""
    return "".join(tok.leading_sep + tok.surface for tok in t.tokens) + t.trailing


def _rebuilt(t: Transcript, tokens: list[Token]) -> Transcript:
    raw = "".join(tok.leading_sep + tok.surface for tok in tokens) + t.trailing
    return Transcript(id=t.id, tokens=tuple(tokens), raw=raw, trailing=t.trailing)


def mask_word(t: Transcript, i: int) -> Transcript:
    """Remove token ``i``, repairing separators around the gap."""
    if not 0 <= i < len(t.tokens):
        raise IndexError(f"token index {i} out of range for {len(t.tokens)} tokens")
    if len(t.tokens) == 1:
        raise EmptyTranscriptError("masking the only token leaves an empty transcript")
    out: list[Token] = []
    for tok in t.tokens:
        if tok.index == i:
            continue
        lead = tok.leading_sep
        # The token right after the gap keeps its own separator unless the
        # removed token opened the transcript, in which case it inherits the
        # opener's separator so no stray leading whitespace survives.
        if tok.index == i + 1 and i == 0:
            lead = t.tokens[0].leading_sep
        out.append(
            Token(
                surface=tok.surface,
                index=len(out),
                is_stopword=tok.is_stopword,
                leading_sep=lead,
            )
        )
    return _rebuilt(t, out)


def _match_case(candidate: str, original: str) -> str:
    head = original[0]
    if head.isalpha() and candidate and candidate[0].isalpha():
        if head.isupper():
            return candidate[0].upper() + candidate[1:]
        return candidate[0].lower() + candidate[1:]
    return candidate


def replace_word(t: Transcript, i: int, candidate: str) -> Transcript:
    """Substitute token ``i`` with a single-word candidate.

    The candidate adopts the original's first-letter casing. Replacing a word
    with itself is a permitted no-op.
    """
    if not 0 <= i < len(t.tokens):
        raise IndexError(f"token index {i} out of range for {len(t.tokens)} tokens")
    if not candidate or re.search(r"\s", candidate) or "_" in candidate:
        raise MultiwordCandidateError(f"candidate {candidate!r} is not a single word")
    out: list[Token] = []
    for tok in t.tokens:
        surface = tok.surface
        stop = tok.is_stopword
        if tok.index == i:
            surface = _match_case(candidate, tok.surface)
            stop = is_stopword(surface)
        out.append(
            Token(surface=surface, index=tok.index, is_stopword=stop, leading_sep=tok.leading_sep)
        )
    return _rebuilt(t, out)
