"""Plain-text lexicon database parsing and synonym lookup.

Reads the standard WordNet 3.x ``index.<pos>`` / ``data.<pos>`` column layout
directly, so a full database installation drops in without conversion. A
20-synset fixture ships with the package for offline use and tests.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

SYNONYM_CAP = 50  # bound per-query candidate count, keeps oracle cost bounded


class ParseError(ValueError):
    """Malformed database record; message carries file and line number."""


class PosCategory(Enum):
    NOUN = "n"
    VERB = "v"
    ADJECTIVE = "a"
    ADVERB = "r"


# ss_type column: satellite adjectives ("s") fold into the adjective category.
_SS_TYPE = {
    "n": PosCategory.NOUN,
    "v": PosCategory.VERB,
    "a": PosCategory.ADJECTIVE,
    "s": PosCategory.ADJECTIVE,
    "r": PosCategory.ADVERB,
}


@dataclass(frozen=True)
class Synset:
    offset: str
    pos: PosCategory
    lemmas: tuple[str, ...]
    gloss: str


@dataclass
class Lexicon:
    """Lemma index plus synset table.

    ``index`` maps a lowercase lemma to (pos, offset) pairs in file order.
    Multiword lemmas (underscore-joined) are retained and flagged; synonym
    queries skip them because the attack substitutes single tokens only.
    """

    index: dict[str, list[tuple[PosCategory, str]]] = field(default_factory=dict)
    synsets: dict[tuple[PosCategory, str], Synset] = field(default_factory=dict)
    multiword: set[str] = field(default_factory=set)

    def to_json(self) -> str:
        """Stable serialization; identical inputs give identical bytes."""
        payload = {
            "index": {
                lemma: [[pos.value, off] for pos, off in entries]
                for lemma, entries in sorted(self.index.items())
            },
            "synsets": [
                {
                    "offset": syn.offset,
                    "pos": syn.pos.value,
                    "lemmas": list(syn.lemmas),
                    "gloss": syn.gloss,
                }
                for _, syn in sorted(self.synsets.items(), key=lambda kv: (kv[0][0].value, kv[0][1]))
            ],
            "multiword": sorted(self.multiword),
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _is_header(line: str) -> bool:
    # License/preamble lines start with two spaces in the stock files.
    return line.startswith("  ") or not line.strip()


def _parse_index_line(line: str, path: str, lineno: int) -> tuple[str, PosCategory, list[str]]:
    fields = line.split()
    try:
        lemma = fields[0]
        pos = _SS_TYPE[fields[1]]
        synset_cnt = int(fields[2])
        p_cnt = int(fields[3])
        cursor = 4 + p_cnt  # skip pointer symbols
        int(fields[cursor])  # sense_cnt
        int(fields[cursor + 1])  # tagsense_cnt
        offsets = fields[cursor + 2 : cursor + 2 + synset_cnt]
        if len(offsets) != synset_cnt or not all(len(o) == 8 and o.isdigit() for o in offsets):
            raise ValueError("bad offset list")
    except (IndexError, ValueError, KeyError) as exc:
        raise ParseError(f"{path}:{lineno}: malformed index record ({exc})") from exc
    return lemma, pos, offsets


def _parse_data_line(line: str, path: str, lineno: int) -> Synset:
    head, sep, gloss = line.partition("|")
    if not sep:
        raise ParseError(f"{path}:{lineno}: data record missing gloss separator")
    fields = head.split()
    try:
        offset = fields[0]
        if len(offset) != 8 or not offset.isdigit():
            raise ValueError("bad synset offset")
        ss_type = fields[2]
        pos = _SS_TYPE[ss_type]
        w_cnt = int(fields[3], 16)  # word count is hexadecimal in this layout
        if w_cnt < 1:
            raise ValueError("word count must be >= 1")
        words = fields[4 : 4 + 2 * w_cnt : 2]
        if len(words) != w_cnt:
            raise ValueError("truncated lemma list")
        cursor = 4 + 2 * w_cnt
        p_cnt = int(fields[cursor])
        cursor += 1 + 4 * p_cnt  # each pointer: symbol, offset, pos, source/target
        if ss_type == "v":
            f_cnt = int(fields[cursor])
            cursor += 1 + 3 * f_cnt  # each frame: +, frame number, word number
        if cursor != len(fields):
            raise ValueError("trailing fields after record body")
    except (IndexError, ValueError, KeyError) as exc:
        raise ParseError(f"{path}:{lineno}: malformed data record ({exc})") from exc
    return Synset(offset=offset, pos=pos, lemmas=tuple(words), gloss=gloss.strip())


def load_lexicon(
    index_files: Sequence[str | Path],
    data_files: Sequence[str | Path],
) -> Lexicon:
    """Parse index and data files into a Lexicon.

    Raises ParseError naming the offending file and line on any malformed
    record. Lemma keys are lowercased; data-file surfaces are kept verbatim.
    """
    lex = Lexicon()
    for path in data_files:
        text = Path(path).read_text("utf-8")
        for lineno, line in enumerate(text.splitlines(), start=1):
            if _is_header(line):
                continue
            syn = _parse_data_line(line, str(path), lineno)
            lex.synsets[(syn.pos, syn.offset)] = syn
            for lemma in syn.lemmas:
                if "_" in lemma:
                    lex.multiword.add(lemma.lower())
    for path in index_files:
        text = Path(path).read_text("utf-8")
        for lineno, line in enumerate(text.splitlines(), start=1):
            if _is_header(line):
                continue
            lemma, pos, offsets = _parse_index_line(line, str(path), lineno)
            key = lemma.lower()
            entries = lex.index.setdefault(key, [])
            for off in offsets:
                if (pos, off) not in entries:
                    entries.append((pos, off))
            if "_" in key:
                lex.multiword.add(key)
    return lex


_FIXTURE: Lexicon | None = None


def bundled_lexicon() -> Lexicon:
    """The in-repo 20-synset fixture, parsed once per process."""
    global _FIXTURE
    if _FIXTURE is None:
        root = resources.files("lingua_spoof.data").joinpath("wordnet_fixture")
        with resources.as_file(root) as dirpath:
            index_files = sorted(dirpath.glob("index.*"))
            data_files = sorted(dirpath.glob("data.*"))
            _FIXTURE = load_lexicon(index_files, data_files)
    return _FIXTURE


def _morph_candidates(lemma: str) -> Iterable[str]:
    """Surface form, then the four-rule suffix stripper (-s, -es, -ed, -ing)."""
    yield lemma
    if lemma.endswith("s") and not lemma.endswith("ss") and len(lemma) > 2:
        yield lemma[:-1]
    if lemma.endswith("es") and len(lemma) > 3:
        yield lemma[:-2]
    if lemma.endswith("ed") and len(lemma) > 3:
        yield lemma[:-2]
    if lemma.endswith("ing") and len(lemma) > 4:
        yield lemma[:-3]


def _resolve(lex: Lexicon, lemma: str) -> tuple[str, list[tuple[PosCategory, str]]]:
    low = lemma.lower()
    for form in _morph_candidates(low):
        entries = lex.index.get(form)
        if entries:
            return form, entries
    return low, []


def synonyms(
    lex: Lexicon,
    lemma: str,
    pos: PosCategory | None = None,
) -> list[str]:
    """Single-word co-lemmas of every synset containing ``lemma``.

    Order is deterministic: synsets by ascending offset, lemmas in synset
    order. The query lemma and multiword lemmas are excluded; at most
    SYNONYM_CAP candidates are returned.
    """
    form, entries = _resolve(lex, lemma)
    picked = [e for e in entries if pos is None or e[0] is pos]
    out: list[str] = []
    seen: set[str] = set()
    for _, syn in sorted(
        ((off, lex.synsets[(p, off)]) for p, off in picked if (p, off) in lex.synsets),
        key=lambda pair: pair[0],
    ):
        for cand in syn.lemmas:
            low = cand.lower()
            if low == form or "_" in low or low in seen:
                continue
            seen.add(low)
            out.append(cand)
            if len(out) >= SYNONYM_CAP:
                return out
    return out


def pos_of(lex: Lexicon, lemma: str) -> set[PosCategory]:
    """Categories the lemma appears under; empty set when absent."""
    _, entries = _resolve(lex, lemma)
    return {pos for pos, _ in entries}
