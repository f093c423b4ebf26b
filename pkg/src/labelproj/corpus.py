"""Training-corpus normalization and parallel QA filtering.

Raw markup corpora carry arbitrary tag vocabularies (UI and styling
elements, attributes, self-closing forms). The tag swap renames every tag
type to a nondescript letter by order of first appearance on the source
side, strips attributes, and applies the same mapping to the target side,
so a translation model sees only the generic marker vocabulary.
"""

from __future__ import annotations

import json
import math
import random
import re
from dataclasses import dataclass
from typing import Sequence

from .codec import tag_name
from .errors import BackendError, BackendUnreachableError, FormatError, ScorerUnavailableError
from .model import (
    SEVERITY_ERROR,
    SEVERITY_WARNING,
    AnnotatedText,
    Diagnostic,
    ParallelExample,
    TaggedText,
)

# Markup as found in the wild: optional attributes, optional self-closing
# slash. Attribute values containing angle brackets are not supported.
_RAW_TAG_RE = re.compile(r"<(/?)([A-Za-z_][A-Za-z0-9_.:-]*)([^<>]*?)(/?)>")


@dataclass(frozen=True)
class RawMarkupPair:
    id: str
    src_lang: str
    tgt_lang: str
    src_markup: str
    tgt_markup: str

    def __post_init__(self) -> None:
        if not self.src_markup or not self.tgt_markup:
            raise ValueError(f"pair {self.id!r}: both sides must be non-empty")


@dataclass(frozen=True)
class DirectedExample:
    id: str
    direction: str  # "forward" (src -> tgt) or "reverse"
    src: TaggedText
    tgt: TaggedText


@dataclass(frozen=True)
class CorpusProvenance:
    input_pairs: int
    kept_pairs: int
    dropped_untagged: int
    dropped_unmapped: int
    directed_examples: int
    dev_ids: int
    dev_fraction: float
    seed: int
    avg_tags_per_pair: float
    max_tags_per_pair: int
    max_unique_tags_per_pair: int

    def to_json_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True)
class PreparedCorpus:
    train: tuple[DirectedExample, ...]
    dev: tuple[DirectedExample, ...]
    dropped: tuple[tuple[RawMarkupPair, str], ...]
    provenance: CorpusProvenance


def _swap_side(markup: str, mapping: dict[str, str], extend: bool) -> tuple[str, int, set[str]]:
    """Rewrite tags through the type->letter map.

    When ``extend`` is set, unseen types are assigned the next letter;
    otherwise they are left untouched and reported back. Returns the
    rewritten text, the number of tag instances (opens plus self-closing),
    and the set of unmapped types.
    """
    unmapped: set[str] = set()
    instances = 0

    def replace(match: re.Match[str]) -> str:
        nonlocal instances
        closing, name, _attrs, self_closing = match.groups()
        letter = mapping.get(name)
        if letter is None:
            if not extend:
                unmapped.add(name)
                return match.group(0)
            letter = tag_name(len(mapping))
            mapping[name] = letter
        if closing:
            return f"</{letter}>"
        instances += 1
        if self_closing:
            return f"<{letter}/>"
        return f"<{letter}>"

    rewritten = _RAW_TAG_RE.sub(replace, markup)
    return rewritten, instances, unmapped


def tag_swap(pair: RawMarkupPair) -> tuple[RawMarkupPair, list[Diagnostic]]:
    """Normalize one pair's tag vocabulary to letters a, b, c, ...

    The source side defines the mapping by order of first appearance; all
    occurrences of one type (open, close, self-closing) share a letter and
    attributes are stripped. Target-side types absent from the source leave
    the pair flagged UNMAPPED_TYPE; a pair without tags on both sides is
    flagged DROP_UNTAGGED. Flags are diagnostics, never exceptions.
    """
    mapping: dict[str, str] = {}
    src_norm, src_count, _ = _swap_side(pair.src_markup, mapping, extend=True)
    tgt_norm, tgt_count, unmapped = _swap_side(pair.tgt_markup, mapping, extend=False)

    diagnostics: list[Diagnostic] = []
    for name in sorted(unmapped):
        diagnostics.append(
            Diagnostic(
                SEVERITY_WARNING,
                "UNMAPPED_TYPE",
                f"pair {pair.id!r}: target tag type {name!r} does not occur in the source",
            )
        )
    if src_count == 0 or tgt_count == 0:
        side = "either side" if src_count == 0 and tgt_count == 0 else ("source" if src_count == 0 else "target")
        diagnostics.append(
            Diagnostic(SEVERITY_WARNING, "DROP_UNTAGGED", f"pair {pair.id!r}: no tags on {side}")
        )
    normalized = RawMarkupPair(pair.id, pair.src_lang, pair.tgt_lang, src_norm, tgt_norm)
    return normalized, diagnostics


def _pair_stats(pair: RawMarkupPair) -> tuple[int, int]:
    """(tag instances, unique letters) on the normalized source side."""
    instances = 0
    letters: set[str] = set()
    for match in _RAW_TAG_RE.finditer(pair.src_markup):
        closing, name, _attrs, _self = match.groups()
        if not closing:
            instances += 1
        letters.add(name)
    return instances, len(letters)


def prepare_training_corpus(
    pairs: Sequence[RawMarkupPair], dev_fraction: float = 0.05, seed: int = 0
) -> PreparedCorpus:
    """Tag-swap, filter, duplicate into both directions, and split.

    Untagged and unmappable pairs are dropped; every kept pair yields a
    forward and a reverse directed example, and both land in the same split.
    The dev split takes ceil(dev_fraction * kept) ids chosen by a seeded
    shuffle, so reruns with the same seed reproduce the split exactly.
    """
    if not 0.0 <= dev_fraction < 1.0:
        raise ValueError(f"dev_fraction must be in [0, 1), got {dev_fraction}")

    kept: list[RawMarkupPair] = []
    dropped: list[tuple[RawMarkupPair, str]] = []
    untagged = unmapped = 0
    for pair in pairs:
        normalized, diagnostics = tag_swap(pair)
        codes = {d.code for d in diagnostics}
        if "UNMAPPED_TYPE" in codes:
            dropped.append((pair, "UNMAPPED_TYPE"))
            unmapped += 1
        elif "DROP_UNTAGGED" in codes:
            dropped.append((pair, "DROP_UNTAGGED"))
            untagged += 1
        else:
            kept.append(normalized)

    ids = [pair.id for pair in kept]
    shuffled = list(ids)
    random.Random(seed).shuffle(shuffled)
    n_dev = math.ceil(dev_fraction * len(ids))
    dev_ids = set(shuffled[:n_dev])

    train: list[DirectedExample] = []
    dev: list[DirectedExample] = []
    total_tags = 0
    max_tags = 0
    max_unique = 0
    for pair in kept:
        instances, unique = _pair_stats(pair)
        total_tags += instances
        max_tags = max(max_tags, instances)
        max_unique = max(max_unique, unique)
        forward = DirectedExample(
            pair.id,
            "forward",
            TaggedText(pair.id, pair.src_lang, pair.src_markup),
            TaggedText(pair.id, pair.tgt_lang, pair.tgt_markup),
        )
        reverse = DirectedExample(
            pair.id,
            "reverse",
            TaggedText(pair.id, pair.tgt_lang, pair.tgt_markup),
            TaggedText(pair.id, pair.src_lang, pair.src_markup),
        )
        bucket = dev if pair.id in dev_ids else train
        bucket.append(forward)
        bucket.append(reverse)

    provenance = CorpusProvenance(
        input_pairs=len(pairs),
        kept_pairs=len(kept),
        dropped_untagged=untagged,
        dropped_unmapped=unmapped,
        directed_examples=len(train) + len(dev),
        dev_ids=n_dev,
        dev_fraction=dev_fraction,
        seed=seed,
        avg_tags_per_pair=(total_tags / len(kept)) if kept else 0.0,
        max_tags_per_pair=max_tags,
        max_unique_tags_per_pair=max_unique,
    )
    return PreparedCorpus(tuple(train), tuple(dev), tuple(dropped), provenance)


def read_raw_pairs(text: str) -> tuple[list[RawMarkupPair], list[Diagnostic]]:
    """Parse raw-markup JSONL content: {id, src_lang, tgt_lang, src_markup,
    tgt_markup} per line. Unreadable lines become diagnostics."""
    pairs: list[RawMarkupPair] = []
    diagnostics: list[Diagnostic] = []
    first = True
    for lineno, line in enumerate(text.split("\n"), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
            pair = RawMarkupPair(
                id=str(record["id"]),
                src_lang=str(record["src_lang"]),
                tgt_lang=str(record["tgt_lang"]),
                src_markup=str(record["src_markup"]),
                tgt_markup=str(record["tgt_markup"]),
            )
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            if first:
                raise FormatError(f"line {lineno}: not a raw markup record: {exc}") from exc
            diagnostics.append(
                Diagnostic(SEVERITY_ERROR, "MALFORMED_RECORD", f"line {lineno}: {exc}", offset=lineno)
            )
            continue
        first = False
        pairs.append(pair)
    return pairs, diagnostics


def raw_pair_record(pair: RawMarkupPair) -> dict:
    return {
        "id": pair.id,
        "src_lang": pair.src_lang,
        "tgt_lang": pair.tgt_lang,
        "src_markup": pair.src_markup,
        "tgt_markup": pair.tgt_markup,
    }


def directed_record(example: DirectedExample) -> dict:
    return {
        "id": example.id,
        "direction": example.direction,
        "src_lang": example.src.lang,
        "tgt_lang": example.tgt.lang,
        "src_tagged": example.src.tagged,
        "tgt_tagged": example.tgt.tagged,
    }


@dataclass(frozen=True)
class QaParallelPair:
    """A parallel QA context pair plus its per-side question counts."""

    example: ParallelExample
    src_questions: int
    tgt_questions: int

    def __post_init__(self) -> None:
        if not isinstance(self.example.src, AnnotatedText) or not isinstance(self.example.tgt, AnnotatedText):
            raise ValueError("QA filtering needs span-annotated sides")


def filter_parallel_qa(
    pairs: Sequence[QaParallelPair],
    scorer=None,
    min_score: float | None = 80.0,
) -> tuple[list[QaParallelPair], list[tuple[QaParallelPair, str]], list[Diagnostic]]:
    """Keep only context pairs that are plausibly direct translations.

    A pair is dropped when its two sides disagree on the number of
    questions or answer spans (COUNT_MISMATCH), and, when ``min_score`` is
    set, when the scorer backend rates it strictly below the threshold
    (LOW_SCORE). Dropped pairs come back with their reason; text is never
    mutated. Scoring failures abort with no partial output.
    """
    kept: list[QaParallelPair] = []
    dropped: list[tuple[QaParallelPair, str]] = []
    diagnostics: list[Diagnostic] = []
    survivors: list[QaParallelPair] = []
    for pair in pairs:
        src, tgt = pair.example.src, pair.example.tgt
        if pair.src_questions != pair.tgt_questions or len(src.spans) != len(tgt.spans):
            dropped.append((pair, "COUNT_MISMATCH"))
            diagnostics.append(
                Diagnostic(
                    SEVERITY_WARNING,
                    "COUNT_MISMATCH",
                    f"pair {pair.example.id!r}: {pair.src_questions}/{len(src.spans)} questions/spans"
                    f" vs {pair.tgt_questions}/{len(tgt.spans)}",
                )
            )
        else:
            survivors.append(pair)

    if min_score is None:
        kept.extend(survivors)
        return kept, dropped, diagnostics

    if scorer is None:
        raise ScorerUnavailableError("score filtering enabled but no scorer configured")
    if survivors:
        try:
            scores = scorer.score_batch(
                [(p.example.src.text, p.example.tgt.text, None) for p in survivors]
            )
        except (BackendUnreachableError, BackendError) as exc:
            raise ScorerUnavailableError(f"scorer failed: {exc}") from exc
        for pair, score in zip(survivors, scores):
            if score < min_score:
                dropped.append((pair, "LOW_SCORE"))
                diagnostics.append(
                    Diagnostic(
                        SEVERITY_WARNING,
                        "LOW_SCORE",
                        f"pair {pair.example.id!r}: score {score} below {min_score}",
                    )
                )
            else:
                kept.append(pair)
    return kept, dropped, diagnostics
