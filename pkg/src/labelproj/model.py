"""Span-annotated text data model and well-formedness validation.

Offsets throughout the toolkit are indices into the sequence of Unicode
scalar values of the owning text (which is what Python string indexing
gives), never bytes or UTF-16 units.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

SEVERITY_ERROR = "error"
SEVERITY_WARNING = "warning"
SEVERITY_INFO = "info"

# Inline marker grammar, shared with the codec. Bit-exact:
# open = "<" name ">", close = "</" name ">" with name one or more ASCII
# lowercase letters (both cases when uppercase tags are enabled).
_MARKER_RE = re.compile(r"<(/?)([a-z]+)>")
_MARKER_RE_UPPER = re.compile(r"<(/?)([A-Za-z]+)>")
_TAG_NAME_RE = re.compile(r"[a-z]+")
_TAG_NAME_RE_UPPER = re.compile(r"[A-Za-z]+")


def marker_pattern(allow_uppercase: bool = False) -> re.Pattern[str]:
    """Compiled scanner matching one inline marker (open or close)."""
    return _MARKER_RE_UPPER if allow_uppercase else _MARKER_RE


def is_valid_tag_name(tag: str, allow_uppercase: bool = False) -> bool:
    pattern = _TAG_NAME_RE_UPPER if allow_uppercase else _TAG_NAME_RE
    return pattern.fullmatch(tag) is not None


@dataclass(frozen=True)
class Diagnostic:
    """One validation or decoding anomaly: never raised, always reported."""

    severity: str
    code: str
    message: str
    offset: int | None = None


def has_errors(diagnostics: list[Diagnostic]) -> bool:
    return any(d.severity == SEVERITY_ERROR for d in diagnostics)


@dataclass(frozen=True)
class Span:
    """One labeled region of text, half-open on scalar-value offsets.

    Zero-width spans (start == end) are permitted. The optional label
    carries free-text semantic information (e.g. an entity type) and is
    never serialized into markers.
    """

    tag: str
    start: int
    end: int
    label: str | None = None

    def length(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class AnnotatedText:
    """Text plus a multiset of spans; nesting and overlap are allowed."""

    id: str
    lang: str
    text: str
    spans: tuple[Span, ...] = ()

    def __post_init__(self) -> None:
        if not isinstance(self.spans, tuple):
            object.__setattr__(self, "spans", tuple(self.spans))

    def span_text(self, span: Span) -> str:
        return self.text[span.start : span.end]


@dataclass(frozen=True)
class TaggedText:
    """A single string with inline markers, plus a language code."""

    id: str
    lang: str
    tagged: str


@dataclass(frozen=True)
class ParallelExample:
    """A bilingual pair sharing one id; the evaluation unit."""

    id: str
    src: AnnotatedText | TaggedText
    tgt: AnnotatedText | TaggedText
    src_lang: str = ""
    tgt_lang: str = ""

    def __post_init__(self) -> None:
        if not self.src_lang:
            object.__setattr__(self, "src_lang", self.src.lang)
        if not self.tgt_lang:
            object.__setattr__(self, "tgt_lang", self.tgt.lang)
        if self.src.id != self.id or self.tgt.id != self.id:
            raise ValueError(f"sides of {self.id!r} carry different ids")
        if self.src.lang == self.tgt.lang:
            raise ValueError(f"{self.id!r}: source and target language are equal")


def _partially_overlap(a: Span, b: Span) -> bool:
    # Half-open intervals: they intersect but neither contains the other.
    if not (a.start < b.end and b.start < a.end):
        return False
    a_contains_b = a.start <= b.start and b.end <= a.end
    b_contains_a = b.start <= a.start and a.end <= b.end
    return not (a_contains_b or b_contains_a)


def validate(doc: AnnotatedText, allow_uppercase: bool = False) -> list[Diagnostic]:
    """Check an AnnotatedText against its invariants.

    Returns one record per violation; an empty list means the document is
    well-formed. Error codes:

    * ``OFFSET_OOB``: a span's offsets fall outside the text.
    * ``EMPTY_TAG``: a span has an empty tag name.
    * ``BAD_TAG_NAME``: a tag does not match the marker grammar.
    * ``SAME_NAME_OVERLAP``: two spans with the same tag partially
      overlap (same-name spans must be disjoint or properly nested,
      otherwise pairing open/close markers by name cannot recover them).

    Additionally emits a ``MARKER_COLLISION`` warning when the text itself
    contains a substring matching the marker grammar; such documents still
    encode, but are excluded from round-trip guarantees.
    """
    diagnostics: list[Diagnostic] = []
    n = len(doc.text)
    in_bounds: list[Span] = []
    for span in doc.spans:
        if not span.tag:
            diagnostics.append(
                Diagnostic(SEVERITY_ERROR, "EMPTY_TAG", f"span {span.start}:{span.end} has an empty tag")
            )
        elif not is_valid_tag_name(span.tag, allow_uppercase):
            diagnostics.append(
                Diagnostic(
                    SEVERITY_ERROR,
                    "BAD_TAG_NAME",
                    f"tag {span.tag!r} does not match the marker name grammar",
                )
            )
        if not (0 <= span.start <= span.end <= n):
            diagnostics.append(
                Diagnostic(
                    SEVERITY_ERROR,
                    "OFFSET_OOB",
                    f"span {span.tag!r} [{span.start}, {span.end}) outside text of length {n}",
                )
            )
        else:
            in_bounds.append(span)

    by_tag: dict[str, list[Span]] = {}
    for span in in_bounds:
        by_tag.setdefault(span.tag, []).append(span)
    for tag, group in by_tag.items():
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                if _partially_overlap(group[i], group[j]):
                    a, b = group[i], group[j]
                    diagnostics.append(
                        Diagnostic(
                            SEVERITY_ERROR,
                            "SAME_NAME_OVERLAP",
                            f"spans {tag!r} [{a.start}, {a.end}) and [{b.start}, {b.end}) partially overlap",
                            offset=max(a.start, b.start),
                        )
                    )

    for match in marker_pattern(allow_uppercase).finditer(doc.text):
        diagnostics.append(
            Diagnostic(
                SEVERITY_WARNING,
                "MARKER_COLLISION",
                f"text contains marker-shaped substring {match.group(0)!r}",
                offset=match.start(),
            )
        )
    return diagnostics
