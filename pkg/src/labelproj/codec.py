"""Inline-marker codec: annotated spans to tagged strings and back.

Two schemes are supported. The XML-style scheme writes ``<a>span</a>``
markers whose names identify which source span each translated span came
from; it is the primary scheme and round-trips exactly. The square-bracket
scheme writes anonymous ``[`` / ``]`` markers for baseline comparisons and
claims no correspondence between input and recovered spans.

Decoding is a lenient left-to-right scan rather than a strict XML parse:
tagged text coming back from a translation model may interleave markers in
ways that are not well-formed XML (overlapping spans, dropped or duplicated
markers), and every such anomaly must be reported instead of failing.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Literal

from .errors import InvalidAnnotationError
from .model import (
    SEVERITY_INFO,
    SEVERITY_WARNING,
    AnnotatedText,
    Diagnostic,
    Span,
    TaggedText,
    has_errors,
    marker_pattern,
    validate,
)

MarkerKind = Literal["open", "close"]

# Anything delimited by single angle brackets; used to report marker-like
# substrings (e.g. "<1>") that do not match the marker grammar.
_LOOKALIKE_RE = re.compile(r"</?[^<>]*>")

_ALPHA = "abcdefghijklmnopqrstuvwxyz"


class MarkerScheme(str, Enum):
    XML = "xml"
    BRACKETS = "brackets"


def tag_name(index: int) -> str:
    """Return the tag for a zero-based span index: a, b, ..., z, aa, ab, ...

    Bijective base-26 numeration in lowercase; stable across runs.
    """
    if index < 0:
        raise ValueError("tag index must be non-negative")
    n = index + 1
    out: list[str] = []
    while n:
        n, rem = divmod(n - 1, 26)
        out.append(_ALPHA[rem])
    return "".join(reversed(out))


def tag_index(name: str) -> int:
    """Inverse of :func:`tag_name` for lowercase names."""
    if not name or any(ch not in _ALPHA for ch in name):
        raise ValueError(f"not a generated tag name: {name!r}")
    n = 0
    for ch in name:
        n = n * 26 + (ord(ch) - ord("a") + 1)
    return n - 1


def _tag_sort_key(tag: str) -> tuple[int, str]:
    # Orders names by their position in the a, b, ..., z, aa, ... sequence
    # without requiring them to be lowercase.
    return (len(tag), tag)


@dataclass(frozen=True)
class MarkerToken:
    """One recognized marker with its offsets in the raw tagged string."""

    name: str
    kind: MarkerKind
    start: int
    end: int


class MarkerSignature:
    """Multiset of (tag name, open/close) markers found in a tagged string.

    Square-bracket markers count under the anonymous name ``""``.
    """

    __slots__ = ("_counts",)

    def __init__(self, markers: Iterable[tuple[str, MarkerKind]] = ()):
        counts = Counter(markers)
        self._counts = Counter({key: n for key, n in counts.items() if n > 0})

    @property
    def counts(self) -> dict[tuple[str, MarkerKind], int]:
        return dict(self._counts)

    def count(self, name: str, kind: MarkerKind) -> int:
        return self._counts[(name, kind)]

    def total(self) -> int:
        return sum(self._counts.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MarkerSignature):
            return NotImplemented
        return self._counts == other._counts

    def __hash__(self) -> int:
        return hash(frozenset(self._counts.items()))

    def __repr__(self) -> str:
        items = sorted(self._counts.items())
        return f"MarkerSignature({items!r})"


def scan_markers(
    tagged: str, scheme: MarkerScheme = MarkerScheme.XML, allow_uppercase: bool = False
) -> tuple[list[MarkerToken], list[Diagnostic]]:
    """Find all recognized markers left to right.

    Returns the tokens plus IGNORED_LITERAL diagnostics for angle-bracketed
    substrings that look like markers but do not match the grammar; those
    substrings stay part of the text.
    """
    tokens: list[MarkerToken] = []
    diagnostics: list[Diagnostic] = []
    if scheme is MarkerScheme.BRACKETS:
        for i, ch in enumerate(tagged):
            if ch == "[":
                tokens.append(MarkerToken("", "open", i, i + 1))
            elif ch == "]":
                tokens.append(MarkerToken("", "close", i, i + 1))
        return tokens, diagnostics

    grammar = marker_pattern(allow_uppercase)
    for match in _LOOKALIKE_RE.finditer(tagged):
        token = match.group(0)
        exact = grammar.fullmatch(token)
        if exact is None:
            diagnostics.append(
                Diagnostic(
                    SEVERITY_INFO,
                    "IGNORED_LITERAL",
                    f"marker-like substring {token!r} left as literal text",
                    offset=match.start(),
                )
            )
            continue
        kind: MarkerKind = "close" if exact.group(1) else "open"
        tokens.append(MarkerToken(exact.group(2), kind, match.start(), match.end()))
    return tokens, diagnostics


def pair_markers(
    tokens: list[MarkerToken],
) -> tuple[list[tuple[MarkerToken, MarkerToken]], list[MarkerToken], list[MarkerToken]]:
    """Pair opens with closes per tag name, last-opened-first-closed.

    Returns (pairs in opening order, orphan closes, unclosed opens).
    """
    stacks: dict[str, list[int]] = {}
    opens_paired: dict[int, MarkerToken] = {}
    orphans: list[MarkerToken] = []
    pair_of: dict[int, MarkerToken] = {}
    for i, token in enumerate(tokens):
        if token.kind == "open":
            stacks.setdefault(token.name, []).append(i)
        else:
            stack = stacks.get(token.name)
            if stack:
                j = stack.pop()
                opens_paired[j] = tokens[j]
                pair_of[j] = token
            else:
                orphans.append(token)
    unclosed = [tokens[i] for indices in stacks.values() for i in indices]
    unclosed.sort(key=lambda t: t.start)
    pairs = [(opens_paired[j], pair_of[j]) for j in sorted(pair_of)]
    return pairs, orphans, unclosed


def _ordered_opens(spans: tuple[Span, ...]) -> list[tuple[int, Span]]:
    # Opening order: by start, then longest span first, then tag sequence
    # order, then input position for full ties.
    indexed = list(enumerate(spans))
    indexed.sort(key=lambda item: (item[1].start, -item[1].length(), _tag_sort_key(item[1].tag), item[0]))
    return indexed


def encode(
    doc: AnnotatedText, scheme: MarkerScheme = MarkerScheme.XML, allow_uppercase: bool = False
) -> TaggedText:
    """Serialize spans into inline markers around the unchanged text.

    Every span contributes an open marker at its start offset and a close
    marker at its end offset. When several markers share an offset, closes
    of earlier-opened spans come first (most recently opened closing first),
    then opens (longest span first, ties by tag sequence order); zero-width
    spans close immediately after the opens at that offset. Stripping all
    markers from the output reproduces ``doc.text`` exactly.
    """
    diagnostics = validate(doc, allow_uppercase)
    if has_errors(diagnostics):
        codes = ", ".join(sorted({d.code for d in diagnostics if d.severity == "error"}))
        raise InvalidAnnotationError(f"document {doc.id!r} fails validation: {codes}")

    opens = _ordered_opens(doc.spans)
    open_rank = {idx: rank for rank, (idx, _) in enumerate(opens)}

    opens_at: dict[int, list[int]] = {}
    closes_at: dict[int, list[int]] = {}
    zero_width_at: dict[int, list[int]] = {}
    for idx, span in opens:
        opens_at.setdefault(span.start, []).append(idx)
        if span.start == span.end:
            zero_width_at.setdefault(span.end, []).append(idx)
        else:
            closes_at.setdefault(span.end, []).append(idx)

    if scheme is MarkerScheme.BRACKETS:
        def open_marker(span: Span) -> str:
            return "["

        def close_marker(span: Span) -> str:
            return "]"
    else:
        def open_marker(span: Span) -> str:
            return f"<{span.tag}>"

        def close_marker(span: Span) -> str:
            return f"</{span.tag}>"

    pieces: list[str] = []
    for pos in range(len(doc.text) + 1):
        for idx in sorted(closes_at.get(pos, ()), key=lambda i: -open_rank[i]):
            pieces.append(close_marker(doc.spans[idx]))
        for idx in opens_at.get(pos, ()):
            pieces.append(open_marker(doc.spans[idx]))
        for idx in sorted(zero_width_at.get(pos, ()), key=lambda i: -open_rank[i]):
            pieces.append(close_marker(doc.spans[idx]))
        if pos < len(doc.text):
            pieces.append(doc.text[pos])
    return TaggedText(id=doc.id, lang=doc.lang, tagged="".join(pieces))


def decode(
    tagged: TaggedText | str,
    scheme: MarkerScheme = MarkerScheme.XML,
    allow_uppercase: bool = False,
    *,
    doc_id: str = "",
    lang: str = "",
) -> tuple[AnnotatedText, list[Diagnostic]]:
    """Recover spans from a tagged string; total over all inputs.

    Recognized markers are stripped from the text; recovered offsets index
    the stripped text. Opens and closes pair per tag name with a
    last-opened-first-closed discipline (square brackets pair under one
    anonymous name and yield spans tagged a, b, ... in opening order).
    Anomalies become diagnostics, never exceptions: closes without a
    matching open are dropped (ORPHAN_CLOSE), opens without a close extend
    to the end of the text (UNCLOSED_OPEN), and marker lookalikes such as
    "<1>" stay literal (IGNORED_LITERAL).

    Output spans are sorted by (start, longest first, tag sequence order).
    """
    if isinstance(tagged, TaggedText):
        raw, doc_id, lang = tagged.tagged, tagged.id, tagged.lang
    else:
        raw = tagged

    tokens, diagnostics = scan_markers(raw, scheme, allow_uppercase)
    out: list[str] = []
    out_len = 0
    cursor = 0
    # Per tag name: stack of (offset in stripped text, raw offset, open order).
    stacks: dict[str, list[tuple[int, int, int]]] = {}
    open_count = 0
    spans: list[Span] = []

    for token in tokens:
        if cursor < token.start:
            chunk = raw[cursor : token.start]
            out.append(chunk)
            out_len += len(chunk)
        cursor = token.end
        if token.kind == "open":
            stacks.setdefault(token.name, []).append((out_len, token.start, open_count))
            open_count += 1
        else:
            stack = stacks.get(token.name)
            if stack:
                start, _, order = stack.pop()
                name = token.name if scheme is MarkerScheme.XML else tag_name(order)
                spans.append(Span(name, start, out_len))
            else:
                diagnostics.append(
                    Diagnostic(
                        SEVERITY_WARNING,
                        "ORPHAN_CLOSE",
                        f"close marker {raw[token.start:token.end]!r} without a matching open",
                        offset=token.start,
                    )
                )
    if cursor < len(raw):
        chunk = raw[cursor:]
        out.append(chunk)
        out_len += len(chunk)

    leftovers = [
        (raw_pos, order, name, start)
        for name, stack in stacks.items()
        for (start, raw_pos, order) in stack
    ]
    for raw_pos, order, name, start in sorted(leftovers):
        shown = name if scheme is MarkerScheme.XML else tag_name(order)
        spans.append(Span(shown, start, out_len))
        diagnostics.append(
            Diagnostic(
                SEVERITY_WARNING,
                "UNCLOSED_OPEN",
                f"open marker for {shown!r} never closed; span extended to end of text",
                offset=raw_pos,
            )
        )

    spans.sort(key=lambda s: (s.start, -s.end, _tag_sort_key(s.tag)))
    diagnostics.sort(key=lambda d: (d.offset if d.offset is not None else 1 << 62))
    text = "".join(out)
    return AnnotatedText(id=doc_id, lang=lang, text=text, spans=tuple(spans)), diagnostics


def strip_markers(
    tagged: TaggedText | str, scheme: MarkerScheme = MarkerScheme.XML, allow_uppercase: bool = False
) -> str:
    """Remove all recognized markers, keeping everything else verbatim."""
    raw = tagged.tagged if isinstance(tagged, TaggedText) else tagged
    tokens, _ = scan_markers(raw, scheme, allow_uppercase)
    pieces = []
    cursor = 0
    for token in tokens:
        pieces.append(raw[cursor : token.start])
        cursor = token.end
    pieces.append(raw[cursor:])
    return "".join(pieces)


def signature(
    tagged: TaggedText | str, scheme: MarkerScheme = MarkerScheme.XML, allow_uppercase: bool = False
) -> MarkerSignature:
    """Count every recognized marker, orphans included."""
    raw = tagged.tagged if isinstance(tagged, TaggedText) else tagged
    tokens, _ = scan_markers(raw, scheme, allow_uppercase)
    return MarkerSignature((t.name, t.kind) for t in tokens)
