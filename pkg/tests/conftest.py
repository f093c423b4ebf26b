from __future__ import annotations

from labelproj import AnnotatedText, Span


def make_doc(text: str, spans=(), doc_id: str = "d", lang: str = "en") -> AnnotatedText:
    return AnnotatedText(id=doc_id, lang=lang, text=text, spans=tuple(spans))


def canon(spans) -> tuple[Span, ...]:
    """The span order decode emits: start, then longest first, then tag."""
    return tuple(sorted(spans, key=lambda s: (s.start, -s.end, (len(s.tag), s.tag))))
