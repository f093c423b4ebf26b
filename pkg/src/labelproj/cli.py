"""Command-line entry point.

Each subcommand is one re-runnable pipeline stage; intermediate artifacts
are plain JSONL so any stage can be cached or swapped out. All outputs are
written atomically. Exit codes: 0 on success, 1 on any terminal error, 2
when the malformed-record budget is exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from pathlib import Path
from typing import Sequence

from .backends import (
    ConstantScorer,
    HttpScorerBackend,
    HttpTranslationBackend,
    IdentityBackend,
    ScorerBackend,
    TagDropperBackend,
    TagShufflerBackend,
    TranslationBackend,
)
from .codec import MarkerScheme, decode, encode, signature
from .corpus import (
    QaParallelPair,
    directed_record,
    filter_parallel_qa,
    prepare_training_corpus,
    raw_pair_record,
    read_raw_pairs,
    tag_swap,
)
from .dataio import (
    DatasetFormat,
    DatasetHandle,
    atomic_write_text,
    dump,
    ingest_qa,
    load,
    qa_question_counts,
)
from .errors import AlignmentError, ErrorBudgetExceeded, LabelProjError
from .evaluation import EvalGroup, build_report
from .model import AnnotatedText, Diagnostic, ParallelExample, TaggedText
from .synth import InsertionMode, MarkerConfig, derive_seed, insert_markers

ENV_BACKEND_URL = "LP_BACKEND_URL"
ENV_SCORER_URL = "LP_SCORER_URL"
ENV_BEARER_TOKEN = "LP_BEARER_TOKEN"


def _bearer_token() -> str | None:
    return os.environ.get(ENV_BEARER_TOKEN)


def make_backend(
    value: str | None, seed: int, batch_size: int, max_in_flight: int
) -> TranslationBackend:
    """Parse a --backend value: identity | shuffle | drop:Q | http(s) URL."""
    value = value or os.environ.get(ENV_BACKEND_URL)
    if not value:
        raise LabelProjError(f"no backend given and {ENV_BACKEND_URL} is unset")
    if value == "identity":
        return IdentityBackend()
    if value == "shuffle":
        return TagShufflerBackend(seed)
    if value.startswith("drop:"):
        return TagDropperBackend(float(value[len("drop:") :]), seed)
    if value.startswith(("http:", "https:")):
        return HttpTranslationBackend(
            value,
            batch_size=batch_size,
            max_in_flight=max_in_flight,
            bearer_token=_bearer_token(),
        )
    raise LabelProjError(f"unrecognized backend {value!r}")


def make_scorer(value: str | None) -> ScorerBackend | None:
    value = value or os.environ.get(ENV_SCORER_URL)
    if not value:
        return None
    if value.startswith("constant:"):
        return ConstantScorer(float(value[len("constant:") :]))
    if value.startswith(("http:", "https:")):
        return HttpScorerBackend(value, bearer_token=_bearer_token())
    raise LabelProjError(f"unrecognized scorer {value!r}")


def _diag_record(diag: Diagnostic, doc_id: str | None = None) -> dict:
    record = {
        "severity": diag.severity,
        "code": diag.code,
        "message": diag.message,
        "offset": diag.offset,
    }
    if doc_id is not None:
        record["id"] = doc_id
    return record


def _write_jsonl(path: Path, records: Sequence[dict]) -> None:
    payload = "".join(json.dumps(r, ensure_ascii=False, separators=(",", ":")) + "\n" for r in records)
    atomic_write_text(Path(path), payload)


def _emit_report(report, fmt: str, out_path: str | None) -> None:
    if fmt == "csv":
        text = report.to_csv()
    elif fmt == "json":
        text = report.to_json()
    else:
        text = report.to_table()
    if out_path:
        atomic_write_text(Path(out_path), text)
    else:
        sys.stdout.write(text)


def _scheme(args: argparse.Namespace) -> MarkerScheme:
    return MarkerScheme(args.scheme)


def _diagnostics_path(args: argparse.Namespace) -> Path:
    if args.diagnostics:
        return Path(args.diagnostics)
    return Path(str(args.output) + ".diagnostics.jsonl")


def _build_groups(
    projected: Sequence[AnnotatedText],
    reference: Sequence[AnnotatedText],
    marker_pairs: Sequence[tuple[TaggedText, TaggedText]] | None,
    dataset: str,
) -> list[EvalGroup]:
    """One group per reference language; ids must cover both sides exactly."""
    proj_by_id = {doc.id: doc for doc in projected}
    if len(proj_by_id) != len(projected):
        raise AlignmentError("duplicate ids among projected documents")
    by_lang: dict[str, list[AnnotatedText]] = {}
    for doc in reference:
        by_lang.setdefault(doc.lang, []).append(doc)
    pairs_by_id = {}
    if marker_pairs is not None:
        pairs_by_id = {source.id: (source, hypothesis) for source, hypothesis in marker_pairs}

    groups = []
    claimed: set[str] = set()
    for lang in sorted(by_lang):
        refs = by_lang[lang]
        projs = []
        for ref in refs:
            doc = proj_by_id.get(ref.id)
            if doc is None:
                raise AlignmentError(f"reference id {ref.id!r} has no projected document")
            projs.append(doc)
            claimed.add(ref.id)
        group_pairs = None
        if marker_pairs is not None:
            selected = tuple(pairs_by_id[r.id] for r in refs if r.id in pairs_by_id)
            group_pairs = selected or None
        groups.append(EvalGroup(lang, dataset, tuple(projs), tuple(refs), group_pairs))
    unclaimed = set(proj_by_id) - claimed
    if unclaimed:
        raise AlignmentError(f"projected ids with no reference: {sorted(unclaimed)[:5]}")
    return groups


def cmd_encode(args: argparse.Namespace) -> int:
    docs, diagnostics = load(
        DatasetHandle(DatasetFormat.ANNOTATED_JSONL, path=Path(args.input)), args.error_budget
    )
    tagged = [encode(doc, _scheme(args)) for doc in docs]
    summary = dump(tagged, DatasetHandle(DatasetFormat.TAGGED_JSONL, path=Path(args.output)))
    print(f"encoded {summary.count} documents -> {summary.path}", file=sys.stderr)
    if diagnostics:
        print(f"{len(diagnostics)} input diagnostics", file=sys.stderr)
    return 0


def cmd_decode(args: argparse.Namespace) -> int:
    texts, load_diags = load(
        DatasetHandle(DatasetFormat.TAGGED_JSONL, path=Path(args.input)), args.error_budget
    )
    docs = []
    diag_records = [_diag_record(d) for d in load_diags]
    for text in texts:
        doc, diags = decode(text, _scheme(args))
        docs.append(doc)
        diag_records.extend(_diag_record(d, text.id) for d in diags)
    summary = dump(docs, DatasetHandle(DatasetFormat.ANNOTATED_JSONL, path=Path(args.output)))
    _write_jsonl(_diagnostics_path(args), diag_records)
    print(f"decoded {summary.count} documents -> {summary.path}", file=sys.stderr)
    return 0


def cmd_synth(args: argparse.Namespace) -> int:
    lines, _ = load(DatasetHandle(DatasetFormat.PLAIN_TEXT, path=Path(args.input), lang=args.src_lang))
    base = MarkerConfig(
        mode=InsertionMode(args.mode),
        p_open=args.p_open,
        p_close=args.p_close,
        seed=args.seed,
        sequential_lengths=args.sequential_lengths,
    )
    docs = []
    for line in lines:
        if not line.tagged.strip():
            continue
        config = replace(base, seed=derive_seed(args.seed, line.id))
        docs.append(insert_markers(line.tagged, config, doc_id=line.id, lang=args.src_lang))
    summary = dump(docs, DatasetHandle(DatasetFormat.ANNOTATED_JSONL, path=Path(args.output)))
    print(f"sampled spans for {summary.count} sentences -> {summary.path}", file=sys.stderr)
    return 0


def cmd_tagswap(args: argparse.Namespace) -> int:
    pairs, read_diags = read_raw_pairs(Path(args.input).read_text(encoding="utf-8"))
    records = []
    diag_records = [_diag_record(d) for d in read_diags]
    for pair in pairs:
        normalized, diags = tag_swap(pair)
        records.append(raw_pair_record(normalized))
        diag_records.extend(_diag_record(d, pair.id) for d in diags)
    _write_jsonl(Path(args.output), records)
    _write_jsonl(_diagnostics_path(args), diag_records)
    print(f"normalized {len(records)} pairs -> {args.output}", file=sys.stderr)
    return 0


def cmd_prep(args: argparse.Namespace) -> int:
    pairs, read_diags = read_raw_pairs(Path(args.input).read_text(encoding="utf-8"))
    corpus = prepare_training_corpus(pairs, dev_fraction=args.dev_fraction, seed=args.seed)
    out_dir = Path(args.out_dir)
    _write_jsonl(out_dir / "train.jsonl", [directed_record(e) for e in corpus.train])
    _write_jsonl(out_dir / "dev.jsonl", [directed_record(e) for e in corpus.dev])
    provenance = {
        "provenance": corpus.provenance.to_json_dict(),
        "dropped": [{"id": pair.id, "reason": reason} for pair, reason in corpus.dropped],
        "read_diagnostics": [_diag_record(d) for d in read_diags],
    }
    atomic_write_text(out_dir / "provenance.json", json.dumps(provenance, ensure_ascii=False, indent=2) + "\n")
    print(
        f"prepared {len(corpus.train)} train / {len(corpus.dev)} dev examples -> {out_dir}",
        file=sys.stderr,
    )
    return 0


def cmd_filter_qa(args: argparse.Namespace) -> int:
    src_tree = json.loads(Path(args.src_json).read_text(encoding="utf-8"))
    tgt_tree = json.loads(Path(args.tgt_json).read_text(encoding="utf-8"))
    src_docs, src_diags = ingest_qa(src_tree, args.src_lang)
    tgt_docs, tgt_diags = ingest_qa(tgt_tree, args.tgt_lang)
    src_questions = qa_question_counts(src_tree)
    tgt_questions = qa_question_counts(tgt_tree)

    tgt_by_id = {doc.id: doc for doc in tgt_docs}
    pairs = []
    diag_records = [_diag_record(d) for d in src_diags + tgt_diags]
    for src_doc in src_docs:
        tgt_doc = tgt_by_id.pop(src_doc.id, None)
        if tgt_doc is None:
            diag_records.append(
                _diag_record(
                    Diagnostic("warning", "UNALIGNED_CONTEXT", "no target-side context"), src_doc.id
                )
            )
            continue
        example = ParallelExample(src_doc.id, src_doc, tgt_doc, args.src_lang, args.tgt_lang)
        pairs.append(
            QaParallelPair(example, src_questions[src_doc.id], tgt_questions[tgt_doc.id])
        )
    for doc_id in tgt_by_id:
        diag_records.append(
            _diag_record(Diagnostic("warning", "UNALIGNED_CONTEXT", "no source-side context"), doc_id)
        )

    min_score = None if args.no_score_filter else args.min_score
    scorer = make_scorer(args.scorer) if min_score is not None else None
    kept, dropped, filter_diags = filter_parallel_qa(pairs, scorer, min_score)
    diag_records.extend(_diag_record(d) for d in filter_diags)

    out_dir = Path(args.out_dir)
    src_handle = DatasetHandle(DatasetFormat.ANNOTATED_JSONL, path=out_dir / "kept.src.jsonl")
    tgt_handle = DatasetHandle(DatasetFormat.ANNOTATED_JSONL, path=out_dir / "kept.tgt.jsonl")
    dump([pair.example.src for pair in kept], src_handle)
    dump([pair.example.tgt for pair in kept], tgt_handle)
    _write_jsonl(
        out_dir / "dropped.jsonl",
        [{"id": pair.example.id, "reason": reason} for pair, reason in dropped],
    )
    _write_jsonl(out_dir / "diagnostics.jsonl", diag_records)
    print(f"kept {len(kept)} / dropped {len(dropped)} context pairs -> {out_dir}", file=sys.stderr)
    return 0


def cmd_translate(args: argparse.Namespace) -> int:
    texts, _ = load(DatasetHandle(DatasetFormat.TAGGED_JSONL, path=Path(args.input)), args.error_budget)
    backend = make_backend(args.backend, args.seed, args.batch_size, args.max_in_flight)
    translated = backend.translate_batch(texts, args.src_lang, args.tgt_lang)
    summary = dump(translated, DatasetHandle(DatasetFormat.TAGGED_JSONL, path=Path(args.output)))
    print(f"translated {summary.count} texts -> {summary.path}", file=sys.stderr)
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    projected, _ = load(
        DatasetHandle(DatasetFormat.ANNOTATED_JSONL, path=Path(args.projected)), args.error_budget
    )
    reference, _ = load(
        DatasetHandle(DatasetFormat.ANNOTATED_JSONL, path=Path(args.reference)), args.error_budget
    )
    marker_pairs = None
    if args.source_tagged and args.hypothesis_tagged:
        sources, _ = load(DatasetHandle(DatasetFormat.TAGGED_JSONL, path=Path(args.source_tagged)))
        hypotheses, _ = load(DatasetHandle(DatasetFormat.TAGGED_JSONL, path=Path(args.hypothesis_tagged)))
        if len(sources) != len(hypotheses):
            raise AlignmentError("source/hypothesis tagged files differ in length")
        marker_pairs = list(zip(sources, hypotheses))
    elif args.source_tagged or args.hypothesis_tagged:
        raise LabelProjError("--source-tagged and --hypothesis-tagged must be given together")

    groups = _build_groups(projected, reference, marker_pairs, args.dataset)
    report = build_report(groups, threshold=args.threshold, scheme=_scheme(args))
    _emit_report(report, args.report, args.report_out)
    return 0


def cmd_project(args: argparse.Namespace) -> int:
    docs, load_diags = load(
        DatasetHandle(DatasetFormat.ANNOTATED_JSONL, path=Path(args.input)), args.error_budget
    )
    scheme = _scheme(args)
    sources = [encode(doc, scheme) for doc in docs]
    backend = make_backend(args.backend, args.seed, args.batch_size, args.max_in_flight)
    hypotheses = backend.translate_batch(sources, args.src_lang, args.tgt_lang)

    projected = []
    diag_records = [_diag_record(d) for d in load_diags]
    for hypothesis in hypotheses:
        doc, diags = decode(hypothesis, scheme)
        projected.append(replace(doc, lang=args.tgt_lang))
        diag_records.extend(_diag_record(d, hypothesis.id) for d in diags)

    summary = dump(projected, DatasetHandle(DatasetFormat.ANNOTATED_JSONL, path=Path(args.output)))
    _write_jsonl(_diagnostics_path(args), diag_records)
    print(f"projected {summary.count} documents -> {summary.path}", file=sys.stderr)

    if args.reference:
        reference, _ = load(
            DatasetHandle(DatasetFormat.ANNOTATED_JSONL, path=Path(args.reference)), args.error_budget
        )
        marker_pairs = list(zip(sources, hypotheses))
        groups = _build_groups(projected, reference, marker_pairs, args.dataset)
        report = build_report(groups, threshold=args.threshold, scheme=scheme)
        _emit_report(report, args.report, args.report_out)
    return 0


def _grid(lo: float, hi: float, step: float) -> list[float]:
    if step <= 0:
        raise LabelProjError("grid step must be positive")
    values = []
    v = lo
    while v <= hi + 1e-9:
        values.append(round(v, 10))
        v += step
    return values


def cmd_sweep(args: argparse.Namespace) -> int:
    lines, _ = load(DatasetHandle(DatasetFormat.PLAIN_TEXT, path=Path(args.input), lang=args.src_lang))
    sentences = [line for line in lines if line.tagged.strip()]
    out_dir = Path(args.out_dir)
    scheme = _scheme(args)
    manifest = {
        "mode": args.mode,
        "seed": args.seed,
        "source": str(args.input),
        "cells": [],
    }
    for p_open in _grid(args.p_open_min, args.p_open_max, args.p_open_step):
        for p_close in _grid(args.p_close_min, args.p_close_max, args.p_close_step):
            cell_seed = derive_seed(args.seed, f"{p_open}:{p_close}")
            tagged = []
            for line in sentences:
                config = MarkerConfig(
                    mode=InsertionMode(args.mode),
                    p_open=p_open,
                    p_close=p_close,
                    seed=derive_seed(cell_seed, line.id),
                )
                doc = insert_markers(line.tagged, config, doc_id=line.id, lang=args.src_lang)
                tagged.append(encode(doc, scheme))
            name = f"{args.mode}_po{p_open:g}_pc{p_close:g}.jsonl"
            dump(tagged, DatasetHandle(DatasetFormat.TAGGED_JSONL, path=out_dir / name))
            manifest["cells"].append(
                {"p_open": p_open, "p_close": p_close, "path": name, "examples": len(tagged)}
            )
    atomic_write_text(out_dir / "manifest.json", json.dumps(manifest, indent=2) + "\n")
    print(f"wrote {len(manifest['cells'])} corpora -> {out_dir}", file=sys.stderr)
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    fmt = DatasetFormat(args.format)
    items, _ = load(DatasetHandle(fmt, path=Path(args.input)), args.error_budget)
    per_lang: dict[str, list[tuple[int, int]]] = {}
    for item in items:
        if fmt is DatasetFormat.ANNOTATED_JSONL:
            tags = len(item.spans)
            unique = len({span.tag for span in item.spans})
            lang = item.lang
        else:
            sig = signature(item, _scheme(args))
            opens = [(name, n) for (name, kind), n in sig.counts.items() if kind == "open"]
            tags = sum(n for _, n in opens)
            unique = len(opens)
            lang = item.lang
        per_lang.setdefault(lang, []).append((tags, unique))

    rows = []
    for lang in sorted(per_lang):
        counts = per_lang[lang]
        totals = [c[0] for c in counts]
        rows.append(
            {
                "language": lang,
                "examples": len(counts),
                "total_tags": sum(totals),
                "min_tags": min(totals),
                "max_tags": max(totals),
                "avg_tags": round(sum(totals) / len(counts), 4),
                "max_unique_tags": max(c[1] for c in counts),
            }
        )
    if args.report == "json":
        sys.stdout.write(json.dumps(rows, indent=2) + "\n")
    else:
        header = ["language", "examples", "total_tags", "min_tags", "max_tags", "avg_tags", "max_unique_tags"]
        widths = [max(len(h), *(len(str(r[h])) for r in rows)) for h in header] if rows else [len(h) for h in header]
        sys.stdout.write("  ".join(h.ljust(w) for h, w in zip(header, widths)) + "\n")
        for r in rows:
            sys.stdout.write("  ".join(str(r[h]).ljust(w) for h, w in zip(header, widths)) + "\n")
    return 0


def _add_io(parser: argparse.ArgumentParser, output: bool = True) -> None:
    parser.add_argument("--input", "-i", required=True, help="input dataset path")
    if output:
        parser.add_argument("--output", "-o", required=True, help="output dataset path")


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--scheme", choices=["xml", "brackets"], default="xml")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--error-budget", type=int, default=0, help="malformed records tolerated before aborting")


def _add_backend(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--backend",
        default=None,
        help=f"identity | shuffle | drop:Q | an http(s) URL (default ${ENV_BACKEND_URL})",
    )
    parser.add_argument("--batch-size", type=int, default=32)
    parser.add_argument("--max-in-flight", type=int, default=4)
    parser.add_argument("--src-lang", required=True)
    parser.add_argument("--tgt-lang", required=True)


def _add_report(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--report", choices=["csv", "json", "table"], default="table")
    parser.add_argument("--report-out", default=None, help="write the report here instead of stdout")
    parser.add_argument("--threshold", type=float, default=0.5)
    parser.add_argument("--dataset", default="dataset", help="dataset name for report rows")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="labelproj", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="annotated JSONL -> tagged JSONL")
    _add_io(p)
    _add_common(p)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="tagged JSONL -> annotated JSONL plus diagnostics")
    _add_io(p)
    _add_common(p)
    p.add_argument("--diagnostics", default=None, help="diagnostics sidecar path")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("synth", help="plain text -> annotated JSONL with sampled spans")
    _add_io(p)
    _add_common(p)
    p.add_argument("--mode", choices=[m.value for m in InsertionMode], default="complex")
    p.add_argument("--p-open", type=float, default=0.2)
    p.add_argument("--p-close", type=float, default=0.5)
    p.add_argument("--sequential-lengths", action="store_true")
    p.add_argument("--src-lang", default="eng_Latn")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("tagswap", help="normalize raw markup pairs to lettered tags")
    _add_io(p)
    _add_common(p)
    p.add_argument("--diagnostics", default=None)
    p.set_defaults(func=cmd_tagswap)

    p = sub.add_parser("prep", help="raw markup pairs -> bidirectional train/dev corpus")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--dev-fraction", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_prep)

    p = sub.add_parser("filter-qa", help="keep parallel QA contexts with matching counts and score")
    p.add_argument("--src-json", required=True)
    p.add_argument("--tgt-json", required=True)
    p.add_argument("--src-lang", required=True)
    p.add_argument("--tgt-lang", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--min-score", type=float, default=80.0)
    p.add_argument("--no-score-filter", action="store_true")
    p.add_argument("--scorer", default=None, help=f"constant:V | http(s) URL (default ${ENV_SCORER_URL})")
    p.set_defaults(func=cmd_filter_qa)

    p = sub.add_parser("translate", help="tagged JSONL -> tagged JSONL through a backend")
    _add_io(p)
    _add_common(p)
    _add_backend(p)
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("evaluate", help="score projected spans against a reference")
    p.add_argument("--projected", required=True)
    p.add_argument("--reference", required=True)
    p.add_argument("--source-tagged", default=None)
    p.add_argument("--hypothesis-tagged", default=None)
    _add_common(p)
    _add_report(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("project", help="encode, translate, decode, and optionally evaluate")
    _add_io(p)
    _add_common(p)
    _add_backend(p)
    _add_report(p)
    p.add_argument("--reference", default=None, help="gold annotated JSONL in the target language")
    p.add_argument("--diagnostics", default=None)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("sweep", help="generate tagged corpora over a (p_open, p_close) grid")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--out-dir", required=True)
    _add_common(p)
    p.add_argument("--mode", choices=[m.value for m in InsertionMode], default="complex")
    p.add_argument("--src-lang", default="eng_Latn")
    p.add_argument("--p-open-min", type=float, default=0.1)
    p.add_argument("--p-open-max", type=float, default=0.5)
    p.add_argument("--p-open-step", type=float, default=0.1)
    p.add_argument("--p-close-min", type=float, default=0.1)
    p.add_argument("--p-close-max", type=float, default=0.5)
    p.add_argument("--p-close-step", type=float, default=0.1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("stats", help="per-language tag statistics for a dataset")
    p.add_argument("--input", "-i", required=True)
    p.add_argument("--format", choices=["annotated", "tagged"], default="annotated")
    p.add_argument("--report", choices=["table", "json"], default="table")
    _add_common(p)
    p.set_defaults(func=cmd_stats)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ErrorBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (LabelProjError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
