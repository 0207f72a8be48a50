"""Command-line interface.

Results go to stdout as tab-separated lines, diagnostics to stderr. Exit
codes: 0 success, 2 missing file, 3 unparseable input, 4 usage error
(including scale mismatches).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classify import classify_document, classify_sentence
from .conllu import parse_document
from .engine import compute_so
from .errors import PARSE_ERRORS, ScaleMismatchError, UsageError
from .evaluate import (
    RunConfig,
    compare_configs,
    evaluate,
    load_manifest,
    render_impact,
    render_report,
    summary_dict,
)
from .lexicon import (
    SENTICON_RAW,
    SFU,
    POS_TAGS,
    dump_lexicon,
    load_lexicon,
    load_wordlists,
    merge_lexica,
    sniff_scale,
)
from .operations import load_rules
from .util import format_so

EXIT_OK = 0
EXIT_MISSING = 2
EXIT_PARSE = 3
EXIT_USAGE = 4


class _Parser(argparse.ArgumentParser):
    """argparse with usage errors mapped onto exit code 4."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_input(path_text: str) -> tuple[str, str]:
    """Read --input (a path or '-' for stdin); returns (text, source_id)."""
    if path_text == "-":
        return sys.stdin.read(), "-"
    path = Path(path_text)
    return path.read_text(encoding="utf-8"), path.stem


def _load_environment(args) -> tuple:
    """Load the lexicon, word lists and rules named by common flags."""
    lists = load_wordlists(args.lists) if args.lists else {}
    scale = sniff_scale(args.lexicon[0]) or SFU
    lexicon = load_lexicon(args.lexicon[0], scale)
    defs = load_rules(args.rules, lists) if args.rules else []
    return lexicon, defs, lists


def _cmd_classify(args) -> int:
    lexicon, defs, lists = _load_environment(args)
    text, source_id = _read_input(args.input)
    doc = parse_document(text, source_id)
    if args.granularity == "sentence":
        for index, tree in enumerate(doc.sentences, 1):
            result = classify_sentence(tree, lexicon, defs, lists, tie=args.tie)
            print(f"{doc.source_id}:{index}\t{format_so(result.so)}\t{result.label}")
    else:
        result = classify_document(doc, lexicon, defs, lists, agg=args.agg, tie=args.tie)
        print(f"{doc.source_id}\t{format_so(result.so)}\t{result.label}")
    return EXIT_OK


def _cmd_trace(args) -> int:
    lexicon, defs, lists = _load_environment(args)
    text, source_id = _read_input(args.input)
    doc = parse_document(text, source_id)
    for index, tree in enumerate(doc.sentences, 1):
        if index > 1:
            print()
        print(f"# {doc.source_id} sentence {index}")
        print(compute_so(tree, lexicon, defs, lists).render(), end="")
    return EXIT_OK


def _effective_scales(paths: list[str], scales: list[str] | None) -> list[str]:
    """Pair each input lexicon with its scale.

    Explicit --scale values win (one for all inputs, or one per input).
    Without --scale, a file whose header declares senticon_raw is refused:
    rescaling must be asked for, not silently applied.
    """
    if scales:
        if len(scales) == 1:
            return scales * len(paths)
        if len(scales) != len(paths):
            raise UsageError(
                f"got {len(scales)} --scale values for {len(paths)} --lexicon inputs"
            )
        return list(scales)
    effective = []
    for path in paths:
        declared = sniff_scale(path) or SFU
        if declared != SFU:
            raise ScaleMismatchError(
                f"{path} declares scale {declared!r}; pass --scale to confirm rescaling"
            )
        effective.append(SFU)
    return effective


def _write_output(text: str, output: str | None) -> None:
    if output and output != "-":
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_merge_lexicon(args) -> int:
    scales = _effective_scales(args.lexicon, args.scale)
    lexica = [load_lexicon(path, scale) for path, scale in zip(args.lexicon, scales)]
    merged = merge_lexica(lexica, name=args.name)
    _write_output(dump_lexicon(merged), args.output)
    sizes = merged.sizes()
    for pos in POS_TAGS:
        print(f"# {pos}\t{sizes[pos]}", file=sys.stderr)
    print(f"# total\t{len(merged)}", file=sys.stderr)
    return EXIT_OK


def _cmd_scale_senticon(args) -> int:
    lexicon = load_lexicon(args.input, SENTICON_RAW)
    _write_output(dump_lexicon(lexicon), args.output)
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    manifest = load_manifest(args.corpus)
    lists = load_wordlists(args.lists) if args.lists else {}
    rules = tuple(load_rules(args.rules, lists)) if args.rules else ()
    if len(args.lexicon) > 2:
        raise UsageError("evaluate takes at most two --lexicon inputs (single, multilingual)")
    single = load_lexicon(args.lexicon[0], sniff_scale(args.lexicon[0]) or SFU)
    merged = None
    if len(args.lexicon) == 2:
        merged = load_lexicon(args.lexicon[1], sniff_scale(args.lexicon[1]) or SFU)

    configs = [RunConfig("SL-O", single)]
    if rules:
        configs.append(RunConfig("SL+O", single, rules))
    if merged is not None:
        configs.append(RunConfig("ML-O", merged))
        if rules:
            configs.append(RunConfig("ML+O", merged, rules))

    reports = []
    for cfg in configs:
        report = evaluate(manifest, cfg, lists, agg=args.agg, tie=args.tie)
        reports.append(report)
        sys.stdout.write(render_report(report, verbose=args.verbose))
    impact = compare_configs(reports) if len(reports) == 4 else None
    if impact is not None:
        sys.stdout.write(render_impact(impact))
    if args.report:
        Path(args.report).write_text(
            json.dumps(summary_dict(reports, impact), indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
    return EXIT_OK


def _add_engine_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--lexicon", action="append", required=True, metavar="PATH",
        help="sentiment lexicon file (entry<TAB>pos<TAB>so)",
    )
    parser.add_argument("--rules", metavar="PATH", help="rule configuration file")
    parser.add_argument(
        "--lists", metavar="DIR",
        help="directory of word lists (boosters.tsv, negators.txt, ...)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sisa", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True)

    classify = sub.add_parser("classify", parents=[], help="label a parsed document")
    _add_engine_flags(classify)
    classify.add_argument("--input", required=True, metavar="PATH", help="CoNLL-U file or -")
    classify.add_argument("--granularity", choices=("doc", "sentence"), default="doc")
    classify.add_argument("--agg", choices=("sum", "mean"), default="sum")
    classify.add_argument("--tie", choices=("pos", "neg"), default="pos")
    classify.set_defaults(func=_cmd_classify)

    trace = sub.add_parser("trace", help="print the full scoring trace of one document")
    _add_engine_flags(trace)
    trace.add_argument("--input", required=True, metavar="PATH", help="CoNLL-U file or -")
    trace.set_defaults(func=_cmd_trace)

    merge = sub.add_parser("merge-lexicon", help="average several lexica into one")
    merge.add_argument("--lexicon", action="append", required=True, metavar="PATH")
    merge.add_argument(
        "--scale", action="append", choices=(SFU, SENTICON_RAW),
        help="scale of the inputs: give once for all, or once per --lexicon",
    )
    merge.add_argument("--output", metavar="PATH", help="write here instead of stdout")
    merge.add_argument("--name", default="merged", help="name of the merged lexicon")
    merge.set_defaults(func=_cmd_merge_lexicon)

    scale = sub.add_parser("scale-senticon", help="rescale a raw lexicon onto the 1-5 scale")
    scale.add_argument("--input", required=True, metavar="PATH")
    scale.add_argument("--output", metavar="PATH", help="write here instead of stdout")
    scale.set_defaults(func=_cmd_scale_senticon)

    ev = sub.add_parser("evaluate", help="run configurations over a labeled corpus")
    _add_engine_flags(ev)
    ev.add_argument("--corpus", required=True, metavar="MANIFEST")
    ev.add_argument("--agg", choices=("sum", "mean"), default="sum")
    ev.add_argument("--tie", choices=("pos", "neg"), default="pos")
    ev.add_argument("--report", metavar="PATH", help="write a JSON summary here")
    ev.add_argument("--verbose", action="store_true", help="emit per-item lines")
    ev.set_defaults(func=_cmd_evaluate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except PARSE_ERRORS as exc:
        print(f"sisa: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UsageError as exc:
        print(f"sisa: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"sisa: missing file: {exc}", file=sys.stderr)
        return EXIT_MISSING


if __name__ == "__main__":
    sys.exit(main())
