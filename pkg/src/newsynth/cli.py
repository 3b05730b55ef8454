"""Command line entry points: synth, train, eval, baselines, segment, serve.

Exit codes: 0 success, 2 usage, 3 data problems (missing or malformed
files), 4 pipeline failures (e.g. thresholds starve extraction).  With
--json, stdout carries one JSON object per line instead of plain text.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .baselines import (
    compare_baselines,
    cross_validate,
    group_by_topic,
    render_baseline_table,
    render_p_at_k_table,
)
from .corpus import ingest_corpus
from .errors import (
    DegenerateDataError,
    EmptyCorpusError,
    InsufficientTopicsError,
    NewsynthError,
    NoCandidatesError,
    SchemaError,
)
from .segment import load_stopwords, segment_article
from .subtopic.regression import (
    SvrHyperparams,
    load_model,
    load_training_data,
    save_model,
    train,
)
from .synth import (
    PipelineConfig,
    article_to_dict,
    render_markdown,
    run_pipeline,
    synthesize,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_PIPELINE = 4

_DATA_ERRORS = (FileNotFoundError, SchemaError, EmptyCorpusError, json.JSONDecodeError, ValueError)
_PIPELINE_ERRORS = (NoCandidatesError, DegenerateDataError, InsufficientTopicsError)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, ensure_ascii=False, sort_keys=True))
    else:
        print(text)


def _load_config(path: str | None) -> PipelineConfig:
    if path is None:
        return PipelineConfig()
    return PipelineConfig.load(path)


def cmd_synth(args) -> int:
    config = _load_config(args.config)
    topic = args.topic if args.topic is not None else Path(args.corpus).stem
    corpus = ingest_corpus(args.corpus, topic, config.max_articles)
    model = load_model(args.model)
    session = run_pipeline(corpus, model, config)
    article = synthesize(session)
    markdown = render_markdown(article)
    if args.out:
        out = Path(args.out)
        out.write_text(markdown, encoding="utf-8")
        sidecar = out.with_suffix(".json")
        sidecar.write_text(
            json.dumps(article_to_dict(article), ensure_ascii=False, sort_keys=True, indent=2)
            + "\n",
            encoding="utf-8",
        )
        _emit(
            args,
            {
                "event": "article_written",
                "out": str(out),
                "provenance": str(sidecar),
                "sections": len(article.sections),
                "word_count": article.word_count,
            },
            f"wrote {out} ({len(article.sections)} sections, {article.word_count} words); "
            f"provenance in {sidecar}",
        )
    else:
        if args.json:
            print(json.dumps(article_to_dict(article), ensure_ascii=False, sort_keys=True))
        else:
            print(markdown, end="")
    return EXIT_OK


def cmd_train(args) -> int:
    examples = load_training_data(args.data)
    hp = SvrHyperparams(seed=args.seed, epochs=args.epochs)
    model = train(examples, hp)
    save_model(model, args.out)
    weights = dict(zip(model.feature_names, model.weights.tolist()))
    text = "\n".join(
        [f"model written to {args.out}"]
        + [f"  {name:<24}{w: .6f}" for name, w in weights.items()]
        + [f"  {'bias':<24}{model.bias: .6f}"]
    )
    _emit(
        args,
        {"event": "trained", "out": str(args.out), "weights": weights, "bias": model.bias},
        text,
    )
    return EXIT_OK


def cmd_eval(args) -> int:
    if args.folds != "loo":
        raise ValueError(f"unsupported fold scheme: {args.folds!r}")
    examples = load_training_data(args.data)
    report = cross_validate(group_by_topic(examples), SvrHyperparams(seed=args.seed))
    if args.json:
        print(json.dumps(report.to_dict(), ensure_ascii=False, sort_keys=True))
    else:
        print(render_p_at_k_table(report))
    return EXIT_OK


def cmd_baselines(args) -> int:
    topic = args.topic if args.topic is not None else Path(args.corpus).stem
    corpus = ingest_corpus(args.corpus, topic)
    report = compare_baselines(corpus, args.target_words)
    if args.json:
        print(json.dumps(report.to_dict(), ensure_ascii=False, sort_keys=True))
    else:
        print(render_baseline_table(report))
    return EXIT_OK


def cmd_segment(args) -> int:
    topic = args.topic if args.topic is not None else Path(args.corpus).stem
    corpus = ingest_corpus(args.corpus, topic)
    stopwords = load_stopwords(args.stopwords) if args.stopwords else None
    for article in corpus.articles:
        blocks = segment_article(article, args.window_w, args.depth_cutoff_k, stopwords)
        if args.json:
            print(
                json.dumps(
                    {
                        "article_id": article.id,
                        "blocks": [[b.start, b.end] for b in blocks],
                    },
                    sort_keys=True,
                )
            )
        else:
            ranges = ", ".join(f"[{b.start},{b.end})" for b in blocks)
            print(f"{article.id}: {len(blocks)} blocks {ranges}")
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(args.store, args.model, _load_config(args.config))
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="newsynth", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="one-click synthesis of an overview article")
    p.add_argument("--corpus", required=True, help="JSONL corpus file")
    p.add_argument("--model", required=True, help="trained model JSON")
    p.add_argument("--config", help="pipeline config JSON")
    p.add_argument("--topic", help="topic name (default: corpus file stem)")
    p.add_argument("--out", help="markdown output path; provenance goes beside it")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("train", help="train the label scorer")
    p.add_argument("--data", required=True, help="labeled examples JSONL")
    p.add_argument("--out", required=True, help="model output path")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epochs", type=int, default=500)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="leave-one-topic-out P@k evaluation")
    p.add_argument("--data", required=True, help="labeled examples JSONL")
    p.add_argument("--folds", default="loo")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("baselines", help="word count and redundancy for the six baselines")
    p.add_argument("--corpus", required=True)
    p.add_argument("--topic")
    p.add_argument("--target-words", type=int, default=1000)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_baselines)

    p = sub.add_parser("segment", help="inspect per-article block boundaries")
    p.add_argument("--corpus", required=True)
    p.add_argument("--topic")
    p.add_argument("--window-w", type=int, default=2)
    p.add_argument("--depth-cutoff-k", type=float, default=0.5)
    p.add_argument("--stopwords", help="optional stopword file, one token per line")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_segment)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--store", required=True, help="session store directory")
    p.add_argument("--model", required=True, help="trained model JSON")
    p.add_argument("--config", help="pipeline config JSON")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8400)
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _PIPELINE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PIPELINE
    except NewsynthError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except _DATA_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
