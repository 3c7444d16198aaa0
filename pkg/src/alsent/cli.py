"""Command-line entry points for the workbench.

Subcommands mirror the experiment phases: `prep` inspects and encodes a
dataset, `baseline` trains without selection, `bench-llm` compares
annotators on a shared draw, `al-run` drives the labeling loop, `report`
emits comparison series, `serve` hosts the annotation API, and `synth`
writes the synthetic corpus. Success exits 0; any workbench error exits
1 after printing a single JSON error line to stderr.
"""

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from alsent.annotators import (HumanAnnotator, LlmAnnotator, LlmConfig,
                               OracleAnnotator, TaskQueue, benchmark_annotators)
from alsent.errors import SpecError, WorkbenchError
from alsent.models.spec import default_train_config, preset
from alsent.orchestrator import (RunStore, StoppingRule, prepare_splits, report,
                                 report_csv, run_active_learning, run_baseline)
from alsent.synth import generate_reviews
from alsent.textprep.dataset import load_dataset_csv, write_dataset_csv


def _store(args) -> RunStore:
    return RunStore(args.data_dir)


def cmd_prep(args) -> int:
    dataset = load_dataset_csv(args.dataset)
    splits = prepare_splits(dataset, args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    (out / "vocab.json").write_text(
        json.dumps(splits.vocab.word_to_index, ensure_ascii=False,
                   sort_keys=True, indent=1), encoding="utf-8")
    summary = {
        "dataset_id": dataset.dataset_id,
        "dataset_hash": dataset.content_hash,
        "samples": len(dataset.samples),
        "label_set": list(dataset.label_set),
        "splits": {"train": len(splits.train_ids), "val": len(splits.val_ids),
                   "test": len(splits.test_ids)},
        "vocab_size": splits.vocab.size,
        "vocab_hash": splits.vocab_hash,
        "test_hash": splits.test_hash,
    }
    (out / "summary.json").write_text(json.dumps(summary, indent=1),
                                      encoding="utf-8")
    print(json.dumps(summary))
    return 0


def cmd_baseline(args) -> int:
    dataset = load_dataset_csv(args.dataset)
    spec = preset(args.arch, output_classes=len(dataset.label_set))
    config = default_train_config(args.arch, seed=args.seed, epochs=args.epochs)
    record = run_baseline(dataset, spec, config, store=_store(args))
    print(json.dumps({"run_id": record.run_id,
                      "accuracy": record.cycles[0].accuracy,
                      "label_count": record.cycles[0].label_count}))
    return 0


def cmd_bench_llm(args) -> int:
    dataset = load_dataset_csv(args.dataset)
    configs = json.loads(Path(args.annotators).read_text(encoding="utf-8"))
    if not isinstance(configs, list) or not configs:
        raise SpecError("annotator config file must hold a non-empty JSON array")
    annotators = [LlmAnnotator(LlmConfig(**cfg)) for cfg in configs]
    if args.with_oracle:
        annotators.append(OracleAnnotator.from_dataset(dataset))
    result = benchmark_annotators(dataset, args.n, annotators, seed=args.seed)
    print(json.dumps(asdict(result), ensure_ascii=False))
    return 0


def cmd_al_run(args) -> int:
    dataset = load_dataset_csv(args.dataset)
    store = _store(args)
    spec = preset(args.arch, output_classes=len(dataset.label_set))
    config = default_train_config(args.arch, seed=args.seed, epochs=args.epochs)

    target = args.target
    if args.target_from:
        base = store.load(args.target_from)
        if base.dataset_hash != dataset.content_hash:
            raise SpecError("baseline run used a different dataset file")
        baseline_splits = prepare_splits(dataset, config.seed)
        if base.test_hash != baseline_splits.test_hash:
            raise SpecError("test split differs from the baseline run; "
                            "use the same --seed for comparability")
        target = base.cycles[0].accuracy
    rule = StoppingRule(max_cycles=args.max_cycles, target_accuracy=target)

    if args.annotator == "oracle":
        annotator = OracleAnnotator.from_dataset(dataset)
    elif args.annotator == "human":
        annotator = HumanAnnotator(TaskQueue(args.queue_file))
    else:
        if not args.llm_config:
            raise SpecError("--llm-config is required for --annotator llm")
        cfg = json.loads(Path(args.llm_config).read_text(encoding="utf-8"))
        annotator = LlmAnnotator(LlmConfig(**cfg))

    record = run_active_learning(dataset, spec, config, annotator, rule,
                                 store=store)
    print(json.dumps({"run_id": record.run_id,
                      "cycles": len(record.cycles),
                      "chosen_cycle": record.chosen_cycle,
                      "final_accuracy": record.cycles[-1].accuracy}))
    return 0


def cmd_report(args) -> int:
    doc = report(args.run_ids, _store(args))
    if args.csv:
        Path(args.csv).write_text(report_csv(doc), encoding="utf-8")
    if args.json:
        Path(args.json).write_text(json.dumps(doc, indent=1), encoding="utf-8")
    print(json.dumps(doc))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from alsent.orchestrator.service import create_app
    app = create_app(TaskQueue(args.queue_file), _store(args))
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def cmd_synth(args) -> int:
    dataset = generate_reviews(args.n, seed=args.seed)
    write_dataset_csv(dataset, args.out)
    print(json.dumps({"dataset_id": dataset.dataset_id, "samples": args.n,
                      "path": args.out}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="alsent")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_store(p):
        p.add_argument("--data-dir", default="runs",
                       help="directory of run records")

    p = sub.add_parser("prep", help="validate, split and encode a dataset")
    p.add_argument("dataset")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_prep)

    p = sub.add_parser("baseline", help="train on the full training split")
    p.add_argument("--dataset", required=True)
    p.add_argument("--arch", choices=("rnn", "lstm", "gru"), required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epochs", type=int, default=None)
    add_store(p)
    p.set_defaults(func=cmd_baseline)

    p = sub.add_parser("bench-llm", help="compare annotators on one draw")
    p.add_argument("--dataset", required=True)
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--annotators", required=True,
                   help="JSON array of LLM client configs")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--with-oracle", action="store_true")
    p.set_defaults(func=cmd_bench_llm)

    p = sub.add_parser("al-run", help="run the labeling loop")
    p.add_argument("--dataset", required=True)
    p.add_argument("--arch", choices=("rnn", "lstm", "gru"), default="lstm")
    p.add_argument("--annotator", choices=("llm", "human", "oracle"),
                   required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epochs", type=int, default=None)
    p.add_argument("--max-cycles", type=int, default=25)
    p.add_argument("--target", type=float, default=None)
    p.add_argument("--target-from", default=None,
                   help="baseline run id supplying the target accuracy")
    p.add_argument("--llm-config", default=None)
    p.add_argument("--queue-file", default="annotation-queue.json")
    add_store(p)
    p.set_defaults(func=cmd_al_run)

    p = sub.add_parser("report", help="emit per-cycle comparison series")
    p.add_argument("run_ids", nargs="+")
    p.add_argument("--csv", default=None)
    p.add_argument("--json", default=None)
    add_store(p)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("serve", help="host the annotation API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--queue-file", default="annotation-queue.json")
    add_store(p)
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("synth", help="write the synthetic keyword corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (WorkbenchError, OSError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
