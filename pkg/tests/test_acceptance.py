"""Acceptance gate.

One test per release criterion, run in order. Each prints a single
summary line on success (visible with -s; pytest -v shows the pass/fail
verdict per criterion either way). The two end-to-end criteria train
real models on the 2,000-review synthetic corpus and dominate the
runtime; everything else finishes in seconds.
"""

import json
import math
import os
import statistics
import time
from pathlib import Path

import numpy as np
import pytest

from alsent.annotators.oracle import OracleAnnotator
from alsent.annotators.prompt import parse_label
from alsent.annotators.types import (AnnotationFailure, AnnotationRequest,
                                     AnnotationResult)
from alsent.cli import main
from alsent.models.metrics import evaluate
from alsent.models.network import build_model
from alsent.models.spec import default_train_config, preset, without_dropout
from alsent.nn.gradcheck import check_array, check_params, grad_check
from alsent.nn.layers import (GRU, LSTM, BatchNorm, Context, Dense, Embedding,
                              SimpleRNN)
from alsent.nn.ops import bce_grad, bce_loss, categorical_ce
from alsent.nn.rng import derived_stream, rng_stream
from alsent.orchestrator.baseline import run_baseline
from alsent.orchestrator.loop import run_active_learning
from alsent.orchestrator.records import StoppingRule
from alsent.synth import generate_reviews
from alsent.textprep.dataset import load_dataset_csv
from alsent.textprep.steps import preprocess
from alsent.uncertainty import UncertaintyScore, entropy, select_batch, score_pool
from test_llm_client import MockEndpoint, make_config

BINARY = ("Negative", "Positive")
TERNARY = ("Negative", "Neutral", "Positive")
GOLDEN_PATH = Path(__file__).parent / "golden" / "preprocess_golden.json"


def announce(line: str) -> None:
    print(f"\n[PASS] {line}", flush=True)


@pytest.fixture(scope="module")
def corpus2k():
    return generate_reviews(2000, seed=0)


@pytest.fixture(scope="module")
def lstm_baselines(corpus2k):
    """Five-seed LSTM baseline on the synthetic corpus, timed."""
    spec = preset("lstm", output_classes=2)
    start = time.monotonic()
    records = {seed: run_baseline(corpus2k, spec,
                                  default_train_config("lstm", seed=seed))
               for seed in range(5)}
    return records, time.monotonic() - start


class TestAcceptance:
    def test_01_gradient_correctness(self):
        start = time.monotonic()
        ids = rng_stream(70).integers(0, 20, size=(4, 5))
        labels = rng_stream(71).integers(0, 2, size=4)

        worst_model = {}
        for arch in ("rnn", "lstm", "gru"):
            spec = without_dropout(preset(arch, vocab_size=20, seq_len=5))
            model = build_model(spec, rng_stream(72))
            worst_model[arch] = grad_check(model, ids, labels)
            assert worst_model[arch] < 1e-4, (arch, worst_model[arch])

        def layer_check(layer, x):
            ctx = Context(training=True, update_stats=False)
            out = layer.forward(x, ctx)
            proj = rng_stream(73).normal(size=out.shape)
            for p in layer.params:
                p.zero_grad()
            dx = layer.backward(proj)
            analytic = [p.grad.copy() for p in layer.params]

            def loss_fn():
                return float((layer.forward(x, ctx) * proj).sum())

            worst = check_params(loss_fn, layer.params, analytic)
            if dx is not None:
                worst = max(worst, check_array(loss_fn, x, dx))
            return worst

        worst_layer = {}
        worst_layer["embedding"] = layer_check(
            Embedding(20, 3, rng_stream(74)),
            rng_stream(75).integers(0, 20, size=(4, 5)))
        worst_layer["simple_rnn"] = layer_check(
            SimpleRNN(3, 4, rng_stream(76), return_sequences=False),
            rng_stream(77).normal(size=(4, 5, 3)))
        worst_layer["lstm"] = layer_check(
            LSTM(3, 4, rng_stream(78)), rng_stream(79).normal(size=(4, 5, 3)))
        worst_layer["gru"] = layer_check(
            GRU(3, 4, rng_stream(80)), rng_stream(81).normal(size=(4, 5, 3)))
        bn = BatchNorm(4)
        bn.gamma.value[:] = rng_stream(82).normal(size=4)
        bn.beta.value[:] = rng_stream(83).normal(size=4)
        worst_layer["batch_norm"] = layer_check(
            bn, rng_stream(84).normal(size=(6, 4)))

        # dense heads checked through their losses, whose logit gradients
        # the layers consume directly
        dense_sig = Dense(4, 1, "sigmoid", rng_stream(85))
        h = rng_stream(86).normal(size=(5, 4))
        y_bin = np.array([1.0, 0.0, 1.0, 1.0, 0.0])
        ctx = Context()

        def sig_loss():
            return float(bce_loss(dense_sig.forward(h, ctx)[:, 0], y_bin).sum())

        p = dense_sig.forward(h, ctx)[:, 0]
        for param in dense_sig.params:
            param.zero_grad()
        dh = dense_sig.backward((p - y_bin)[:, None])
        analytic = [param.grad.copy() for param in dense_sig.params]
        err = max(check_params(sig_loss, dense_sig.params, analytic),
                  check_array(sig_loss, h, dh))
        worst_layer["dense_sigmoid_bce"] = err

        dense_soft = Dense(4, 3, "softmax", rng_stream(87))
        y_idx = np.array([0, 2, 1, 2, 0])
        onehot = np.eye(3)[y_idx]

        def soft_loss():
            return float(categorical_ce(dense_soft.forward(h, ctx), y_idx).sum())

        probs = dense_soft.forward(h, ctx)
        for param in dense_soft.params:
            param.zero_grad()
        dh = dense_soft.backward(probs - onehot)
        analytic = [param.grad.copy() for param in dense_soft.params]
        err = max(check_params(soft_loss, dense_soft.params, analytic),
                  check_array(soft_loss, h, dh))
        worst_layer["dense_softmax_ce"] = err

        # direct finite differences of the binary loss gradient
        p = rng_stream(88).uniform(0.05, 0.95, size=7)
        y = rng_stream(89).integers(0, 2, size=7).astype(np.float64)
        eps = 1e-6
        for i in range(7):
            up, down = p.copy(), p.copy()
            up[i] += eps
            down[i] -= eps
            fd = (bce_loss(up, y).sum() - bce_loss(down, y).sum()) / (2 * eps)
            rel = abs(bce_grad(p, y)[i] - fd) / max(abs(fd), 1e-8)
            worst_layer["bce_grad"] = max(worst_layer.get("bce_grad", 0.0), rel)

        assert all(v < 1e-4 for v in worst_layer.values()), worst_layer
        elapsed = time.monotonic() - start
        assert elapsed < 60.0, f"gradient suite took {elapsed:.1f}s"
        announce("gradient correctness: presets "
                 + ", ".join(f"{a} {e:.1e}" for a, e in worst_model.items())
                 + f"; worst layer {max(worst_layer.values()):.1e}; "
                 f"{elapsed:.1f}s")

    def test_02_selection_oracle(self):
        assert abs(entropy([0.5, 0.5]) - math.log(2)) < 1e-12

        def brute_force_top_k(scores, k):
            remaining = list(scores)
            chosen = []
            while remaining and len(chosen) < k:
                best = remaining[0]
                for s in remaining[1:]:
                    if (s.entropy > best.entropy
                            or (s.entropy == best.entropy
                                and s.sample_id < best.sample_id)):
                        best = s
                remaining.remove(best)
                chosen.append(best.sample_id)
            return chosen

        rng = rng_stream(200)
        trials = 0
        for _ in range(1100):
            n = int(rng.integers(1, 30))
            ids = [f"p{i:03d}" for i in rng.permutation(100)[:n]]
            if rng.random() < 0.5:
                # quantized binary rows force frequent entropy ties
                p1 = rng.integers(0, 11, size=n) / 10.0
                rows = np.stack([1.0 - p1, p1], axis=1)
            else:
                a = rng.integers(0, 11, size=n)
                b = np.array([rng.integers(0, 11 - ai) for ai in a])
                rows = np.stack([a / 10.0, b / 10.0, (10 - a - b) / 10.0],
                                axis=1)
            scores = score_pool(ids, rows)
            k = int(rng.integers(0, n + 3))
            assert select_batch(scores, k) == brute_force_top_k(scores, k)
            trials += 1
        # explicit all-tied pool
        tied = [UncertaintyScore(sample_id=s, entropy=math.log(2))
                for s in ("z", "a", "m")]
        assert select_batch(tied, 2) == ["a", "m"]
        trials += 1
        assert trials >= 1000
        announce(f"selection oracle: {trials} random pools matched "
                 "brute force; entropy([.5,.5])=ln2 within 1e-12")

    def test_03_metrics_oracle(self):
        class Scripted:
            def __init__(self, probs, classes):
                self.probs = probs

                class _Spec:
                    output_classes = classes
                self.spec = _Spec()

            def predict_proba(self, x):
                return self.probs

        def oracle(true, predicted, classes):
            matrix = [[0] * classes for _ in range(classes)]
            for t, p in zip(true, predicted):
                matrix[t][p] += 1
            total = len(true)
            accuracy = sum(matrix[c][c] for c in range(classes)) / total
            if classes == 2:
                tp, fp, fn = matrix[1][1], matrix[0][1], matrix[1][0]
                precision = tp / (tp + fp) if tp + fp > 0 else 0.0
                recall = tp / (tp + fn) if tp + fn > 0 else 0.0
            else:
                per_p = [matrix[c][c] / s if (s := sum(matrix[r][c] for r in
                                                       range(classes))) > 0
                         else 0.0 for c in range(classes)]
                per_r = [matrix[c][c] / s if (s := sum(matrix[c])) > 0 else 0.0
                         for c in range(classes)]
                precision = float(np.mean(per_p))
                recall = float(np.mean(per_r))
            denom = precision + recall
            f1 = 2 * precision * recall / denom if denom > 0 else 0.0
            return matrix, accuracy, precision, recall, f1

        rng = rng_stream(300)
        trials = 0
        for _ in range(1100):
            classes = int(rng.choice([2, 3, 5]))
            n = int(rng.integers(1, 50))
            true = rng.integers(0, classes, size=n)
            raw = rng.uniform(0.01, 1.0, size=(n, classes))
            probs = raw / raw.sum(axis=1, keepdims=True)
            report = evaluate(Scripted(probs, classes),
                              (np.zeros((n, 1)), true))
            if classes == 2:
                predicted = [int(row[1] >= 0.5) for row in probs]
            else:
                predicted = [max(range(classes), key=lambda c: (row[c], -c))
                             for row in probs]
            matrix, acc, prec, rec, f1 = oracle(true.tolist(), predicted,
                                                classes)
            assert [list(r) for r in report.confusion] == matrix
            assert report.accuracy == acc
            assert report.precision == prec
            assert report.recall == rec
            assert report.f1 == f1
            trials += 1
        assert trials >= 1000
        announce(f"metrics oracle: {trials} random vectors matched an "
                 "independent confusion computation exactly")

    def test_04_synthetic_end_to_end(self, corpus2k, lstm_baselines):
        assert len(corpus2k.samples) == 2000
        counts = {label: 0 for label in corpus2k.label_set}
        for s in corpus2k.samples:
            counts[s.gold_label] += 1
        assert counts == {"Negative": 1000, "Positive": 1000}
        assert all(any("؀" <= ch <= "ۿ" for ch in s.text)
                   for s in corpus2k.samples)

        records, elapsed = lstm_baselines
        accuracies = [r.cycles[0].accuracy for r in records.values()]
        median = statistics.median(accuracies)
        assert median >= 0.95, accuracies
        assert elapsed < 600.0, f"five baselines took {elapsed:.0f}s"
        announce("synthetic end-to-end: median LSTM baseline accuracy "
                 f"{median:.3f} over 5 seeds ({elapsed:.0f}s)")

    def test_05_label_efficiency(self, corpus2k, lstm_baselines):
        records, _ = lstm_baselines
        train_size = records[0].train_size
        budget = int(0.6 * train_size)
        spec = preset("lstm", output_classes=2)
        oracle = OracleAnnotator.from_dataset(corpus2k)

        # with 50 seeds + 50 per cycle, cycle c trains on 50c labels, so
        # every cycle up to max_cycles stays within the 60% budget
        max_cycles = budget // 50 - 1
        assert 50 * max_cycles <= budget

        best_within, labels_used = [], []
        for seed in range(5):
            target = records[seed].cycles[0].accuracy
            rule = StoppingRule(max_cycles=max_cycles,
                                target_accuracy=target)
            run = run_active_learning(
                corpus2k, spec, default_train_config("lstm", seed=seed),
                oracle, rule)
            assert all(c.label_count <= budget for c in run.cycles)
            top = max(run.cycles, key=lambda c: c.accuracy)
            best_within.append(top.accuracy)
            labels_used.append(top.label_count)

        baseline_median = statistics.median(
            r.cycles[0].accuracy for r in records.values())
        al_median = statistics.median(best_within)
        assert al_median >= baseline_median - 0.02, (best_within, baseline_median)
        announce("label efficiency: AL median "
                 f"{al_median:.3f} vs baseline {baseline_median:.3f} using "
                 f"<= {max(labels_used)} of {train_size} labels "
                 f"(budget {budget})")

    def test_06_llm_client_conformance(self, monkeypatch):
        monkeypatch.setenv("MOCK_LLM_KEY", "sk-acceptance")
        request = AnnotationRequest(sample_id="s1", raw_text="الخدمة ممتازة",
                                    label_set=BINARY)
        expected_prompt = (
            "You will be given an Arabic review. Classify its sentiment as "
            "one of the following: Negative, Positive.\n"
            "Respond with ONLY ONE label from this list. "
            "No explanation is needed.\n"
            "\n"
            'Review: "الخدمة ممتازة"'
        )

        ep = MockEndpoint()
        try:
            ep.script = ["Positive"]
            from alsent.annotators.llm import LlmAnnotator
            [result] = LlmAnnotator(make_config(ep.url)).annotate([request])
            assert isinstance(result, AnnotationResult)
            assert result.label == "Positive"
            assert ep.requests[0]["body"] == {
                "model": "test-model",
                "messages": [{"role": "user", "content": expected_prompt}],
                "temperature": 0,
                "max_tokens": 15,
            }
        finally:
            ep.close()

        ep = MockEndpoint()
        try:
            ep.script = [500, 500, "Negative"]
            [result] = LlmAnnotator(make_config(ep.url)).annotate([request])
            assert isinstance(result, AnnotationResult)
            assert result.label == "Negative"
            assert len(ep.requests) == 3
        finally:
            ep.close()

        ep = MockEndpoint()
        try:
            ep.script = [500]
            [outcome] = LlmAnnotator(make_config(ep.url)).annotate([request])
            assert isinstance(outcome, AnnotationFailure)
            assert len(ep.requests) == 3  # max_retries bounds total attempts
        finally:
            ep.close()

        for label_set in (BINARY, TERNARY):
            for label in label_set:
                assert parse_label(label, label_set) == label
                assert parse_label(f"  {label.upper()}.\n", label_set) == label
        announce("llm client conformance: exact body, retry paths, "
                 "parse_label round-trips")

    def test_07_preprocessing_golden(self):
        cases = json.loads(GOLDEN_PATH.read_text(encoding="utf-8"))
        assert len(cases) >= 30
        for case in cases:
            got = preprocess(case["input"])
            assert got == case["tokens"], case["name"]
        announce(f"preprocessing golden files: {len(cases)} pinned cases "
                 "byte-exact")

    def test_08_replay_determinism(self, tmp_path, capsys):
        corpus = tmp_path / "corpus.csv"
        assert main(["synth", "--out", str(corpus), "--n", "300"]) == 0

        def canonical(path: Path) -> str:
            doc = json.loads(path.read_text(encoding="utf-8"))
            doc.pop("created_at")
            doc.pop("updated_at")
            return json.dumps(doc, sort_keys=True, ensure_ascii=False)

        documents = {"baseline": [], "al": []}
        for attempt in ("first", "second"):
            data_dir = tmp_path / attempt
            assert main(["baseline", "--dataset", str(corpus), "--arch",
                         "lstm", "--seed", "0", "--epochs", "3",
                         "--data-dir", str(data_dir)]) == 0
            assert main(["al-run", "--dataset", str(corpus), "--annotator",
                         "oracle", "--arch", "lstm", "--seed", "0",
                         "--epochs", "3", "--max-cycles", "3",
                         "--data-dir", str(data_dir)]) == 0
            records = sorted(data_dir.glob("*.json"))
            assert len(records) == 2
            by_kind = {json.loads(p.read_text())["kind"]: p for p in records}
            documents["baseline"].append(canonical(by_kind["baseline"]))
            documents["al"].append(canonical(by_kind["al_oracle"]))
        capsys.readouterr()

        assert documents["baseline"][0] == documents["baseline"][1]
        assert documents["al"][0] == documents["al"][1]
        announce("replay determinism: baseline and oracle AL records "
                 "byte-identical across two invocations (timestamps excluded)")

    def test_09_public_dataset_reference(self):
        path = Path(os.environ.get("ALSENT_AJGT_CSV",
                                   Path(__file__).parent.parent
                                   / "data" / "ajgt.csv"))
        if not path.exists():
            pytest.skip(f"AJGT CSV not present at {path}; "
                        "criterion is optional and network-gated")
        dataset = load_dataset_csv(path)
        assert len(dataset.samples) == 1800
        record = run_baseline(dataset, preset("lstm", output_classes=2),
                              default_train_config("lstm", seed=0))
        accuracy = record.cycles[0].accuracy
        assert abs(accuracy - 0.83) <= 0.05, accuracy
        announce(f"public dataset reference: LSTM baseline {accuracy:.3f} "
                 "within 0.83 +/- 0.05")
