"""Command-line entry points.

Every command takes flags (optionally seeded from a `--config` key = value
file) and writes machine-readable artifacts plus a short summary on stdout.
Exit codes: 0 success, 2 configuration problems, 3 data problems, 4 numeric
failures.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
import time
from pathlib import Path

import numpy as np

from .. import evaluation
from ..audio_features.boaw import boaw_encode, fit_boaw_codebook
from ..audio_features.mfcc import DEFAULT_HOP_MS, DEFAULT_WINDOW_MS, extract_mfcc
from ..audio_features.standardize import apply_standardizer, fit_standardizer
from ..audio_features.wav_io import read_wav
from ..diagnostics import run_battery
from ..errors import ConfigError, DataError, NumericError, Seq2VecError
from ..seq2seq import encode, parse_shape
from ..training.autoencoder_loop import AutoencoderTrainConfig, train_autoencoder
from ..training.batching import upsample_balanced
from ..training.classifier import (
    ClassifierTrainConfig,
    classifier_predict,
    train_gru_classifier,
)
from ..training.svm import svm_predict, train_svm
from . import persist
from .config import apply_config, load_config
from .container import read_model, write_model
from .features_store import load_feature_set, parallel_map, save_feature_set
from .manifest import DatasetManifest
from .synth import SynthConfig, synth_generate
from .tables import (
    read_predictions,
    read_representations,
    write_predictions,
    write_representations,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_NUMERIC = 4


def _load_config_values(args) -> dict[str, str]:
    if getattr(args, "config", None):
        return load_config(args.config)
    return {}


def _override(cfg, args, mapping):
    """Apply CLI flags (when given) on top of a config dataclass."""
    updates = {}
    for flag, field in mapping.items():
        value = getattr(args, flag, None)
        if value is not None:
            updates[field] = value
    return dataclasses.replace(cfg, **updates) if updates else cfg


def cmd_synth_data(args) -> int:
    cfg = apply_config(SynthConfig(), _load_config_values(args), "synth")
    cfg = _override(
        cfg,
        args,
        {
            "classes": "num_classes",
            "clips_per_class": "clips_per_class",
            "duration_min": "duration_min",
            "duration_max": "duration_max",
            "sample_rate": "sample_rate",
            "seed": "seed",
        },
    )
    manifest = synth_generate(cfg, args.out)
    counts = manifest.class_counts()
    print(f"wrote {len(manifest.entries)} clips for {cfg.num_classes} classes to {args.out}")
    print(f"per-class counts: {dict(sorted(counts.items()))}")
    print(f"manifest: {Path(args.out) / 'manifest.json'}")
    return EXIT_OK


def cmd_extract_features(args) -> int:
    manifest = DatasetManifest.load(args.manifest)

    def load_and_extract(entry):
        clip = read_wav(manifest.resolve(entry), allow_any_rate=args.allow_any_rate)
        return extract_mfcc(clip, window_ms=args.window_ms, hop_ms=args.hop_ms)

    raw = parallel_map(load_and_extract, manifest.entries)
    train_idx = manifest.indices_for("train")
    if not train_idx:
        raise DataError("manifest has no train entries to fit the standardizer")
    standardizer = fit_standardizer([raw[i] for i in train_idx])
    standardized = [apply_standardizer(seq, standardizer) for seq in raw]

    out = Path(args.out)
    save_feature_set(out, standardized, args.window_ms, args.hop_ms)
    write_model(out / "standardizer.s2v", persist.standardizer_to_container(standardizer))
    lengths = [s.frame_count for s in standardized]
    print(f"extracted {len(standardized)} sequences of dim {standardized[0].dim}")
    print(f"frame counts: min {min(lengths)}, max {max(lengths)}")
    print(f"features: {out}, standardizer: {out / 'standardizer.s2v'}")
    return EXIT_OK


def cmd_train_ae(args) -> int:
    cfg = apply_config(AutoencoderTrainConfig(), _load_config_values(args), "ae")
    cfg = _override(
        cfg,
        args,
        {
            "batch_size": "batch_size",
            "initial_lr": "initial_lr",
            "decay": "decay",
            "check_interval": "check_interval",
            "plateau_window": "plateau_window",
            "clip_ratio": "clip_ratio",
            "patience": "patience",
            "seed": "seed",
            "max_checkpoints": "max_checkpoints",
        },
    )
    manifest = DatasetManifest.load(args.manifest)
    features = load_feature_set(args.features)
    if len(features) != len(manifest.entries):
        raise DataError("feature set and manifest disagree on the number of clips")
    train_seqs = [features[i] for i in manifest.indices_for("train")]
    if not train_seqs:
        raise DataError("manifest has no train entries")

    started = time.perf_counter()
    model, history = train_autoencoder(train_seqs, args.shape, cfg)
    elapsed = time.perf_counter() - started

    write_model(args.out, persist.autoencoder_to_container(model, cfg))
    if args.history:
        evaluation.export_plot_csv(history, args.history)
    units, layers = parse_shape(args.shape)
    print(f"trained {units}-{layers} autoencoder on {len(train_seqs)} sequences")
    for i, (loss, lr, sec) in enumerate(
        zip(history.losses, history.learning_rates, history.elapsed)
    ):
        print(f"checkpoint {i}: loss {loss:.6f}, lr {lr:.6f}, elapsed {sec:.1f}s")
    print(f"best checkpoint loss {history.best_loss:.6f} after {len(history)} checkpoints")
    print(f"wall time {elapsed:.1f}s, model: {args.out}")
    return EXIT_OK


def cmd_encode(args) -> int:
    container = read_model(args.model, expected_kind="autoencoder")
    model = persist.autoencoder_from_container(container)
    manifest = DatasetManifest.load(args.manifest)
    features = load_feature_set(args.features)
    if len(features) != len(manifest.entries):
        raise DataError("feature set and manifest disagree on the number of clips")
    ids = manifest.indices_for(args.split)
    if not ids:
        raise DataError(f"no entries in split {args.split!r}")

    vectors = np.vstack(parallel_map(lambda i: encode(features[i], None, model), ids))
    labels = [manifest.entries[i].class_id for i in ids]
    write_representations(args.out, ids, labels, vectors)
    print(f"encoded {len(ids)} clips into {vectors.shape[1]}-dim representations")
    print(f"table: {args.out}")
    return EXIT_OK


def _split_rows(manifest, ids, split):
    index_of = {int(i): row for row, i in enumerate(ids)}
    rows = []
    for i in manifest.indices_for(split):
        if i in index_of:
            rows.append(index_of[i])
    return rows


def cmd_train_clf(args) -> int:
    manifest = DatasetManifest.load(args.manifest)
    ids, labels, vectors = read_representations(args.representations)
    if args.upsample:
        train_manifest = upsample_balanced(manifest, seed=args.seed)
    else:
        train_manifest = manifest
    index_of = {int(i): row for row, i in enumerate(ids)}
    train_rows = []
    for i in train_manifest.indices_for("train"):
        entry = train_manifest.entries[i]
        original = manifest.entries.index(entry) if i >= len(manifest.entries) else i
        if original in index_of:
            train_rows.append(index_of[original])
    if not train_rows:
        raise DataError("no training rows found in the representation table")
    x = vectors[train_rows]
    y = labels[train_rows]
    k = manifest.num_classes

    if args.classifier == "gru":
        cfg = apply_config(ClassifierTrainConfig(), _load_config_values(args), "clf")
        cfg = _override(
            cfg,
            args,
            {
                "hidden_units": "hidden_units",
                "epochs": "epochs",
                "batch_size": "batch_size",
                "initial_lr": "initial_lr",
                "clip_ratio": "clip_ratio",
                "seed": "seed",
            },
        )
        model = train_gru_classifier(x, y, k, cfg)
        write_model(args.out, persist.classifier_to_container(model, cfg))
        train_acc = float(np.mean(classifier_predict(model, x) == y))
    else:
        model = train_svm(x, y, args.complexity, num_classes=k, seed=args.seed)
        write_model(args.out, persist.svm_to_container(model))
        train_acc = float(np.mean(svm_predict(model, x) == y))
    print(
        f"trained {args.classifier} classifier on {len(train_rows)} rows "
        f"({k} classes), train accuracy {train_acc:.3f}"
    )
    print(f"model: {args.out}")
    return EXIT_OK


def cmd_evaluate(args) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    if args.predictions:
        ids, truth, preds = read_predictions(args.predictions)
        num_classes = args.classes or int(max(truth.max(), preds.max())) + 1
    else:
        if not (args.model and args.representations):
            raise ConfigError("evaluate needs either --predictions or --model with --representations")
        ids_all, labels_all, vectors_all = read_representations(args.representations)
        manifest = DatasetManifest.load(args.manifest) if args.manifest else None
        if manifest is not None:
            rows = _split_rows(manifest, ids_all, args.split)
            if not rows:
                raise DataError(f"no representation rows in split {args.split!r}")
            num_classes = manifest.num_classes
        else:
            rows = list(range(len(ids_all)))
            num_classes = args.classes or int(labels_all.max()) + 1
        ids = ids_all[rows]
        truth = labels_all[rows]
        container = read_model(args.model)
        if container.kind == "gru-classifier":
            model = persist.classifier_from_container(container)
            preds = classifier_predict(model, vectors_all[rows])
        elif container.kind == "svm":
            model = persist.svm_from_container(container)
            preds = svm_predict(model, vectors_all[rows])
        else:
            raise DataError(f"cannot evaluate with a {container.kind} container")
        write_predictions(out_dir / "predictions.csv", ids, truth, preds)

    cm = evaluation.confusion(preds, truth, num_classes)
    f1 = evaluation.macro_f1(cm)
    ua = evaluation.unweighted_accuracy(cm)
    evaluation.export_plot_csv(cm, out_dir / "confusion.csv")
    with open(out_dir / "metrics.csv", "w", encoding="utf-8", newline="") as fh:
        fh.write("metric,value\n")
        fh.write(f"macro_f1,{f1!r}\n")
        fh.write(f"unweighted_accuracy,{ua!r}\n")

    if args.lda:
        if not args.representations:
            raise ConfigError("--lda needs --representations")
        ids_all, labels_all, vectors_all = read_representations(args.representations)
        projection = evaluation.lda_project(vectors_all, labels_all)
        evaluation.export_plot_csv(projection, out_dir / "lda.csv")
        print(f"lda projection: {out_dir / 'lda.csv'}")

    print(f"instances {len(truth)}, classes {num_classes}")
    print(f"macro_f1 {f1:.4f}")
    print(f"unweighted_accuracy {ua:.4f}")
    print(f"outputs in {out_dir}")
    return EXIT_OK


def cmd_gradient_check(args) -> int:
    reports = run_battery(seed=args.seed, delta=args.delta, tolerance=args.tolerance)
    all_ok = True
    for name, report in reports:
        status = "PASS" if report.passed else "FAIL"
        print(f"{status} {name}: max rel err {report.max_relative_error:.3e}")
        all_ok &= report.passed
    if not all_ok:
        raise NumericError("gradient check failed")
    print(f"all checks passed at tolerance {args.tolerance:.1e}")
    return EXIT_OK


def cmd_boaw(args) -> int:
    manifest = DatasetManifest.load(args.manifest)
    features = load_feature_set(args.features)
    if len(features) != len(manifest.entries):
        raise DataError("feature set and manifest disagree on the number of clips")
    train_seqs = [features[i] for i in manifest.indices_for("train")]
    if not train_seqs:
        raise DataError("manifest has no train entries")
    codebook = fit_boaw_codebook(
        train_seqs,
        vocab_size=args.vocab_size,
        seed=args.seed,
        assignments_per_frame=args.assignments,
    )
    if args.codebook_out:
        write_model(args.codebook_out, persist.codebook_to_container(codebook))
    ids = manifest.indices_for(args.split)
    vectors = np.vstack(parallel_map(lambda i: boaw_encode(features[i], codebook), ids))
    labels = [manifest.entries[i].class_id for i in ids]
    write_representations(args.out, ids, labels, vectors)
    print(
        f"codebook of {codebook.vocab_size} words, {codebook.assignments_per_frame} "
        f"assignments per frame"
    )
    print(f"encoded {len(ids)} clips, table: {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="seq2vec",
        description="Sequence representation learning for acoustic events",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth-data", help="generate the synthetic event corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--config")
    p.add_argument("--classes", type=int)
    p.add_argument("--clips-per-class", type=int, dest="clips_per_class")
    p.add_argument("--duration-min", type=float, dest="duration_min")
    p.add_argument("--duration-max", type=float, dest="duration_max")
    p.add_argument("--sample-rate", type=int, dest="sample_rate")
    p.add_argument("--seed", type=int)
    p.set_defaults(fn=cmd_synth_data)

    p = sub.add_parser("extract-features", help="decode WAVs and extract standardized MFCCs")
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--window-ms", type=float, default=DEFAULT_WINDOW_MS)
    p.add_argument("--hop-ms", type=float, default=DEFAULT_HOP_MS)
    p.add_argument("--allow-any-rate", action="store_true")
    p.set_defaults(fn=cmd_extract_features)

    p = sub.add_parser("train-ae", help="train the sequence autoencoder")
    p.add_argument("--features", required=True)
    p.add_argument("--manifest", required=True)
    p.add_argument("--shape", required=True, help="units-layers, e.g. 512-1")
    p.add_argument("--out", required=True)
    p.add_argument("--history", help="write checkpoint CSV here")
    p.add_argument("--config")
    p.add_argument("--batch-size", type=int, dest="batch_size")
    p.add_argument("--initial-lr", type=float, dest="initial_lr")
    p.add_argument("--decay", type=float)
    p.add_argument("--check-interval", type=int, dest="check_interval")
    p.add_argument("--plateau-window", type=int, dest="plateau_window")
    p.add_argument("--clip-ratio", type=float, dest="clip_ratio")
    p.add_argument("--patience", type=int)
    p.add_argument("--max-checkpoints", type=int, dest="max_checkpoints")
    p.add_argument("--seed", type=int)
    p.set_defaults(fn=cmd_train_ae)

    p = sub.add_parser("encode", help="emit representations from a trained autoencoder")
    p.add_argument("--model", required=True)
    p.add_argument("--features", required=True)
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--split", default="all", choices=["all", "train", "test", "validation"])
    p.set_defaults(fn=cmd_encode)

    p = sub.add_parser("train-clf", help="train a classifier on representations")
    p.add_argument("--representations", required=True)
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--classifier", choices=["gru", "svm"], default="gru")
    p.add_argument("--config")
    p.add_argument("--upsample", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--hidden-units", type=int, dest="hidden_units")
    p.add_argument("--epochs", type=int)
    p.add_argument("--batch-size", type=int, dest="batch_size")
    p.add_argument("--initial-lr", type=float, dest="initial_lr")
    p.add_argument("--clip-ratio", type=float, dest="clip_ratio")
    p.add_argument("--complexity", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_train_clf)

    p = sub.add_parser("evaluate", help="compute metrics from predictions or a model")
    p.add_argument("--predictions")
    p.add_argument("--model")
    p.add_argument("--representations")
    p.add_argument("--manifest")
    p.add_argument("--split", default="test", choices=["all", "train", "test", "validation"])
    p.add_argument("--classes", type=int)
    p.add_argument("--out-dir", required=True, dest="out_dir")
    p.add_argument("--lda", action="store_true")
    p.set_defaults(fn=cmd_evaluate)

    p = sub.add_parser("gradient-check", help="verify analytic gradients numerically")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--delta", type=float, default=1e-5)
    p.add_argument("--tolerance", type=float, default=1e-5)
    p.set_defaults(fn=cmd_gradient_check)

    p = sub.add_parser("boaw", help="bag-of-audio-words baseline representations")
    p.add_argument("--features", required=True)
    p.add_argument("--manifest", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--codebook-out", dest="codebook_out")
    p.add_argument("--vocab-size", type=int, default=2048, dest="vocab_size")
    p.add_argument("--assignments", type=int, default=256)
    p.add_argument("--split", default="all", choices=["all", "train", "test", "validation"])
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_boaw)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DataError, FileNotFoundError, ValueError) as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NumericError as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except Seq2VecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
