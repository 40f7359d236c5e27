"""Command-line interface.

Subcommands: train, evaluate, classify, filter-nonperson, aggregate.
All take --config/--seed/--out; --seed overrides the config seed so a whole
run is reproducible from the command line alone.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .config import apply_seed, load_config
from .dataio import (aggregate_by_county, load_labeled_corpus,
                     load_tweets, load_user_records, write_county_csv)
from .errors import ConfigError, NamecastError
from .pipeline import (load_bundle, load_ssa_dir, run_full_evaluation,
                       save_bundle, train_bundle)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="namecast",
        description="Infer gender of social-media users from their listed names.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, out_required=True):
        p.add_argument("--config", help="TOML configuration file")
        p.add_argument("--seed", type=int, help="override the configured seed")
        p.add_argument("--out", required=out_required, help="output file path")

    p = sub.add_parser("train", help="train base methods, stacker and person filter")
    common(p)
    p.add_argument("--corpus", help="labeled corpus CSV (default: config data.corpus)")
    p.add_argument("--ssa", help="directory of SSA yearly files (default: config ssa.dir)")

    p = sub.add_parser("evaluate", help="method-by-learner comparison report")
    common(p)
    p.add_argument("--corpus", help="labeled corpus CSV")
    p.add_argument("--ssa", help="directory of SSA yearly files")

    p = sub.add_parser("classify", help="annotate a user file with predictions")
    common(p)
    p.add_argument("--model", required=True, help="trained bundle from `train`")
    p.add_argument("--input", required=True, help="NDJSON user records")

    p = sub.add_parser("filter-nonperson", help="partition a user file by person/brand")
    common(p)
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--out-removed", help="path for removed records "
                                         "(default: <out>.removed)")

    p = sub.add_parser("aggregate", help="county-level gender report CSV")
    common(p)
    p.add_argument("--model", required=True)
    p.add_argument("--input", required=True, help="NDJSON tweet records with county_fips")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except NamecastError as exc:
        print(f"namecast: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"namecast: {exc}", file=sys.stderr)
        return 1


def _dispatch(args) -> int:
    cfg = apply_seed(load_config(args.config), args.seed)
    if args.command == "train":
        return _cmd_train(args, cfg)
    if args.command == "evaluate":
        return _cmd_evaluate(args, cfg)
    if args.command == "classify":
        return _cmd_classify(args, cfg)
    if args.command == "filter-nonperson":
        return _cmd_filter(args, cfg)
    if args.command == "aggregate":
        return _cmd_aggregate(args, cfg)
    raise AssertionError(args.command)


def _load_training_inputs(args, cfg):
    corpus = args.corpus or cfg.corpus_path
    if not corpus:
        raise ConfigError("no corpus given (--corpus or config data.corpus)")
    ssa_dir = args.ssa or cfg.ssa_dir
    if not ssa_dir:
        raise ConfigError("no SSA directory given (--ssa or config ssa.dir)")
    stats = load_ssa_dir(ssa_dir, cfg.min_year)
    gender_rows, gender_report = load_labeled_corpus(corpus, cfg, "gender")
    person_rows, _ = load_labeled_corpus(corpus, cfg, "person")
    print(f"corpus: {gender_report.n_rows} rows, {gender_report.retained} usable "
          f"for gender training ({gender_report.dropped_confidence} below confidence "
          f"threshold, {gender_report.dropped_gender} non-binary/unlabeled, "
          f"{gender_report.skipped_parse} unparseable)")
    print(f"ssa: {len(stats)} names, years {stats.min_year}-{stats.max_year}")
    return gender_rows, person_rows, stats


def _cmd_train(args, cfg) -> int:
    gender_rows, person_rows, stats = _load_training_inputs(args, cfg)
    bundle = train_bundle(gender_rows, person_rows, stats, cfg)
    save_bundle(bundle, args.out)
    print(f"wrote bundle: {args.out}")
    return 0


def _cmd_evaluate(args, cfg) -> int:
    gender_rows, person_rows, stats = _load_training_inputs(args, cfg)
    rows = run_full_evaluation(gender_rows, person_rows, stats, cfg)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write("method,learner,accuracy,precision,recall,f1,coverage,"
                 "n_total,n_covered\n")
        for row in rows:
            r = row.report
            fh.write(",".join([
                row.method, row.learner,
                _fmt(r.accuracy), _fmt(r.precision), _fmt(r.recall), _fmt(r.f1),
                _fmt(r.coverage), str(r.n_total), str(r.n_covered)]) + "\n")
    _print_table(rows)
    print(f"wrote report: {args.out}")
    return 0


def _fmt(value) -> str:
    return "" if value is None else f"{value:.4f}"


def _print_table(rows):
    print(f"{'method':<14}{'learner':<28}{'acc':>8}{'prec':>8}"
          f"{'rec':>8}{'f1':>8}{'cover':>8}")
    for row in rows:
        r = row.report
        print(f"{row.method:<14}{row.learner:<28}"
              f"{_fmt(r.accuracy) or '-':>8}{_fmt(r.precision) or '-':>8}"
              f"{_fmt(r.recall) or '-':>8}{_fmt(r.f1) or '-':>8}"
              f"{_fmt(r.coverage) or '-':>8}")


def _cmd_classify(args, cfg) -> int:
    bundle = load_bundle(args.model)
    records, skipped = load_user_records(args.input)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        fh.write("user_id,tweet_id,method,covered,label,p_female\n")
        for rec in records:
            pred = bundle.stacked.predict(rec.user)
            label = pred.label if pred.covered else ""
            p = f"{pred.p_female:.6f}" if pred.covered else ""
            fh.write(f"{rec.user_id},{rec.tweet_id},{pred.method},"
                     f"{int(pred.covered)},{label},{p}\n")
    if skipped:
        print(f"skipped {skipped} unparseable records")
    print(f"wrote predictions: {args.out}")
    return 0


def _cmd_filter(args, cfg) -> int:
    from .person import filter_persons

    bundle = load_bundle(args.model)
    records, skipped = load_user_records(args.input)
    users = [r.user for r in records]
    raw_by_id = {}
    for rec in records:
        raw_by_id.setdefault(id(rec.user), rec.raw)
    persons, removed, removed_count = filter_persons(
        bundle.person_forest, users, bundle.snapshot, bundle.stats,
        bundle.person_threshold, bundle.feature_cfg)
    removed_path = args.out_removed or f"{args.out}.removed"
    person_ids = {id(u) for u in persons}
    with open(args.out, "w", encoding="utf-8") as fh:
        for rec in records:
            if id(rec.user) in person_ids:
                fh.write(rec.raw + "\n")
    with open(removed_path, "w", encoding="utf-8") as fh:
        for rec in records:
            if id(rec.user) not in person_ids:
                fh.write(rec.raw + "\n")
    if skipped:
        print(f"skipped {skipped} unparseable records")
    print(f"kept {len(persons)} person records ({args.out}); "
          f"removed {removed_count} ({removed_path})")
    return 0


def _cmd_aggregate(args, cfg) -> int:
    bundle = load_bundle(args.model)
    tweets, skipped = load_tweets(args.input)
    aggregates = aggregate_by_county(
        tweets, bundle.person_forest, bundle.stacked, bundle.snapshot,
        bundle.person_threshold, bundle.feature_cfg)
    write_county_csv(aggregates, args.out)
    if skipped:
        print(f"skipped {skipped} records without county_fips")
    print(f"wrote county report: {args.out} ({len(aggregates)} counties, "
          f"{sum(a.n_tweets for a in aggregates)} tweets)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
