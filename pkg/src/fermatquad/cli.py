"""Command line entry point.

Exit codes: 0 on success (for ``verdict``, only when the outcome is PROVEN_*),
1 for a non-proven verdict, 2 for invalid input or data errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .dataset import DatasetError, NewformDataset, fetch_remote, load_bundled, load_dataset
from .freylevel import distinct_levels, level_string
from .irred import irreducibility_report
from .pipeline import (field_info, level_table, render_elimination, render_field, render_irred,
                       render_levels, run_pipeline, verdict_line)
from .quadfield import make_field

EXIT_OK, EXIT_NOT_PROVEN, EXIT_ERROR = 0, 1, 2


def parse_range(text: str) -> list[int]:
    """'2..23' -> squarefree d in [2, 23]."""
    try:
        lo, hi = (int(x) for x in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}") from None
    if lo < 2 or hi < lo:
        raise argparse.ArgumentTypeError(f"empty or invalid range {text!r}")
    out = []
    for d in range(lo, hi + 1):
        try:
            make_field(d)
        except ValueError:
            continue
        out.append(d)
    return out


def _dataset(path: str | None) -> NewformDataset:
    return load_bundled() if path is None else load_dataset(path)


def _emit(args, obj: dict, text: str) -> None:
    if args.format == "json":
        body = json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    else:
        body = text
    if args.out:
        Path(args.out).write_text(body, encoding="utf-8")
    else:
        sys.stdout.write(body)


def cmd_field_info(args) -> int:
    F = make_field(args.d)
    j = {"d": F.d, "field": field_info(F)}
    _emit(args, j["field"], "\n".join(render_field(j)) + "\n")
    return EXIT_OK


def cmd_predict_levels(args) -> int:
    F = make_field(args.d)
    j = {"d": F.d, "levels": level_table(F)}
    _emit(args, j, "\n".join([f"Q(sqrt {F.d})"] + render_levels(j)) + "\n")
    return EXIT_OK


def cmd_irreducibility(args) -> int:
    rep = irreducibility_report(make_field(args.d)).to_json()
    text = "\n".join([f"Q(sqrt {args.d})"] + render_irred(rep)
                     + [f"  clean: {rep['clean']}"]) + "\n"
    _emit(args, rep, text)
    return EXIT_OK if rep["clean"] else EXIT_NOT_PROVEN


def cmd_eliminate(args) -> int:
    j = run_pipeline(args.d, _dataset(args.dataset)).to_json()
    out = {"d": args.d, "elimination": j["elimination"], "empty_levels": j["empty_levels"],
           "missing_levels": j["verdict"]["missing_levels"]}
    _emit(args, out, "\n".join([f"Q(sqrt {args.d})"] + render_elimination(j)) + "\n")
    return EXIT_OK


def cmd_verdict(args) -> int:
    rep = run_pipeline(args.d, _dataset(args.dataset))
    if args.full:
        _emit(args, rep.to_json(), rep.to_text())
    else:
        j = rep.to_json()
        _emit(args, {"d": args.d, **j["verdict"]},
              f"Q(sqrt {args.d}): {verdict_line(j['verdict'])}\n")
    return EXIT_OK if rep.verdict.proven else EXIT_NOT_PROVEN


def _report_json(d: int, dataset_path: str | None) -> dict:
    return run_pipeline(d, _dataset(dataset_path)).to_json()


def cmd_all(args) -> int:
    ds_path = args.dataset
    _dataset(ds_path)  # validate once before fanning out
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_report_json, args.range, [ds_path] * len(args.range)))
    else:
        ds = _dataset(ds_path)
        reports = [run_pipeline(d, ds).to_json() for d in args.range]
    width = max(len(str(d)) for d in args.range)
    lines = [f"d={j['d']:<{width}}  {verdict_line(j['verdict'])}" for j in reports]
    _emit(args, {"fields": reports}, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_fetch(args) -> int:
    F = make_field(args.d)
    summary = []
    for level in distinct_levels(F):
        forms = fetch_remote(F.d, level, args.endpoint, cache=args.cache)
        summary.append({"level": level_string(F, level), "forms": len(forms)})
    text = "".join(f"{s['level']}: {s['forms']} forms\n" for s in summary)
    _emit(args, {"d": F.d, "cache": str(args.cache), "levels": summary}, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="fermatquad",
                                description="Fermat's equation over real quadratic fields")
    sub = p.add_subparsers(dest="cmd", required=True)

    def verb(name, fn, help_, *, with_d=True, dataset=False):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if with_d:
            sp.add_argument("d", type=int)
        if dataset:
            sp.add_argument("--dataset", help="newform dataset (default: bundled fixtures)")
        sp.set_defaults(func=fn)
        return sp

    verb("field-info", cmd_field_info, "units, class group and H set")
    verb("predict-levels", cmd_predict_levels, "Frey curve levels N_p")
    verb("irreducibility", cmd_irreducibility, "irreducibility evidence for p >= 17")
    verb("eliminate", cmd_eliminate, "newform elimination table", dataset=True)
    v = verb("verdict", cmd_verdict, "theorem-level outcome", dataset=True)
    v.add_argument("--full", action="store_true", help="emit the full report")
    a = verb("all", cmd_all, "verdicts over a range of d", with_d=False, dataset=True)
    a.add_argument("--range", type=parse_range, default=parse_range("2..23"))
    a.add_argument("--jobs", type=int, default=1)
    f = verb("fetch", cmd_fetch, "download eigenvalues for every predicted level")
    f.add_argument("--cache", required=True, help="dataset file to create or extend")
    f.add_argument("--endpoint", help="base URL (default: $FERMATQUAD_ENDPOINT)")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except DatasetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
