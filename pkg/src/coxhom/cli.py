"""Command-line front end.

Every operation is a subcommand producing a dict report, printed as an
aligned text table or canonical JSON (sorted keys, two-space indent).
All randomness sits behind --seed, defaulting to 0; thread counts behind
--threads, defaulting to the COXHOM_THREADS environment variable.
Exit codes: 0 success, 1 usage or computation error, 2 mismatch against
an --expect file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .conjugacy import conjugacy_classes
from .errors import CoxhomError
from .graphs import parse_graph
from .groups import build_group
from .homs import (
    catalog,
    classify_uceps,
    exists_proper_ucep,
    preserves_coloured,
    standard_hom,
)
from .pipelines import bn_verify, e7_table1, e7_table2_and_V, h3_search
from .urep import obstruction, theorem31_report

# past this order the conjugacy partition is left out of `info`
_CLASS_COUNT_LIMIT = 5_000_000


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _add_common(sub, seed=False, threads=False):
    sub.add_argument("--format", choices=("table", "json"), default="table")
    sub.add_argument("--out", metavar="PATH")
    sub.add_argument("--expect", metavar="PATH")
    if seed:
        sub.add_argument("--seed", type=int, default=0)
    if threads:
        default = int(os.environ.get("COXHOM_THREADS", "1"))
        sub.add_argument("--threads", type=int, default=default)


def _build_parser() -> _Parser:
    parser = _Parser(prog="coxhom")
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("info", help="structural constants of one type")
    sub.add_argument("--type", required=True, dest="graph")
    _add_common(sub, seed=True)

    sub = subs.add_parser("exists-proper",
                          help="whether a proper ucep exists")
    sub.add_argument("--type", required=True, dest="graph")
    _add_common(sub)

    sub = subs.add_parser("classify", help="ucep classes by brute force")
    sub.add_argument("--type", required=True, dest="graph")
    sub.add_argument("--mode", choices=("conjugacy", "equivalence"),
                     default="conjugacy")
    sub.add_argument("--bound", type=int, default=10_000)
    _add_common(sub)

    sub = subs.add_parser("catalog", help="named maps for one type")
    sub.add_argument("--type", required=True, dest="graph")
    _add_common(sub)

    sub = subs.add_parser("obstruct", help="parity obstruction verdicts")
    sub.add_argument("--type", required=True, dest="graph")
    sub.add_argument("--map", dest="map_name",
                     help="single catalog name or 'standard'; default all")
    _add_common(sub)

    sub = subs.add_parser("theorem31",
                          help="obstruction over the extraordinary classes")
    sub.add_argument("--type", required=True, dest="graph")
    sub.add_argument("--bound", type=int, default=10_000)
    _add_common(sub)

    sub = subs.add_parser("h3", help="triple sweep over the rank-3 "
                                     "icosahedral group")
    _add_common(sub)

    sub = subs.add_parser("e7", help="even-class census over E7")
    sub.add_argument("--stage", choices=("table1", "table2"),
                     default="table1")
    sub.add_argument("--class-size", type=int, dest="class_size")
    sub.add_argument("--json", metavar="PATH", dest="json_out",
                     help="shorthand for --format json --out PATH")
    _add_common(sub, seed=True, threads=True)

    sub = subs.add_parser("bn-verify",
                          help="self-checking odd B_n classification")
    sub.add_argument("--rank", type=int, default=3)
    sub.add_argument("--bound", type=int, default=200)
    _add_common(sub)

    sub = subs.add_parser("preserves-coloured",
                          help="whether generator words keep the coloured "
                               "subgroup inside itself")
    sub.add_argument("--type", required=True, dest="graph")
    sub.add_argument("words", nargs="+",
                     help="one comma-separated letter word per vertex")
    _add_common(sub)
    return parser


def _group(code: str):
    return build_group(parse_graph(code))


def _cmd_info(args) -> dict:
    group = _group(args.graph)
    graph = group.graph
    reflections = len(group.reflections())
    single = len(graph.components()) == 1
    w0 = group.longest_element()
    classes = None
    if group.order() <= _CLASS_COUNT_LIMIT:
        classes = len(conjugacy_classes(group, seed=args.seed))
    return {
        "graph": args.graph,
        "rank": graph.n,
        "order": group.order(),
        "reflections": reflections,
        "coxeter_number": 2 * reflections // graph.n if single else None,
        "longest_word": list(group.reduced_word(w0)),
        "xi": {str(i): j for i, j in sorted(group.xi().items())},
        "xi_trivial": all(i == j for i, j in group.xi().items()),
        "center_size": len(group.center()),
        "conjugacy_classes": classes,
    }


def _cmd_exists(args) -> dict:
    group = _group(args.graph)
    exists, witness = exists_proper_ucep(group)
    return {
        "graph": args.graph,
        "exists": exists,
        "witness": {str(i): v for i, v in sorted(witness.items())}
        if witness else None,
    }


def _cmd_classify(args) -> dict:
    group = _group(args.graph)
    report = classify_uceps(group, mode=args.mode, bound=args.bound)
    out = report.to_dict()
    out["proper_count"] = len(report.proper_rows())
    return out


def _cmd_catalog(args) -> dict:
    group = _group(args.graph)
    entries = []
    for name, hom in catalog(group).items():
        entries.append({
            "name": name,
            "images": [list(w) for w in hom.image_words()],
            "image_order": hom.image_order(),
            "proper": hom.is_proper(),
            "ordinary": hom.is_ordinary(),
        })
    entries.sort(key=lambda e: e["name"])
    return {"graph": args.graph, "entries": entries}


def _cmd_obstruct(args) -> dict:
    group = _group(args.graph)
    targets = dict(catalog(group))
    targets["standard"] = standard_hom(group)
    if args.map_name is not None:
        if args.map_name not in targets:
            raise _UsageError(
                f"unknown map {args.map_name!r}; "
                f"have {', '.join(sorted(targets))}"
            )
        targets = {args.map_name: targets[args.map_name]}
    rows = []
    for name in sorted(targets):
        result = obstruction(targets[name])
        rows.append({
            "name": name,
            "verdict": result.verdict,
            "equations": len(result.system.equations),
            "certificate_size": len(result.certificate)
            if result.certificate else None,
            "certificate_ok": result.verify()
            if result.certificate else None,
        })
    return {"graph": args.graph, "rows": rows}


def _cmd_theorem31(args) -> dict:
    group = _group(args.graph)
    return theorem31_report(group, bound=args.bound).to_dict()


def _cmd_h3(args) -> dict:
    return h3_search().to_dict()


def _cmd_e7(args) -> dict:
    table1 = e7_table1(class_size=args.class_size, seed=args.seed,
                       threads=args.threads)
    if args.stage == "table1":
        return table1.to_dict()
    report = e7_table2_and_V(table1, class_size=args.class_size,
                             threads=args.threads)
    return report.to_dict()


def _cmd_bn_verify(args) -> dict:
    report = bn_verify(n=args.rank, bound=args.bound)
    out = report.to_dict()
    out["verified"] = True
    return out


def _cmd_preserves(args) -> dict:
    group = _group(args.graph)
    if len(args.words) != group.rank:
        raise _UsageError(
            f"need {group.rank} words, got {len(args.words)}"
        )
    words = []
    for text in args.words:
        try:
            words.append(tuple(int(x) for x in text.split(",") if x))
        except ValueError:
            raise _UsageError(f"bad word {text!r}") from None
    return {
        "graph": args.graph,
        "preserves": preserves_coloured(group, words),
    }


_COMMANDS = {
    "info": _cmd_info,
    "exists-proper": _cmd_exists,
    "classify": _cmd_classify,
    "catalog": _cmd_catalog,
    "obstruct": _cmd_obstruct,
    "theorem31": _cmd_theorem31,
    "h3": _cmd_h3,
    "e7": _cmd_e7,
    "bn-verify": _cmd_bn_verify,
    "preserves-coloured": _cmd_preserves,
}


def _strip_timings(obj):
    if isinstance(obj, dict):
        return {
            k: _strip_timings(v) for k, v in obj.items() if k != "timings"
        }
    if isinstance(obj, list):
        return [_strip_timings(v) for v in obj]
    return obj


def _emit_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _cell(value) -> str:
    if isinstance(value, str):
        return value
    return json.dumps(value, sort_keys=True, separators=(",", ":"))


def _emit_table(payload: dict) -> str:
    lines = []
    rows_key = None
    for key in ("rows", "classes", "entries"):
        if isinstance(payload.get(key), list):
            rows_key = key
            break
    for key in sorted(payload):
        if key == rows_key:
            continue
        lines.append(f"{key}: {_cell(payload[key])}")
    rows = payload.get(rows_key, []) if rows_key else []
    if rows and isinstance(rows[0], dict):
        cols = list(rows[0])
        table = [[_cell(row.get(c)) for c in cols] for row in rows]
        widths = [
            max(len(c), *(len(line[k]) for line in table))
            for k, c in enumerate(cols)
        ]
        lines.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)))
        for line in table:
            lines.append(
                "  ".join(v.ljust(w) for v, w in zip(line, widths))
            )
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:
        return int(exc.code or 0)

    if getattr(args, "json_out", None):
        args.format = "json"
        args.out = args.json_out
    try:
        payload = _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (CoxhomError, ValueError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    text = (_emit_json(payload) if args.format == "json"
            else _emit_table(payload))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)

    if args.expect:
        try:
            with open(args.expect) as fh:
                wanted = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            print(f"error: cannot read expectation: {exc}", file=sys.stderr)
            return 1
        if _strip_timings(wanted) != _strip_timings(payload):
            print("expectation mismatch", file=sys.stderr)
            return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
