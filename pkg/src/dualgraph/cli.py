"""Command line front end: ``dualgraph COMMAND --in FILE [--format text|json|dot] [--trace]``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .classifier import classify, explain
from .dsl import (
    dumps,
    format_graph,
    format_moves,
    format_weights,
    moves_from_json,
    parse_graph,
    parse_moves,
    to_dot,
)
from .errors import DualGraphError, NotStandardizable, TraceReplayError, WrongShape
from .graph import Shape, intersection_matrix, shape
from .intersection import is_negative_definite
from .moves import replay
from .normal_forms import (
    branch_decomposition,
    fibration_markers,
    minimalize,
    standardize_circular,
    standardize_linear,
)

COMMANDS = ("classify", "minimalize", "standardize", "apply", "matrix", "negdef", "markers", "decompose")

OK, REJECTED, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


class Result:
    """What one command produced for one graph."""

    def __init__(self, record, text, graph=None, code=OK):
        self.record = record
        self.text = text
        self.graph = graph
        self.code = code


def _classify(g, args):
    v = classify(g)
    diagnostics = list(v.diagnostics)
    if not v.accepted:
        diagnostics.insert(0, v.detail)
    record = {
        "shape": str(shape(g)),
        "minimal": format_weights(v.minimal),
        "standard": format_weights(v.standard),
        "verdict": {"family": v.family, "params": v.params},
        "trace": v.witness.to_records() if args.trace else [],
        "diagnostics": diagnostics,
    }
    head = v.family + "".join(f" {k}={json.dumps(x)}" for k, x in sorted(v.params.items()))
    if args.trace:
        text = f"# {head}\n" + format_moves(v.witness.moves)
    else:
        text = head + "\n"
        if args.explain:
            text += json.dumps(explain(v), indent=2, sort_keys=True) + "\n"
    return Result(record, text, v.standard, OK if v.accepted else REJECTED)


def _rewrite_result(g, out, trace, args):
    record = {
        "shape": str(shape(g)),
        "graph": format_weights(out),
        "trace": trace.to_records() if args.trace else [],
    }
    text = format_moves(trace.moves) if args.trace else format_weights(out) + "\n"
    return Result(record, text, out)


def _minimalize(g, args):
    out, trace = minimalize(g)
    return _rewrite_result(g, out, trace, args)


def _standardize(g, args):
    s = shape(g)
    fn = standardize_circular if s is Shape.CIRCULAR else standardize_linear
    if s is Shape.BRANCHED:
        raise InputError("standardize needs a chain or a cycle; use classify for branched graphs")
    try:
        out, trace = fn(g)
    except NotStandardizable as exc:
        record = {"shape": str(s), "graph": None, "trace": [], "diagnostics": [str(exc)]}
        return Result(record, f"not standardizable: {exc}\n", None, REJECTED)
    return _rewrite_result(g, out, trace, args)


def _apply(g, args):
    if not args.moves:
        raise InputError("apply needs --moves FILE")
    text = _read(args.moves)
    if text.lstrip().startswith("{"):
        moves = moves_from_json(json.loads(text)["trace"])
    elif text.lstrip().startswith("["):
        moves = moves_from_json(json.loads(text))
    else:
        moves = parse_moves(text)
    out = replay(g, moves)
    record = {"graph": format_graph(out) if not out.is_empty() else "empty", "moves": len(moves)}
    return Result(record, (format_graph(out) if not out.is_empty() else "empty") + "\n", out)


def _matrix(g, args):
    m = intersection_matrix(g)
    record = {"order": list(m.order), "matrix": m.rows()}
    width = max(len(str(x)) for r in m.rows() for x in r)
    text = "# " + " ".join(map(str, m.order)) + "\n"
    text += "".join(" ".join(str(x).rjust(width) for x in r) + "\n" for r in m.rows())
    return Result(record, text, g)


def _negdef(g, args):
    val = is_negative_definite(g)
    return Result({"negative_definite": val}, ("true" if val else "false") + "\n", g)


def _markers(g, args):
    ms = fibration_markers(g)
    record = {"markers": [{"kind": m.kind, "anchor": list(m.anchor)} for m in ms]}
    text = "".join(f"{m.kind} {' '.join(map(str, m.anchor))}\n" for m in ms)
    return Result(record, text, g)


def _decompose(g, args):
    h, _ = minimalize(g)
    d = branch_decomposition(h)
    names = lambda vs: sorted(map(str, vs))  # noqa: E731
    record = {
        "br": names(d.br),
        "t0": names(d.t0),
        "t1": names(d.t1),
        "components": [{"tag": c.tag, "vertices": names(c.graph.vertices)} for c in d.components],
    }
    text = "".join(f"{k}: {' '.join(record[k])}\n" for k in ("br", "t0", "t1"))
    text += "".join(f"component ({c['tag']}): {' '.join(c['vertices'])}\n" for c in record["components"])
    return Result(record, text, h)


HANDLERS = {
    "classify": _classify,
    "minimalize": _minimalize,
    "standardize": _standardize,
    "apply": _apply,
    "matrix": _matrix,
    "negdef": _negdef,
    "markers": _markers,
    "decompose": _decompose,
}


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def run_one(command, text, args):
    """Run ``command`` on DSL ``text``; returns a :class:`Result` or raises."""
    g = parse_graph(text)
    return HANDLERS[command](g, args)


def _emit(res, fmt, out, source=None):
    if fmt == "json":
        rec = dict(res.record)
        if source is not None:
            rec["source"] = source
        out.write(dumps(rec) + "\n")
    elif fmt == "dot":
        if res.graph is not None and not res.graph.is_empty():
            out.write(to_dot(res.graph))
    else:
        out.write(res.text)


def build_parser():
    p = argparse.ArgumentParser(prog="dualgraph", description="Weighted dual graph calculus.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--in", dest="input", default="-", help="DSL file, '-' for stdin, or a directory of .dg files")
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p.add_argument("--trace", action="store_true", help="emit the move trace")
    p.add_argument("--moves", help="move script for 'apply' (text or JSON)")
    p.add_argument("--explain", action="store_true", help="add a constraint report to classify")
    return p


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    src = Path(args.input) if args.input != "-" else None
    if src is not None and src.is_dir():
        return _batch(args, sorted(src.glob("*.dg")), stdout, stderr)
    try:
        res = run_one(args.command, _read(args.input), args)
    except (InputError, DualGraphError, WrongShape, TraceReplayError, ValueError, KeyError) as exc:
        stderr.write(f"error: {exc}\n")
        return INPUT_ERROR
    _emit(res, args.format, stdout)
    return res.code


def _batch(args, files, stdout, stderr):
    code = OK
    for f in files:
        try:
            res = run_one(args.command, f.read_text(), args)
        except (InputError, DualGraphError, ValueError, KeyError) as exc:
            stdout.write(dumps({"source": f.name, "error": str(exc)}) + "\n")
            code = INPUT_ERROR
            continue
        _emit(res, "json", stdout, f.name)
        if res.code != OK and code == OK:
            code = res.code
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())


def entry():  # pragma: no cover
    sys.exit(main())
