"""Command-line interface: ``loopkit <command> ...`` or ``python3 -m loopkit``.

Commands: check, identity, isotope, search, verify, catalog.

Exit codes: 0 success (every checked property holds), 1 a property or claim
is falsified (or a search found nothing), 2 usage or input error, 3 the two
universality methods disagree.

``--format structured`` prints JSON lines, one record per report, with
sorted keys.  Every record has a ``record`` field naming its kind:

* ``property``: loop, property, holds, method, witness
* ``isotope``: loop, kind, u, v, identity, table
* ``hit``: index, order, table, properties
* ``count``: order, count
* ``claim``: claim, tested, vacuous, verified, violations, warnings, low_confidence
* ``summary``: claims, loops, failures, warnings
* ``identity``: name, label, equation, vars, tags, note
* ``claim-info``: claim, hypothesis, statement, low_confidence, note
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

import numpy as np

from .core import FiniteLoop, LoopError
from .isotopy import IsotopeSpec, principal_isotope
from .loopfile import LoopFileError, format_loop, read_corpus, read_loop_file
from .properties import (
    METHODS, MethodDisagreement, UnknownProperty, canonical_name, check_identity, predicate,
)
from .registry import registry
from .search import EXHAUSTIVE_CAP, OrderTooLarge, SearchQuery, enumerate_loops, search
from .terms import TermSyntaxError, parse_identity, to_str
from .theoremlab import claims, claim as get_claim, run_claims


def shipped_corpus() -> Path:
    return Path(str(resources.files("loopkit") / "data" / "corpus"))


class UsageError(Exception):
    pass


# -- output -----------------------------------------------------------------


def _plain(obj):
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not serializable: {type(obj).__name__}")


def dumps(record: dict) -> str:
    return json.dumps(record, sort_keys=True, default=_plain, ensure_ascii=False)


def _flat(d, prefix="") -> list[str]:
    """``key=value`` pieces for a nested witness, keys in sorted order."""
    out = []
    for k in sorted(d):
        v = d[k]
        if isinstance(v, dict):
            out += _flat(v, f"{prefix}{k}.")
        else:
            out.append(f"{prefix}{k}={v}")
    return out


def _text_property(r: dict) -> str:
    line = f"{r['loop']}: {r['property']} {'holds' if r['holds'] else 'fails'} (method {r['method']})"
    if r["witness"] is not None:
        line += "; witness " + ", ".join(_flat(r["witness"]))
    return line


def _text_claim(r: dict) -> str:
    tag = " [low-confidence]" if r["low_confidence"] else ""
    lines = [
        f"{r['claim']}{tag}: tested {r['tested']}, vacuous {r['vacuous']}, "
        f"verified {r['verified']}, violations {len(r['violations'])}, warnings {len(r['warnings'])}"
    ]
    for kind, items in (("violation", r["violations"]), ("warning", r["warnings"])):
        for v in items:
            lines.append(f"  {kind} on {v['loop']}: " + ", ".join(_flat(v["detail"])))
    return "\n".join(lines)


class Output:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, record: dict, text: str) -> None:
        self.stream.write((dumps(record) if self.fmt == "structured" else text) + "\n")


# -- loading ----------------------------------------------------------------


def _load(path: str | None) -> dict[str, FiniteLoop]:
    p = Path(path) if path else shipped_corpus()
    if p.is_dir():
        return dict(read_corpus(p))
    if not p.exists():
        raise UsageError(f"no such file or directory: {p}")
    return dict(read_loop_file(p).loops)


def _get_loop(args) -> FiniteLoop:
    loops = _load(args.file)
    if args.loop not in loops:
        raise UsageError(f"unknown loop {args.loop!r}; available: {', '.join(loops) or '(none)'}")
    return loops[args.loop]


# -- commands ---------------------------------------------------------------


def cmd_check(args, out: Output) -> int:
    L = _get_loop(args)
    for p in args.properties:
        canonical_name(p)  # unknown names fail before any work
    ok = True
    for p in args.properties:
        rep = predicate(L, p, args.method)
        rec = {"record": "property", "loop": args.loop, **rep.as_dict()}
        out.emit(rec, _text_property(rec))
        ok &= rep.holds
    return 0 if ok else 1


def cmd_identity(args, out: Output) -> int:
    L = _get_loop(args)
    ident = parse_identity(args.expression, name=args.expression)
    rep = check_identity(L, ident, f"{to_str(ident.lhs)} = {to_str(ident.rhs)}")
    rec = {"record": "property", "loop": args.loop, **rep.as_dict()}
    out.emit(rec, _text_property(rec))
    return 0 if rep.holds else 1


def cmd_isotope(args, out: Output) -> int:
    L = _get_loop(args)
    need = 2 if args.kind == "full" else 1
    if len(args.params) != need:
        raise UsageError(f"a {args.kind} isotope takes {need} element(s), got {len(args.params)}")
    for a in args.params:
        if not 0 <= a < L.order:
            raise UsageError(f"element {a} out of range for order {L.order}")
    if args.kind == "full":
        spec = IsotopeSpec.full(*args.params)
    elif args.kind == "left":
        spec = IsotopeSpec.left(args.params[0])
    else:
        spec = IsotopeSpec.right(args.params[0])
    iso = principal_isotope(L, spec)
    name = "-".join([args.loop, "iso", args.kind] + [str(a) for a in args.params])
    rec = {
        "record": "isotope", "loop": args.loop, "kind": spec.kind, "u": spec.u, "v": spec.v,
        "identity": iso.identity, "table": iso.table,
    }
    params = ", ".join(f"{k}={v}" for k, v in (("u", spec.u), ("v", spec.v)) if v is not None)
    notes = [
        f"{spec.kind} principal isotope of {args.loop} with {params}",
        f"identity {iso.identity} before normalization",
    ]
    out.emit(rec, format_loop(name, iso.table, notes).rstrip("\n"))
    return 0


def cmd_search(args, out: Output) -> int:
    q = SearchQuery(
        order=args.order, require=tuple(args.require), forbid=tuple(args.forbid),
        limit=args.limit, mode=args.mode, seed=args.seed, attempts=args.attempts, method=args.method,
    )
    hits = search(q, jobs=args.jobs)
    if args.count:
        out.emit({"record": "count", "order": q.order, "count": len(hits)}, str(len(hits)))
        return 0
    query = " ".join(
        [f"--order {q.order}", f"--mode {q.mode}"]
        + [f"--require {p}" for p in q.require] + [f"--forbid {p}" for p in q.forbid]
    )
    for k, h in enumerate(hits, start=1):
        props = h.summary()
        rec = {"record": "hit", "index": k, "order": q.order, "table": h.loop.table, "properties": props}
        notes = [f"search {query}: hit {k}"] + [f"{p}: {'holds' if v else 'fails'}" for p, v in props.items()]
        out.emit(rec, format_loop(f"hit{k}", h.loop, notes).rstrip("\n"))
    return 0 if hits else 1


def _verify_corpus(args) -> list[tuple[str, FiniteLoop]]:
    corpus = list(_load(args.corpus).items())
    if args.exhaustive:
        if args.exhaustive > EXHAUSTIVE_CAP:
            raise OrderTooLarge(args.exhaustive, EXHAUSTIVE_CAP)
        for n in range(1, args.exhaustive + 1):
            corpus += [(f"reduced{n}#{i}", L) for i, L in enumerate(enumerate_loops(n))]
    return corpus


def cmd_verify(args, out: Output) -> int:
    chosen = [get_claim(c) for c in args.claim] if args.claim else claims()
    corpus = _verify_corpus(args)
    reports = run_claims(chosen, corpus, jobs=args.jobs, method=args.method)
    failures = warnings = 0
    for rep in reports:
        rec = {"record": "claim", **rep.as_dict()}
        out.emit(rec, _text_claim(rec))
        failures += len(rep.failures)
        warnings += len(rep.warnings)
    summary = {"record": "summary", "claims": len(reports), "loops": len(corpus),
               "failures": failures, "warnings": warnings}
    out.emit(summary, f"{len(reports)} claims over {len(corpus)} loops: "
                      f"{failures} violations, {warnings} warnings")
    return 0 if failures == 0 else 1


def cmd_catalog(args, out: Output) -> int:
    if args.claims:
        for c in claims():
            rec = {"record": "claim-info", "claim": c.id, "hypothesis": list(c.hypothesis),
                   "statement": c.statement, "low_confidence": c.low_confidence, "note": c.note}
            hyp = " & ".join(c.hypothesis) or "(any loop)"
            text = f"{c.id}: [{hyp}] {c.statement}" + (" [low-confidence]" if c.low_confidence else "")
            out.emit(rec, text)
        return 0
    for ident in registry():
        if args.tag and args.tag not in ident.tags:
            continue
        eq = str(ident)
        rec = {"record": "identity", "name": ident.name, "label": ident.label, "equation": eq,
               "vars": list(ident.vars), "tags": sorted(ident.tags), "note": ident.note}
        text = f"{ident.label:<28} {eq}"
        if ident.label != ident.name:
            text += f"   (name {ident.name})"
        if ident.tags:
            text += f"   [{', '.join(sorted(ident.tags))}]"
        out.emit(rec, text)
    return 0


# -- parser -----------------------------------------------------------------


def _jobs(s: str) -> int:
    n = int(s)
    if n < 1:
        raise argparse.ArgumentTypeError("--jobs must be at least 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=_jobs, default=1, help="worker processes (results do not depend on it)")
    common.add_argument("--format", choices=("text", "structured"), default="text")
    common.add_argument("--method", choices=METHODS, default="identity",
                        help="how universality properties are decided")

    p = argparse.ArgumentParser(prog="loopkit", description="Finite loops: properties, isotopes, search.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_loop(sp):
        sp.add_argument("--file", "-f", help="loop file or directory (default: shipped corpus)")
        sp.add_argument("loop", help="loop name")

    sp = sub.add_parser("check", parents=[common], help="evaluate named properties")
    with_loop(sp)
    sp.add_argument("properties", nargs="+")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("identity", parents=[common], help="check an identity such as 'x*y = y*x'")
    with_loop(sp)
    sp.add_argument("expression")
    sp.set_defaults(func=cmd_identity)

    sp = sub.add_parser("isotope", parents=[common], help="print a principal isotope as a loop file")
    with_loop(sp)
    sp.add_argument("params", nargs="+", type=int, metavar="ELEMENT",
                    help="u v for a full isotope; v for left; u for right")
    sp.add_argument("--kind", choices=("full", "left", "right"), default="full")
    sp.set_defaults(func=cmd_isotope)

    sp = sub.add_parser("search", parents=[common], help="find loops with given properties")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--require", action="append", default=[], metavar="PROP")
    sp.add_argument("--forbid", action="append", default=[], metavar="PROP")
    sp.add_argument("--limit", type=int)
    sp.add_argument("--mode", choices=("exhaustive", "first"), default="exhaustive")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--attempts", type=int, default=2000)
    sp.add_argument("--count", action="store_true", help="print only the number of hits")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("verify", parents=[common], help="run the claim catalog over a corpus")
    sp.add_argument("corpus", nargs="?", help="directory of loop files (default: shipped corpus)")
    sp.add_argument("--exhaustive", type=int, metavar="N", help="also every reduced loop of order 1..N")
    sp.add_argument("--claim", action="append", default=[], metavar="ID", help="run only these claims")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("catalog", parents=[common], help="list registry identities or claims")
    sp.add_argument("--claims", action="store_true", help="list the claim catalog instead")
    sp.add_argument("--tag", help="only identities with this tag")
    sp.set_defaults(func=cmd_catalog)
    return p


def main(argv=None, stdout=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.format, stdout)
    try:
        return args.func(args, out)
    except MethodDisagreement as exc:
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return 3
    except (UsageError, UnknownProperty, TermSyntaxError, LoopFileError, LoopError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"loopkit {args.command}: error: {msg}", file=sys.stderr)
        return 2
    except KeyError as exc:  # unknown claim id
        print(f"loopkit {args.command}: error: {exc.args[0] if exc.args else exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
