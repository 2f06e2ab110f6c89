"""Command-line front end.

Instance files are JSON objects::

    {"p": 3, "ground": ["a", "b", "c", "d"],
     "columns": [[1, 0], [0, 1], [1, 1], [1, 2]], "T": ["c", "d"]}

``columns[i]`` is the column of ``ground[i]``.  Files written by ``split`` and
``esplit`` also carry ``"derived": true``, which lets the loader accept the
coloops a split may create.

Exit codes: 0 success (or predicate true), 1 predicate false or a FAIL in a
suite, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from .errors import MsplitError, NotEulerian, ParseError, ValidationError
from .gfp import FieldMatrix, PrimeModulus
from .matroid import GroundSubset, Matroid
from .splitting import SplitInstance
from .verify import CLAIMS, FAIL, PASS, SKIPPED, CorpusConfig, VerificationReport, run_suite, verify_instance

EXIT_OK, EXIT_FALSE, EXIT_USAGE = 0, 1, 2

_KEYS = {"p", "ground", "columns", "T", "derived"}


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def parse_instance(data: Any) -> tuple[Matroid, GroundSubset | None]:
    if not isinstance(data, dict):
        raise ParseError("top level: expected an object")
    unknown = set(data) - _KEYS
    if unknown:
        raise ParseError(f"unknown field(s): {', '.join(sorted(unknown))}")
    for key in ("p", "ground", "columns"):
        if key not in data:
            raise ParseError(f"missing field {key!r}")
    p, ground, columns = data["p"], data["ground"], data["columns"]
    if not _is_int(p):
        raise ParseError("field 'p': expected an integer")
    if not isinstance(ground, list) or not all(isinstance(g, str) for g in ground):
        raise ParseError("field 'ground': expected an array of strings")
    if not isinstance(columns, list) or not columns:
        raise ParseError("field 'columns': expected a nonempty array of arrays")
    for i, col in enumerate(columns):
        if not isinstance(col, list) or not col or not all(_is_int(x) for x in col):
            raise ParseError(f"field 'columns[{i}]': expected a nonempty array of integers")
    if len(ground) != len(columns):
        raise ParseError(f"'ground' has {len(ground)} labels but 'columns' has {len(columns)} columns")
    if len({len(c) for c in columns}) != 1:
        raise ParseError("field 'columns': columns have different lengths")
    derived = data.get("derived", False)
    if not isinstance(derived, bool):
        raise ParseError("field 'derived': expected a boolean")
    T = data.get("T")
    if T is not None and (not isinstance(T, list) or not all(isinstance(t, str) for t in T)):
        raise ParseError("field 'T': expected an array of strings")
    try:
        modulus = PrimeModulus(p)
    except MsplitError as exc:
        raise ValidationError(str(exc)) from exc
    for i, col in enumerate(columns):
        for j, x in enumerate(col):
            if not 0 <= x < p:
                raise ParseError(f"field 'columns[{i}][{j}]': {x} is not a residue in [0, {p})")
    try:
        matroid = Matroid(FieldMatrix.from_columns(modulus, columns), ground, derived=derived)
        t = matroid.subset(T) if T is not None else None
    except MsplitError as exc:
        raise ValidationError(f"{type(exc).__name__}: {exc}") from exc
    return matroid, t


def load_instance(path: str | Path) -> tuple[Matroid, GroundSubset | None]:
    """Read and validate an instance file; returns the matroid and optional T."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}: {exc.msg}") from exc
    except RecursionError:
        raise ParseError("nesting too deep") from None
    return parse_instance(data)


def instance_dict(m: Matroid, T: GroundSubset | None = None, *, derived: bool = False) -> dict[str, Any]:
    data: dict[str, Any] = {"p": m.p, "ground": list(m.ground),
                            "columns": [list(c) for c in m.matrix.columns()]}
    if T is not None:
        data["T"] = list(T.labels)
    if derived:
        data["derived"] = True
    return data


def dump_instance(m: Matroid, path: str | Path, T: GroundSubset | None = None, *, derived: bool = False) -> None:
    Path(path).write_text(json.dumps(instance_dict(m, T, derived=derived)) + "\n", encoding="utf-8")


# report rendering

def render_report(report: VerificationReport, fmt: str = "table") -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), sort_keys=True, separators=(",", ":")) + "\n"
    if fmt != "table":
        raise ValueError(f"unknown report format {fmt!r}")
    summary = report.summary()
    width = max(len(c) for c in CLAIMS)
    lines = [f"instances: {len(report.instances)}  split sets: {len(report.records)}",
             f"{'claim':<{width}}  {'PASS':>7}  {'FAIL':>7}  {'SKIP':>7}"]
    for claim in CLAIMS:
        c = summary[claim]
        lines.append(f"{claim:<{width}}  {c[PASS]:>7}  {c[FAIL]:>7}  {c[SKIPPED]:>7}")
    seen = set()
    for rec, claim in report.failures():
        if claim in seen:
            continue
        seen.add(claim)
        witness = json.dumps(rec["claims"][claim].get("witness"), sort_keys=True)
        lines.append(f"FAIL {claim} on {rec['instance']} T={{{','.join(rec['T'])}}}: {witness}")
    kinds: dict[str, int] = {}
    for f in report.findings:
        kinds[f["kind"]] = kinds.get(f["kind"], 0) + 1
    for kind in sorted(kinds):
        lines.append(f"finding {kind}: {kinds[kind]}")
    return "\n".join(lines) + "\n"


# commands

def _fmt(subset: GroundSubset) -> str:
    return ",".join(subset.labels)


def _require_t(T: GroundSubset | None) -> GroundSubset:
    if T is None:
        raise ValidationError("this command needs a split set: add a \"T\" field to the instance")
    return T


def _target(args, m: Matroid, T) -> Matroid:
    if getattr(args, "split", False):
        return SplitInstance(m, _require_t(T)).split
    if getattr(args, "esplit", False):
        return SplitInstance(m, _require_t(T)).esplit
    return m


def cmd_circuits(args, out) -> int:
    m, T = load_instance(args.file)
    si = SplitInstance(m, T) if T is not None else None
    for c in m.circuits():
        row = [_fmt(c.members), ",".join(map(str, c.coeffs))]
        if si is not None:
            cc = si.classify_circuit(c)
            row += [cc.klass.value, str(cc.t_sum.value)]
        print("\t".join(row), file=out)
    return EXIT_OK


def cmd_split(args, out) -> int:
    m, T = load_instance(args.file)
    si = SplitInstance(m, _require_t(T))
    target = si.esplit if args.command == "esplit" else si.split
    dump_instance(target, args.out, derived=True)
    print(f"wrote {args.out}: {target.matrix.nrows}x{target.matrix.ncols}, rank {target.rank}", file=out)
    return EXIT_OK


def cmd_bases(args, out) -> int:
    m, T = load_instance(args.file)
    if not args.predicted:
        for b in m.bases():
            print(_fmt(b.members), file=out)
        return EXIT_OK
    si = SplitInstance(m, _require_t(T))
    for b in si.predicted_bases_split():
        print(f"split\t{_fmt(b)}", file=out)
    for b in si.predicted_bases_esplit():
        print(f"esplit\t{_fmt(b)}", file=out)
    return EXIT_OK


def cmd_rank(args, out) -> int:
    m, T = load_instance(args.file)
    labels = [s for s in args.set.split(",") if s]
    if args.split or args.esplit:
        si = SplitInstance(m, _require_t(T))
        if args.esplit:
            with_z = si.z_label in labels
            rest = [lab for lab in labels if lab != si.z_label]
            value = si.esplit_rank(rest, include_z=with_z)
        else:
            value = si.split_rank(labels)
    else:
        value = m.rank_of(labels)
    print(value, file=out)
    return EXIT_OK


def cmd_classify(args, out) -> int:
    m, T = load_instance(args.file)
    si = SplitInstance(m, _require_t(T))
    for cc in si.classified:
        print(f"{_fmt(cc.circuit.members)}\t{cc.klass.value}\t{cc.t_sum.value}", file=out)
    families = {
        "C0": [c.members for c in si.c0()],
        "C1": si.c1(),
        "C2": si.c2(),
        "Cz": si.cz(),
    }
    for name, fam in families.items():
        print(f"{name}\t" + " ".join("{" + _fmt(s) + "}" for s in fam), file=out)
    print(f"trivial\t{str(si.is_trivial_split()).lower()}", file=out)
    return EXIT_OK


def cmd_connectivity(args, out) -> int:
    m, T = load_instance(args.file)
    target = _target(args, m, T)
    if args.n < 1:
        raise ValidationError("--n must be at least 1")
    for k in range(1, args.n):
        sep = target.connectivity_separation(k)
        if sep is not None:
            print(f"not {args.n}-connected\t{k}-separation\t{{{_fmt(sep[0])}}}\t{{{_fmt(sep[1])}}}", file=out)
            return EXIT_FALSE
    print(f"{args.n}-connected", file=out)
    return EXIT_OK


def cmd_eulerian(args, out) -> int:
    m, T = load_instance(args.file)
    target = _target(args, m, T)
    decomposition = target.eulerian_decomposition()
    if decomposition is None:
        print("not Eulerian", file=out)
        return EXIT_FALSE
    print(" ".join("{" + _fmt(c.members) + "}" for c in decomposition), file=out)
    return EXIT_OK


def cmd_ptdecomp(args, out) -> int:
    m, T = load_instance(args.file)
    si = SplitInstance(m, _require_t(T))
    try:
        ptd = si.pt_decomposition()
    except NotEulerian:
        print("M is not Eulerian", file=out)
        return EXIT_FALSE
    if ptd is None:
        print("no PT-decomposition", file=out)
        return EXIT_FALSE
    for pair in ptd.pairs:
        print(f"pair\t{{{_fmt(pair.first.members)}}}\t{{{_fmt(pair.second.members)}}}\t{pair.mode.value}", file=out)
    for c in ptd.singles:
        print(f"single\t{{{_fmt(c.members)}}}", file=out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    m, T = load_instance(args.file)
    findings: list = []
    claims = verify_instance(m, _require_t(T), findings=findings)
    width = max(len(c) for c in CLAIMS)
    for name in CLAIMS:
        result = claims[name]
        extra = result.get("reason") or (json.dumps(result["witness"], sort_keys=True) if "witness" in result else "")
        print(f"{name:<{width}}  {result['status']:<7}  {extra}".rstrip(), file=out)
    for f in findings:
        print(f"finding\t{json.dumps(f, sort_keys=True)}", file=out)
    return EXIT_FALSE if any(r["status"] == FAIL for r in claims.values()) else EXIT_OK


def cmd_suite(args, out) -> int:
    try:
        primes = tuple(int(x) for x in args.p.split(",") if x)
        cfg = CorpusConfig(seed=args.seed, instance_count=args.count, primes=primes,
                           max_rows=args.max_rows, max_cols=args.max_cols, t_policy=args.t_policy)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc
    report = run_suite(cfg)
    text = render_report(report, args.format)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        if args.format == "json":
            out.write(render_report(report, "table"))
    else:
        out.write(text)
    return EXIT_FALSE if report.failure_count else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="msplit", description="Splitting operations on GF(p)-represented matroids.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(name: str, help: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help)
        sp.add_argument("file")
        return sp

    def which(sp: argparse.ArgumentParser) -> None:
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--split", action="store_true", help="act on M_T")
        g.add_argument("--esplit", action="store_true", help="act on M'_T")

    with_file("circuits", "list circuits (classified when the file has T)")
    for name in ("split", "esplit"):
        sp = with_file(name, f"write the {'element ' if name == 'esplit' else ''}splitting matroid as an instance file")
        sp.add_argument("--out", required=True)
    sp = with_file("bases", "list bases, or predicted bases of M_T and M'_T")
    sp.add_argument("--predicted", action="store_true")
    sp = with_file("rank", "rank of a set of labels")
    sp.add_argument("--set", required=True, help="comma-separated labels")
    which(sp)
    with_file("classify", "classify circuits against T and list the families C0, C1, C2, Cz")
    sp = with_file("connectivity", "test n-connectivity")
    sp.add_argument("--n", type=int, default=2)
    which(sp)
    sp = with_file("eulerian", "find a partition into circuits")
    which(sp)
    with_file("ptdecomp", "find a PT-decomposition")
    with_file("verify", "check every claim on one instance")

    sp = sub.add_parser("suite", help="run the verification suite on fixtures and a random corpus")
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--count", type=int, default=0)
    sp.add_argument("--p", default="2,3,5", help="comma-separated primes")
    sp.add_argument("--max-rows", type=int, default=4)
    sp.add_argument("--max-cols", type=int, default=8)
    sp.add_argument("--t-policy", default="auto", help="auto, all, or sampled:K")
    sp.add_argument("--format", choices=("json", "table"), default="table")
    sp.add_argument("--out")
    return parser


COMMANDS = {
    "circuits": cmd_circuits, "split": cmd_split, "esplit": cmd_split, "bases": cmd_bases,
    "rank": cmd_rank, "classify": cmd_classify, "connectivity": cmd_connectivity,
    "eulerian": cmd_eulerian, "ptdecomp": cmd_ptdecomp, "verify": cmd_verify, "suite": cmd_suite,
}


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except (ValueError, OSError) as exc:
        print(f"msplit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


cmd_dispatch = main

if __name__ == "__main__":
    sys.exit(main())
