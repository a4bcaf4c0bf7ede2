"""Command-line interface: ``reslat <command> ...``.

Exit codes: 0 ok, 1 usage error, 2 parse/validation failure,
3 theorem suite found a counterexample.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .core import ResiduatedLattice, check_identities, classify_lattice, validate
from .enumeration import enumerate_residuated, write_corpus
from .errors import AxiomError, FormatError, NotAFilter, NotProper, ReslatError, SizeOutOfRange
from .filters import all_filters, quotient
from .io import ReportDocument, load_raw, save, serialize
from .nfold import FILTER_FLAGS, classify_filter
from .theorems import failures, implication_diagram, run_theorem_suite

EXIT_USAGE, EXIT_INVALID, EXIT_THEOREM = 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load(path) -> ResiduatedLattice:
    if not Path(path).is_file():
        raise UsageError(f"no such file: {path}")
    raw = load_raw(path)
    try:
        return validate(raw)
    except AxiomError as exc:
        exc.names = raw.names
        raise


def _filter_arg(L, text) -> frozenset[int]:
    names = [t for t in text.replace(" ", "").split(",") if t]
    try:
        return frozenset(L.index(n) for n in names)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None


def _yn(b) -> str:
    return "yes" if b else "no"


def lattice_summary(L: ResiduatedLattice, n_max=None) -> dict:
    c = classify_lattice(L, n_max)
    return {
        "size": L.size,
        "names": list(L.names),
        "mtl": c.is_mtl,
        "bl": c.is_bl,
        "mv": c.is_mv,
        "heyting": c.is_heyting,
        "totally_ordered": c.is_totally_ordered,
        "locally_finite": c.is_locally_finite,
        "stabilization_n": c.stabilization_n,
        "exponent_bound": c.exponent_bound,
        "per_n": {str(n): flags for n, flags in c.per_n.items()},
    }


def cmd_validate(args) -> int:
    L = _load(args.file)
    s = lattice_summary(L)
    report = check_identities(L)
    print(f"{args.file}: valid residuated lattice with {L.size} elements")
    print(f"  elements: {' '.join(L.names)} (bottom {L.names[L.bottom]}, top {L.names[L.top]})")
    for key in ("mtl", "bl", "mv", "heyting", "totally_ordered", "locally_finite"):
        print(f"  {key}: {_yn(s[key])}")
    print(f"  powers stabilize at n={s['stabilization_n']}")
    print(f"  standard identities: {sum(r.holds for r in report.results)}/{len(report.results)} hold")
    return 0


def cmd_filters(args) -> int:
    L = _load(args.file)
    for F in all_filters(L):
        if args.proper and len(F) == L.size:
            continue
        print(L.name_set(F.members))
    return 0


def _matrix(L, fc, n_max) -> list[str]:
    width = max(len(f) for f in FILTER_FLAGS) + 2
    head = "flag".ljust(width) + " ".join(f"n={n}".ljust(6) for n in range(1, n_max + 1))
    rows = [head.rstrip()]
    for flag in FILTER_FLAGS:
        cells = " ".join(str(fc.per_n[n][flag]).lower().ljust(6) for n in range(1, n_max + 1))
        rows.append((flag.ljust(width) + cells).rstrip())
    return rows


def _classification_dict(L, fc) -> dict:
    d = {
        "filter": [L.names[x] for x in sorted(fc.filter.members)],
        "proper": fc.proper,
        "exponent_bound": fc.exponent_bound,
        "per_n": {str(n): flags for n, flags in fc.per_n.items()},
        "methods": {str(n): m for n, m in fc.methods.items()},
        "obstinate_witnesses": {
            str(n): {L.names[x]: m for x, m in sorted(w.items())} for n, w in fc.obstinate_witnesses.items()
        },
    }
    if fc.proper:
        d["maximal"] = fc.maximal
        d["semi_maximal"] = fc.semi_maximal
        d["prime_kinds"] = {k: getattr(fc.primes, k) for k in ("prime1", "prime2", "prime3", "boolean", "boolean2")}
        d["maximal_witnesses"] = {L.names[x]: {"n": n, "f": L.names[f]}
                                  for x, (n, f) in sorted(fc.maximal_witnesses.items())}
    return d


def cmd_classify(args) -> int:
    L = _load(args.file)
    S = _filter_arg(L, args.filter)
    n_max = args.max_n or L.size
    fc = classify_filter(L, S, n_max)
    if args.json:
        doc = ReportDocument(lattice=Path(args.file).stem, digest=L.digest, exponent_bound=L.size,
                             classification=lattice_summary(L, n_max),
                             filters=[_classification_dict(L, fc)])
        sys.stdout.write(doc.to_json())
        return 0
    print(f"filter {L.name_set(S)} (exponent bound {L.size})")
    for row in _matrix(L, fc, n_max):
        print(row)
    if fc.proper:
        p = fc.primes
        print(f"maximal: {_yn(fc.maximal)}  semi-maximal: {_yn(fc.semi_maximal)}  "
              f"prime: {_yn(p.prime1)}/{_yn(p.prime2)}/{_yn(p.prime3)}  "
              f"boolean: {_yn(p.boolean)}/{_yn(p.boolean2)}")
    else:
        print("improper filter: obstinate is false by definition (0 is a member)")
    return 0


def cmd_quotient(args) -> int:
    L = _load(args.file)
    S = _filter_arg(L, args.filter)
    q = quotient(L, S)
    if q.quotient is None:
        print(f"# trivial quotient: {L.name_set(S)} collapses everything into one class", file=sys.stderr)
        return 0
    if args.out:
        save(q.quotient, args.out)
    else:
        classes = ", ".join(L.name_set(c) for c in q.partition)
        sys.stdout.write(f"# classes: {classes}\n" + serialize(q.quotient))
    return 0


def _check_line(r) -> str:
    tag = "PASS" if r.passed else ("ERRATUM" if r.erratum else "FAIL")
    line = f"{tag:8}{r.id} ({r.evaluated} instances)"
    if not r.passed:
        w = r.witness
        where = w.get("filter") or w.get("filters") or ""
        line += f"  witness: filter={where} n={w['n']} {w['detail']} {w['elements']}"
    return line


def cmd_theorems(args) -> int:
    L = _load(args.file)
    label = Path(args.file).stem
    results = run_theorem_suite(L, args.max_n, label)
    bad = failures(results)
    if args.json:
        doc = ReportDocument(lattice=label, digest=L.digest, exponent_bound=L.size,
                             classification=lattice_summary(L, args.max_n),
                             checks=[r.to_dict() for r in results])
        sys.stdout.write(doc.to_json())
    else:
        for r in results:
            print(_check_line(r))
        errata = [r for r in results if not r.passed and r.erratum]
        print(f"{len(results)} checks, {len(bad)} failures, {len(errata)} known errata reproduced")
    return EXIT_THEOREM if bad else 0


def cmd_enumerate(args) -> int:
    corpus = enumerate_residuated(args.size, jobs=args.jobs)

    def summarize(L):
        s = lattice_summary(L)
        return {k: s[k] for k in ("mtl", "bl", "mv", "heyting", "totally_ordered", "locally_finite")}

    write_corpus(corpus, args.out, summarize)
    print(f"wrote {len(corpus)} residuated lattices of size {args.size} to {args.out}")
    return 0


def _read_many(path):
    p = Path(path)
    if p.is_dir():
        files = sorted(p.glob("*.rlat"))
        if not files:
            raise UsageError(f"no .rlat files in {path}")
    elif p.is_file():
        files = [p]
    else:
        raise UsageError(f"no such file or directory: {path}")
    out = []
    for f in files:
        try:
            out.append((f.stem, _load(f)))
        except (FormatError, AxiomError) as exc:
            if len(files) == 1:
                raise
            print(f"reslat: skipping {f.name}: {type(exc).__name__}: {exc}", file=sys.stderr)
    return out


def cmd_diagram(args) -> int:
    corpus = _read_many(args.source)
    D = implication_diagram(corpus, args.n, args.level)
    sys.stdout.write(D.to_dot())
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="reslat", description="Finite residuated lattices and their n-fold filters.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", help="check the axioms and print a summary")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("filters", help="list all filters")
    s.add_argument("file")
    s.add_argument("--proper", action="store_true", help="omit the whole carrier")
    s.set_defaults(func=cmd_filters)

    s = sub.add_parser("classify", help="n-fold classification matrix of one filter")
    s.add_argument("file")
    s.add_argument("--filter", required=True, help="comma-separated element names")
    s.add_argument("--max-n", type=int, default=None)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("quotient", help="emit L/F as a lattice file")
    s.add_argument("file")
    s.add_argument("--filter", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_quotient)

    s = sub.add_parser("theorems", help="run the statement suite")
    s.add_argument("file")
    s.add_argument("--max-n", type=int, default=None)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_theorems)

    s = sub.add_parser("enumerate", help="write all residuated lattices of one size")
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("diagram", help="implication diagram in DOT")
    s.add_argument("source", help="a .rlat file or a directory of them")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--format", choices=["dot"], default="dot")
    s.add_argument("--level", choices=["filter", "lattice"], default="filter")
    s.set_defaults(func=cmd_diagram)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for opt in ("max_n", "n", "jobs"):
        v = getattr(args, opt, None)
        if v is not None and v < 1:
            print(f"reslat: error: --{opt.replace('_', '-')} must be >= 1", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, NotAFilter, NotProper, SizeOutOfRange) as exc:
        print(f"reslat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, AxiomError) as exc:
        print(f"reslat: invalid lattice: {type(exc).__name__}: {exc}", file=sys.stderr)
        witness = getattr(exc, "witness", None)
        if witness:
            names = getattr(exc, "names", None)
            shown = [names[i] for i in witness] if names else [str(i) for i in witness]
            print("witness: " + " ".join(shown), file=sys.stderr)
        return EXIT_INVALID
    except ReslatError as exc:
        print(f"reslat: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
