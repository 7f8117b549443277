"""Command line entry point: ``ratcurves <command> ...``.

Exit codes: 0 success, 1 a verification failed, 2 unreadable input,
3 a precondition was violated, 4 an internal invariant broke.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from collections import Counter

from . import construct as C
from .curve import CurveMap, is_basepoint_free, is_unramified
from .errors import InvariantError, ParseError, PreconditionError
from .field import FieldCtx
from .strata import (
    all_conics_codim,
    analyze_curve,
    dim_mor,
    dims_two_conics,
    expected_codim_dk,
    h1_end,
    stratum_report,
)
from .syzygy import SplittingType, normal_splitting
from .verify import SCHEMA_VERSION, SCOPES, run_checks

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_PRECONDITION, EXIT_INVARIANT = 0, 1, 2, 3, 4


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


class Output:
    """Collects records and renders them as NDJSON or aligned text."""

    def __init__(self, args):
        self.emit = args.emit
        self.path = args.out
        self.lines: list[str] = []

    def record(self, kind: str, payload: dict, text: str | None = None):
        if self.emit == "records":
            rec = {"schema_version": SCHEMA_VERSION, "kind": kind, **payload}
            self.lines.append(json.dumps(rec, sort_keys=True))
        elif text is not None:
            self.lines.append(text)

    def text(self, line: str):
        if self.emit == "text":
            self.lines.append(line)

    def flush(self):
        body = "\n".join(self.lines) + ("\n" if self.lines else "")
        if self.path:
            with open(self.path, "w") as fh:
                fh.write(body)
        else:
            sys.stdout.write(body)


def _field(args) -> FieldCtx:
    if args.field == "q":
        return FieldCtx.rationals()
    return FieldCtx.prime(args.modulus) if args.modulus else FieldCtx.prime()


def _load_curve(path: str) -> CurveMap:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    return CurveMap.loads(text)


def _table(rows, header):
    widths = [max(len(str(r[i])) for r in [header, *rows]) for i in range(len(header))]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    return [fmt.format(*header), *(fmt.format(*map(str, r)) for r in rows)]


# -- commands -------------------------------------------------------------------

def cmd_analyze(args, out: Output) -> int:
    f = _load_curve(args.curve)
    a = analyze_curve(f)
    out.record("analysis", a.to_dict())
    out.text(f"curve: n={f.n}, e={f.e}, field={f.field}")
    out.text(f"basepoint-free: {a.basepoint_free}  nondegenerate: {a.nondegenerate}  unramified: {a.unramified}")
    if a.error:
        out.text(f"not analyzed: {a.error}")
        return EXIT_PRECONDITION
    out.text(f"normal splitting: {list(a.normal.twists)}  ({a.normal.summands()})")
    out.text(f"tangent splitting: {list(a.tangent.twists)}")
    out.text("relation dimensions r(b): " + ", ".join(f"{b}:{r}" for b, r in sorted(a.relation_dims.items())))
    out.text("minimal generators:")
    for g in a.generators:
        out.text(f"  degree {g.b}: {g}")
    if a.conic_kinds:
        out.text("conic relations: " + ", ".join(k.value for k in a.conic_kinds))
        for i, row in enumerate(a.plane_matrix):
            out.text(f"  planes[{i}]: " + " ".join((x.value if x else "-") for x in row))
    out.text("tangent pairs: " + (", ".join(f"{i}-{j}" for i, j in a.tangency_pairs) or "none"))
    return EXIT_OK


def _build(args, F: FieldCtx):
    """Dispatch a builder; returns ``(curve, declared splitting, provenance)``."""
    b = args.builder
    seed = args.seed
    if b == "sacchiero":
        f = C.sacchiero(args.n, args.e, args.b, seed=seed, field=F)
        return f, SplittingType(args.b, args.e), C.provenance(b, n=args.n, e=args.e, b=args.b, seed=seed)
    if b == "splitting":
        f = C.curve_with_splitting(args.b, seed=seed, field=F)
        return f, SplittingType(args.b, f.e), C.provenance(b, b=args.b, seed=seed)
    if b == "delta":
        f, st = C.from_delta_sequence(args.n, args.e, args.deltas, seed=seed, field=F)
        return f, st, C.provenance(b, n=args.n, e=args.e, deltas=args.deltas, seed=seed)
    if b == "monomial":
        return (C.monomial_curve(args.k, F), C.monomial_splitting(args.k, ramified_ok=True),
                C.provenance(b, k=args.k))
    if b == "conics":
        ds = C.delta_seq_conics(args.n, args.e, args.k, args.j)
        f, st = C.from_delta_sequence(args.n, args.e, ds, seed=seed, field=F)
        return f, st, C.provenance(b, n=args.n, e=args.e, k=args.k, j=args.j, deltas=list(ds))
    if b == "delta-ddk":
        ds = C.delta_seq_ddk(args.n, args.e, args.d, args.k, args.j)
        f, st = C.from_delta_sequence(args.n, args.e, ds, seed=seed, field=F)
        return f, st, C.provenance(b, n=args.n, e=args.e, d=args.d, k=args.k, j=args.j, deltas=list(ds))
    if b == "mixed":
        f, _ = C.witness_mixed(args.n, args.e, args.d1, args.d2, args.variant, seed=seed, field=F)
        return f, C.mixed_splitting(args.n, args.e, args.d1, args.d2), C.provenance(
            b, n=args.n, e=args.e, d1=args.d1, d2=args.d2, variant=args.variant, seed=seed)
    raise PreconditionError(f"unknown builder {b!r}")


def cmd_construct(args, out: Output) -> int:
    f, declared, prov = _build(args, _field(args))
    got = normal_splitting(f)
    doc = {**f.to_dict(), "provenance": prov, "splitting": got.to_dict()}
    if got != declared:
        sys.stderr.write(f"splitting {list(got.twists)} differs from declared {list(declared.twists)}\n")
        return EXIT_FAIL
    if out.emit == "records":
        out.record("curve", doc)
    else:
        out.lines.append(json.dumps(doc, indent=1))
    return EXIT_OK


def cmd_expected(args, out: Output) -> int:
    n, e = args.n, args.e
    if args.b:
        st = SplittingType(args.b, e)
        codim, source = h1_end(st), "h1(End)"
    elif args.d is not None and args.k is not None:
        st = C.b_spec_dk(n, e, args.d, args.k)
        codim, source = expected_codim_dk(n, e, args.d, args.k), "closed form"
    else:
        raise PreconditionError("give either --b or both --d and --k")
    if len(st.twists) != n - 1 or st.degree != 2 * e - 2:
        raise PreconditionError(f"twists {list(st.twists)} are not a normal splitting for n={n}, e={e}")
    payload = {"n": n, "e": e, "splitting": st.to_dict(), "dim_mor": dim_mor(n, e),
               "expected_codim": codim, "expected_dim": dim_mor(n, e) - codim}
    rows = [("dim Mor", dim_mor(n, e)), (f"expected codim ({source})", codim),
            ("expected dim", dim_mor(n, e) - codim)]
    if list(st.twists[:2]) == [2, 2] and (n - 1 < 3 or st.twists[2] > 2) and n >= 5 and e >= 2 * n - 3:
        g, pt = dims_two_conics(n, e)
        payload["dims_two_conics"] = {"G": g, "PT": pt}
        rows += [("dim G", g), ("dim PT", pt)]
    if list(st.twists[:-1]) == [2] * (n - 2):
        c = all_conics_codim(n, e)
        payload["all_conics"] = {"codim": c, "negative_expected_dim": c >= (e + 1) * (n + 1)}
        rows.append(("codim >= (e+1)(n+1)", c >= (e + 1) * (n + 1)))
    out.record("expected", payload)
    out.text(f"splitting {list(st.twists)} ({st.summands()})")
    for line in _table(rows, ("quantity", "value")):
        out.text(line)
    return EXIT_OK


WITNESS_SETS = ("alzati-re", "p5", "ddk", "mixed", "conics")


def cmd_witness(args, out: Output) -> int:
    F = _field(args)
    name = args.name
    if name in ("alzati-re", "p5", "conics"):
        n, e, k = {"alzati-re": (8, 11, 3), "p5": (5, 7, 2)}.get(name, (args.n, args.e, args.k))
        curves, labels = [], []
        for j in range(1, k + 1):
            try:
                ds = C.delta_seq_conics(n, e, k, j)
            except PreconditionError:
                continue
            curves.append(C.from_delta_sequence(n, e, ds, seed=args.seed, field=F)[0])
            labels.append(f"chain_j={j}")
        spec = C.b_spec_dk(n, e, 2, k)
    elif name == "ddk":
        n, e, d, k = 19, 41, 3, 6
        spec = C.b_spec_dk(n, e, d, k)
        curves = [C.from_delta_sequence(n, e, C.delta_seq_ddk(n, e, d, k, 2), seed=args.seed, field=F)[0]]
        labels = ["j=2"]
    elif name == "mixed":
        n, d1, d2 = 5, 2, 3
        e = (n + 1) * (d1 + d2 + 2) - d1
        spec = C.mixed_splitting(n, e, d1, d2)
        curves = [C.witness_mixed(n, e, d1, d2, v, seed=args.seed, field=F)[0] for v in (C.CHAINED, C.SEPARATED)]
        labels = [C.CHAINED, C.SEPARATED]
    else:
        raise PreconditionError(f"unknown witness set {name!r}")
    rep = stratum_report(n, e, spec, curves, labels)
    out.record("stratum", rep.to_dict())
    out.text(f"splitting {list(spec.twists)} ({spec.summands()}) in P^{n}, degree {e}")
    out.text(f"dim Mor {rep.dim_mor}, expected codim {rep.expected_codim}, expected dim {rep.expected_dim}")
    rows = [(w["id"], w["verified"], w.get("tangent_conic_pairs", "-"),
             ",".join(sorted({x for r in w.get("plane_matrix", []) for x in r if x})) or "-")
            for w in rep.witnesses]
    for line in _table(rows, ("witness", "verified", "tangent conic pairs", "plane meetings")):
        out.text(line)
    return EXIT_OK if all(w["verified"] for w in rep.witnesses) else EXIT_FAIL


def cmd_verify_paper(args, out: Output) -> int:
    results = run_checks(args.scope, corrupt=args.corrupt, seed=args.seed)
    for r in results:
        out.record("check", {k: v for k, v in r.to_record().items() if k not in ("schema_version", "kind")},
                   f"{r.line()}  [{r.seconds:.1f}s]")
    failed = sum(not r.passed for r in results)
    out.text(f"{len(results) - failed}/{len(results)} checks passed")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_sample(args, out: Output) -> int:
    F = _field(args)
    if not F.is_prime:
        raise PreconditionError("sampling needs a prime field (--field fp)")
    if args.e < args.n:
        raise PreconditionError(f"need e >= n, got e={args.e}, n={args.n}")
    rng = random.Random(args.seed)
    counts = Counter()
    skipped = 0
    for _ in range(args.count):
        f = C.random_curve(args.n, args.e, rng, F)
        if not is_basepoint_free(f) or not is_unramified(f):
            skipped += 1
            continue
        counts[normal_splitting(f).twists] += 1
    total = sum(counts.values())
    balanced = sum(c for t, c in counts.items() if t[-1] - t[0] <= 1)
    out.record("sample", {"n": args.n, "e": args.e, "count": args.count, "skipped": skipped,
                          "frequencies": [{"twists": list(t), "count": c} for t, c in sorted(counts.items())],
                          "balanced_fraction": balanced / total if total else None})
    rows = [(",".join(map(str, t)), c) for t, c in sorted(counts.items())]
    for line in _table(rows, ("twists", "count")) if rows else []:
        out.text(line)
    out.text(f"{total} unramified samples, {skipped} skipped"
             + (f", {balanced / total:.1%} balanced" if total else ""))
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "construct": cmd_construct,
    "expected": cmd_expected,
    "witness": cmd_witness,
    "verify-paper": cmd_verify_paper,
    "sample": cmd_sample,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", choices=("q", "fp"), default="fp", help="coefficient field (default fp)")
    common.add_argument("--modulus", type=int, default=None, help="prime for --field fp (default 2^31-1)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--emit", choices=("text", "records"), default="text")
    common.add_argument("--out", default=None, help="write output here instead of stdout")

    p = argparse.ArgumentParser(prog="ratcurves", description="Splitting types of rational curves in P^n.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="flags, splittings and relations of a curve file")
    a.add_argument("curve")

    c = sub.add_parser("construct", parents=[common], help="build a witness curve")
    c.add_argument("builder", choices=("sacchiero", "splitting", "delta", "monomial", "conics", "delta-ddk", "mixed"))
    c.add_argument("--n", type=int)
    c.add_argument("--e", type=int)
    c.add_argument("--b", type=_int_list, help="twists, comma separated")
    c.add_argument("--deltas", type=_int_list)
    c.add_argument("--k", type=_int_list, help="exponents (monomial) or a single count")
    c.add_argument("--j", type=int)
    c.add_argument("--d", type=int)
    c.add_argument("--d1", type=int)
    c.add_argument("--d2", type=int)
    c.add_argument("--variant", choices=(C.CHAINED, C.SEPARATED), default=C.CHAINED)

    x = sub.add_parser("expected", parents=[common], help="expected codimension and dimension")
    x.add_argument("--n", type=int, required=True)
    x.add_argument("--e", type=int, required=True)
    x.add_argument("--b", type=_int_list)
    x.add_argument("--d", type=int)
    x.add_argument("--k", type=int)

    w = sub.add_parser("witness", parents=[common], help="stratum report for a named witness set")
    w.add_argument("name", choices=WITNESS_SETS)
    w.add_argument("--n", type=int)
    w.add_argument("--e", type=int)
    w.add_argument("--k", type=int)

    v = sub.add_parser("verify-paper", parents=[common], help="run the verification suite")
    v.add_argument("--scope", choices=("all", *SCOPES.values()), default="all")
    v.add_argument("--corrupt", action="store_true", help="perturb every witness (negative control)")

    s = sub.add_parser("sample", parents=[common], help="splitting frequencies of random curves")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--e", type=int, required=True)
    s.add_argument("--count", type=int, default=200)
    return p


def _normalize(args):
    """Builder arguments that accept one integer or a list."""
    if args.command == "construct":
        needed = {
            "sacchiero": ("n", "e", "b"), "splitting": ("b",), "delta": ("n", "e", "deltas"),
            "monomial": ("k",), "conics": ("n", "e", "k", "j"), "delta-ddk": ("n", "e", "d", "k", "j"),
            "mixed": ("n", "e", "d1", "d2"),
        }[args.builder]
        missing = [f"--{m}" for m in needed if getattr(args, m) is None]
        if missing:
            raise ParseError(f"builder {args.builder} needs {', '.join(missing)}")
        if args.builder in ("conics", "delta-ddk"):
            if len(args.k) != 1:
                raise ParseError("--k: expected a single integer")
            args.k = args.k[0]
    if args.command == "witness" and args.name == "conics":
        if None in (args.n, args.e, args.k):
            raise ParseError("witness conics needs --n, --e and --k")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args)
    try:
        _normalize(args)
        if args.field == "fp" and args.modulus is not None:
            FieldCtx.prime(args.modulus)
        code = COMMANDS[args.command](args, out)
    except ParseError as exc:
        sys.stderr.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except PreconditionError as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_PRECONDITION
    except InvariantError as exc:
        sys.stderr.write(f"invariant breach, {type(exc).__name__}: {exc}\n")
        return EXIT_INVARIANT
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
