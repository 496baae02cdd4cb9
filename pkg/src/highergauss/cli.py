"""Command-line front end.

Exit codes: 0 when every check passes, 1 when any check fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
from math import gcd
from pathlib import Path

from . import fixtures, reproduce
from .constructors import (
    FiniteGroup,
    IllFormedQuadraticForm,
    InternalInconsistency,
    InvalidGroup,
    LieDatum,
    MetricGroup,
    NotIsotropic,
    UnsupportedType,
    abelian_double,
    builtin_group,
    condense_pointed,
    double_gauss_sum,
    kac_peterson,
    parse_root,
    pointed,
)
from .cyclo import NotCoprime, RootOfUnity
from .invariants import (
    Verdict,
    gauss_report,
    verify_anomaly_galois,
    verify_center,
    verify_condensation,
    verify_first_second,
    verify_galois_theorem,
)
from .moddata import (
    MissingSMatrix,
    NotModular,
    PremodularData,
    deligne_product,
    dumps,
    is_modular,
    loads,
    reverse,
    t_order,
    validate,
    verlinde_fusion,
)
from .witt import DeligneProduct, NotPseudounitary, signature, witt_obstruction

INPUT_ERRORS = (
    ValueError,
    KeyError,
    FileNotFoundError,
    json.JSONDecodeError,
    IllFormedQuadraticForm,
    InvalidGroup,
    UnsupportedType,
    NotIsotropic,
    NotModular,
    MissingSMatrix,
    NotCoprime,
    NotPseudounitary,
    reproduce.UnknownExample,
)


class ChecksumMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# catalog


class Catalog:
    """A directory of JSON files plus ``index.json`` with checksums."""

    def __init__(self, root: str | Path):
        self.root = Path(root)

    @property
    def index_path(self) -> Path:
        return self.root / "index.json"

    def index(self) -> dict:
        if self.index_path.exists():
            return json.loads(self.index_path.read_text(encoding="utf-8"))
        return {}

    def write(self, filename: str, text: str, *, name: str, provenance: str, pseudounitary: bool, kind: str) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        path = self.root / filename
        path.write_text(text, encoding="utf-8")
        idx = self.index()
        idx[filename] = {
            "name": name,
            "file": filename,
            "kind": kind,
            "provenance": provenance,
            "pseudounitary": pseudounitary,
            "checksum": hashlib.sha256(text.encode("utf-8")).hexdigest(),
        }
        self.index_path.write_text(json.dumps(idx, indent=1, sort_keys=True) + "\n", encoding="utf-8")
        return path

    def resolve(self, ref: str) -> Path:
        p = Path(ref)
        if p.exists():
            return p
        for cand in (self.root / ref, self.root / f"{ref}.json"):
            if cand.exists():
                return cand
        raise FileNotFoundError(ref)

    def verify(self, path: Path) -> None:
        try:
            rel = path.resolve().relative_to(self.root.resolve())
        except ValueError:
            return
        entry = self.index().get(str(rel))
        if entry is None:
            return
        digest = hashlib.sha256(path.read_bytes()).hexdigest()
        if digest != entry["checksum"]:
            raise ChecksumMismatch(f"{path} does not match its catalog checksum")

    def load(self, ref: str) -> PremodularData:
        path = self.resolve(ref)
        self.verify(path)
        return loads(path.read_text(encoding="utf-8"))


def slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9]+", "_", text).strip("_") or "category"


# ---------------------------------------------------------------------------
# parsing helpers


def parse_ints(text: str) -> list[int]:
    return [int(t) for t in re.split(r"[,\s]+", text.strip().strip("()[]")) if t]


def parse_elements(text: str) -> list[tuple[int, ...]]:
    """``"(1,0)"`` or ``"(1,0);(0,2)"`` or ``"1"``."""
    out = []
    for part in text.split(";"):
        part = part.strip()
        if part:
            out.append(tuple(parse_ints(part)))
    return out


def parse_range(text: str) -> range:
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if not m:
        raise ValueError(f"bad range {text!r}, expected A..B")
    return range(int(m.group(1)), int(m.group(2)) + 1)


def parse_b(items: list[str] | None) -> dict:
    out = {}
    for item in items or []:
        pair, value = item.split(":", 1)
        i, j = parse_ints(pair)
        out[(i, j)] = parse_root(value)
    return out


def load_group(ref: str) -> FiniteGroup:
    try:
        return builtin_group(ref)
    except KeyError:
        pass
    obj = json.loads(Path(ref).read_text(encoding="utf-8"))
    if "table" in obj:
        return FiniteGroup.from_table(obj["table"], obj.get("identity"), obj.get("name", ""))
    if "generators" in obj:
        return FiniteGroup.from_permutations(obj["generators"], obj.get("name", ""))
    raise ValueError("group file needs 'table' or 'generators'")


def load_metric_group(ref: str) -> MetricGroup:
    return MetricGroup.from_json(json.loads(Path(ref).read_text(encoding="utf-8")))


# ---------------------------------------------------------------------------
# output


def emit(args, text: str, payload) -> None:
    if args.json:
        print(json.dumps(payload, indent=1, ensure_ascii=False))
    else:
        print(text)


def verdict_lines(verdicts: list[Verdict]) -> str:
    lines = []
    for v in verdicts:
        lines.append(f"{v.status:4}  {v.name:13} {v.subject}")
        for c in v.failures():
            lines.append(f"      failed: {c.label}: {c.to_json()['lhs']} != {c.to_json()['rhs']}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# commands


def cmd_build(args, cat: Catalog) -> int:
    kind = args.kind
    if kind == "pointed":
        orders = parse_ints(args.orders)
        qs = [parse_root(t) for t in args.q.split(",")] if args.q else [RootOfUnity(1, 0)] * len(orders)
        mg = MetricGroup(tuple(orders), tuple(qs), parse_b(args.b))
        data = pointed(mg, name=args.name)
        default = "pointed_" + "x".join(map(str, orders)) + "_" + slug(args.q or "trivial")
    elif kind == "metric":
        orders = parse_ints(args.orders)
        qs = [parse_root(t) for t in args.q.split(",")] if args.q else [RootOfUnity(1, 0)] * len(orders)
        mg = MetricGroup(tuple(orders), tuple(qs), parse_b(args.b))
        text = json.dumps(mg.to_json(), indent=1) + "\n"
        fname = args.out or f"{args.name or 'metric_' + slug(mg.describe())}.json"
        path = cat.write(fname, text, name=args.name or mg.describe(), provenance=mg.describe(),
                         pseudounitary=True, kind="metric-group")
        print(path)
        return 0
    elif kind == "kac-peterson":
        data = kac_peterson(LieDatum(args.type, args.level))
        if args.name:
            data.name = args.name
        default = f"{args.type}_{args.level}"
    elif kind == "double":
        if args.orders:
            data = abelian_double(parse_ints(args.orders))
            default = "double_" + "x".join(map(str, parse_ints(args.orders)))
        else:
            g = load_group(args.group)
            name = args.name or f"Z(Vec_{g.name or 'G'})"
            payload = {
                "name": name,
                "kind": "double-counting",
                "group": g.to_json(),
                "tau": {str(n): double_gauss_sum(g, n) for n in range(1, 2 * g.order + 1)},
                "note": "no S-matrix; Gauss sums from the counting formula |G| * #{x : x^n = e}",
            }
            fname = args.out or f"{slug(name)}.json"
            path = cat.write(fname, json.dumps(payload, indent=1) + "\n", name=name,
                             provenance=f"double({g.name or args.group})", pseudounitary=True, kind="double-counting")
            print(path)
            return 0
    elif kind == "fixture":
        if args.fixture != "ds3":
            raise ValueError(f"unknown category fixture {args.fixture!r}")
        data = fixtures.ds3()
        default = "ds3"
    else:
        raise ValueError(kind)
    fname = args.out or f"{slug(args.name) if args.name else default}.json"
    path = cat.write(fname, dumps(data), name=data.name, provenance=data.provenance,
                     pseudounitary=data.pseudounitary, kind="category")
    print(path)
    return 0


def _n_values(args, data: PremodularData) -> list[int]:
    N = t_order(data)
    rng = parse_range(args.n_range) if args.n_range else range(1, N + 1)
    if getattr(args, "allow_noncoprime", False):
        return list(rng)
    return [n for n in rng if gcd(n, N) == 1]


def cmd_invariants(args, cat: Catalog) -> int:
    data = cat.load(args.category)
    reports = [gauss_report(data, n, args.precision_bits) for n in _n_values(args, data)]
    lines = [f"{data.name}  rank={data.rank}  ord(T)={t_order(data)}", f"{'n':>4}  {'xi_n':24} tau_n"]
    for r in reports:
        lines.append(f"{r.n:>4}  {str(r.xi):24} {r.tau}")
    emit(args, "\n".join(lines), [r.to_json() for r in reports])
    return 0


def cmd_verify(args, cat: Catalog) -> int:
    suite = args.suite
    verdicts: list[Verdict] = []
    if suite == "condense":
        if not args.metric_group or not args.H:
            raise ValueError("condense suite needs --metric-group and --H")
        mg = load_metric_group(str(cat.resolve(args.metric_group)))
        verdicts.append(verify_condensation(mg, parse_elements(args.H)))
    else:
        if not args.category:
            raise ValueError("--category is required")
        data = cat.load(args.category)
        if suite == "first-second":
            verdicts.append(verify_first_second(data))
        elif suite == "center":
            verdicts.append(verify_center(data))
        else:
            if data.s_matrix is None or not is_modular(data):
                raise NotModular(data.name)
            args.allow_noncoprime = False
            for n in _n_values(args, data):
                if suite == "galois":
                    verdicts.extend(verify_galois_theorem(data, a, n) for a in (1, 2, 3))
                else:
                    verdicts.append(verify_anomaly_galois(data, n))
    ok = all(v.passed for v in verdicts)
    emit(args, verdict_lines(verdicts), {"suite": suite, "verdict": "Pass" if ok else "Fail",
                                         "results": [v.to_json() for v in verdicts]})
    return 0 if ok else 1


def cmd_condense(args, cat: Catalog) -> int:
    mg = load_metric_group(str(cat.resolve(args.metric_group)))
    out = condense_pointed(mg, parse_elements(args.H))
    text = json.dumps(out.to_json(), indent=1) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    emit(args, f"H^perp/H: {out.describe()}", out.to_json())
    return 0


def _write_category(args, cat: Catalog, data: PremodularData) -> int:
    text = dumps(data)
    if args.out:
        path = cat.write(args.out, text, name=data.name, provenance=data.provenance,
                         pseudounitary=data.pseudounitary, kind="category")
        print(path)
    else:
        sys.stdout.write(text)
    return 0


def cmd_product(args, cat: Catalog) -> int:
    return _write_category(args, cat, deligne_product(cat.load(args.a), cat.load(args.b)))


def cmd_rev(args, cat: Catalog) -> int:
    return _write_category(args, cat, reverse(cat.load(args.a)))


def cmd_fusion(args, cat: Catalog) -> int:
    data = cat.load(args.category)
    f = verlinde_fusion(data)
    lines, payload = [], []
    for i in range(data.rank):
        for j in range(i, data.rank):
            prod = f.product(i, j)
            terms = " + ".join((f"{c}*" if c > 1 else "") + data.labels[k] for k, c in prod.items())
            lines.append(f"{data.labels[i]} x {data.labels[j]} = {terms}")
            payload.append({"i": data.labels[i], "j": data.labels[j],
                            "product": {data.labels[k]: c for k, c in prod.items()}})
    emit(args, "\n".join(lines), payload)
    return 0


def _subject(cat: Catalog, ref: str, power: int):
    return DeligneProduct.of(cat.load(ref), power)


def cmd_witt_compare(args, cat: Catalog) -> int:
    v = witt_obstruction(_subject(cat, args.a, args.power_a), _subject(cat, args.b, args.power_b))
    text = f"{v.kind}" + (f" at n={v.n}: {v.xi_a} vs {v.xi_b}" if v.n else "") + f"\n{v.note}"
    emit(args, text, v.to_json())
    return 0


def cmd_witt_signature(args, cat: Catalog) -> int:
    sig = signature(_subject(cat, args.a, args.power))
    text = "\n".join(f"xi_{n} = {r}" for n, r in sorted(sig.entries.items()))
    # the signature JSON is the documented output format
    print(json.dumps(sig.to_json(), indent=1) if args.json else text)
    return 0


def cmd_reproduce(args, cat: Catalog) -> int:
    ids = list(reproduce.EXAMPLES) if args.id == "all" else [args.id]
    ok = True
    payload, lines = {}, []
    for ex in ids:
        rows = reproduce.run(ex)
        payload[ex] = [r.to_json() for r in rows]
        for r in rows:
            ok = ok and r.ok
            lines.append(f"{'ok  ' if r.ok else 'FAIL'}  {ex:16} {r.label}: expected {r.expected}, computed {r.computed}")
    emit(args, "\n".join(lines), payload)
    return 0 if ok else 1


def cmd_validate(args, cat: Catalog) -> int:
    results = {}
    if args.files:
        targets = [cat.resolve(f) for f in args.files]
    else:
        idx = cat.index()
        targets = [cat.root / e["file"] for e in idx.values() if e.get("kind") == "category"]
    ok = True
    for path in targets:
        problems = []
        try:
            cat.verify(path)
        except ChecksumMismatch as exc:
            problems.append(str(exc))
        text = path.read_text(encoding="utf-8")
        data = loads(text)
        problems += [str(d) for d in validate(data)]
        if dumps(data) != text:
            problems.append("round trip is not byte-identical")
        results[str(path)] = problems
        ok = ok and not problems
    lines = [f"{'ok  ' if not p else 'FAIL'}  {k}" + (f": {', '.join(p)}" if p else "") for k, p in results.items()]
    emit(args, "\n".join(lines) or "nothing to validate", results)
    return 0 if ok else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def global_flags(parser, sub=False):
        # on subcommands the defaults are suppressed so a flag given before the subcommand survives
        dflt = (lambda v: argparse.SUPPRESS) if sub else (lambda v: v)
        parser.add_argument("--precision-bits", type=int, default=dflt(128),
                            help="starting precision for numeric disambiguation")
        parser.add_argument("--json", action="store_true", default=dflt(False), help="machine-readable output")
        parser.add_argument("--catalog", default=dflt("./catalog"), help="catalog directory")

    common = argparse.ArgumentParser(add_help=False)
    global_flags(common, sub=True)

    p = argparse.ArgumentParser(prog="highergauss", description="Higher Gauss sums and central charges of modular data.")
    global_flags(p)
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="construct a category and store it in the catalog")
    b.add_argument("kind", choices=["pointed", "metric", "kac-peterson", "double", "fixture"])
    b.add_argument("--orders", help="cyclic orders, e.g. 2,2")
    b.add_argument("--q", help="q on generators, e.g. zeta5^1 or 1,-1")
    b.add_argument("--b", action="append", help="b on a generator pair, e.g. 0,1:-1")
    b.add_argument("--type", choices=["A1", "A2", "B2", "G2"])
    b.add_argument("--level", type=int)
    b.add_argument("--group", help="S3, D8, Q8, Zn, or a group JSON file")
    b.add_argument("--fixture", default="ds3")
    b.add_argument("--name")
    b.add_argument("--out", help="file name inside the catalog")
    b.set_defaults(func=cmd_build)

    i = sub.add_parser("invariants", parents=[common], help="table of tau_n and xi_n")
    i.add_argument("--category", required=True)
    i.add_argument("--n-range")
    i.add_argument("--allow-noncoprime", action="store_true")
    i.set_defaults(func=cmd_invariants)

    v = sub.add_parser("verify", parents=[common], help="exact theorem checks")
    v.add_argument("--suite", required=True, choices=["galois", "anomaly", "center", "condense", "first-second"])
    v.add_argument("--category")
    v.add_argument("--metric-group")
    v.add_argument("--H", help='subgroup generators, e.g. "(1,0)" or "(2,0);(0,2)"')
    v.add_argument("--n-range")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("condense", parents=[common], help="H^perp/H for an isotropic subgroup")
    c.add_argument("--metric-group", required=True)
    c.add_argument("--H", required=True)
    c.add_argument("--out")
    c.set_defaults(func=cmd_condense)

    pr = sub.add_parser("product", parents=[common], help="Deligne product of two categories")
    pr.add_argument("a")
    pr.add_argument("b")
    pr.add_argument("--out")
    pr.set_defaults(func=cmd_product)

    r = sub.add_parser("rev", parents=[common], help="reverse category")
    r.add_argument("a")
    r.add_argument("--out")
    r.set_defaults(func=cmd_rev)

    f = sub.add_parser("fusion", parents=[common], help="Verlinde fusion rules")
    f.add_argument("category")
    f.set_defaults(func=cmd_fusion)

    wc = sub.add_parser("witt-compare", parents=[common], help="compare higher central charges")
    wc.add_argument("a")
    wc.add_argument("b")
    wc.add_argument("--power-a", type=int, default=1)
    wc.add_argument("--power-b", type=int, default=1)
    wc.set_defaults(func=cmd_witt_compare)

    ws = sub.add_parser("witt-signature", parents=[common], help="xi_n for all n coprime to ord(T)")
    ws.add_argument("a")
    ws.add_argument("--power", type=int, default=1)
    ws.set_defaults(func=cmd_witt_signature)

    rp = sub.add_parser("reproduce", parents=[common], help="rerun a published example")
    rp.add_argument("id", choices=sorted(reproduce.EXAMPLES) + ["all"])
    rp.set_defaults(func=cmd_reproduce)

    va = sub.add_parser("validate", parents=[common], help="validate category files and catalog checksums")
    va.add_argument("files", nargs="*")
    va.set_defaults(func=cmd_validate)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    cat = Catalog(args.catalog)
    try:
        return args.func(args, cat)
    except InternalInconsistency as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
