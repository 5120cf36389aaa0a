"""Command-line front end: ``beltlab <subcommand> ...``.

Exit codes: 0 on success, 2 for invalid input, 3 when a verification that
should hold by theory fails (an invariant breach).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Sequence

from beltlab import annulus, labelling
from beltlab.belt import BeltState, detect_period, evolve, random_values
from beltlab.dynkin import DynkinSpec, build_diagram, coxeter_number, parse_product, product_of
from beltlab.errors import AffineUnsupportedError, BeltLabError, TooLargeError
from beltlab.quiver import Quiver, Seed, parse_rational, quiver_from_json, quiver_to_json
from beltlab.recurrence import RationalSequence, minimal_order

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_BREACH = 3

DEFAULT_CENSUS = ("A2xA2", "A3xA1~", "A1~xA1~")


class InvariantBreach(Exception):
    """A check that theory guarantees came out false."""


# ------------------------------------------------------------ input helpers


def parse_values_spec(text: str) -> int | None:
    """``all-ones`` gives None, ``random:SEED`` gives the seed."""
    if text == "all-ones":
        return None
    m = re.fullmatch(r"random:(\d+)", text)
    if not m:
        raise ValueError(f"--values must be all-ones or random:SEED, got {text!r}")
    return int(m.group(1))


def load_quiver(source: str) -> Quiver:
    """A JSON file path, or a product spec such as ``A3xA1~``."""
    path = Path(source)
    if path.suffix == ".json" or path.exists():
        if not path.exists():
            raise ValueError(f"quiver file {source} does not exist")
        return quiver_from_json(json.loads(path.read_text()))
    left, right = parse_product(source)
    return product_of(left, right)


def initial_state(q: Quiver, values: str) -> BeltState:
    seed = parse_values_spec(values)
    if seed is None:
        return BeltState.start(Seed.ones(q))
    return BeltState.start(Seed(q, random_values(q.n, random.Random(seed))))


def read_trace_csv(text: str) -> dict[int, RationalSequence]:
    rows: dict[int, list[tuple[int, Fraction]]] = {}
    for rec in csv.DictReader(io.StringIO(text)):
        rows.setdefault(int(rec["vertex"]), []).append((int(rec["time"]), parse_rational(rec["value"])))
    out = {}
    for z, pts in sorted(rows.items()):
        pts.sort()
        times = [t for t, _ in pts]
        if times != list(range(times[0], times[0] + len(times))):
            raise ValueError(f"trace for vertex {z} has gaps")
        out[z] = RationalSequence(tuple(v for _, v in pts), times[0])
    return out


def annulus_bound(q: Quiver, z: int) -> int | None:
    """n * C(m+1, j) when ``q`` is a box product A_m x A^(1)_{2n-1} (either order)."""
    if q.box is None or q.factors is None:
        return None
    specs = [DynkinSpec.parse(name) for name in q.box]
    for side, (fin, aff) in enumerate((specs, specs[::-1])):
        if fin.family == "A" and aff.family == "A_affine" and aff.rank % 2 == 1:
            m, n = fin.rank, (aff.rank + 1) // 2
            pos = q.factors[z].left if side == 0 else q.factors[z].right
            j = min(pos + 1, m - pos)
            return n * comb(m + 1, j)
    return None


# ------------------------------------------------------------ output helpers


def to_csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({c: r.get(c, "") for c in columns})
    return buf.getvalue()


def emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


# ------------------------------------------------------------ census


def growth_flag(values: Sequence[Fraction], threshold: float = 0.5) -> bool:
    """Second differences of log2|value| stay above ``threshold`` over the last half.

    Orbits of linear recurrences have asymptotically linear log growth, so
    their second differences tend to zero.
    """
    logs = [math.log2(abs(v.numerator)) - math.log2(v.denominator) for v in values if v != 0]
    second = [logs[t + 1] - 2 * logs[t] + logs[t - 1] for t in range(1, len(logs) - 1)]
    tail = second[len(second) // 2:]
    return bool(tail) and all(d > threshold for d in tail)


def census_row(spec: str, steps: int, k_max: int, values: str = "all-ones") -> dict:
    row: dict = {"spec": spec}
    try:
        q = load_quiver(spec)
        state = initial_state(q, values)
        try:
            result = labelling.classify(labelling.LabellingProblem(q))
            row["classification"] = result.classification.value
        except TooLargeError as exc:
            row["classification"] = f"TooLarge: {exc}"
        row["period"] = detect_period(state, steps)
        horizon = max(steps, 2 * k_max + 3)
        trace = evolve(state, horizon)
        orders = {}
        for z, seq in trace.series.items():
            rep = minimal_order(RationalSequence(seq), k_max)
            orders[z] = rep.order if rep.found else None
        row["orders"] = sorted({o for o in orders.values() if o is not None})
        row["unresolved_vertices"] = sorted(z for z, o in orders.items() if o is None)
        row["growth"] = any(growth_flag(seq) for seq in trace.series.values())
        row["error"] = None
    except (BeltLabError, ValueError, ZeroDivisionError) as exc:
        row["error"] = f"{type(exc).__name__}: {exc}"
    return row


def _census_job(args):
    return census_row(*args)


def run_census(specs: Sequence[str], steps: int, k_max: int, values: str = "all-ones", jobs: int = 1) -> list[dict]:
    """One row per spec; rows keep the order of ``specs`` regardless of ``jobs``."""
    work = [(s, steps, k_max, values) for s in specs]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_census_job, work))
    return [_census_job(w) for w in work]


CENSUS_COLUMNS = ("spec", "classification", "period", "orders", "unresolved_vertices", "growth", "error")


def census_csv(rows: Sequence[dict]) -> str:
    flat = []
    for r in rows:
        flat.append(
            {
                **r,
                "orders": ";".join(map(str, r.get("orders", []))),
                "unresolved_vertices": ";".join(map(str, r.get("unresolved_vertices", []))),
                "period": "" if r.get("period") is None else r["period"],
            }
        )
    return to_csv(flat, CENSUS_COLUMNS)


# ------------------------------------------------------------ subcommands


def cmd_catalog(args) -> int:
    spec = DynkinSpec.parse(args.type)
    g = build_diagram(spec)
    arrows = []
    for u, v, mult in g.edges:
        arrows.append((u, v, mult) if g.coloring[u] == 0 else (v, u, mult))
    q = Quiver.from_arrows(g.vertex_count, arrows)
    doc = quiver_to_json(q)
    doc["name"] = spec.name
    doc["coloring"] = list(g.coloring)
    try:
        doc["coxeter_number"] = coxeter_number(spec)
    except AffineUnsupportedError:
        doc["coxeter_number"] = None
    emit(dump_json(doc), args.out)
    return EXIT_OK


def cmd_product(args) -> int:
    if args.right is None:
        left, right = parse_product(args.left)
    else:
        left, right = DynkinSpec.parse(args.left), DynkinSpec.parse(args.right)
    emit(dump_json(quiver_to_json(product_of(left, right))), args.out)
    return EXIT_OK


def cmd_evolve(args) -> int:
    q = load_quiver(args.quiver)
    state = initial_state(q, args.values)
    watch = [int(w) for w in args.watch.split(",")] if args.watch else None
    trace = evolve(state, args.steps, args.backward, watch)
    rows = [{"time": t, "vertex": z, "value": str(v)} for t, z, v in trace.rows()]
    if args.format == "json":
        emit(dump_json({"t_min": trace.t_min, "t_max": trace.t_max, "rows": rows}), args.out)
    else:
        emit(to_csv(rows, ("time", "vertex", "value")), args.out)
    return EXIT_OK


def cmd_period(args) -> int:
    q = load_quiver(args.quiver)
    p = detect_period(initial_state(q, args.values), args.bound)
    doc = {"quiver": args.quiver, "values": args.values, "bound": args.bound, "period": p}
    if q.box is not None:
        try:
            h = [coxeter_number(DynkinSpec.parse(name)) for name in q.box]
            doc["h_sum"] = sum(h)
            if p is not None and doc["h_sum"] % p:
                emit(dump_json(doc), args.out)
                raise InvariantBreach(f"period {p} does not divide h + h' = {doc['h_sum']}")
        except AffineUnsupportedError:
            pass
    emit(dump_json(doc), args.out)
    return EXIT_OK


def cmd_linearize(args) -> int:
    series = read_trace_csv(Path(args.trace).read_text())
    q = load_quiver(args.quiver) if args.quiver else None
    out = []
    for z, seq in series.items():
        rep = minimal_order(seq, args.kmax).to_json()
        rep["vertex"] = z
        rep["bound"] = annulus_bound(q, z) if q is not None else None
        out.append(rep)
    emit(dump_json({"trace": args.trace, "k_max": args.kmax, "vertices": out}), args.report)
    return EXIT_OK


def cmd_label(args) -> int:
    q = load_quiver(args.quiver)
    p = labelling.LabellingProblem(q)
    if args.mode == "classify":
        result = labelling.classify(p).to_json()
    else:
        finder = {"strict": labelling.find_strict, "weak": labelling.find_weak, "plain": labelling.find_plain}[args.mode]
        found = finder(p)
        if args.mode == "plain" and found is not None:
            found = found[0]
        result = {"mode": args.mode, "exists": found is not None, "labels": [str(x) for x in found] if found else None}
    if result.get("labels"):
        labels = [parse_rational(x) for x in result["labels"]]
        check = {"strict": p.is_strict, "plain": p.is_plain, "weak": p.is_weak}
        kind = args.mode if args.mode != "classify" else {
            "Strict": "strict", "PlainOnly": "plain", "WeakOnly": "weak"
        }[result["classification"]]
        if not check[kind](labels):
            raise InvariantBreach(f"{kind} certificate failed direct verification")
    emit(dump_json(result), args.out)
    return EXIT_OK


def cmd_census(args) -> int:
    rows = run_census(args.specs or list(DEFAULT_CENSUS), args.steps, args.kmax, args.values, args.jobs)
    if args.format == "csv":
        emit(census_csv(rows), args.out)
    else:
        emit(dump_json({"steps": args.steps, "k_max": args.kmax, "values": args.values, "rows": rows}), args.out)
    return EXIT_OK


def cmd_annulus_verify(args) -> int:
    data = annulus.random_data(args.m, args.n, args.seed)
    report = annulus.verify_belt(data, args.kmax)
    rng = random.Random(args.seed)
    exchange = []
    for _ in range(args.exchange_samples):
        alpha = rng.randint(1, args.m)
        i, j = rng.randint(-5, 5), rng.randint(-5, 5)
        exchange.append({"i": i, "j": j, "alpha": alpha, "passed": annulus.check_exchange(data, i, j, alpha, args.m + 1 - alpha)})
    report["exchange_checks"] = exchange
    if args.orders:
        report["orders"] = annulus.order_bound_report(data, max(args.kmax, annulus.order_bound(args.m, args.n, (args.m + 1) // 2)))
    emit(dump_json(report), args.out)
    if not report["passed"] or not all(e["passed"] for e in exchange):
        raise InvariantBreach("annulus verification failed")
    if args.orders and not report["orders"]["all_within_bound"]:
        raise InvariantBreach("detected order exceeds n * C(m+1, j)")
    return EXIT_OK


# ------------------------------------------------------------ parser


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="beltlab", description="Exact bipartite belt dynamics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", help="emit a Dynkin diagram as a bipartite quiver")
    p.add_argument("type", help="e.g. A3, D4, E6, A1~ or A3^(1)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("product", help="emit a box product quiver")
    p.add_argument("left", help="left factor, or a full spec such as A3xA1~")
    p.add_argument("right", nargs="?")
    p.add_argument("--out")
    p.set_defaults(func=cmd_product)

    def quiver_args(p):
        p.add_argument("--quiver", required=True, help="JSON file or product spec")
        p.add_argument("--values", default="all-ones", help="all-ones or random:SEED")

    p = sub.add_parser("evolve", help="trace belt evolution")
    quiver_args(p)
    p.add_argument("--steps", type=_nonnegative, default=10)
    p.add_argument("--backward", type=_nonnegative, default=0)
    p.add_argument("--watch", help="comma-separated vertex ids")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("period", help="detect the period of the belt evolution")
    quiver_args(p)
    p.add_argument("--bound", type=_positive, default=50)
    p.add_argument("--out")
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("linearize", help="minimal recurrence orders of a trace")
    p.add_argument("--trace", required=True)
    p.add_argument("--kmax", type=_positive, default=8)
    p.add_argument("--quiver", help="source quiver, for order bounds")
    p.add_argument("--report")
    p.set_defaults(func=cmd_linearize)

    p = sub.add_parser("label", help="subadditive labellings")
    p.add_argument("--quiver", required=True)
    p.add_argument("--mode", choices=("classify", "strict", "plain", "weak"), default="classify")
    p.add_argument("--out")
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("census", help="classification, period and orders for many products")
    p.add_argument("specs", nargs="*", help=f"product specs (default: {' '.join(DEFAULT_CENSUS)})")
    p.add_argument("--steps", type=_positive, default=30)
    p.add_argument("--kmax", type=_positive, default=8)
    p.add_argument("--values", default="all-ones")
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("annulus-verify", help="check the determinant model on random data")
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--kmax", type=_nonnegative, default=None)
    p.add_argument("--exchange-samples", type=_nonnegative, default=20)
    p.add_argument("--orders", action="store_true", help="also compare recurrence orders with bounds")
    p.add_argument("--out")
    p.set_defaults(func=cmd_annulus_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "annulus-verify" and args.kmax is None:
        args.kmax = 2 * args.n
    try:
        if hasattr(args, "values"):
            parse_values_spec(args.values)
        return args.func(args)
    except InvariantBreach as exc:
        print(f"invariant breach: {exc}", file=sys.stderr)
        return EXIT_BREACH
    except (BeltLabError, ValueError, KeyError, OSError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
