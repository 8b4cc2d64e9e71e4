"""Command-line front end: ``verify``, ``quotient``, ``bounds`` and ``search``.

Exit status is 0 when every requested check passes, 1 when a check fails and
2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Optional

from . import certificates as cert
from .digraph import ArcListError, degrees, is_diregular, is_out_regular, read_arc_list
from .geodecity import (
    GeodecityError, is_k_geodetic, outlier_map, verify_outlier_automorphism,
)
from .permutation import OrbitPartition, orbits, permutation_structure, validate_excess_one_structure
from .quotient import (
    NotOutRegular, equitable_check, quotient, representative_invariance_check,
    verify_lemma_properties,
)
from .report import CertificateReport
from .search import SearchConfig, generate, write_results

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunReport:
    subcommand: str
    inputs: dict[str, Any]
    results: dict[str, Any] = field(default_factory=dict)
    checks: list[dict[str, Any]] = field(default_factory=list)
    exit_status: int = EXIT_OK

    def add_check(self, name: str, passed: bool, **detail):
        self.checks.append({"name": name, "passed": bool(passed), **detail})

    def add_certificate(self, rep: CertificateReport):
        self.checks.append({"name": rep.check, "passed": rep.passed, "certificate": rep.to_dict()})

    def settle(self) -> "RunReport":
        self.exit_status = EXIT_OK if all(c["passed"] for c in self.checks) else EXIT_FAIL
        return self

    def to_dict(self) -> dict:
        return {
            "subcommand": self.subcommand, "inputs": self.inputs, "results": self.results,
            "checks": self.checks, "exit_status": self.exit_status,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        data = json.loads(text)
        return cls(data["subcommand"], data["inputs"], data["results"], data["checks"], data["exit_status"])

    def to_text(self) -> str:
        lines = [f"== {self.subcommand} =="]
        for key, val in self.results.items():
            if isinstance(val, (dict, list)) and key not in ("matrix", "orbit_sizes", "permutation_structure"):
                continue
            lines.append(f"{key}: {val if isinstance(val, str) else json.dumps(val)}")
        for c in self.checks:
            status = "PASS" if c["passed"] else "FAIL"
            extra = {k: v for k, v in c.items() if k not in ("name", "passed", "certificate")}
            if "certificate" in c and not c["passed"]:
                extra = c["certificate"]["witness"]
            tail = f"  {json.dumps(extra)}" if extra else ""
            lines.append(f"[{status}] {c['name']}{tail}")
        lines.append(f"exit status: {self.exit_status}")
        return "\n".join(lines)


class UsageError(Exception):
    pass


def _load(path: str):
    try:
        return read_arc_list(path)
    except (OSError, ArcListError) as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def read_partition(path: str, n: int) -> OrbitPartition:
    """One class per line, space-separated vertex indices; ``#`` comments allowed."""
    try:
        with open(path, encoding="utf-8") as fh:
            classes = [
                [int(x) for x in line.split()]
                for line in fh
                if line.strip() and not line.lstrip().startswith("#")
            ]
        part = OrbitPartition.from_classes(classes)
    except (OSError, ValueError) as exc:
        raise UsageError(f"bad partition file {path}: {exc}") from exc
    if part.n != n:
        raise UsageError(f"partition covers {part.n} vertices, digraph has {n}")
    return part


def _quotient_checks(report: RunReport, G, part, d: Optional[int], k: Optional[int], outlier=None):
    try:
        Q = quotient(G, part)
    except NotOutRegular as exc:
        report.add_check("quotient", False, reason=str(exc))
        return None
    report.results["w"] = Q.w
    report.results["matrix"] = Q.mult.tolist()
    report.results["orbit_sizes"] = list(Q.orbit_sizes)
    ok, witness = equitable_check(G, part)
    report.add_check("equitable", ok, **({"witness": witness} if witness else {}))
    if part.w <= 8:
        report.add_check("representative_invariance", representative_invariance_check(G, part))
    if k is not None:
        dd = Q.d if d is None else d
        report.add_certificate(verify_lemma_properties(G, k, part, outlier))
        for rep in cert.quotient_certificates(Q, dd, k):
            report.add_certificate(rep)
    return Q


def _outlier_chain(report: RunReport, G, d: int, k: int):
    try:
        o = outlier_map(G, d, k)
    except GeodecityError as exc:
        report.add_check("outlier_map", False, reason=f"{type(exc).__name__}: {exc}")
        return
    report.results["outlier_map"] = list(o.image)
    ok, arc = verify_outlier_automorphism(G, o)
    report.add_check("outlier_automorphism", ok, **({"violating_arc": list(arc)} if arc else {}))
    part = orbits(o)
    ps = permutation_structure(part)
    report.results["permutation_structure"] = {str(j): c for j, c in ps.m.items()}
    ok, reason = validate_excess_one_structure(ps)
    report.add_check("permutation_structure", ok, reason=reason)
    ok, reason = cert.order_structure_filter(ps, k)
    report.add_check("order_structure", ok, reason=reason)
    _quotient_checks(report, G, part, d, k, o)


def cmd_verify(args) -> RunReport:
    G = _load(args.file)
    d, k = args.d, args.k
    report = RunReport("verify", {"file": args.file, "d": d, "k": k, "expect_excess": args.expect_excess})
    outd, ind = degrees(G)
    report.results.update(
        n=G.n, arcs=G.arc_count, out_regular=is_out_regular(G, d), diregular=is_diregular(G, d),
        min_out_degree=min(outd, default=0),
    )
    report.add_check("min_out_degree", min(outd, default=0) >= d)
    geo = is_k_geodetic(G, k, d)
    report.results["geodecity"] = geo.to_dict()
    report.results["moore_bound"] = geo.moore
    report.results["excess"] = geo.excess
    report.add_check("geodetic", geo.is_geodetic, **({"witness": list(geo.witness)} if geo.witness else {}))
    if args.expect_excess is not None:
        report.add_check("expected_excess", geo.excess == args.expect_excess,
                         expected=args.expect_excess, actual=geo.excess)
    if geo.excess == 1:
        _outlier_chain(report, G, d, k)
    return report.settle()


def cmd_quotient(args) -> RunReport:
    G = _load(args.file)
    report = RunReport("quotient", {"file": args.file, "d": args.d, "k": args.k, "partition": args.partition})
    if args.partition == "auto":
        if args.d is None or args.k is None:
            raise UsageError("--partition auto needs --d and --k")
        _outlier_chain(report, G, args.d, args.k)
    else:
        part = read_partition(args.partition, G.n)
        report.results["classes"] = [list(c) for c in part.classes]
        _quotient_checks(report, G, part, args.d, args.k)
    return report.settle()


def bounds_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=["d", "k", "lhs", "rhs"], lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: row[key] for key in ("d", "k", "lhs", "rhs")})
    return buf.getvalue()


def cmd_bounds(args) -> RunReport:
    report = RunReport("bounds", {"dmax": args.dmax, "kmax": args.kmax, "csv": args.csv})
    try:
        rows = cert.exceptional_table(args.dmax, args.kmax)
    except cert.WindowTooSmall as exc:
        raise UsageError(str(exc)) from exc
    table = []
    for row in rows:
        verdicts = cert.structural_verdicts(row["d"], row["k"])
        entry = dict(row, **{name: ("feasible" if r.feasible else "infeasible") for name, r in verdicts.items()})
        table.append(entry)
        for name, r in verdicts.items():
            report.add_check(f"{name}({row['d']},{row['k']})", not r.feasible)
    report.results["pairs"] = table
    report.results["count"] = len(table)
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(bounds_csv(rows))
    return report.settle()


def cmd_search(args) -> RunReport:
    try:
        cfg = SearchConfig(args.d, args.k, args.order, args.diregular, args.budget, args.time_budget,
                           args.shards, args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report = RunReport("search", cfg.to_dict())
    res = generate(cfg)
    report.results.update(
        count=len(res.digraphs), exhaustive=res.exhaustive, nodes=res.nodes,
        summary=res.summary(), digraphs=[[list(a) for a in G.arcs()] for G in res.digraphs],
    )
    if args.out:
        report.results["manifest"] = str(write_results(res, args.out))
    if args.require_exhaustive:
        report.add_check("exhaustive", res.exhaustive)
    return report.settle()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kgeodetic", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check degree, geodecity and excess of an arc-list file")
    v.add_argument("file")
    v.add_argument("--d", type=int, required=True)
    v.add_argument("--k", type=int, required=True)
    v.add_argument("--expect-excess", type=int)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    q = sub.add_parser("quotient", help="build the orbit quotient and run its certificates")
    q.add_argument("file")
    q.add_argument("--d", type=int)
    q.add_argument("--k", type=int)
    q.add_argument("--partition", default="auto", help="'auto' (outlier orbits) or a partition file")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_quotient)

    b = sub.add_parser("bounds", help="exceptional (d, k) pairs and structural filter verdicts")
    b.add_argument("--dmax", type=int, default=50)
    b.add_argument("--kmax", type=int, default=50)
    b.add_argument("--csv")
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("search", help="exhaustive search for k-geodetic digraphs of given order")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--diregular", action="store_true")
    s.add_argument("--shards", type=int, default=1)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--budget", type=int, help="node budget")
    s.add_argument("--time-budget", type=float, help="seconds")
    s.add_argument("--out", help="directory for witnesses and manifest")
    s.add_argument("--require-exhaustive", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_search)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(report.to_json() if args.json else report.to_text())
    return report.exit_status


def console():
    sys.exit(main())


if __name__ == "__main__":
    console()
