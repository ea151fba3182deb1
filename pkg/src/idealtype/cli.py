"""Command-line front end.

Subcommands::

    idealtype table1 [--only F4 ...] [--jobs N]
    idealtype certify --type E6 --gens 00111/0 [--format json]
    idealtype charpoly --type B3 --gens 011 [--flat-budget N]
    idealtype exponents --type A3 --gens ""
    idealtype dn-classify --rank 5
    idealtype export-dot --type G2 [--gens 32]

Ideals are given by their generators: comma-separated coefficient strings in
Bourbaki order, with E types written ``top/bottom`` where the digit after the
slash is the coefficient of the second simple root. An empty string is the
empty ideal.

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 resource
budget exceeded. The default flat budget is read from ``IDEALTYPE_FLAT_BUDGET``.

JSON output (``--format json``) is printed with sorted keys and two-space
indentation, so it is byte-stable.

Certificate schema (``certify``)::

    node := {
      "kind": "FullWeyl" | "EmptyArrangement" | "RankAtMost2" | "Product"
              | "Fibration" | "EmptyComplementStep" | "Failure",
      "system": "E6",                  # "D4+A1" for Product nodes
      "generators": ["00111/0", ...],  # absent on Product nodes
      "parabolic": 0,                  # 0-based removed simple root, recursion steps only
      "condition": report,             # Fibration only
      "reports": [report, ...],        # Failure only, one per maximal parabolic
      "children": [node, ...]          # recursion steps and Product nodes
    }
    report := {
      "parabolic": int, "intersection": [label, ...], "is_empty": bool,
      "is_chain": bool, "unique_heights": bool, "dependence_ok": bool,
      "holds": bool, "witness_failures": [[label, label], ...]  # when present
    }

Other JSON reports:

* ``table1``: ``{"columns": [{"system", "total", "certified", "expected_total",
  "expected_certified", "match"}], "match": bool}``
* ``charpoly``: ``{"system", "generators", "coefficients" (constant term first),
  "polynomial", "integer_roots" (null when it does not split), "flats"}``
* ``exponents``: ``{"system", "generators", "height_counts", "exponents"}``
* ``dn-classify``: ``{"system", "histogram", "total", "catalan"}``
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import arrangement as arr_mod
from .certify import TABLE1, certify, classify_Dn, count_certified
from .ideals import catalan_number, enumerate_ideals, exponents, ideal_generated_by
from .roots import RootSystemError, build_root_system, parse_root_label, root_label

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3
TABLE1_ORDER = ("G2", "F4", "E6", "E7", "E8")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    type_label: str = ""
    rank: int = 0
    fmt: str = "human"
    flat_budget: int = arr_mod.DEFAULT_FLAT_BUDGET
    jobs: int = 1
    gens: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.flat_budget < 1:
            raise UsageError("--flat-budget must be at least 1")
        if self.jobs < 1:
            raise UsageError("--jobs must be at least 1")


def parse_type(text: str) -> tuple[str, int]:
    m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", text)
    if not m:
        raise UsageError(f"bad root system {text!r}; expected e.g. E6, B3")
    t, n = m.group(1).upper(), int(m.group(2))
    try:
        build_root_system(t, n)
    except RootSystemError as exc:
        raise UsageError(str(exc)) from None
    return t, n


def parse_gens(text: str | None) -> tuple[str, ...] | None:
    if text is None:
        return None
    return tuple(g.strip() for g in text.split(",") if g.strip())


def _ideal(cfg: RunConfig):
    rs = build_root_system(cfg.type_label, cfg.rank)
    try:
        roots = [parse_root_label(rs, g) for g in (cfg.gens or ())]
    except RootSystemError as exc:
        raise UsageError(str(exc)) from None
    return rs, ideal_generated_by(rs, roots)


def _emit(cfg: RunConfig, payload: dict, human: str) -> None:
    if cfg.fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(human)


def _table1_column(name: str) -> tuple[str, int, int]:
    rs = build_root_system(name[0], int(name[1:]))
    total, certified = count_certified(rs)
    return name, total, certified


def cmd_table1(cfg: RunConfig, only: list[str] | None = None) -> int:
    names = [n.upper() for n in (only or TABLE1_ORDER)]
    for n in names:
        if n not in TABLE1:
            raise UsageError(f"--only accepts {', '.join(TABLE1_ORDER)}; got {n}")
    names = [n for n in TABLE1_ORDER if n in names]
    if cfg.jobs > 1 and len(names) > 1:
        with ProcessPoolExecutor(cfg.jobs) as ex:
            rows = list(ex.map(_table1_column, names))
    else:
        rows = [_table1_column(n) for n in names]
    cols = []
    lines = [f"{'system':<8}{'total':>8}{'expect':>8}{'certified':>11}{'expect':>8}  result"]
    ok = True
    for name, total, certified in rows:
        et, ec = TABLE1[name]
        match = (total, certified) == (et, ec)
        ok &= match
        cols.append({"system": name, "total": total, "certified": certified,
                     "expected_total": et, "expected_certified": ec, "match": match})
        diff = "" if match else f"  (diff total {total - et:+d}, certified {certified - ec:+d})"
        lines.append(f"{name:<8}{total:>8}{et:>8}{certified:>11}{ec:>8}  "
                     f"{'PASS' if match else 'FAIL'}{diff}")
    _emit(cfg, {"columns": cols, "match": ok}, "\n".join(lines))
    return EXIT_OK if ok else EXIT_MISMATCH


def _human_cert(node: dict, depth: int = 0) -> list[str]:
    pad = "  " * depth
    head = f"{pad}{node['kind']} [{node['system']}]"
    if "generators" in node:
        head += " gens=" + (",".join(node["generators"]) or "-")
    if "parabolic" in node:
        head += f" parabolic={node['parabolic'] + 1}"
    out = [head]
    for rep in node.get("reports", []):
        flags = ", ".join(k for k in ("is_empty", "is_chain", "unique_heights", "dependence_ok")
                          if rep[k])
        out.append(f"{pad}  parabolic {rep['parabolic'] + 1}: outside={rep['intersection']} "
                   f"true flags: {flags or 'none'}")
    for c in node.get("children", []):
        out.extend(_human_cert(c, depth + 1))
    return out


def cmd_certify(cfg: RunConfig) -> int:
    rs, I = _ideal(cfg)
    cert = certify(rs, I)
    tree = cert.to_json()
    _emit(cfg, tree, "\n".join(_human_cert(tree)))
    return EXIT_OK


def cmd_charpoly(cfg: RunConfig) -> int:
    rs, I = _ideal(cfg)
    arr = arr_mod.from_ideal(rs, I)
    lat = arr_mod.build_lattice(arr, cfg.flat_budget)
    coeffs = arr_mod.characteristic_polynomial(lat)
    roots = arr_mod.split_over_integers(coeffs)
    payload = {"system": rs.name, "generators": I.labels(), "coefficients": list(coeffs),
               "polynomial": arr_mod.poly_str(coeffs), "integer_roots": roots, "flats": len(lat)}
    human = f"chi(t) = {arr_mod.poly_str(coeffs)}\n"
    human += (f"splits over Z: roots {' '.join(map(str, roots))}" if roots is not None
              else "does not split over Z")
    _emit(cfg, payload, human)
    return EXIT_OK


def cmd_exponents(cfg: RunConfig) -> int:
    rs, I = _ideal(cfg)
    hp = exponents(rs, I)
    payload = {"system": rs.name, "generators": I.labels(),
               "height_counts": {str(k): v for k, v in hp.counts.items()},
               "exponents": sorted(hp.exponents)}
    _emit(cfg, payload, " ".join(map(str, sorted(hp.exponents))))
    return EXIT_OK


def cmd_dn_classify(cfg: RunConfig) -> int:
    rs = build_root_system("D", cfg.rank)
    hist = Counter(classify_Dn(rs, I).kind for I in enumerate_ideals(rs))
    total = sum(hist.values())
    cat = catalan_number(rs)
    payload = {"system": rs.name, "histogram": dict(sorted(hist.items())),
               "total": total, "catalan": cat}
    lines = [f"{k:<14}{v:>6}" for k, v in sorted(hist.items())]
    lines.append(f"{'total':<14}{total:>6}  (W-Catalan {cat})")
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK if total == cat and not hist.get("Hole") else EXIT_MISMATCH


def cmd_export_dot(cfg: RunConfig) -> str:
    rs, I = _ideal(cfg)
    lines = [f'digraph "{rs.name}" {{', "  rankdir=BT;", "  node [shape=box];"]
    for r in rs.positive_roots:
        style = ', style=filled, fillcolor="lightblue"' if I.member_mask >> r.index & 1 else ""
        lines.append(f'  r{r.index} [label="{root_label(rs, r)}"{style}];')
    for a, b in rs.cover_edges:
        lines.append(f"  r{a} -> r{b};")
    lines.append("}")
    return "\n".join(lines)


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="idealtype", description=__doc__.split("\n\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json"), default="human")
    common.add_argument("--flat-budget", type=int, default=arr_mod.DEFAULT_FLAT_BUDGET)
    common.add_argument("--jobs", type=int, default=1)
    sub = p.add_subparsers(dest="cmd", required=True)
    t1 = sub.add_parser("table1", parents=[common], help="ideal and certificate counts for exceptional types")
    t1.add_argument("--only", nargs="+", metavar="SYSTEM")
    for name, hlp in (("certify", "certificate tree for one ideal"),
                      ("charpoly", "characteristic polynomial of A_I"),
                      ("exponents", "dual height partition of the complement"),
                      ("export-dot", "Hasse diagram of the positive roots in DOT")):
        sp = sub.add_parser(name, parents=[common], help=hlp)
        sp.add_argument("--type", required=True, dest="system")
        sp.add_argument("--gens", default=None if name == "export-dot" else "",
                        help="comma-separated generator labels")
    dn = sub.add_parser("dn-classify", parents=[common], help="case histogram over all D_n ideals")
    dn.add_argument("--rank", type=int, required=True)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        t, n = ("", 0)
        if getattr(args, "system", None):
            t, n = parse_type(args.system)
        if args.cmd == "dn-classify":
            if args.rank < 4:
                raise UsageError("dn-classify needs --rank >= 4")
            t, n = "D", args.rank
        cfg = RunConfig(args.cmd, t, n, args.format, args.flat_budget, args.jobs,
                        parse_gens(getattr(args, "gens", None)))
        if args.cmd == "table1":
            return cmd_table1(cfg, args.only)
        if args.cmd == "certify":
            return cmd_certify(cfg)
        if args.cmd == "charpoly":
            return cmd_charpoly(cfg)
        if args.cmd == "exponents":
            return cmd_exponents(cfg)
        if args.cmd == "dn-classify":
            return cmd_dn_classify(cfg)
        print(cmd_export_dot(cfg))
        return EXIT_OK
    except UsageError as exc:
        print(f"idealtype: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except arr_mod.FlatBudgetExceeded as exc:
        print(f"idealtype: resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
