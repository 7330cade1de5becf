"""Command-line surface: load algebra and map files, run checks, print reports.

Every report is byte-deterministic for identical inputs. Exit codes are
the machine contract: 0 all verdicts pass, 1 some check failed, 2 input
or usage error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field as dataclass_field

from .algebra import (
    identity_report,
    jordanify,
    load_algebra,
    matrix_units_algebra,
    save_algebra,
)
from .errors import JordankitError
from .maps import (
    derivation_peirce_check,
    DerivationTable,
    inner_derivation,
    is_additive,
    is_bijective,
    is_n_derivation,
    is_n_multiplicative,
    load_map_table,
    reduce_derivation,
)
from .peirce import (
    check_theorem_conditions,
    find_idempotents,
    idempotent_class,
    peirce_decompose,
    peirce_project,
    verify_peirce_relations,
)
from .scalars import prime_field, rational_field
from .search import (
    SearchBudget,
    additivity_audit,
    enumerate_multiplicative_bijections,
    enumerate_n_derivations,
)


@dataclass
class RunReport:
    command: str
    verdicts: list = dataclass_field(default_factory=list)  # (name, passed, witness text)
    exit_code: int = 0
    lines: list = dataclass_field(default_factory=list)

    def info(self, line: str):
        self.lines.append(line)

    def verdict(self, name: str, passed: bool, witness: str = ""):
        self.verdicts.append((name, passed, witness))
        text = f"verdict {name}: {'pass' if passed else 'fail'}"
        if witness and not passed:
            text += f" witness={witness}"
        self.lines.append(text)

    def finish(self) -> "RunReport":
        ok = all(passed for _, passed, _ in self.verdicts)
        self.exit_code = 0 if ok else 1
        self.lines.append(f"result: {'PASS' if ok else 'FAIL'}")
        return self


def _field_text(f) -> str:
    return "Q" if f.characteristic == 0 else f"F{f.characteristic}"


def _algebra_line(a) -> str:
    return f"algebra: {a.name or '(unnamed)'} dim={a.dim} field={_field_text(a.field)}"


def _tuple_text(elems) -> str:
    return ";".join(e.text() for e in elems)


def _parse_field_spec(text: str):
    if text == "rational":
        return rational_field()
    if text.startswith("p="):
        return prime_field(int(text[2:]))
    raise JordankitError(f"bad field spec {text!r}: use 'rational' or 'p=<prime>'")


# ---------------------------------------------------------------------------
# subcommands


def _cmd_check(args) -> RunReport:
    rep = RunReport("check")
    a = load_algebra(args.algebra)
    rep.info(_algebra_line(a))
    ir = identity_report(a)
    for prop in ("commutative", "associative", "flexible", "jordan"):
        val = getattr(ir, prop)
        line = f"{prop}: {'true' if val else 'false'}"
        if not val and ir.witnesses.get(prop):
            line += f" witness={_tuple_text(ir.witnesses[prop])}"
        rep.info(line)
    if args.require:
        rep.verdict(f"require {args.require}", bool(getattr(ir, args.require)))
    return rep.finish()


def _cmd_idempotents(args) -> RunReport:
    rep = RunReport("idempotents")
    a = load_algebra(args.algebra)
    rep.info(_algebra_line(a))
    mode = "exhaustive" if args.exhaustive else "heuristic"
    rep.info(f"mode: {mode}")
    hits = find_idempotents(a, mode=mode)
    rep.info(f"count: {len(hits)}")
    for hit in hits:
        rep.info(f"idempotent: {hit.element.text()} class={hit.classification}")
    return rep.finish()


def _cmd_peirce(args) -> RunReport:
    rep = RunReport("peirce")
    a = load_algebra(args.algebra)
    rep.info(_algebra_line(a))
    e = a.parse_element(args.idempotent)
    rep.info(f"idempotent: {e.text()} class={idempotent_class(a, e)}")
    dec = peirce_decompose(a, e, allow_noncommutative=args.symmetrized)
    d1, dh, d0 = dec.dims
    rep.info(f"dims: J1={d1} Jhalf={dh} J0={d0}")
    for label, basis in (("J1", dec.basis1), ("Jhalf", dec.basis_half), ("J0", dec.basis0)):
        rep.info(f"basis {label}: {_tuple_text(basis) if basis else '(empty)'}")
    relations = verify_peirce_relations(dec)
    for check in relations.checks:
        rep.verdict(
            f"relation {check.name}",
            check.ok,
            _tuple_text(check.witness[:2]) if check.witness else "",
        )
    cond = check_theorem_conditions(dec)
    rep.verdict("condition (i)", cond.cond_i, _cond_witness(cond, ("i@J1", "i@J0")))
    rep.verdict("condition (ii)", cond.cond_ii, _cond_witness(cond, ("ii",)))
    rep.verdict("condition (iii)", cond.cond_iii, _cond_witness(cond, ("iii",)))
    return rep.finish()


def _cond_witness(cond, keys) -> str:
    parts = [f"{k}:{cond.witnesses[k].text()}" for k in keys if k in cond.witnesses]
    return ",".join(parts)


def _cmd_check_map(args) -> RunReport:
    rep = RunReport("check-map")
    dom = load_algebra(args.algebra)
    cod = load_algebra(args.algebra2)
    rep.info(_algebra_line(dom))
    rep.info(_algebra_line(cod))
    table = load_map_table(args.map, domain=dom, codomain=cod)
    rep.verdict("bijective", is_bijective(table))
    tree_mode = "all_trees" if args.all_trees else "canonical"
    v = is_n_multiplicative(table, args.n, tree_mode=tree_mode)
    rep.verdict(
        f"{args.n}-multiplicative ({tree_mode})",
        v.ok,
        _tuple_text(v.witness[1]) if v.witness else "",
    )
    add = is_additive(table)
    rep.info(f"additive: {'true' if add.ok else 'false'}")
    return rep.finish()


def _cmd_check_derivation(args) -> RunReport:
    rep = RunReport("check-derivation")
    a = load_algebra(args.algebra)
    rep.info(_algebra_line(a))
    table = DerivationTable.from_map(load_map_table(args.map, domain=a, codomain=a))
    v = is_n_derivation(table, args.n)
    rep.verdict(
        f"{args.n}-derivation (canonical)",
        v.ok,
        _tuple_text(v.witness[1]) if v.witness else "",
    )
    add = is_additive(table)
    rep.info(f"additive: {'true' if add.ok else 'false'}")
    return rep.finish()


def _cmd_inner_derivation(args) -> RunReport:
    rep = RunReport("inner-derivation")
    a = load_algebra(args.algebra)
    rep.info(_algebra_line(a))
    y = a.parse_element(args.y)
    z = a.parse_element(args.z)
    rep.info(f"y: {y.text()}")
    rep.info(f"z: {z.text()}")
    d = inner_derivation(a, y, z)
    f = a.field
    for row in d.matrix:
        rep.info("row: " + ",".join(f.format(c) for c in row))
    v = is_n_derivation(d, 2)
    rep.verdict("2-derivation (canonical)", v.ok, _tuple_text(v.witness[1]) if v.witness else "")
    return rep.finish()


def _cmd_reduce_derivation(args) -> RunReport:
    rep = RunReport("reduce-derivation")
    a = load_algebra(args.algebra)
    rep.info(_algebra_line(a))
    e = a.parse_element(args.idempotent)
    rep.info(f"idempotent: {e.text()}")
    d = DerivationTable.from_map(load_map_table(args.map, domain=a, codomain=a))
    v = is_n_derivation(d, args.n)
    rep.verdict(f"{args.n}-derivation (canonical)", v.ok)
    if not v.ok:
        return rep.finish()
    dec = peirce_decompose(a, e)
    de = d.apply(e)
    rep.info(f"d(e): {de.text()}")
    p1, ph, p0 = peirce_project(dec, de)
    in_half = p1.is_zero() and p0.is_zero()
    rep.verdict("d(e) in Jhalf", in_half, de.text() if not in_half else "")
    if not in_half:
        return rep.finish()
    delta = reduce_derivation(a, e, d, args.n, decomposition=dec)
    rep.verdict("reduced derivation vanishes at e", delta.apply(e).is_zero())
    pc = derivation_peirce_check(delta, dec)
    rep.verdict(
        "reduced derivation preserves components",
        pc.ok,
        f"{pc.witness[0]}:{pc.witness[1].text()}" if pc.witness else "",
    )
    return rep.finish()


def _cmd_audit(args) -> RunReport:
    rep = RunReport("audit")
    a = load_algebra(args.algebra)
    rep.info(_algebra_line(a))
    if args.idempotent:
        e = a.parse_element(args.idempotent)
        rep.info(f"idempotent: {e.text()}")
    else:
        hits = [h for h in find_idempotents(a, "heuristic") if h.classification == "nontrivial"]
        if not hits:
            raise JordankitError(
                "no nontrivial idempotent found by the 0/1 sweep; pass --idempotent"
            )
        e = hits[0].element
        rep.info(f"idempotent: {e.text()} (auto)")
    dec = peirce_decompose(a, e)
    budget = SearchBudget(
        max_nodes=args.budget_nodes,
        max_seconds=args.budget_seconds,
        max_witnesses=args.budget_witnesses,
    )
    if args.mode == "maps":
        search = enumerate_multiplicative_bijections(a, a, args.n, budget)
    else:
        search = enumerate_n_derivations(a, args.n, budget)
    tables = list(search)
    replay = _ReplayStream(tables, search.exhausted, search.budget_exceeded)
    report = additivity_audit(replay, dec)
    hyp = report.hypothesis_record
    rep.info(
        "conditions: i={} ii={} iii={}".format(
            *["pass" if ok else "fail" for ok in (hyp.cond_i, hyp.cond_ii, hyp.cond_iii)]
        )
    )
    rep.info(f"mode: {args.mode} n={args.n}")
    rep.info(f"witnesses: {report.witnesses_found}")
    rep.info(f"exhausted: {'true' if report.exhausted else 'false'}")
    rep.verdict("all_additive", report.all_additive)
    if args.mode == "derivations":
        bad = None
        for table in tables:
            p1, _, p0 = peirce_project(dec, table.apply(e))
            if not (p1.is_zero() and p0.is_zero()):
                bad = table.apply(e)
                break
        rep.verdict("d(e) in Jhalf for all witnesses", bad is None, bad.text() if bad else "")
    return rep.finish()


class _ReplayStream(list):
    def __init__(self, tables, exhausted, budget_exceeded):
        super().__init__(tables)
        self.exhausted = exhausted
        self.budget_exceeded = budget_exceeded


def _cmd_example(args) -> RunReport:
    rep = RunReport("example")
    f = _parse_field_spec(args.field)
    a = matrix_units_algebra(f)
    if args.which == "jordanified-m2":
        a = jordanify(a)
    save_algebra(a, args.out)
    rep.info(f"wrote: {args.out} ({a.name} over {_field_text(f)})")
    return rep.finish()


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jordankit",
        description="Exact checks on nonassociative structure-constant algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="identity report for an algebra file")
    p.add_argument("algebra")
    p.add_argument("--require", choices=["jordan", "commutative", "associative"])
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("idempotents", help="list nonzero idempotents")
    p.add_argument("algebra")
    p.add_argument("--exhaustive", action="store_true")
    p.set_defaults(fn=_cmd_idempotents)

    p = sub.add_parser("peirce", help="Peirce decomposition and theorem conditions")
    p.add_argument("algebra")
    p.add_argument("--idempotent", required=True, help="coords c1,c2,...,cd")
    p.add_argument("--symmetrized", action="store_true",
                   help="allow noncommutative algebras (symmetrized operator)")
    p.set_defaults(fn=_cmd_peirce)

    p = sub.add_parser("check-map", help="bijectivity and n-multiplicativity of a map file")
    p.add_argument("algebra")
    p.add_argument("algebra2")
    p.add_argument("map")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--all-trees", action="store_true")
    p.set_defaults(fn=_cmd_check_map)

    p = sub.add_parser("check-derivation", help="n-derivation identity for a map file")
    p.add_argument("algebra")
    p.add_argument("map")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=_cmd_check_derivation)

    p = sub.add_parser("inner-derivation", help="matrix of [L_y,L_z]+[L_y,R_z]+[R_y,R_z]")
    p.add_argument("algebra")
    p.add_argument("--y", required=True)
    p.add_argument("--z", required=True)
    p.set_defaults(fn=_cmd_inner_derivation)

    p = sub.add_parser("reduce-derivation", help="reduce d to a derivation vanishing at e")
    p.add_argument("algebra")
    p.add_argument("map")
    p.add_argument("--idempotent", required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(fn=_cmd_reduce_derivation)

    p = sub.add_parser("audit", help="enumerate witnesses and audit additivity")
    p.add_argument("algebra")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["maps", "derivations"], required=True)
    p.add_argument("--budget-nodes", type=int, default=None)
    p.add_argument("--budget-seconds", type=float, default=None)
    p.add_argument("--budget-witnesses", type=int, default=None)
    p.add_argument("--idempotent", default=None)
    p.set_defaults(fn=_cmd_audit)

    p = sub.add_parser("example", help="write a built-in example algebra file")
    p.add_argument("which", choices=["m2", "jordanified-m2"])
    p.add_argument("--field", default="rational", help="'rational' or 'p=<prime>'")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_example)

    return parser


def run(argv) -> RunReport:
    """Execute one CLI invocation, print its report, and return it."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.fn(args)
    except (JordankitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        report = RunReport(args.command, exit_code=2)
        return report
    print("\n".join([f"command: {report.command}"] + report.lines))
    return report


def main() -> None:
    sys.exit(run(sys.argv[1:]).exit_code)


if __name__ == "__main__":
    main()
