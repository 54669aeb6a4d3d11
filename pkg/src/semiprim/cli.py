"""Command-line interface.

Reports are ``key: value`` lines in a fixed order.  Exit codes: 0 when the
analysis completed (a "no" answer included), 1 for usage, parse and input
errors, 2 when a capacity cap was hit.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .action import TransitiveAction, action_of_transitive_group, quotient_action
from .analysis import (
    classify_it_type,
    classify_structure,
    plinth_report,
    semiprimitive_witness,
    sp_predicates,
)
from .config import DEFAULT_CAPS, Caps
from .errors import CapacityExceeded, NotInnatelyTransitive, NotNormal, ParseError, SemiprimError
from .fileio import format_group_file, format_triple, read_group_file, read_triple_file
from .glue import find_glue_mu, glue_actions
from .group import generated_by, is_normal
from .iso import is_perm_isomorphic
from .library import dihedral
from .perm import cycle_string, parse_cycles
from .triples import build_from_triple, extract_triple, validate_triple
from .wreath import WreathSpec, wreath_build, wreath_direct_test, wreath_sp_criterion

FORMAT_VERSION = 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class Report:
    def __init__(self):
        self.lines: list[tuple[str, str]] = []

    def add(self, key: str, value) -> None:
        if isinstance(value, bool):
            value = "yes" if value else "no"
        elif value is None:
            value = "unknown"
        self.lines.append((key, str(value)))

    def render(self, porcelain: bool) -> str:
        out = [f"format: {FORMAT_VERSION}"] if porcelain else []
        out += [f"{k}: {v}" for k, v in self.lines]
        return "\n".join(out) + "\n"


def _caps(args) -> Caps:
    changes = {}
    for flag in ("degree_cap", "order_cap", "effort_cap", "element_cap"):
        v = getattr(args, flag, None)
        if v is not None:
            changes[flag] = v
    return DEFAULT_CAPS.with_(**changes) if changes else DEFAULT_CAPS


def _action(path, caps: Caps) -> TransitiveAction:
    return read_group_file(path).action(caps)


def _elements(words: list[str], degree: int, flag: str) -> list:
    """One element per argument, or a single element if the shell split a cycle string apart."""
    try:
        return [parse_cycles(w, degree).raw for w in words]
    except SemiprimError:
        pass
    try:
        return [parse_cycles(" ".join(words), degree).raw]
    except SemiprimError as e:
        raise ParseError(0, f"{flag}: {e}") from None


def _gens_line(gens) -> str:
    return " ".join(cycle_string(g) for g in gens) if gens else "()"


def _basics(r: Report, A: TransitiveAction) -> None:
    if A.name:
        r.add("name", A.name)
    r.add("ambient_degree", A.ambient.degree)
    r.add("order", A.order())
    r.add("stabilizer_order", A.stab.order())
    r.add("degree", A.degree)


def cmd_check(args, caps: Caps) -> Report:
    A = _action(args.file, caps)
    r = Report()
    _basics(r, A)
    p = sp_predicates(A, caps)
    r.add("semiprimitive", p.is_semiprimitive)
    r.add("quasiprimitive", p.is_quasiprimitive)
    r.add("innately_transitive", p.is_innately_transitive)
    r.add("primitive", p.is_primitive)
    if not p.is_semiprimitive:
        w = p.witness
        r.add("witness_order", w.order())
        r.add("witness_gens", _gens_line(w.gens))
        return r
    rep = plinth_report(A, caps)
    r.add("plinth_count", len(rep.plinths))
    r.add("plinth_orders", " ".join(str(f["order"]) for f in rep.flags))
    r.add("plinth_regular", " ".join("yes" if f["regular"] else "no" for f in rep.flags))
    return r


def cmd_plinths(args, caps: Caps) -> Report:
    A = _action(args.file, caps)
    r = Report()
    _basics(r, A)
    w = semiprimitive_witness(A, caps)
    r.add("semiprimitive", w is None)
    rep = plinth_report(A, caps)
    r.add("plinth_count", len(rep.plinths))
    for i, (P, f) in enumerate(zip(rep.plinths, rep.flags)):
        r.add(f"plinth.{i}.order", f["order"])
        r.add(f"plinth.{i}.regular", f["regular"])
        r.add(f"plinth.{i}.perfect", f["perfect"])
        r.add(f"plinth.{i}.soluble", f["soluble"])
        r.add(f"plinth.{i}.gens", _gens_line(P.gens))
    r.add("superplinth_order", rep.superplinth.order())
    r.add("rad_order", rep.rad.order())
    return r


def cmd_rad(args, caps: Caps) -> Report:
    A = _action(args.file, caps)
    rep = plinth_report(A, caps)
    r = Report()
    r.add("plinth_count", len(rep.plinths))
    r.add("rad_order", rep.rad.order())
    r.add("rad_gens", _gens_line(rep.rad.gens))
    return r


def cmd_classify(args, caps: Caps) -> Report:
    A = _action(args.file, caps)
    r = Report()
    _basics(r, A)
    try:
        it = classify_it_type(A, caps)
        r.add("it_type", it.type)
        r.add("it_factors", it.k)
        if it.derived_rule:
            r.add("it_derived_rule", True)
    except NotInnatelyTransitive:
        r.add("it_type", "none")
    w = semiprimitive_witness(A, caps)
    r.add("semiprimitive", w is None)
    if w is None:
        s = classify_structure(A, caps, args.effort_cap)
        r.add("case", s.case)
        r.add("S_order", s.S.order())
        r.add("quotient_types", " ".join(sorted(s.quotient_types)))
        r.add("glue_witness", s.glue_witness.status if s.glue_witness is not None else "none")
        r.add("derived_rule", s.derived_rule)
    return r


def cmd_quotient(args, caps: Caps) -> Report:
    A = _action(args.file, caps)
    G = A.ambient
    gens = _elements(args.normal, G.degree, "--normal")
    N = generated_by(G, gens)
    if not is_normal(G, N):
        raise NotNormal("the given elements do not generate a normal subgroup")
    Q = quotient_action(A, N, caps)
    r = Report()
    r.add("normal_order", N.order())
    r.add("quotient_order", Q.order())
    r.add("quotient_degree", Q.degree)
    r.add("stabilizer_order", Q.stab.order())
    r.add("semiprimitive", sp_predicates(Q, caps).is_semiprimitive)
    r.add("realization_degree", Q.ambient.degree)
    r.add("quotient_gens", _gens_line(Q.ambient.gens))
    return r


def cmd_triple(args, caps: Caps) -> Report:
    r = Report()
    if args.action == "extract":
        A = _action(args.file, caps)
        if args.plinth:
            K = generated_by(A.ambient, _elements(args.plinth, A.ambient.degree, "--plinth"))
        else:
            K = plinth_report(A, caps).plinths[0]
        t = extract_triple(A, K, args.point, caps)
        text = format_triple(t)
        r.add("K_order", len(t.K))
        r.add("H_order", t.H.order())
        r.add("L_order", t.L.order())
        if args.output:
            Path(args.output).write_text(text)
        else:
            r.raw = text
        return r
    t = read_triple_file(args.file, caps)
    v = validate_triple(t, caps)
    r.add("K_order", len(t.K))
    r.add("H_order", t.H.order())
    r.add("L_order", t.L.order())
    r.add("valid", v.valid)
    if not v.valid:
        r.add("failed_condition", v.failed_condition)
        r.add("reason", v.reason)
    if args.action == "build" and v.valid:
        A = build_from_triple(t, caps, validate=False)
        r.add("degree", A.degree)
        r.add("order", A.order())
        r.add("stabilizer_order", A.stab.order())
        r.add("semiprimitive", sp_predicates(A, caps).is_semiprimitive)
        if args.output:
            Path(args.output).write_text(format_group_file(A.ambient, A.stab))
    return r


def cmd_glue(args, caps: Caps) -> Report:
    A1 = _action(args.file1, caps)
    A2 = _action(args.file2, caps)
    r = Report()
    if args.iso:
        mu = [parse_cycles(c.strip(), A2.ambient.degree).raw for c in args.iso.split(";")]
        source = "given"
    else:
        mu = find_glue_mu(A1, A2, caps=caps, effort_cap=args.effort_cap)
        source = "searched"
    if mu is None:
        r.add("glued", False)
        r.add("reason", "no compatible isomorphism between the stabilizers")
        return r
    A = glue_actions(A1, A2, mu, caps=caps)
    r.add("glued", True)
    r.add("mu_source", source)
    r.add("mu", _gens_line(mu))
    r.add("order", A.order())
    r.add("degree", A.degree)
    r.add("realization_degree", A.ambient.degree)
    r.add("stabilizer_order", A.stab.order())
    if A.order() == 2 * A.degree and A.degree >= 3:
        D = action_of_transitive_group(dihedral(A.degree))
        r.add("isomorphic_to_dihedral", is_perm_isomorphic(A, D, args.effort_cap, caps).status)
    if args.output:
        Path(args.output).write_text(format_group_file(A.ambient, A.stab))
    return r


def cmd_wreath(args, caps: Caps) -> Report:
    M = _action(args.file_m, caps)
    T = read_group_file(args.file_t).group()
    spec = WreathSpec(M, T, args.mode)
    A = wreath_build(spec, caps)
    r = Report()
    r.add("mode", args.mode)
    r.add("degree", A.degree)
    r.add("order", A.order())
    if args.mode == "product":
        r.add("criterion", wreath_sp_criterion(spec, caps))
        r.add("semiprimitive", wreath_direct_test(spec, caps))
    else:
        r.add("semiprimitive", sp_predicates(A, caps).is_semiprimitive)
    return r


def cmd_isocheck(args, caps: Caps) -> Report:
    A = _action(args.file1, caps)
    B = _action(args.file2, caps)
    res = is_perm_isomorphic(A, B, args.effort_cap, caps)
    r = Report()
    r.add("status", res.status)
    if res.reason:
        r.add("reason", res.reason)
    return r


def cmd_corpus(args, caps: Caps) -> Report:
    from .corpus import corpus_entries, run_manifest

    r = Report()
    total = failed = 0
    for e in corpus_entries(args.filter):
        try:
            res = run_manifest(e.build(), caps)
            bad = [c for c in res if not c.passed]
            status = "pass" if not bad else "fail"
            detail = f"{len(res) - len(bad)}/{len(res)}"
            if bad:
                detail += " " + ", ".join(c.name for c in bad)
        except SemiprimError as ex:
            status, detail = "fail", f"{type(ex).__name__}: {ex}"
        total += 1
        failed += status == "fail"
        r.add(e.name, f"{status} {detail}")
    r.add("entries", total)
    r.add("failed", failed)
    return r


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="semiprim", description="Semiprimitive permutation group toolkit.")
    p.add_argument("--degree-cap", type=int, dest="degree_cap")
    p.add_argument("--order-cap", type=int, dest="order_cap")
    p.add_argument("--effort-cap", type=int, dest="effort_cap")
    p.add_argument("--element-cap", type=int, dest="element_cap")
    p.add_argument("--porcelain", action="store_true", help="prefix reports with the format version")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, fn in (("check", cmd_check), ("plinths", cmd_plinths), ("rad", cmd_rad), ("classify", cmd_classify)):
        s = sub.add_parser(name)
        s.add_argument("file")
        s.set_defaults(func=fn)

    s = sub.add_parser("quotient")
    s.add_argument("file")
    s.add_argument("--normal", nargs="+", required=True, metavar="CYCLES")
    s.set_defaults(func=cmd_quotient)

    s = sub.add_parser("triple")
    s.add_argument("action", choices=["validate", "build", "extract"])
    s.add_argument("file")
    s.add_argument("--plinth", nargs="+", metavar="CYCLES")
    s.add_argument("--point", type=int, default=0)
    s.add_argument("--output")
    s.set_defaults(func=cmd_triple)

    s = sub.add_parser("glue")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("--iso", help="images of the first stabilizer's generators, separated by ';'")
    s.add_argument("--output")
    s.set_defaults(func=cmd_glue)

    s = sub.add_parser("wreath")
    s.add_argument("file_m")
    s.add_argument("file_t")
    s.add_argument("--mode", choices=["product", "imprimitive"], default="product")
    s.set_defaults(func=cmd_wreath)

    s = sub.add_parser("isocheck")
    s.add_argument("file1")
    s.add_argument("file2")
    s.set_defaults(func=cmd_isocheck)

    s = sub.add_parser("corpus")
    s.add_argument("action", choices=["run"])
    s.add_argument("--filter")
    s.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    try:
        caps = _caps(args)
        report = args.func(args, caps)
    except CapacityExceeded as e:
        print(f"capacity exceeded: {e}", file=sys.stderr)
        return 2
    except (SemiprimError, OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    sys.stdout.write(report.render(args.porcelain))
    raw = getattr(report, "raw", None)
    if raw:
        sys.stdout.write(raw)
    return 0


if __name__ == "__main__":
    sys.exit(main())
