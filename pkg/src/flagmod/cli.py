"""Command line front end: ``kl``, ``reduce``, ``permod`` and ``flags``.

Exit codes: 0 success, 1 a verification failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from fractions import Fraction

import numpy as np

from . import __version__, meataxe
from .chevalley import enumerate_flags, parse_group
from .coxeter import build_system, format_subset, parse_subset, parse_word, telephone, word
from .fields import GF, is_prime, parse_field
from .klpoly import Poly, kl_table
from .permod import (
    CrossCharacteristicError,
    Lattice,
    PermutationModule,
    b_fixed_in_orbit_sums,
    d_submodule,
    dimension_formula,
    rank_one_checks,
    quotient_action,
    meataxe_length,
    parabolic_quotient_check,
    semisimple_prime,
    sl2_identity_check,
    tau_consistency_checks,
    u_average_check,
    vanishing_checks,
    Check,
)
from .walgebra import EModel, reduce_to_generator

log = logging.getLogger("flagmod")

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def _emit(text: str, output: str | None):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- kl -------------------------------------------------------------------------


def cmd_kl(args) -> int:
    W = build_system(args.type)
    rows = [(word(y), word(w), list(p.coeffs)) for y, w, p in kl_table(W, args.nontrivial_only)]
    if args.format == "json":
        text = _dumps({
            "type": W.label,
            "order": W.order,
            "nontrivial_only": args.nontrivial_only,
            "pairs": len(rows),
            "table": [{"y": y, "w": w, "coeffs": c} for y, w, c in rows],
        })
    elif args.format == "csv":
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["y_word", "w_word", "polynomial"])
        for y, w, c in rows:
            out.writerow([y, w, json.dumps(c)])
        text = buf.getvalue()
    else:
        width = max([len(y) for y, _, _ in rows] + [1])
        lines = [f"{W.label}: {len(rows)} pairs"]
        for y, w, c in rows:
            lines.append(f"  {y:<{width}}  {w}  ->  {Poly(c)}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK


# -- reduce ---------------------------------------------------------------------


def parse_vector_terms(model: EModel, terms: list[str]):
    """``["s1:1", "e:-1/2"]`` -> model vector; repeated words add up."""
    f = model.field
    v = model.vector()
    for term in terms:
        if ":" not in term:
            raise UsageError(f"vector term {term!r} must look like WORD:VALUE")
        w_text, c_text = term.rsplit(":", 1)
        try:
            c = Fraction(c_text.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"bad coefficient {c_text!r}") from None
        w = parse_word(model.W, w_text)
        if w not in model._Y:
            raise UsageError(f"{word(w)} is not in Y_J")
        try:
            c = f(c)
        except ZeroDivisionError:
            raise UsageError(f"coefficient {c_text!r} is not defined in {f!r}") from None
        v = v + model.basis_vector(w, c)
    return v


def _certificate_dict(A, cert) -> dict:
    f = A.model.field
    return {
        "input": repr(A),
        "steps": cert.steps,
        "cases": cert.cases,
        "psi": [list(p) for p in cert.trace],
        "final_scalar": f.to_str(cert.final_scalar),
        "valid": cert.validate(A),
    }


def cmd_reduce(args) -> int:
    W = build_system(args.type)
    field = parse_field(args.field)
    if args.fuzz:
        subsets = [W._check_subset(parse_subset(args.J))] if args.J is not None else W.subsets()
        rng = np.random.default_rng(args.seed)
        results = []
        t0 = time.perf_counter()
        for J in subsets:
            model = EModel(W, J, field)
            ok = 0
            for _ in range(args.fuzz):
                A = model.random_vector(rng)
                if reduce_to_generator(A).validate(A):
                    ok += 1
            results.append({"J": format_subset(J), "valid": ok, "total": args.fuzz})
        report = {
            "type": W.label,
            "field": repr(field),
            "seed": args.seed,
            "fuzz": args.fuzz,
            "results": results,
            "seconds": round(time.perf_counter() - t0, 3) if args.timing else None,
        }
        if not args.timing:
            del report["seconds"]
        all_ok = all(r["valid"] == r["total"] for r in results)
        if args.format == "json":
            text = _dumps(report)
        else:
            text = "".join(f"{W.label} J={r['J']} {field!r}: {r['valid']}/{r['total']} certificates valid\n"
                           for r in results)
        _emit(text, args.output)
        return EXIT_OK if all_ok else EXIT_CHECK

    if args.J is None:
        raise UsageError("--J is required unless --fuzz is given")
    model = EModel(W, parse_subset(args.J), field)
    if not args.vector:
        raise UsageError("give at least one WORD:VALUE term")
    A = parse_vector_terms(model, args.vector)
    if not A:
        raise UsageError("the vector is zero")
    cert = reduce_to_generator(A)
    data = {"type": W.label, "J": format_subset(model.J), "field": repr(field), **_certificate_dict(A, cert)}
    if args.format == "json":
        text = _dumps(data)
    else:
        lines = [f"input: {data['input']}", f"psi: {tuple(cert.trace[0])}"]
        for j, case, p in zip(cert.steps, cert.cases, cert.trace[1:]):
            lines.append(f"  tau_{j}  (case {case})  psi -> {tuple(p)}")
        lines.append(f"steps: {cert.steps}")
        lines.append(f"final scalar: {data['final_scalar']}")
        lines.append(f"valid: {data['valid']}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK if data["valid"] else EXIT_CHECK


# -- permod ---------------------------------------------------------------------


def involution_check(rank: int) -> Check:
    """Involutions of ``S_n`` (type ``A_{n-1}``, ``f = n - 1``) against ``2^f``.

    The involution count is the length of the regular module of ``S_n``
    (the telephone number ``T(n)``); when it exceeds ``2^f`` some finite
    quotient ``E_{J,q}`` cannot stay irreducible over every field extension.
    """
    W = build_system(f"A{rank}")
    inv, bound, n = W.count_involutions(), 2**rank, rank + 1
    ok = inv == telephone(n)
    if inv > bound:
        verdict = "T(n) > 2^f: the criterion for a non-quasi-finite E_J holds"
    else:
        verdict = "T(n) = 2^f: the criterion for a non-quasi-finite E_J does not apply"
    return Check("involutions_vs_2^f", ok, f"A{rank}: {inv} involutions, T({n}) = {telephone(n)}, 2^f = {bound}; {verdict}")


def permod_report(group, char: int, seed: int = 0, level: str = "full", cap: int = 10_000) -> dict:
    """Everything ``permod`` reports, as a plain dictionary."""
    if char < 0 or (char and not is_prime(char)):
        raise ValueError(f"char must be 0 or a prime, got {char}")
    if char == group.p:
        raise CrossCharacteristicError(f"char {char} equals the defining characteristic {group.p}")
    used = char if char else semisimple_prime(group)
    field = GF(used)
    semisimple = group.order % used != 0
    W = group.W
    f = W.rank
    M = PermutationModule(group, frozenset(), field, cap)
    lattice = Lattice(M)

    dims_M = {}
    for J in W.subsets():
        dims_M[format_subset(J)] = PermutationModule(group, J, field, cap).dim
    dims_E = {format_subset(J): lattice.e_quotient(J).dims[2] for J in W.subsets()}

    comp = meataxe_length(M, seed=seed)
    composition = {
        "factor_dims": comp.factor_dims,
        "length": comp.length,
        "two_to_f": 2**f,
        "semisimple": semisimple,
        "seed": seed,
        "splits": comp.splits,
        "attempts": comp.attempts,
    }

    checks: list[Check] = []
    involutions = W.count_involutions()
    if comp.length == 2**f:
        relation = "equals"
    else:
        relation = "exceeds" if comp.length > 2**f else "is below"
    checks.append(Check("composition_length_vs_2^f", True, f"length {comp.length} {relation} 2^f = {2 ** f}"))
    if semisimple:
        checks.append(Check("composition_length_equals_involutions", comp.length == involutions,
                            f"length {comp.length}, involutions in W = {involutions}"))
        checks.append(Check("e_dims_sum_to_flag_count", sum(dims_E.values()) == M.dim,
                            f"sum {sum(dims_E.values())}, dim k[G/B] = {M.dim}"))
        e_factors = {}
        for J in W.subsets():
            E = lattice.e_quotient(J)
            gens = quotient_action(M, E.submodule, E.upper)
            e_factors[format_subset(J)] = meataxe.composition_factors(gens, field, seed=seed).factor_dims
        composition["e_factors"] = e_factors
        union = sorted(d for dims in e_factors.values() for d in dims)
        checks.append(Check("e_factors_partition_composition", union == comp.factor_dims,
                            f"union of E_J factors {union}"))
        reducible = [J for J, dims in e_factors.items() if len(dims) > 1]
        checks.append(Check("reducible_e_quotients_match_length_excess",
                            len(union) - len(e_factors) == comp.length - 2**f,
                            f"reducible E_J: {reducible or 'none'}"))
    for J in W.subsets():
        D = d_submodule(group, J, field)[1]
        want = dimension_formula(group, J)
        checks.append(Check(f"d_submodule_dim_J{format_subset(J)}", D.dim == want, f"{D.dim} vs formula {want}"))
        if semisimple:
            e = dims_E[format_subset(J)]
            checks.append(Check(f"e_dim_equals_d_dim_J{format_subset(J)}", D.dim == e, f"{D.dim} vs {e}"))
    if level == "full":
        checks.append(sl2_identity_check(group))
        checks.extend(u_average_check(M))
        for J in W.subsets():
            checks.extend(rank_one_checks(M, J))
            checks.extend(tau_consistency_checks(group, J, field))
            checks.extend(vanishing_checks(group, J, field))
            checks.append(b_fixed_in_orbit_sums(group, J, field))
            checks.extend(parabolic_quotient_check(group, J, field, lattice))
    checks.append(involution_check(f))
    return {
        "group": str(group),
        "n": group.n,
        "q": group.q,
        "char": char,
        "char_used": used,
        "seed": seed,
        "level": level,
        "dims": {"k[G/B]": M.dim, "M_J": dims_M, "E_J": dims_E},
        "composition": composition,
        "checks": [c.as_dict() for c in checks],
    }


def cmd_permod(args) -> int:
    group = parse_group(args.group, args.n, args.q)
    report = permod_report(group, args.char, seed=args.seed, level=args.level, cap=args.cap)
    if args.report == "json":
        text = _dumps(report)
    else:
        lines = [f"{report['group']} over GF({report['char_used']})  seed={report['seed']}",
                 f"dim k[G/B] = {report['dims']['k[G/B]']}"]
        for J, d in report["dims"]["M_J"].items():
            lines.append(f"  J={J:<8} dim M_J = {d:<5} dim E_J = {report['dims']['E_J'][J]}")
        c = report["composition"]
        lines.append(f"composition factors {c['factor_dims']} (length {c['length']}, 2^f = {c['two_to_f']})")
        for ch in report["checks"]:
            lines.append(f"  [{'PASS' if ch['pass'] else 'FAIL'}] {ch['name']}: {ch['detail']}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK if all(c["pass"] for c in report["checks"]) else EXIT_CHECK


# -- flags ----------------------------------------------------------------------


def cmd_flags(args) -> int:
    group = parse_group(args.group, args.n, args.q)
    flags = enumerate_flags(group)
    if args.format == "json":
        text = _dumps({"group": str(group), "count": len(flags), "flags": [str(p) for p in flags]})
    else:
        text = "".join(f"{p}\n" for p in flags)
    _emit(text, args.output)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="flagmod", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"flagmod {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    kl = sub.add_parser("kl", help="Kazhdan-Lusztig polynomials of a finite Weyl group")
    kl.add_argument("--type", required=True, help="Cartan type, e.g. A3")
    kl.add_argument("--nontrivial-only", action="store_true", help="skip pairs with P = 1")
    kl.add_argument("--format", choices=["csv", "json", "text"], default="csv")
    kl.add_argument("--output")
    kl.set_defaults(func=cmd_kl)

    red = sub.add_parser("reduce", help="drive a vector of the Weyl-level model to a multiple of D_J")
    red.add_argument("--type", required=True)
    red.add_argument("--J", help="subset of the index set, e.g. [0] or 0,1 (0-based)")
    red.add_argument("--field", default="QQ", help="QQ or a prime, e.g. 5")
    red.add_argument("vector", nargs="*", help="terms WORD:VALUE, e.g. s1:1 e:-1/2")
    red.add_argument("--fuzz", type=int, default=0, help="reduce this many random vectors per J")
    red.add_argument("--seed", type=int, default=0)
    red.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identity)")
    red.add_argument("--format", choices=["text", "json"], default="text")
    red.add_argument("--output")
    red.set_defaults(func=cmd_reduce)

    pm = sub.add_parser("permod", help="permutation modules of SL_n(F_q): dimensions, composition, checks")
    pm.add_argument("--group", default="SL")
    pm.add_argument("--n", type=int)
    pm.add_argument("--q", type=int, required=True)
    pm.add_argument("--char", type=int, required=True,
                    help="coefficient characteristic (0: least prime above |G|)")
    pm.add_argument("--seed", type=int, default=0)
    pm.add_argument("--level", choices=["basic", "full"], default="full")
    pm.add_argument("--cap", type=int, default=10_000, help="largest module dimension allowed")
    pm.add_argument("--report", choices=["json", "text"], default="text")
    pm.add_argument("--output")
    pm.set_defaults(func=cmd_permod)

    fl = sub.add_parser("flags", help="list the points of G/B in Bruhat normal form")
    fl.add_argument("--group", default="SL")
    fl.add_argument("--n", type=int)
    fl.add_argument("--q", type=int, required=True)
    fl.add_argument("--format", choices=["text", "json"], default="text")
    fl.add_argument("--output")
    fl.set_defaults(func=cmd_flags)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (UsageError, ValueError, IndexError) as exc:
        sys.stderr.write(f"flagmod {args.command}: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
