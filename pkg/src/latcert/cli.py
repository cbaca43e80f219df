"""Command-line front end: build shells, verify their spherical-code
properties, and emit bound / energy certificates.

JSON is the machine interface (sorted keys, exact rationals as strings);
text reports are rendered from the same record.  Exit status is 0 when every
requested check is valid, 1 on a failed verification, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from contextlib import nullcontext
from fractions import Fraction

from . import energycert, gf2codes, lattice32, lpcert, sphercode
from .exactmath import fmt, parse_region, poly_from_json
from .gegenbauer import gegenbauer_expand


class UsageError(Exception):
    pass


def _thread_limiter(threads):
    if threads is None:
        return nullcontext()
    try:
        from threadpoolctl import threadpool_limits
    except ImportError:
        return nullcontext()
    return threadpool_limits(limits=threads)


def _load_code(source: str) -> gf2codes.BinaryCode:
    if source == "rm2_5":
        return gf2codes.reed_muller_2_5()
    if source == "xqr32":
        return gf2codes.extended_quadratic_residue_32()
    if not os.path.exists(source):
        raise UsageError(f"code source {source!r} is neither a builtin nor a file")
    return gf2codes.load_generator_matrix(source)


def _load_poly(source: str):
    if source.startswith("builtin:"):
        return lpcert.builtin_polynomial(source.split(":", 1)[1]).polynomial
    if not os.path.exists(source):
        raise UsageError(f"polynomial source {source!r} is neither builtin nor a file")
    with open(source) as fh:
        return poly_from_json(json.load(fh))


def _emit(record: dict, fmt_kind: str) -> None:
    if fmt_kind == "json":
        print(json.dumps(record, sort_keys=True, indent=2))
    else:
        _emit_text(record)


def _emit_text(record: dict, indent: str = "") -> None:
    for key in sorted(record):
        val = record[key]
        if isinstance(val, dict):
            print(f"{indent}{key}:")
            _emit_text(val, indent + "  ")
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            print(f"{indent}{key}:")
            for item in val:
                _emit_text(item, indent + "  ")
                print()
        else:
            print(f"{indent}{key}: {val}")


def cmd_build(args) -> int:
    code = _load_code(args.code)
    shell = lattice32.build_shell(code)
    lattice32.save_shell(shell, args.out)
    _emit(
        {
            "command": "build",
            "code": args.code,
            "count": shell.count,
            "out": args.out,
            "valid": True,
        },
        args.format,
    )
    return 0


def cmd_verify(args) -> int:
    shell = lattice32.load_shell(args.shell)
    with _thread_limiter(args.threads):
        mode = sphercode.ALL if args.full else args.sample
        inv = sphercode.check_distance_invariance(shell, sample=mode, seed=args.seed)
        if args.full:
            # exact global pair pass
            hist = sphercode.histogram(shell)
            hist_mode = "full"
        elif inv.invariant:
            # exact under the (sampled) distance-invariance evidence
            hist = sphercode.histogram_from_distribution(inv.distribution, shell.count)
            hist_mode = "extrapolated-from-sample"
        else:
            hist = None
            hist_mode = "unavailable"
        strength = (
            sphercode.design_strength(shell, cap=args.cap, hist=hist) if hist else None
        )
    record = {
        "command": "verify",
        "count": shell.count,
        "histogram_mode": hist_mode,
        "inner_products": [fmt(t) for t in sorted(hist.counts)] if hist else None,
        "histogram": {fmt(t): c for t, c in sorted(hist.counts.items())} if hist else None,
        "distance_distribution": (
            {fmt(t): c for t, c in sorted(inv.distribution.a.items())}
            if inv.distribution
            else None
        ),
        "invariant": inv.invariant,
        "invariance_mode": inv.mode,
        "points_checked": inv.checked,
        "moments": [fmt(m) for m in strength.moments.values] if strength else None,
        "design_strength": strength.tau if strength else None,
        "extra_vanishing_moments": list(strength.extra_vanishing) if strength else None,
        "valid": inv.invariant,
    }
    if inv.counterexample:
        (i, di), (j, dj) = inv.counterexample
        record["counterexample"] = {
            "points": [i, j],
            "distributions": [
                {fmt(t): c for t, c in sorted(di.a.items())},
                {fmt(t): c for t, c in sorted(dj.a.items())},
            ],
        }
    _emit(record, args.format)
    return 0 if inv.invariant else 1


def cmd_certify_max(args) -> int:
    poly = _load_poly(args.poly)
    cert = lpcert.certify_max_code(
        poly, args.dim, parse_region(args.T), Fraction(args.s), args.strength
    )
    _emit({"command": "certify-max", **cert.to_json_dict()}, args.format)
    return 0 if cert.valid else 1


def cmd_certify_design(args) -> int:
    poly = _load_poly(args.poly)
    cert = lpcert.certify_min_design(poly, args.dim, parse_region(args.T), args.tau)
    _emit({"command": "certify-design", **cert.to_json_dict()}, args.format)
    return 0 if cert.valid else 1


def cmd_energy(args) -> int:
    h = energycert.potential_by_spec(args.potential)
    cert = energycert.energy_lower_bound(h, precision=args.precision)
    if args.shell:
        shell = lattice32.load_shell(args.shell)
        with _thread_limiter(args.threads):
            hist = sphercode.histogram(shell)
        energy = energycert.code_energy(hist, h, precision=args.precision)
        cert = cert.with_energy(energy)
    _emit({"command": "energy", **cert.to_json_dict()}, args.format)
    return 0 if cert.valid else 1


def cmd_venkov(args) -> int:
    shell = lattice32.load_shell(args.shell)
    record = {"command": "venkov"}
    ok = True
    if args.witness:
        x, z = lattice32.witness_pair()
        e22 = lattice32.venkov_e22(shell, x, z)
        record["witness_e22"] = e22
        ok = ok and e22 == 60
    if args.sample:
        values = lattice32.venkov_sample(shell, args.sample, args.seed)
        record["sampled_e22"] = values
        record["seed"] = args.seed
        ok = ok and all(v % 2 == 0 and 0 <= v <= 60 for v in values)
    record["valid"] = ok
    _emit(record, args.format)
    return 0 if ok else 1


def cmd_selftest(args) -> int:
    results = []

    def check(name, fn):
        try:
            passed = bool(fn())
            detail = None
        except Exception as exc:  # a fixture crash is a failure, not an abort
            passed = False
            detail = str(exc)
        results.append((name, passed, detail))
        line = "PASS" if passed else "FAIL"
        print(f"[{line}] {name}" + (f" ({detail})" if detail else ""))

    b41 = lpcert.builtin_polynomial("maxcode")
    b51 = lpcert.builtin_polynomial("mindesign")
    bp7 = lpcert.builtin_polynomial("p7")
    check("max-code polynomial f(1) = 675/1024",
          lambda: b41.polynomial(Fraction(1)) == Fraction(675, 1024))
    check("max-code expansion matches the 11 reference coefficients",
          lambda: gegenbauer_expand(32, b41.polynomial.expand()).coeffs
          == lpcert.MAX_CODE_EXPANSION)
    check("min-design polynomial f(1) = 135/64",
          lambda: b51.polynomial(Fraction(1)) == Fraction(135, 64))
    check("min-design f_0 = 1/69632",
          lambda: gegenbauer_expand(32, b51.polynomial.expand()).coeffs[0]
          == Fraction(1, 69632))
    check("partial product P_7 expansion matches the 8 reference coefficients",
          lambda: gegenbauer_expand(32, bp7.polynomial.expand()).coeffs
          == lpcert.P7_EXPANSION)
    check("max-code certificate: valid with bound 146880",
          lambda: (lambda c: c.valid and c.bound == 146880)(
              lpcert.certify_max_code(
                  b41.polynomial, 32, lpcert.MAX_CODE_T, Fraction(1, 2), 3)))
    check("min-design certificate: valid with bound 146880",
          lambda: (lambda c: c.valid and c.bound == 146880)(
              lpcert.certify_min_design(
                  b51.polynomial, 32, lpcert.MIN_DESIGN_T, 7)))
    check("design distribution recovered as {1,1240,31744,80910,31744,1240,1}",
          lambda: sorted(energycert.design_distribution().a.values())
          == [1, 1, 1240, 1240, 31744, 31744, 80910])

    codes = [gf2codes.reed_muller_2_5(), gf2codes.extended_quadratic_residue_32()]
    for code in codes:
        rep = gf2codes.code_report(code)
        check(f"{code.name}: [32,16,8] doubly-even self-dual",
              lambda rep=rep: rep.self_dual and rep.doubly_even
              and rep.min_distance == 8)

    shells = {}
    with _thread_limiter(args.threads):
        for code in codes:
            shell = lattice32.build_shell(code)
            shells[code.name] = shell
            check(f"{code.name}: shell has 146880 vectors",
                  lambda shell=shell: shell.count == 146880)
            check(f"{code.name}: norm-2 layer empty",
                  lambda code=code: lattice32.check_extremal(code))
            x, z = lattice32.witness_pair()
            check(f"{code.name}: witness Venkov pair e_2,2 = 60",
                  lambda shell=shell, x=x, z=z: lattice32.venkov_e22(shell, x, z) == 60)
            vals = lattice32.venkov_sample(shell, 100, 1)
            check(f"{code.name}: 100 sampled e_2,2 values even in [0,60]",
                  lambda vals=vals: all(v % 2 == 0 and 0 <= v <= 60 for v in vals))

        shell = shells["rm2_5"]
        hist = sphercode.histogram(shell)
        support = {Fraction(v, 4) for v in (-4, -2, -1, 0, 1, 2)}
        check("rm2_5: inner products exactly {-1,-1/2,-1/4,0,1/4,1/2}",
              lambda: set(hist.counts) == support)
        dist = sphercode.distance_distribution_at(shell, shell.vectors[0])
        expected = {Fraction(-1): 1, Fraction(-1, 2): 1240, Fraction(-1, 4): 31744,
                    Fraction(0): 80910, Fraction(1, 4): 31744, Fraction(1, 2): 1240,
                    Fraction(1): 1}
        check("rm2_5: distance distribution at a point matches", lambda: dist.a == expected)
        strength = sphercode.design_strength(shell, cap=12, hist=hist)
        check("rm2_5: design strength 7 1/2 (tau = 7, M_10 = 0, M_8 != 0)",
              lambda: strength.tau == 7 and 10 in strength.extra_vanishing
              and strength.moments[8] != 0)
        inv = sphercode.check_distance_invariance(shell, sample=1000, seed=7)
        check("rm2_5: 1000-point sampled distance invariance", lambda: inv.invariant)
        h = energycert.invlin()
        cert = energycert.energy_lower_bound(h)
        energy = energycert.code_energy(hist, h)
        check("invlin energy certificate valid", lambda: cert.valid)
        check("invlin energy attained exactly on the shell",
              lambda: energy == cert.lower_bound)
        check("invlin quadrature form equals dual form exactly",
              lambda: cert.lower_bound == cert.dual_bound)

    failed = [name for name, ok, _ in results if not ok]
    print(f"\n{len(results) - len(failed)}/{len(results)} fixtures passed")
    return 0 if not failed else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="latcert",
        description="Exact certificates for the 146880-point spherical codes "
        "of extremal even unimodular 32-dimensional lattices.",
    )
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument(
        "--threads",
        type=int,
        default=os.environ.get("LATCERT_THREADS"),
        help="worker threads for the pair passes (default: library default; "
        "LATCERT_THREADS as fallback)",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct the norm-4 shell of a code's lattice")
    p.add_argument("--code", required=True, help="rm2_5 | xqr32 | generator file")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("verify", help="full spherical-code report for a shell")
    p.add_argument("--shell", required=True)
    p.add_argument("--sample", type=int, default=1000,
                   help="points for the sampled invariance check")
    p.add_argument("--full", action="store_true",
                   help="gated full per-point invariance pass")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=12, help="moment scan cap")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("certify-max", help="maximal T-avoiding code bound")
    p.add_argument("--poly", required=True, help="builtin:<name> or JSON file")
    p.add_argument("--dim", type=int, default=32)
    p.add_argument("--T", default="empty")
    p.add_argument("--s", required=True, help="maximal inner product, e.g. 1/2")
    p.add_argument("--strength", type=int, required=True)
    p.set_defaults(fn=cmd_certify_max)

    p = sub.add_parser("certify-design", help="tight T-avoiding design bound")
    p.add_argument("--poly", required=True)
    p.add_argument("--dim", type=int, default=32)
    p.add_argument("--T", default="empty")
    p.add_argument("--tau", type=int, required=True)
    p.set_defaults(fn=cmd_certify_design)

    p = sub.add_parser("energy", help="energy lower-bound certificate")
    p.add_argument("--shell", help="also compute the shell's exact energy and gap")
    p.add_argument("--potential", required=True,
                   help="invlin | expt | riesz:<s> | gauss:<alpha>")
    p.add_argument("--precision", type=int, default=60)
    p.set_defaults(fn=cmd_energy)

    p = sub.add_parser("venkov", help="Venkov e_2,2 statistics")
    p.add_argument("--shell", required=True)
    p.add_argument("--witness", action="store_true")
    p.add_argument("--sample", type=int, default=0)
    p.add_argument("--seed", type=int, default=1)
    p.set_defaults(fn=cmd_venkov)

    p = sub.add_parser("selftest", help="run the built-in regression fixtures")
    p.set_defaults(fn=cmd_selftest)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.threads is not None:
        args.threads = int(args.threads)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
