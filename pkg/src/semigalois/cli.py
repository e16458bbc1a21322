"""Command-line front end: ``semigalois analyze|factor|correspond|realize|rationalize``.

All output is JSON with sorted keys.  Exit codes: 0 ok, 1 input error,
2 Weierstrass violation, 3 numerical failure, 4 cap exceeded, 5 search
found nothing.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import __version__
from .covering import correspondence, degree_tower, factor, solution_cover, splitting_cover
from .errors import InputError, SearchBudgetExhausted, SemiGaloisError, SingularSystem
from .perm import Permutation, generate, identify, orbits
from .problem import ProblemSpec, spec_to_json
from .rationalize import approximate_coeffs, emit_function_field_poly
from .realize import (
    realize_abelian_product,
    realize_cyclic,
    realize_rational,
    realize_search,
    realize_symmetric,
)
from .tracking import monodromy
from .vandermonde import MAX_N, check_sign, galois_residual, galois_system, log_abs_delta


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; the contract here reserves 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _load(path: str) -> ProblemSpec:
    if path == "-":
        try:
            data = json.load(sys.stdin)
        except json.JSONDecodeError as exc:
            raise InputError(f"stdin: invalid JSON ({exc})") from exc
    else:
        try:
            with open(path) as fh:
                data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON ({exc})") from exc
        except OSError as exc:
            raise InputError(f"{path}: {exc.strerror}") from exc
    # realize output embeds the spec under "spec"
    if isinstance(data, dict) and "spec" in data and "domain" not in data:
        data = data["spec"]
    return ProblemSpec.from_json(data)


def _delta_checks(roots) -> dict:
    n = len(roots)
    if n > MAX_N:
        return {"skipped": f"n = {n} exceeds {MAX_N}"}
    a = np.asarray(roots, dtype=complex)
    if n > 1:
        d = np.abs(a[:, None] - a[None, :])
        np.fill_diagonal(d, np.inf)
        a = (a - a.mean()) / d.min()
    alpha = [complex(v) for v in a]
    out = {"log_abs_delta": log_abs_delta(alpha), "normalization": "unit minimum separation"}
    checks = []
    for k in range(n - 1):
        sigma = Permutation.from_cycles([[k + 1, k + 2]], n)
        rep = check_sign(alpha, sigma, raise_on_fail=False)
        checks.append(rep)
    out["transposition_checks"] = checks
    try:
        y = galois_system(alpha, tol=float("inf"))
        out["galois_residual"] = galois_residual(alpha, y)
    except SingularSystem as exc:
        out["galois_residual"] = None
        out["galois_error"] = str(exc)
    return out


def cmd_analyze(args) -> dict:
    prob = _load(args.spec)
    f = prob.spec
    m = monodromy(f, workers=args.workers)
    G = generate(m.gens, cap=prob.order_cap, degree=f.n)
    orbs = orbits(G)
    split = splitting_cover(m, cap=prob.order_cap)
    sol = solution_cover(m)
    report = {
        "group": {
            "order": G.order,
            "generators": [str(g) for g in m.gens],
            "identification": identify(G),
            "transitive": G.is_transitive(),
        },
        "orbits": [list(o) for o in orbs],
        "irreducible": len(orbs) == 1,
        "factor_degrees": sorted(len(o) for o in orbs),
        "splitting_cover_degree": split.degree,
        "solution_cover": {"degree": sol.degree, "components": len(sol.components)},
        "tower": degree_tower(m),
        "diagnostics": m.to_json(),
    }
    if args.correspond:
        report["correspondence"] = correspondence(m, cap=prob.lattice_cap).to_json()
    if args.delta:
        report["delta"] = _delta_checks(m.base.roots)
    return report


def _factor_json(fac) -> dict:
    out = []
    for spec in fac.factors:
        out.append(spec_to_json(spec)["polynomial"])
    return {
        "factors": out,
        "degrees": fac.degrees,
        "orbits": [list(o) for o in fac.orbits],
        "exact": fac.exact,
        "max_error": fac.max_error,
    }


def cmd_factor(args) -> dict:
    prob = _load(args.spec)
    return _factor_json(factor(prob.spec))


def cmd_correspond(args) -> dict:
    prob = _load(args.spec)
    return correspondence(monodromy(prob.spec), cap=prob.lattice_cap).to_json()


def _int_list(s: str) -> list[int]:
    try:
        return [int(t) for t in s.split(",") if t.strip()]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {s!r}") from exc


def _parse_gens(s: str) -> list[Permutation]:
    """``"(1 2);(1 2 3)"``: generators separated by semicolons."""
    try:
        return [Permutation.parse(t.strip()) for t in s.split(";") if t.strip()]
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cmd_realize(args) -> dict:
    if args.cyclic is not None:
        r = realize_cyclic(args.cyclic)
    elif args.abelian is not None:
        r = realize_abelian_product(_int_list(args.abelian), seed=args.seed)
    elif args.symmetric is not None:
        r = realize_symmetric(args.symmetric, budget=args.budget, seed=args.seed)
    else:
        r = realize_search(_parse_gens(args.gens), budget=args.budget, seed=args.seed)
    if args.rational:
        r = realize_rational(r)
    out = r.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(_dump(out["spec"], args.pretty) + "\n")
    return out


def cmd_rationalize(args) -> dict:
    prob = _load(args.spec)
    g, rep = approximate_coeffs(prob.spec, den_bound=args.den_bound)
    return {
        "spec": spec_to_json(g),
        "homotopy": rep.to_json(),
        "function_field": emit_function_field_poly(g).splitlines(),
    }


def _dump(obj, pretty: bool) -> str:
    if pretty:
        return json.dumps(obj, sort_keys=True, indent=2)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="semigalois", description="Monodromy groups of Weierstrass polynomials.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="compact JSON output (default)")
        sp.add_argument("--pretty", action="store_true", help="indented JSON output")

    a = sub.add_parser("analyze", help="monodromy group, orbits and covers of a spec")
    a.add_argument("spec", help="problem spec JSON file, or - for stdin")
    a.add_argument("--correspond", action="store_true", help="add the subgroup/cover table")
    a.add_argument("--delta", action="store_true", help="add Vandermonde checks at the base fiber")
    a.add_argument("--workers", type=int, default=1)
    common(a)
    a.set_defaults(func=cmd_analyze)

    f = sub.add_parser("factor", help="factor f by monodromy orbits")
    f.add_argument("spec")
    common(f)
    f.set_defaults(func=cmd_factor)

    c = sub.add_parser("correspond", help="subgroups and their covers")
    c.add_argument("spec")
    common(c)
    c.set_defaults(func=cmd_correspond)

    r = sub.add_parser("realize", help="build a spec with a prescribed group")
    g = r.add_mutually_exclusive_group(required=True)
    g.add_argument("--cyclic", type=int, metavar="N")
    g.add_argument("--abelian", metavar="N1,N2,...")
    g.add_argument("--symmetric", type=int, metavar="N")
    g.add_argument("--gens", metavar='"(1 2);(1 2 3)"')
    r.add_argument("--budget", type=int, default=200)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--rational", action="store_true", help="move coefficients into Q(i)[x]")
    r.add_argument("--out", help="also write the bare spec JSON here")
    common(r)
    r.set_defaults(func=cmd_realize)

    q = sub.add_parser("rationalize", help="Gaussian-rational coefficients, same group")
    q.add_argument("spec")
    q.add_argument("--den-bound", type=int, default=1000)
    common(q)
    q.set_defaults(func=cmd_rationalize)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.func(args)
    except SearchBudgetExhausted as exc:
        result = {"status": "not found", "message": str(exc),
                  "target": getattr(exc, "target", None), "seed": getattr(args, "seed", None)}
        print(_dump({"version": __version__, **result}, args.pretty))
        return exc.exit_code
    except SemiGaloisError as exc:
        err = {"error": type(exc).__name__, "message": str(exc), "version": __version__}
        x = getattr(exc, "x", None)
        if x is not None:
            err["x"] = [complex(x).real, complex(x).imag]
        print(_dump(err, True), file=sys.stderr)
        return exc.exit_code
    result = {"version": __version__, "seed": getattr(args, "seed", None), **result}
    print(_dump(result, args.pretty))
    return 0


if __name__ == "__main__":
    sys.exit(main())
