"""Command line front end.

    defring semigroup jumps --gens 3,4 --p 3
    defring as adf|group|rep|local --p 3 --s 1 [--t 0,5]
    defring tangent pcyclic --p 3 --s 2 [--oracle]
    defring tangent rep --group FILE --n 2
    defring tangent ordinary --p 3 --r 2 --lambda 1
    defring hensel lift --p 3 --s 1 --direction 0
    defring paper examples

Field elements given on the command line are element indices: the integer
sum c_i p^i stands for sum c_i z^i in the power basis of the canonical
modulus.  Exit status: 0 on success, 1 on a domain error, 2 on bad usage.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Callable

from . import addpoly, ascurve, deform, pseries
from .semigroup import jump_report, semigroup
from .ffield import Matrix, format_grid, frobenius, make_field

DEFAULT_SEED = 20240521


class _Output:
    def __init__(self, args):
        self.json = args.json
        self.out = args.out

    def emit(self, data: dict, human: str) -> None:
        text = json.dumps(data, sort_keys=True) if self.json else human
        print(text)
        if self.out:
            with open(self.out, "w") as fh:
                json.dump(data, fh, indent=2, sort_keys=True)
                fh.write("\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _curve(args) -> ascurve.ASCurve:
    K = make_field(args.p, 4 * args.s)
    ts = tuple(K.from_index(k) for k in (args.t or []))
    return ascurve.ASCurve(args.p, args.s, ts, K)


# --- semigroup ------------------------------------------------------------------

def cmd_semigroup_jumps(args, out: _Output) -> None:
    S = semigroup(args.gens)
    rep = jump_report(S, args.p)
    data = rep.to_json()
    data["conductor"] = S.conductor
    human = (f"semigroup <{', '.join(map(str, S.generators))}>, conductor {S.conductor}, p = {args.p}\n"
             f"m = {rep.m}; pole numbers up to m: {list(rep.poles_below)}\n"
             f"candidate jumps: {list(rep.candidate_jumps)}")
    out.emit(data, human)


# --- the p-cyclic family --------------------------------------------------------

def cmd_as_adf(args, out: _Output) -> None:
    C = _curve(args)
    A = ascurve.ad_f(C)
    out.emit({"p": C.p, "s": C.s, "ad_f": A.to_json(), "text": repr(A)}, f"Ad_f(Y) = {A!r}")


def cmd_as_group(args, out: _Output) -> None:
    C = _curve(args)
    G = ascurve.automorphism_group(C)
    Z = G.center()
    data = G.to_json()
    data["commutator_is_center"] = G.commutator_subgroup() == sorted(Z)
    data["quotient_elementary_abelian"] = G.quotient_is_elementary_abelian(Z, C.p)
    human = (f"|G| = {G.order}, |Z(G)| = {len(Z)}, [G,G] = Z(G): {data['commutator_is_center']}, "
             f"G/Z elementary abelian: {data['quotient_elementary_abelian']}")
    out.emit(data, human)


def _elements(args, G) -> list[int]:
    if args.element is not None:
        if not 0 <= args.element < G.order:
            raise ValueError(f"element index must lie in 0..{G.order - 1}")
        return [args.element]
    return [G.index_of(x, 0) for x in G.roots.vectors] + [G.index_of(G.curve.ambient.zero(), 1)]


def cmd_as_rep(args, out: _Output) -> None:
    C = _curve(args)
    G = ascurve.automorphism_group(C)
    items, lines = [], []
    for g in _elements(args, G):
        e = G.elements[g]
        M = ascurve.representation(C, e)
        items.append({"index": g, "y": e.y.to_json(), "c": e.central_part, "matrix": M.to_json()})
        lines.append(f"g = {g}  (y = {e.y!r}, c = {e.central_part})\n{format_grid(M.entries)}")
    out.emit({"basis": ["1"] + [f"X^{j}" for j in range(1, C.q + 1)] + ["W"], "elements": items},
             "\n".join(lines))


def cmd_as_local(args, out: _Output) -> None:
    C = _curve(args)
    G = ascurve.automorphism_group(C)
    prec = args.precision or 4 * C.m + 2
    items, lines = [], []
    for g in _elements(args, G):
        sigma = ascurve.local_action(C, G.elements[g], prec)
        i = pseries.order_function(sigma)
        iv = None if i == pseries.INFINITE else i
        items.append({"index": g, "sigma": sigma.image.to_json(), "order": iv})
        lines.append(f"g = {g}: i(g) = {i}\n  sigma(t) = {sigma.image!r}")
    out.emit({"precision": prec, "elements": items}, "\n".join(lines))


# --- tangent spaces -------------------------------------------------------------

def cmd_tangent_pcyclic(args, out: _Output) -> None:
    cert = deform.krull_certificate(args.p, args.s, oracle=args.oracle)
    data = cert.to_json()
    if not args.oracle:
        data.pop("oracle_dim")
    human = f"Krull dimension for (p, s) = ({args.p}, {args.s}): {cert.dim}"
    if args.oracle:
        human += f"\ndual-number oracle: {cert.oracle_dim}"
    human += "\nconstraint matrix:\n" + format_grid(cert.constraint_matrix)
    out.emit(data, human)


def load_group_file(path: str, n: int) -> deform.UnitriangularRep:
    """{"field": {"p", "n"}, "table": [[int]], "identity": int, "matrices": [[[coeffs]]]}."""
    with open(path) as fh:
        data = json.load(fh)
    try:
        fd = data["field"]
        K = make_field(int(fd["p"]), int(fd.get("n", 1)))
        G = ascurve.GroupTable(list(range(len(data["table"]))), data["table"], int(data.get("identity", 0)))
        mats = [Matrix(K, [[K.element(c) for c in row] for row in M]) for M in data["matrices"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed group file: {exc}")
    if any(M.rows != n for M in mats):
        raise ValueError(f"matrices in {path} are not {n}x{n}")
    return deform.UnitriangularRep(G, n, K, mats)


def cmd_tangent_rep(args, out: _Output) -> None:
    rep = load_group_file(args.group, args.n)
    rpt = deform.cocycle_space(rep)
    data = rpt.to_json()
    out.emit(data, f"cocycles {rpt.dim_cocycles}, coboundaries {rpt.dim_coboundaries}, "
                   f"tangent {rpt.dim_tangent}")


def cmd_tangent_ordinary(args, out: _Output) -> None:
    rpt = deform.ordinary_tangent_report(args.p, args.r, args.lam)
    data = rpt.to_json()
    data["dim"] = rpt.dim_tangent
    out.emit(data, f"tangent dimension {rpt.dim_tangent} (shape lifts {rpt.dim_shape}, "
                   f"trivial {rpt.dim_trivial})")


def cmd_hensel_lift(args, out: _Output) -> None:
    C = _curve(args)
    G = ascurve.automorphism_group(C)
    cert = deform.krull_certificate(args.p, args.s)
    if not 0 <= args.direction < len(cert.v_basis):
        raise ValueError(f"direction index must lie in 0..{len(cert.v_basis) - 1}")
    prec = args.precision or 4 * C.m + 2
    TT = deform.matrix_lift_tuple(G, cert.v_basis[args.direction], prec)
    rpt = deform.hensel_report(TT, prec, random.Random(args.seed))
    data = rpt.to_json()
    data["direction"] = [a.to_json() for a in TT.direction]
    data["lifts"] = {str(g): TT.lift(g).image.truncate(prec).to_json() for g in TT.generators}
    lines = [f"direction A = {TT.direction}",
             f"last-row residual zero to t^{rpt.residual_precision}: {rpt.residual_zero}",
             f"reduction mod eps recovers sigma(t): {rpt.reduces_to_special_fibre}",
             f"unique under seed perturbation: {rpt.unique_under_seed_perturbation}"]
    lines += [f"group law at ({g}, {h}): {ok}" for (g, h), ok in rpt.group_law.items()]
    lines += [f"compatible at {g}: {ok}" for g, ok in rpt.compatible.items()]
    out.emit(data, "\n".join(lines))


# --- worked examples --------------------------------------------------------------

def worked_examples(seed: int = DEFAULT_SEED) -> list[dict]:
    rng = random.Random(seed)
    rows: list[dict] = []

    def check(name: str, expected, fn: Callable[[], object]) -> None:
        try:
            got = fn()
        except (ValueError, ArithmeticError) as exc:
            got = f"error: {exc}"
        rows.append({"name": name, "expected": expected, "got": got, "pass": got == expected})

    def jumps(gens, p):
        return list(jump_report(semigroup(gens), p).candidate_jumps)

    check("jumps <3,4> p=3", [1, 4], lambda: jumps((3, 4), 3))
    check("jumps <3,10> p=3", [1, 4, 7, 10], lambda: jumps((3, 10), 3))
    check("jumps <5,6> p=5", [1, 6], lambda: jumps((5, 6), 5))
    for p, s in ((3, 1), (3, 2)):
        check(f"Ad_f monomial ({p},{s})", f"Y^{p ** (2 * s)} + Y",
              lambda p=p, s=s: repr(ascurve.ad_f(ascurve.ASCurve(p, s))))
    K = make_field(3, 8)
    check("Frobenius symmetry of Ad_f, random t (3,2)", True, lambda: all(
        _frobenius_symmetric(ascurve.ad_f(ascurve.ASCurve(3, 2, (K.random(rng),), K)), 2) for _ in range(20)))
    for p, s in ((3, 1), (3, 2), (5, 1)):
        check(f"root space dim ({p},{s})", 2 * s, lambda p=p, s=s: deform.monomial_root_basis(p, s).dim)
    C = ascurve.ASCurve(3, 1)
    G = ascurve.automorphism_group(C)
    Z = G.center()
    check("group order (3,1)", 27, lambda: G.order)
    check("center order (3,1)", 3, lambda: len(Z))
    check("G/Z elementary abelian (3,1)", True, lambda: G.quotient_is_elementary_abelian(Z, 3))
    check("[G,G] = Z(G) (3,1)", True, lambda: G.commutator_subgroup() == sorted(Z))
    rho = ascurve.group_representation(G)
    check("rep homomorphism (3,1)", True, lambda: all(
        rho[G.mul(a, b)] == rho[a] @ rho[b] for a in range(G.order) for b in range(G.order)))
    I = Matrix.identity(C.ambient, C.dim)
    check("rep faithful (3,1)", [G.identity], lambda: [g for g in range(G.order) if rho[g] == I])
    y0 = G.index_of(G.roots.vectors[0], 0)
    check("order of non-central g (3,1)", 2,
          lambda: pseries.order_function(ascurve.local_action(C, G.elements[y0])))
    z1 = G.index_of(C.ambient.zero(), 1)
    check("order of central g (3,1)", 5,
          lambda: pseries.order_function(ascurve.local_action(C, G.elements[z1])))
    for p, s in ((3, 1), (3, 2), (5, 1), (7, 1)):
        check(f"Krull dim ({p},{s})", [s, s], lambda p=p, s=s: [
            deform.krull_dim_pcyclic(p, s), deform.krull_dim_pcyclic_oracle(p, s)])
    check("coef0 vacuous (3,2)", True, lambda: deform.pcyclic_oracle_report(3, 2).coef0_vacuous)
    for r in (1, 2, 3):
        check(f"n=2 hull |G|=3^{r}", [r, 0], lambda r=r: _n2(r))
    for args, want in (((3, 1, 1), 0), ((3, 2, 1), 1), ((5, 3, 2), 2)):
        check(f"ordinary n=3 {args}", want, lambda args=args: deform.ordinary_tangent_dim(*args))
    A = deform.krull_certificate(3, 1).v_basis[0]
    hr = deform.hensel_report(deform.matrix_lift_tuple(G, A), 4 * C.m + 2, random.Random(seed))
    check("Hensel residual (3,1)", True, lambda: hr.residual_zero)
    check("Hensel reduction (3,1)", True, lambda: hr.reduces_to_special_fibre)
    check("Hensel uniqueness (3,1)", True, lambda: hr.unique_under_seed_perturbation)
    check("Hensel group law (3,1)", True, lambda: all(hr.group_law.values()))
    return rows


def _frobenius_symmetric(A: addpoly.AdditivePolynomial, s: int) -> bool:
    return all(A.coeff(s + lam) == frobenius(A.coeff(s - lam), lam) for lam in range(1, s + 1))


def _n2(r: int) -> list[int]:
    G, chi, K = deform.elementary_abelian_character(3, r)
    rpt = deform.cocycle_space(deform.character_rep(G, chi, K))
    return [rpt.dim_tangent, rpt.dim_coboundaries]


def cmd_worked_examples(args, out: _Output) -> None:
    rows = worked_examples(args.seed)
    width = max(len(r["name"]) for r in rows)
    lines = [f"{'PASS' if r['pass'] else 'FAIL'}  {r['name'].ljust(width)}  expected {r['expected']}, "
             f"got {r['got']}" for r in rows]
    passed = sum(r["pass"] for r in rows)
    lines.append(f"{passed}/{len(rows)} passed")
    out.emit({"examples": rows, "passed": passed, "total": len(rows)}, "\n".join(lines))


# --- parser ---------------------------------------------------------------------

def _global_flags(parser: argparse.ArgumentParser, defaults: dict) -> None:
    parser.add_argument("--json", action="store_true", default=defaults["json"],
                        help="print JSON instead of text")
    parser.add_argument("--out", metavar="PATH", default=defaults["out"],
                        help="also write the JSON result to PATH")
    parser.add_argument("--seed", type=int, default=defaults["seed"], help="seed for random draws")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="defring", description=__doc__.split("\n")[0])
    _global_flags(parser, {"json": False, "out": None, "seed": DEFAULT_SEED})
    # the same flags after the subcommand; SUPPRESS keeps them from resetting earlier ones
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, dict.fromkeys(("json", "out", "seed"), argparse.SUPPRESS))
    top = parser.add_subparsers(dest="group", required=True)

    sg = top.add_parser("semigroup").add_subparsers(dest="cmd", required=True)
    j = sg.add_parser("jumps", parents=[common])
    j.add_argument("--gens", type=_int_list, required=True)
    j.add_argument("--p", type=int, required=True)
    j.set_defaults(func=cmd_semigroup_jumps)

    asp = top.add_parser("as").add_subparsers(dest="cmd", required=True)
    for name, fn in (("adf", cmd_as_adf), ("group", cmd_as_group), ("rep", cmd_as_rep),
                     ("local", cmd_as_local)):
        c = asp.add_parser(name, parents=[common])
        c.add_argument("--p", type=int, required=True)
        c.add_argument("--s", type=int, required=True)
        c.add_argument("--t", type=_int_list, help="t_1..t_{s-1} as element indices of F_{p^4s}")
        if name in ("rep", "local"):
            c.add_argument("--element", type=int, help="group element index (default: generators and a central element)")
        if name == "local":
            c.add_argument("--precision", type=int)
        c.set_defaults(func=fn)

    tg = top.add_parser("tangent").add_subparsers(dest="cmd", required=True)
    c = tg.add_parser("pcyclic", parents=[common])
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--s", type=int, required=True)
    c.add_argument("--oracle", action="store_true")
    c.set_defaults(func=cmd_tangent_pcyclic)
    c = tg.add_parser("rep", parents=[common])
    c.add_argument("--group", required=True, metavar="FILE")
    c.add_argument("--n", type=int, required=True)
    c.set_defaults(func=cmd_tangent_rep)
    c = tg.add_parser("ordinary", parents=[common])
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--lambda", dest="lam", type=int, required=True)
    c.set_defaults(func=cmd_tangent_ordinary)

    hs = top.add_parser("hensel").add_subparsers(dest="cmd", required=True)
    c = hs.add_parser("lift", parents=[common])
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--s", type=int, required=True)
    c.add_argument("--t", type=_int_list)
    c.add_argument("--direction", type=int, required=True, help="index into the basis of V")
    c.add_argument("--precision", type=int)
    c.set_defaults(func=cmd_hensel_lift)

    pp = top.add_parser("paper").add_subparsers(dest="cmd", required=True)
    c = pp.add_parser("examples", parents=[common])
    c.set_defaults(func=cmd_worked_examples)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args, _Output(args))
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
