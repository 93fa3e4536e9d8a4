"""Command-line front end: batch computation and verification suites.

Exit codes: 0 all checks pass, 1 a verification failed, 2 usage error.
JSON output is deterministic (sorted keys, canonical term and partition
orders), so golden files are byte-stable.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import chainduality, classcalc, forms, geomverify, grassring
from . import pontryagin, suite, symfun, towers
from .coeffs import GWBASE, INTEGERS, RATIONALS
from .polynomial import PolyRing


class UsageError(Exception):
    pass


COEFFS = {"Integers": INTEGERS, "Rationals": RATIONALS, "GWBase": GWBASE}


def _emit(args, payload, human_lines=None):
    if args.json:
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        lines = human_lines if human_lines is not None else \
            [json.dumps(payload, sort_keys=True, indent=2)]
        text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _bidegree_note(w):
    return "weight %d = bidegree (%d, %d)" % (w, 4 * w, 2 * w)


def cmd_schur(args):
    try:
        lam = symfun.Partition(tuple(int(p) for p in args.partition.split(",")
                                     if p != "")) if args.partition else symfun.EMPTY
    except ValueError as err:
        raise UsageError("--partition: %s" % err)
    poly = symfun.schur_in_elementary(lam, args.gens)
    payload = {
        "partition": lam.to_json(),
        "gens": args.gens,
        "weight": lam.weight(),
        "bidegree": list(grassring.GrassRing.bidegree_of_weight(lam.weight())),
        "polynomial": symfun.poly_json(poly),
    }
    human = ["s%r in e_1..e_%d  [%s]" % (lam, args.gens,
                                         _bidegree_note(lam.weight())),
             "  " + poly.pretty()]
    _emit(args, payload, human)
    return 0


def cmd_hgr_ring(args):
    if args.r > args.n:
        raise UsageError("r exceeds n")
    try:
        ring = grassring.present(args.r, args.n, COEFFS[args.coeff])
    except grassring.ParameterError as err:
        raise UsageError(str(err))
    payload = ring.to_json()
    human = ["A(HGr(%d, %d)) over %s" % (args.r, args.n, args.coeff),
             "  rank %d" % ring.rank(),
             "  ideal: " + ", ".join(h.pretty() for h in ring.ideal_gens),
             "  basis: " + ", ".join(repr(l) + " [%s]" % _bidegree_note(l.weight())
                                     for l in ring.basis)]
    _emit(args, payload, human)
    return 0


def cmd_restriction(args):
    try:
        src = grassring.present(args.source_r, args.source_n)
        tgt = grassring.present(args.target_r, args.target_n)
        rho = grassring.restriction(src, tgt, args.kind)
    except grassring.ParameterError as err:
        raise UsageError(str(err))
    payload = rho.to_json()
    payload["kernel"] = [l.to_json() for l in rho.kernel_basis()]
    human = ["restriction %s: (r=%d, n=%d) -> (r=%d, n=%d)"
             % (args.kind, args.source_r, args.source_n,
                args.target_r, args.target_n),
             "  kernel: " + (", ".join(repr(l) for l in rho.kernel_basis())
                             or "0")]
    _emit(args, payload, human)
    return 0


def _parse_bundle(text):
    try:
        desc = json.loads(text)
    except json.JSONDecodeError as err:
        raise UsageError("--bundle is not valid JSON: %s" % err)
    if "split" in desc:
        roots = desc["split"]
        if not isinstance(roots, list) or not all(isinstance(r, int) for r in roots):
            raise UsageError("--bundle split: expected a list of integers")
        ps = pontryagin.elementary_in(list(roots))  # integer coefficients
        bundle = pontryagin.FormalSymplecticBundle(2 * len(roots), ps,
                                                   roots=list(roots))
        return bundle, list(ps)
    if "rank" in desc and "p" in desc:
        rank, ps = desc["rank"], desc["p"]
        if not isinstance(ps, list) or not all(isinstance(x, int) for x in ps):
            raise UsageError("--bundle p: expected a list of integers")
        if rank % 2:
            raise UsageError("--bundle rank: symplectic rank must be even")
        return pontryagin.FormalSymplecticBundle.abstract(rank, ps), list(ps)
    raise UsageError("--bundle: need {\"split\": [..]} or {\"rank\": .., \"p\": [..]}")


def cmd_pontryagin(args):
    bundles = []
    coeff_lists = []
    for text in args.bundle:
        bundle, coeffs = _parse_bundle(text)
        bundles.append(bundle)
        coeff_lists.append(coeffs)
    payload = {"bundles": [{"rank": b.rank, "p": c}
                           for b, c in zip(bundles, coeff_lists)]}
    human = ["bundle %d: rank %d, p = %s" % (i, b.rank, c)
             for i, (b, c) in enumerate(zip(bundles, coeff_lists))]
    if len(bundles) >= 2:
        total = bundles[0]
        for b in bundles[1:]:
            ps = pontryagin.cartan_sum(total, b)
            total = pontryagin.FormalSymplecticBundle.abstract(
                total.rank + b.rank, ps)
        payload["cartan_sum"] = {"rank": total.rank, "p": list(total.ps)}
        human.append("cartan sum: rank %d, p = %s" % (total.rank, total.ps))
    _emit(args, payload, human)
    return 0


def cmd_classcheck(args):
    if args.check == "gw-formula":
        v = classcalc.verify_gw_formula(args.n, args.i)
    elif args.check == "k0-formula":
        v = classcalc.verify_k0_formula(args.n, args.i)
    else:
        j = args.j if args.j is not None else args.i
        nf, rel = classcalc.mu_class(args.n, args.i, j)
        payload = {"check": "mu", "n": args.n, "i": args.i, "j": j,
                   "class": nf.to_json(), "rank": rel.rank_of(nf)}
        human = ["mu(n=%d, i=%d, j=%d) = %r" % (args.n, args.i, j, nf),
                 "rank %d (= 4ij = %d)" % (rel.rank_of(nf), 4 * args.i * j)]
        _emit(args, payload, human)
        return 0 if rel.rank_of(nf) == 4 * args.i * j else 1
    payload = v.to_json()
    human = ["%s: %s" % (v.name, "pass" if v.ok else "FAIL"),
             "  lhs normal form: %r" % v.lhs,
             "  rhs normal form: %r" % v.rhs,
             "  rank: lhs %d, rhs %d" % (v.notes["rank_lhs"], v.notes["rank_rhs"]),
             "  rewrite steps: %d" % len(v.trace)]
    _emit(args, payload, human)
    return 0 if v.ok else 1


def _parse_gram(text):
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as err:
        raise UsageError("--matrix is not valid JSON: %s" % err)
    if not isinstance(rows, list) or not rows:
        raise UsageError("--matrix: expected a nonempty array of rows")
    out = []
    for row in rows:
        if not isinstance(row, list) or len(row) != len(rows):
            raise UsageError("--matrix: must be square")
        out.append([Fraction(str(x)) for x in row])
    return out


def _field_for(name):
    if name == "Q":
        return forms.RationalsField()
    if name == "RealClosed":
        return forms.RealClosedField()
    if name.startswith("F"):
        return forms.FiniteField(int(name[1:]))
    raise UsageError("unknown field %r" % name)


def _ring_for(name):
    if name == "Z":
        return forms.ZZ
    if name in ("Z[1/2]", "Z1/2", "Zhalf"):
        return forms.ZHALF
    if name.startswith("F"):
        return forms.FiniteFieldRing(int(name[1:]))
    if name == "Q[x]":
        return forms.QX
    raise UsageError("unknown ring %r" % name)


def cmd_gw(args):
    if args.verb == "diagonalize":
        field = _field_for(args.field)
        gram = _parse_gram(args.matrix)
        if args.field.startswith("F"):
            gram = [[field.coerce(x) for x in row] for row in gram]
        try:
            form = forms.BilinearForm(gram, "symmetric", field=field)
            res = forms.diagonalize(form)
        except forms.DegenerateFormError as err:
            payload = {"degenerate": True,
                       "radical_dimension": err.radical_dimension}
            _emit(args, payload, ["degenerate form; radical dimension %d"
                                  % err.radical_dimension])
            return 1
        payload = {"diagonal": [str(e) for e in res.entries],
                   "classes": [str(c) for c in res.classes],
                   "matrix": [[str(x) for x in row] for row in res.matrix]}
        _emit(args, payload, ["diagonal: " + ", ".join(str(e) for e in res.entries),
                              "classes:  <%s>" % ", ".join(str(c) for c in res.classes)])
        return 0
    if args.verb == "symplectic-basis":
        gram = _parse_gram(args.matrix)
        try:
            form = forms.BilinearForm(gram, "skew")
            p = forms.symplectic_basis(form)
        except forms.DegenerateFormError as err:
            _emit(args, {"error": str(err)}, [str(err)])
            return 1
        payload = {"matrix": [[str(x) for x in row] for row in p]}
        _emit(args, payload, ["change of basis:"] +
              ["  " + " ".join(str(x) for x in row) for row in p])
        return 0
    if args.verb == "ko1":
        ring = _ring_for(args.ring)
        try:
            res = forms.ko1_euclidean(ring)
        except forms.FormsError as err:
            _emit(args, {"error": str(err)}, ["error: %s" % err])
            return 1
        payload = {"ring": ring.name, "order": res.order,
                   "structure": res.structure(),
                   "generators": res.generators()}
        _emit(args, payload, ["KO_1(%s) = %s, order %d"
                              % (ring.name, res.structure(), res.order)])
        return 0
    if args.verb == "karoubi":
        if args.ring in ("Z[1/2]", "Z1/2", "Zhalf"):
            table = forms.zhalf_karoubi_table()
            expected = forms.ko1_euclidean(forms.ZHALF)
        elif args.ring.startswith("F"):
            q = int(args.ring[1:])
            table = forms.fq_karoubi_table(q)
            expected = forms.ko1_euclidean(forms.FiniteFieldRing(q))
        else:
            raise UsageError("karoubi tables exist for Z[1/2] and F<q>")
        report = forms.karoubi_check(table, expected_ko1=expected)
        payload = report.to_json()
        human = ["karoubi(%s): %s" % (table.name,
                                      "pass" if report.ok else
                                      "FAIL (%s)" % report.violated)]
        if report.ok:
            human.append("  KO_1 order %d" % report.derived["KO1_order"])
        _emit(args, payload, human)
        return 0 if report.ok else 1
    raise UsageError("unknown gw verb %r" % args.verb)


def cmd_koszul(args):
    k = chainduality.koszul(args.n)
    payload = k.to_json()
    report = {"theta_symmetric": k.is_symmetric(),
              "chain_map": k.chain_defect() is None,
              "nondegenerate": k.is_nondegenerate()}
    homotopies = {}
    if args.invert:
        chainduality.contracting_homotopy(k, args.invert)
        homotopies[str(args.invert)] = "ds + sd = id verified"
    payload["verification"] = report
    payload["homotopies"] = homotopies
    human = ["koszul(%d): ranks %s" % (args.n,
                                       [k.complex.rank(i) for i in range(args.n + 1)]),
             "  Theta symmetric: %s; chain map: %s; nondegenerate: %s"
             % (report["theta_symmetric"], report["chain_map"],
                report["nondegenerate"])]
    if homotopies:
        human.append("  inverted x%d: ds + sd = id verified" % args.invert)
    _emit(args, payload, human)
    return 0 if all(report.values()) else 1


def cmd_tower(args):
    try:
        spec = json.loads(args.spec)
    except json.JSONDecodeError as err:
        raise UsageError("--spec is not valid JSON: %s" % err)
    for key in ("levels", "maps"):
        if key not in spec:
            raise UsageError("--spec: missing field %r" % key)
    try:
        levels = [towers.FGAbelian(lv["gens"], lv.get("relations", []))
                  for lv in spec["levels"]]
        tower = towers.Tower(levels, spec["maps"],
                             tail=spec.get("tail", "finite-prefix-only"))
    except (KeyError, TypeError) as err:
        raise UsageError("--spec: bad tower data (%s)" % err)
    except towers.TowerError as err:
        raise UsageError("--spec: %s" % err)
    res = towers.check_mittag_leffler(tower, args.window)
    payload = res.to_json()
    human = ["%s: %s" % (res.kind, res.reason)]
    if args.depth is not None:
        try:
            lim = towers.lim_of_surjective(tower, args.depth)
            payload["lim"] = {"depth": lim.depth, "group": repr(lim.group),
                              "lim1": "0"}
            human.append("lim at depth %d: %r (lim^1 = 0)"
                         % (lim.depth, lim.group))
        except towers.TowerError as err:
            payload["lim"] = {"error": str(err)}
            human.append("lim: %s" % err)
    _emit(args, payload, human)
    return 0 if res.kind == "certificate" else 1


def cmd_verify(args):
    if args.target == "m-path":
        report = geomverify.verify_M_path()
    elif args.target == "m1-factorization":
        report = geomverify.verify_M1_factorization()
    elif args.target == "quadratic-section":
        ok = geomverify.quadratic_section_identity(args.r)
        report = geomverify.PathReport({"identity r=%d" % args.r: ok})
    elif args.target == "symplectic-lift":
        report = _demo_symplectic_lift()
    else:
        raise UsageError("unknown verify target %r" % args.target)
    payload = report.to_json()
    human = ["%s: %s" % (args.target, "pass" if report.ok else "FAIL")]
    human += ["  %s %s" % ("ok " if v else "FAIL", k)
              for k, v in report.checks.items()]
    _emit(args, payload, human)
    return 0 if report.ok else 1


def _demo_symplectic_lift():
    ring = PolyRing(("t",))
    t = ring.gen(0)
    one, zero = ring.one(), ring.zero()
    phi = [[zero, one, t, zero],
           [-one, zero, zero, zero],
           [-t, zero, zero, one],
           [zero, zero, -one, zero]]
    u = [[one, zero, zero, zero], [zero, one, zero, zero],
         [zero, zero, one, zero], [zero, zero, zero, one]]
    v = [[zero] * 4, [zero, zero, one, zero], [zero] * 4, [zero] * 4]
    checks = {
        "first-order witness solves exactly":
            geomverify.verify_symplectic_lift(phi, t, u, v, []),
        "congruence mod g^2":
            geomverify.verify_symplectic_lift(phi, t, u, v, [],
                                              modulus_power=2),
        "perturbed v fails": not geomverify.verify_symplectic_lift(
            phi, t, u, [[zero] * 4, [zero, zero, one, one],
                        [zero] * 4, [zero] * 4], []),
    }
    return geomverify.PathReport(checks)


def cmd_suite(args):
    results = suite.run_all()
    payload = {"criteria": results,
               "all_pass": all(r["ok"] for r in results)}
    human = ["%s  %2d  %-28s %s" % ("PASS" if r["ok"] else "FAIL",
                                    r["id"], r["name"], r["detail"])
             for r in results]
    human.append("suite: %s" % ("all criteria pass" if payload["all_pass"]
                                else "FAILURES PRESENT"))
    _emit(args, payload, human)
    return 0 if payload["all_pass"] else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hgrcalc",
        description="Exact calculus for quaternionic Grassmannian cohomology, "
                    "Grothendieck-Witt forms, Koszul dualities and towers.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true",
                       help="emit canonical JSON instead of human text")
        p.add_argument("--out", metavar="PATH", default=None,
                       help="write output to a file")

    p = sub.add_parser("schur", help="Schur polynomial in the e-generators")
    p.add_argument("--partition", default="", metavar="P1,P2,..")
    p.add_argument("--gens", type=int, required=True, metavar="R")
    common(p)
    p.set_defaults(func=cmd_schur)

    p = sub.add_parser("hgr-ring", help="presentation of A(HGr(r,n))")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--coeff", choices=sorted(COEFFS), default="Integers")
    common(p)
    p.set_defaults(func=cmd_hgr_ring)

    p = sub.add_parser("restriction", help="Schur-coordinate restriction map")
    p.add_argument("--source-r", type=int, required=True)
    p.add_argument("--source-n", type=int, required=True)
    p.add_argument("--target-r", type=int, required=True)
    p.add_argument("--target-n", type=int, required=True)
    p.add_argument("--kind", choices=("alpha", "beta"), required=True)
    common(p)
    p.set_defaults(func=cmd_restriction)

    p = sub.add_parser("pontryagin", help="Pontryagin coefficient lists")
    p.add_argument("--bundle", action="append", required=True,
                   metavar="JSON", help="{\"split\": [roots]} or "
                   "{\"rank\": 2r, \"p\": [coeffs]}; repeatable")
    common(p)
    p.set_defaults(func=cmd_pontryagin)

    p = sub.add_parser("classcheck", help="formal class identity verification")
    p.add_argument("--check", choices=("gw-formula", "k0-formula", "mu"),
                   required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_classcheck)

    p = sub.add_parser("gw", help="bilinear form algebra")
    p.add_argument("verb", choices=("diagonalize", "symplectic-basis",
                                    "ko1", "karoubi"))
    p.add_argument("--matrix", metavar="JSON", default=None)
    p.add_argument("--field", default="Q")
    p.add_argument("--ring", default="Z[1/2]")
    common(p)
    p.set_defaults(func=cmd_gw)

    p = sub.add_parser("koszul", help="Koszul complex with its symmetric form")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--invert", type=int, default=None,
                   help="verify the contracting homotopy for this variable")
    common(p)
    p.set_defaults(func=cmd_koszul)

    p = sub.add_parser("tower", help="Mittag-Leffler analysis of a tower")
    p.add_argument("--spec", metavar="JSON", required=True,
                   help="{levels: [{gens, relations}], maps: [..], tail}")
    p.add_argument("--window", type=int, default=4)
    p.add_argument("--depth", type=int, default=None,
                   help="also compute the surjective-tower limit at depth")
    common(p)
    p.set_defaults(func=cmd_tower)

    p = sub.add_parser("verify", help="matrix, section and lift identities")
    p.add_argument("target", choices=("m-path", "m1-factorization",
                                      "quadratic-section", "symplectic-lift"))
    p.add_argument("--r", type=int, default=3,
                   help="rank for quadratic-section")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("suite", help="run the whole acceptance battery")
    common(p)
    p.set_defaults(func=cmd_suite)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as err:
        sys.stderr.write("usage error: %s\n" % err)
        return 2
    except (classcalc.ClassCalcError, grassring.ParameterError,
            chainduality.ChainError, towers.TowerError) as err:
        sys.stderr.write("usage error: %s\n" % err)
        return 2


if __name__ == "__main__":
    sys.exit(main())
