"""The acceptance battery: every criterion as a self-contained check.

Each criterion returns {"id", "name", "ok", "detail"}; run_all executes the
full battery.  Randomized criteria use fixed seeds so the battery is
deterministic, and the brute-force oracles here (tableau enumeration,
generic polynomial division) are independent of the code paths they check.
"""

import random
from itertools import combinations
from math import comb, gcd

from . import chainduality, classcalc, forms, geomverify, grassring
from . import pontryagin, symfun, towers
from .coeffs import GWElement, GW_EPS, GW_ONE
from .polynomial import Poly, PolyRing


def criterion_grassmannian_rank():
    bad = []
    for n in range(0, 8):
        for r in range(0, n + 1):
            ring = grassring.present(r, n)
            if len(ring.basis) != comb(n, r):
                bad.append((r, n))
    return _result(1, "grassmannian-rank",
                   not bad, "all (r, n) with n <= 7" if not bad else str(bad))


def criterion_qpbt_small():
    ok = True
    notes = []
    r12 = grassring.present(1, 2)
    e1 = r12.poly_ring().gen(0)
    ok &= [h for h in r12.ideal_gens] == [e1 * e1]
    ok &= r12.basis == [symfun.EMPTY, symfun.Partition((1,))]
    for n in range(2, 8):
        ring = grassring.present(1, n)
        e1n = ring.poly_ring().gen(0, n)
        if ring.ideal_gens != [e1n]:
            ok = False
            notes.append("ideal of present(1,%d)" % n)
        if ring.basis != [symfun.Partition((k,)) if k else symfun.EMPTY
                          for k in range(n)]:
            ok = False
            notes.append("basis of present(1,%d)" % n)
    return _result(2, "qpbt-small-case", bool(ok),
                   "; ".join(notes) if notes else "ideal (p1^n), basis 1..t^{n-1}")


def criterion_recurrence():
    for r in range(1, 5):
        for k in range(1, 13):
            acc = symfun.complete_from_elementary(k, r)
            for i in range(1, min(k, r) + 1):
                sign = -1 if i % 2 else 1
                acc = acc + sign * (symfun.elementary(i, r)
                                    * symfun.complete_from_elementary(k - i, r))
            if not acc.is_zero():
                return _result(3, "h-e-recurrence", False, "fails at k=%d r=%d" % (k, r))
    return _result(3, "h-e-recurrence", True, "k <= 12, r <= 4")


# -- independent tableau oracle for the Schur criterion ----------------------


def _variable_ring(m):
    return PolyRing(tuple("x%d" % i for i in range(1, m + 1)))


def _elementary_in_vars(i, m):
    ring = _variable_ring(m)
    if i == 0:
        return ring.one()
    if i < 0 or i > m:
        return ring.zero()
    acc = ring.zero()
    for subset in combinations(range(m), i):
        e = [0] * m
        for j in subset:
            e[j] = 1
        acc = acc + ring.monomial(e)
    return acc


def _ssyt_polynomial(shape, m):
    ring = _variable_ring(m)
    shape = tuple(shape)
    if not shape:
        return ring.one()
    terms = {}
    cells = [(i, j) for i in range(len(shape)) for j in range(shape[i])]

    def rec(pos, tableau):
        if pos == len(cells):
            e = [0] * m
            for row in tableau:
                for v in row:
                    e[v - 1] += 1
            key = tuple(e)
            terms[key] = terms.get(key, 0) + 1
            return
        i, j = cells[pos]
        lo = 1
        if j > 0:
            lo = max(lo, tableau[i][j - 1])
        if i > 0:
            lo = max(lo, tableau[i - 1][j] + 1)
        for v in range(lo, m + 1):
            tableau[i].append(v)
            rec(pos + 1, tableau)
            tableau[i].pop()

    rec(0, [[] for _ in shape])
    return Poly(ring, terms)


def _partitions_of(w):
    if w == 0:
        return [()]
    out = []

    def rec(remaining, maxpart, acc):
        if remaining == 0:
            out.append(tuple(acc))
            return
        for p in range(min(remaining, maxpart), 0, -1):
            rec(remaining - p, p, acc + [p])

    rec(w, w, [])
    return out


def criterion_schur_oracle():
    for w in range(0, 9):
        for shape in _partitions_of(w):
            for m in (1, 2, 3, 4):
                lam = symfun.Partition(shape)
                in_e = symfun.schur_in_elementary(lam, m)
                ring = _variable_ring(m)
                expanded = ring.zero()
                for exps, coeff in in_e.terms.items():
                    term = ring.const(coeff)
                    for i, e in enumerate(exps):
                        for _ in range(e):
                            term = term * _elementary_in_vars(i + 1, m)
                    expanded = expanded + term
                want = _ssyt_polynomial(shape, m)
                if expanded != want:
                    return _result(4, "schur-tableau-oracle", False,
                                   "fails at %s in %d vars" % (shape, m))
    return _result(4, "schur-tableau-oracle", True,
                   "all weights <= 8 in 1 to 4 variables")


def criterion_restriction():
    for n in range(1, 7):
        for r in range(0, n + 1):
            tgt = grassring.present(r, n)
            for kind, (sr, sn) in (("alpha", (r, n + 1)), ("beta", (r + 1, n + 1))):
                src = grassring.present(sr, sn)
                rho = grassring.restriction(src, tgt, kind)
                for lam in src.basis:
                    img = rho(src.schur(lam))
                    inside = lam.fits_in_box(tgt.r, tgt.n - tgt.r)
                    if inside and img != tgt.schur(lam):
                        return _result(5, "restriction-box-truncation", False,
                                       "%s (r=%d,n=%d) at %r" % (kind, r, n, lam))
                    if not inside and not img.is_zero():
                        return _result(5, "restriction-box-truncation", False,
                                       "%s (r=%d,n=%d) at %r" % (kind, r, n, lam))
    return _result(5, "restriction-box-truncation", True,
                   "alpha and beta for all (r, n) with n <= 6")


def criterion_class_identities():
    for n in range(1, 5):
        for i in range(-n, n + 1):
            v = classcalc.verify_gw_formula(n, i)
            if not v.ok or v.notes["rank_lhs"] != 0 or v.notes["rank_rhs"] != 0:
                return _result(6, "class-identities", False,
                               "gw-formula fails at n=%d i=%d" % (n, i))
            v = classcalc.verify_k0_formula(n, i)
            if not v.ok or v.notes["rank_lhs"] != 0 or v.notes["rank_rhs"] != 0:
                return _result(6, "class-identities", False,
                               "k0-formula fails at n=%d i=%d" % (n, i))
    return _result(6, "class-identities", True,
                   "gw and k0 formulas, 1 <= n <= 4, |i| <= n, rank 0 both sides")


def criterion_tau_consistency():
    for n in range(1, 5):
        for i in range(-n, n + 1):
            lhs = pontryagin.p1_of_class(2 * n, "U").value \
                + i * classcalc.FormalClass.of("H")
            rhs = classcalc.FormalClass.of("U") \
                + (i - n) * classcalc.FormalClass.of("H")
            if lhs != rhs:
                return _result(7, "tau-consistency", False,
                               "n=%d i=%d" % (n, i))
    return _result(7, "tau-consistency", True,
                   "p1(U) + i*h = [U] + (i-n)[H] for n <= 4")


def criterion_ko1():
    res = forms.ko1_euclidean(forms.ZHALF)
    if res.order != 8 or res.structure() != "(Z/2)^3":
        return _result(8, "ko1-euclidean", False, "Z[1/2] gave %r" % res)
    for q in (3, 5, 7, 9):
        r = forms.ko1_euclidean(forms.FiniteFieldRing(q))
        if r.order != 4:
            return _result(8, "ko1-euclidean", False, "F%d gave order %d" % (q, r.order))
    return _result(8, "ko1-euclidean", True,
                   "Z[1/2]: (Z/2)^3 of order 8; F_q order 4 for q in {3,5,7,9}")


def criterion_ksp1_witness():
    rng = random.Random(20240)
    count = 0
    for n2 in (4, 6):
        done = 0
        while done < 25:
            v = [rng.randrange(-25, 26) for _ in range(n2)]
            g = 0
            for x in v:
                g = gcd(g, abs(x))
            if g != 1:
                continue
            done += 1
            count += 1
            factors = forms.sp_reduce_unimodular(v)
            w = list(v)
            for f in factors:
                w = f.apply(w)
            if w != [1] + [0] * (n2 - 1):
                return _result(9, "ksp1-witness", False, "integer case %r" % (v,))
    qx = forms.QX
    for n2 in (4, 6):
        done = 0
        while done < 25:
            v = [qx.from_coeffs([rng.randrange(-3, 4)
                                 for _ in range(rng.randrange(1, 3))])
                 for _ in range(n2)]
            v[rng.randrange(n2)] = qx.from_coeffs(
                [rng.choice([1, -1, 2]), rng.randrange(-2, 3)])
            g = qx.gcd_all(v)
            if g.is_zero() or not qx.is_unit(g):
                continue
            done += 1
            count += 1
            factors = forms.sp_reduce_unimodular(v, ring=qx)
            w = list(v)
            for f in factors:
                w = f.apply(w)
            e1 = [qx.one()] + [qx.zero()] * (n2 - 1)
            if w != e1:
                return _result(9, "ksp1-witness", False, "polynomial case")
    return _result(9, "ksp1-witness", True,
                   "%d reductions over Z and Q[x] in Sp4 and Sp6; every factor "
                   "preserves J exactly" % count)


def criterion_koszul_suite():
    for n in range(1, 5):
        k = chainduality.koszul(n)
        if not k.is_symmetric() or k.chain_defect() is not None:
            return _result(10, "koszul-suite", False, "Theta at n=%d" % n)
    try:
        chainduality.koszul_tensor_isometry(1, 1)
    except chainduality.ChainError as err:
        return _result(10, "koszul-suite", False, "tensor merge: %s" % err)
    for n in range(1, 4):
        k = chainduality.koszul(n)
        for i in range(1, n + 1):
            try:
                chainduality.contracting_homotopy(k, i)
            except chainduality.ChainError as err:
                return _result(10, "koszul-suite", False,
                               "homotopy n=%d x%d: %s" % (n, i, err))
    rep = chainduality.swap_sign_check(chainduality.koszul(1),
                                       chainduality.koszul(1))
    if not rep.ok or rep.involution_power() != 1:
        return _result(10, "koszul-suite", False, "swap sign: %r" % rep)
    return _result(10, "koszul-suite", True,
                   "Theta symmetric n <= 4; koszul(1)^2 = koszul(2) isometry; "
                   "ds+sd = id n <= 3; swap sign = eps")


def criterion_matrix_suite():
    rep1 = geomverify.verify_M_path()
    if not rep1.ok:
        return _result(11, "matrix-suite", False, str(rep1.checks))
    rep2 = geomverify.verify_M1_factorization()
    if not rep2.ok:
        return _result(11, "matrix-suite", False, str(rep2.checks))
    forms_found = rep1.invariant_forms
    if not forms_found["symmetric"] or not forms_found["skew"]:
        return _result(11, "matrix-suite", False, "missing invariant forms")
    return _result(11, "matrix-suite", True,
                   "M(0)=I, M(1)=M1, det=1, three-factor product, invariant "
                   "forms: %d symmetric, %d skew"
                   % (len(forms_found["symmetric"]), len(forms_found["skew"])))


def _schur_tower(n_range):
    rings = [grassring.present(1, n) for n in n_range]
    levels = [towers.FGAbelian.free(r.rank()) for r in rings]
    maps = []
    for small, big in zip(rings, rings[1:]):
        rho = grassring.restriction(big, small, "alpha")
        m = [[0] * big.rank() for _ in range(small.rank())]
        for (i, j), v in rho.matrix().items():
            m[i][j] = v
        maps.append(m)
    return rings, towers.Tower(levels, maps, tail="finite-prefix-only")


def criterion_tower_suite():
    t = towers.Tower([towers.FGAbelian.free(1)] * 3,
                     [[[1]], [[1]]], tail="eventually-constant")
    if towers.check_mittag_leffler(t, 3).kind != "certificate":
        return _result(12, "tower-suite", False, "constant tower")
    doubling = towers.Tower([towers.FGAbelian.free(1)], [[[2]]],
                            tail="template-repeating")
    if towers.check_mittag_leffler(doubling, 4).kind != "refutation":
        return _result(12, "tower-suite", False, "(Z, x2) template")
    for m in ([[3]], [[2]], [[0]], [[5]]):
        ft = towers.Tower([towers.FGAbelian.cyclic(8)], [m],
                          tail="template-repeating")
        if towers.check_mittag_leffler(ft, 3).kind != "certificate":
            return _result(12, "tower-suite", False, "finite template %r" % m)
    rings, tower = _schur_tower(range(2, 6))
    cert = towers.check_mittag_leffler(tower, 3)
    if cert.kind != "certificate":
        return _result(12, "tower-suite", False, "schur tower certificate")
    family = []
    for ring in rings:
        vec = [0] * ring.rank()
        vec[ring.basis_index[symfun.Partition((1,))]] = 1
        family.append(vec)
    out = towers.milnor_assemble(tower, cert, family, depth=3)
    ring = rings[3]
    got = {ring.basis[i]: c for i, c in enumerate(out) if c}
    ps = grassring.limit_ring(1, 3)
    want = ps.project(ring)(ps.p(1))
    if got != want.coords:
        return _result(12, "tower-suite", False, "milnor reconstruction of p1")
    return _result(12, "tower-suite", True,
                   "constant certified; doubling refuted; finite templates "
                   "certified; schur towers certified and p1 reassembled")


def criterion_eps_algebra():
    alg = grassring.EpsAlgebra([
        ("x", (1, 0)), ("y", (1, 0)), ("u", (1, 1)), ("v", (1, 1)),
        ("a", (4, 2)), ("b", (3, 1)), ("c", (2, 2)),
    ])
    if GW_EPS * GW_EPS != GW_ONE:
        return _result(13, "eps-algebra", False, "eps^2 != 1")
    rng = random.Random(77001)

    def random_element():
        acc = alg.zero()
        for _ in range(rng.randrange(1, 4)):
            term = alg.scalar(rng.randrange(-2, 3) or 1)
            for _ in range(rng.randrange(0, 3)):
                term = term * alg.gen(rng.choice(alg.names))
            if rng.random() < 0.25:
                term = term.scale(GW_EPS)
            acc = acc + term
        return acc

    checks = 0
    while checks < 1000:
        kind = rng.randrange(3)
        if kind == 0:
            a, b, c = random_element(), random_element(), random_element()
            if (a * b) * c != a * (b * c):
                return _result(13, "eps-algebra", False, "associativity")
        elif kind == 1:
            g1 = rng.choice(alg.names)
            g2 = rng.choice(alg.names)
            a, b = alg.gen(g1), alg.gen(g2)
            p1, q1 = alg.bidegrees[alg.index[g1]]
            p2, q2 = alg.bidegrees[alg.index[g2]]
            sign = GWElement.from_int((-1) ** (p1 * p2))
            if (q1 * q2) % 2:
                sign = sign * GW_EPS
            if a * b != (b * a).scale(sign):
                return _result(13, "eps-algebra", False,
                               "sign rule at %s %s" % (g1, g2))
        else:
            bieven = alg.gen("a") if rng.random() < 0.5 else alg.gen("c")
            other = random_element()
            if bieven * other != other * bieven:
                return _result(13, "eps-algebra", False, "bieven centrality")
        checks += 1
    return _result(13, "eps-algebra", True,
                   "1000 randomized associativity, sign-rule and centrality "
                   "checks over GWBase")


def criterion_determinism():
    import json
    first = json.dumps(_collect(run_determinism_pass=False), sort_keys=True)
    second = json.dumps(_collect(run_determinism_pass=False), sort_keys=True)
    ok = first == second
    return _result(14, "determinism", ok,
                   "two fresh runs serialize byte-identically" if ok
                   else "reports differ between runs")


def _result(cid, name, ok, detail):
    return {"id": cid, "name": name, "ok": bool(ok), "detail": detail}


CRITERIA = [
    criterion_grassmannian_rank,
    criterion_qpbt_small,
    criterion_recurrence,
    criterion_schur_oracle,
    criterion_restriction,
    criterion_class_identities,
    criterion_tau_consistency,
    criterion_ko1,
    criterion_ksp1_witness,
    criterion_koszul_suite,
    criterion_matrix_suite,
    criterion_tower_suite,
    criterion_eps_algebra,
]


def _collect(run_determinism_pass=True):
    results = [fn() for fn in CRITERIA]
    if run_determinism_pass:
        results.append(criterion_determinism())
    return results


def run_all():
    """Run the full battery, determinism check included."""
    return _collect(run_determinism_pass=True)
