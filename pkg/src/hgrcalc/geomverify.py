"""Symbolic verification of the explicit matrices, homotopies and sections.

Houses the interpolating path M(t) in Sp_4 and O_4 with its three-factor
elementary factorization, the solver for all bilinear forms a polynomial
matrix preserves identically, the quadratic local-section identity, and
the symplectic-lift identity checker.  Every check here is an exact
polynomial identity; there is no numerical tolerance anywhere.
"""

from fractions import Fraction

from .polynomial import (Poly, PolyRing, bareiss_det, mat_mul, mat_transpose)


class GeomError(ValueError):
    pass


T_RING = PolyRing(("t",))


def _t():
    return T_RING.gen(0)


def _c(x):
    return T_RING.const(Fraction(x))


def interpolating_path():
    """The 4x4 path M(t) with M(0) = I and M(1) the sign-permutation matrix.

    Rows and columns follow the source: entries in Q[t].
    """
    t = _t()
    one = T_RING.one()
    z = T_RING.zero()
    t2 = t * t
    t3 = t2 * t
    return [
        [one - t2, z, -t, z],
        [z, one - t2, z, -(2 * t) + t3],
        [(2 * t) - t3, z, one - t2, z],
        [z, t, z, one - t2],
    ]


def endpoint_matrix():
    """M(1): the displayed permutation-sign matrix."""
    return [[_c(v) for v in row] for row in
            [[0, 0, -1, 0],
             [0, 0, 0, -1],
             [1, 0, 0, 0],
             [0, 1, 0, 0]]]


def factorization_matrices():
    """The three displayed elementary factors whose product is M(1)."""
    rows = [
        [[1, 0, 0, 0],
         [0, 1, 0, -1],
         [1, 0, 1, 0],
         [0, 0, 0, 1]],
        [[1, 0, -1, 0],
         [0, 1, 0, 0],
         [0, 0, 1, 0],
         [0, 1, 0, 1]],
        [[1, 0, 0, 0],
         [0, 1, 0, -1],
         [1, 0, 1, 0],
         [0, 0, 0, 1]],
    ]
    return [[[_c(v) for v in row] for row in m] for m in rows]


def evaluate_at(m, value):
    """Evaluate a Q[t]-matrix at a rational point."""
    return [[e.evaluate([Fraction(value)]) for e in row] for row in m]


def solve_invariant_forms(m):
    """All B with M(t)^T B M(t) = B identically; symmetric and skew bases.

    The condition is linear in the entries of B: collecting coefficients of
    every power of t gives an exact rational system, solved separately on
    the symmetric and skew subspaces.
    """
    n = len(m)
    sym_basis = []
    for i in range(n):
        for j in range(i, n):
            e = [[Fraction(0)] * n for _ in range(n)]
            e[i][j] += 1
            e[j][i] += 1 if i != j else 0
            if i == j:
                e[i][j] = Fraction(1)
            sym_basis.append(e)
    skew_basis = []
    for i in range(n):
        for j in range(i + 1, n):
            e = [[Fraction(0)] * n for _ in range(n)]
            e[i][j] = Fraction(1)
            e[j][i] = Fraction(-1)
            skew_basis.append(e)

    def invariant_space(basis):
        # rows: one linear constraint per (entry, power of t); cols: basis
        columns = []
        keys = set()
        residuals = []
        for b in basis:
            bm = [[T_RING.const(x) for x in row] for row in b]
            res = mat_sub_poly(mat_mul(mat_mul(mat_transpose(m), bm), m), bm)
            residuals.append(res)
            for i in range(n):
                for j in range(n):
                    for exps in res[i][j].terms:
                        keys.add((i, j, exps))
        keys = sorted(keys)
        for res in residuals:
            col = []
            for (i, j, exps) in keys:
                col.append(res[i][j].terms.get(exps, Fraction(0)))
            columns.append(col)
        null = rational_nullspace(columns)
        out = []
        for coeffs in null:
            bm = [[Fraction(0)] * n for _ in range(n)]
            for c, b in zip(coeffs, basis):
                for i in range(n):
                    for j in range(n):
                        bm[i][j] += c * b[i][j]
            out.append(_integer_scale(bm))
        return out

    return {"symmetric": invariant_space(sym_basis),
            "skew": invariant_space(skew_basis)}


def mat_sub_poly(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def rational_nullspace(columns):
    """Nullspace basis of the matrix whose columns are given, over Q.

    Returns coefficient vectors c with sum c_k * column_k = 0.
    """
    if not columns:
        return []
    ncols = len(columns)
    nrows = len(columns[0])
    a = [[columns[j][i] for j in range(ncols)] for i in range(nrows)]
    pivots = []
    row = 0
    for col in range(ncols):
        piv = None
        for r in range(row, nrows):
            if a[r][col]:
                piv = r
                break
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        inv = 1 / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for r in range(nrows):
            if r != row and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        pivots.append(col)
        row += 1
        if row == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for prow, pcol in enumerate(pivots):
            vec[pcol] = -a[prow][fc]
        basis.append(vec)
    return basis


def _integer_scale(bm):
    """Scale a rational matrix to a primitive integer matrix (sign-fixed)."""
    den = 1
    for row in bm:
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
    ints = [[int(x * den) for x in row] for row in bm]
    g = 0
    for row in ints:
        for x in row:
            g = _gcd(g, abs(x))
    if g:
        ints = [[x // g for x in row] for row in ints]
    # normalize the sign on the first nonzero entry
    for row in ints:
        for x in row:
            if x:
                if x < 0:
                    ints = [[-y for y in r] for r in ints]
                return [[Fraction(v) for v in r] for r in ints]
    return [[Fraction(v) for v in r] for r in ints]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


class PathReport:
    def __init__(self, checks):
        self.checks = checks

    @property
    def ok(self):
        return all(v for v in self.checks.values())

    def __repr__(self):
        return "PathReport(%s)" % self.checks

    def to_json(self):
        return {"ok": self.ok,
                "checks": {k: bool(v) for k, v in self.checks.items()}}


def verify_M_path():
    """M(0) = I, M(1) = M_1, det M(t) = 1, and invariance of the solved forms."""
    m = interpolating_path()
    checks = {}
    ident = [[Fraction(int(i == j)) for j in range(4)] for i in range(4)]
    checks["M(0) = I"] = evaluate_at(m, 0) == ident
    m1 = evaluate_at(m, 1)
    checks["M(1) = M1"] = m1 == evaluate_at(endpoint_matrix(), 0)
    det = bareiss_det(m, zero=T_RING.zero(), one=T_RING.one())
    checks["det M(t) = 1"] = det == T_RING.one()
    forms = solve_invariant_forms(m)
    checks["symmetric invariant form exists"] = bool(forms["symmetric"])
    checks["skew invariant form exists"] = bool(forms["skew"])
    for kind in ("symmetric", "skew"):
        for idx, b in enumerate(forms[kind]):
            bm = [[T_RING.const(x) for x in row] for row in b]
            lhs = mat_mul(mat_mul(mat_transpose(m), bm), m)
            ok = all(lhs[i][j] == bm[i][j] for i in range(4) for j in range(4))
            checks["M(t) preserves %s form %d" % (kind, idx)] = ok
    report = PathReport(checks)
    report.invariant_forms = forms
    return report


def verify_M1_factorization():
    """Product of the three displayed factors equals M(1); each factor is
    elementary (determinant one) and preserves the solved invariant forms."""
    factors = factorization_matrices()
    m1 = endpoint_matrix()
    checks = {}
    prod = factors[0]
    for f in factors[1:]:
        prod = mat_mul(prod, f)
    checks["factor product = M1"] = all(
        prod[i][j] == m1[i][j] for i in range(4) for j in range(4))
    forms = solve_invariant_forms(interpolating_path())
    for fi, f in enumerate(factors):
        det = bareiss_det(f, zero=T_RING.zero(), one=T_RING.one())
        checks["factor %d has det 1" % fi] = det == T_RING.one()
        for kind in ("symmetric", "skew"):
            for bi, b in enumerate(forms[kind]):
                bm = [[T_RING.const(x) for x in row] for row in b]
                lhs = mat_mul(mat_mul(mat_transpose(f), bm), f)
                ok = all(lhs[i][j] == bm[i][j]
                         for i in range(4) for j in range(4))
                checks["factor %d preserves %s form %d" % (fi, kind, bi)] = ok
    return PathReport(checks)


# ---------------------------------------------------------------------------
# Section and lift identities.
# ---------------------------------------------------------------------------


def quadratic_section_identity(r):
    """With s_{2i-1} = x_i and s_{2i} = sum_{j >= i} a_ij x_j, check
    sum_i s_{2i-1} s_{2i} = sum_{i <= j} a_ij x_i x_j identically."""
    if r < 1:
        raise GeomError("need r >= 1")
    names = ["x%d" % i for i in range(1, r + 1)]
    names += ["a%d%d" % (i, j) for i in range(1, r + 1)
              for j in range(i, r + 1)]
    ring = PolyRing(tuple(names))

    def x(i):
        return ring.gen(i - 1)

    def a(i, j):
        pos = r
        for ii in range(1, r + 1):
            for jj in range(ii, r + 1):
                if (ii, jj) == (i, j):
                    return ring.gen(pos)
                pos += 1
        raise GeomError("bad coefficient index")

    lhs = ring.zero()
    for i in range(1, r + 1):
        s_odd = x(i)
        s_even = ring.zero()
        for j in range(i, r + 1):
            s_even = s_even + a(i, j) * x(j)
        lhs = lhs + s_odd * s_even
    rhs = ring.zero()
    for i in range(1, r + 1):
        for j in range(i, r + 1):
            rhs = rhs + a(i, j) * x(i) * x(j)
    return lhs == rhs


def wedge_of_covectors(u, v, size):
    """u ^ v as a skew matrix: (u v^T - v u^T), coordinates on Lambda^2."""
    out = [[None] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            out[i][j] = u[i] * v[j] - v[i] * u[j]
    return out


def verify_symplectic_lift(phi, g, u, v, w, modulus_power=None):
    """Check sum (u_{2i-1} + g v_{2i-1}) ^ (u_{2i} + g v_{2i})
    + sum (g w_{2j-1}) ^ (g w_{2j}) = phi in Lambda^2 of the dual.

    All inputs are coordinate vectors of linear forms over one polynomial
    ring; phi is a skew Gram matrix over that ring.  With modulus_power = m
    the identity is checked modulo g^m instead of exactly.
    """
    size = len(phi)
    ring = None
    for vec in list(u) + list(v) + list(w):
        for entry in vec:
            if isinstance(entry, Poly):
                ring = entry.ring
                break
        if ring:
            break
    if ring is None:
        raise GeomError("need at least one polynomial entry")
    if len(u) % 2 or len(v) % 2 or len(w) % 2:
        raise GeomError("u, v, w must pair up")
    if len(u) != len(v):
        raise GeomError("u and v must have the same length")

    def coerce_vec(vec):
        out = []
        for entry in vec:
            out.append(entry if isinstance(entry, Poly)
                       else ring.const(Fraction(entry)))
        if len(out) != size:
            raise GeomError("covector length does not match the form size")
        return out

    gp = g if isinstance(g, Poly) else ring.const(Fraction(g))
    total = [[ring.zero() for _ in range(size)] for _ in range(size)]
    for i in range(0, len(u), 2):
        lift1 = [a + gp * b for a, b in zip(coerce_vec(u[i]), coerce_vec(v[i]))]
        lift2 = [a + gp * b for a, b in zip(coerce_vec(u[i + 1]),
                                            coerce_vec(v[i + 1]))]
        total = _mat_add_poly(total, wedge_of_covectors(lift1, lift2, size))
    for j in range(0, len(w), 2):
        w1 = [gp * a for a in coerce_vec(w[j])]
        w2 = [gp * a for a in coerce_vec(w[j + 1])]
        total = _mat_add_poly(total, wedge_of_covectors(w1, w2, size))
    phi_m = [[x if isinstance(x, Poly) else ring.const(Fraction(x))
              for x in row] for row in phi]
    diff = mat_sub_poly(total, phi_m)
    if modulus_power is None:
        return all(x.is_zero() for row in diff for x in row)
    modulus = gp ** modulus_power
    for row in diff:
        for x in row:
            if x.is_zero():
                continue
            if x.divides_exactly(modulus) is None:
                return False
    return True


def _mat_add_poly(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]
