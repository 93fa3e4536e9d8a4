"""Exact multivariate Laurent polynomials and small matrix helpers.

Everything here is exact: coefficients are Python ints, fractions.Fraction,
or any ring element supporting +, -, *, == and truthiness (zero test).
Exponents may be negative, which is what the localized Koszul homotopies
need; ordinary polynomials simply never produce negative exponents.
"""

from fractions import Fraction


class PolyRing:
    """A polynomial ring presentation: named generators with integer weights.

    Weights feed the grading (deg of a monomial = sum weight_i * exp_i) and
    the graded-lexicographic term order used for printing and serialization.
    """

    __slots__ = ("gens", "weights")

    def __init__(self, gens, weights=None):
        self.gens = tuple(gens)
        if weights is None:
            weights = (1,) * len(self.gens)
        self.weights = tuple(weights)
        if len(self.weights) != len(self.gens):
            raise ValueError("one weight per generator required")

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.gens == other.gens
                and self.weights == other.weights)

    def __hash__(self):
        return hash((self.gens, self.weights))

    def __repr__(self):
        return "PolyRing(%s)" % ", ".join(self.gens)

    def zero(self):
        return Poly(self, {})

    def const(self, c):
        if not c:
            return Poly(self, {})
        return Poly(self, {(0,) * len(self.gens): c})

    def one(self):
        return self.const(1)

    def gen(self, i, exp=1, coeff=1):
        """The monomial coeff * gens[i]**exp."""
        e = [0] * len(self.gens)
        e[i] = exp
        return Poly(self, {tuple(e): coeff})

    def monomial(self, exps, coeff=1):
        if not coeff:
            return self.zero()
        exps = tuple(exps)
        if len(exps) != len(self.gens):
            raise ValueError("exponent vector length mismatch")
        return Poly(self, {exps: coeff})

    def weight_of(self, exps):
        return sum(w * e for w, e in zip(self.weights, exps))


class Poly:
    """Sparse exact polynomial: dict from exponent tuples to coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c}

    # -- basic structure -------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self == self.ring.const(other)

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items(), key=lambda t: t[0]))))

    def copy_terms(self):
        return dict(self.terms)

    def constant_term(self):
        zero_exp = (0,) * len(self.ring.gens)
        return self.terms.get(zero_exp, 0)

    def is_constant(self):
        zero_exp = (0,) * len(self.ring.gens)
        return not self.terms or set(self.terms) == {zero_exp}

    def weight(self):
        """Largest graded weight among terms; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.ring.weight_of(e) for e in self.terms)

    def homogeneous_part(self, w):
        return Poly(self.ring, {e: c for e, c in self.terms.items()
                                if self.ring.weight_of(e) == w})

    def is_homogeneous(self):
        ws = {self.ring.weight_of(e) for e in self.terms}
        return len(ws) <= 1

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        res = dict(self.terms)
        for e, c in other.terms.items():
            s = res.get(e, 0) + c
            if s:
                res[e] = s
            else:
                res.pop(e, None)
        return Poly(self.ring, res)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials from different rings")
            res = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    s = res.get(e, 0) + c1 * c2
                    if s:
                        res[e] = s
                    else:
                        res.pop(e, None)
            return Poly(self.ring, res)
        # scalar
        if not other:
            return self.ring.zero()
        return Poly(self.ring, {e: c * other for e, c in self.terms.items()})

    def __rmul__(self, other):
        if not other:
            return self.ring.zero()
        return Poly(self.ring, {e: other * c for e, c in self.terms.items()})

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def _coerce(self, x):
        if isinstance(x, Poly):
            if x.ring != self.ring:
                raise ValueError("polynomials from different rings")
            return x
        return self.ring.const(x)

    # -- substitution and evaluation --------------------------------------

    def substitute(self, values):
        """Substitute generators by ring elements; values maps index -> Poly.

        Generators absent from the mapping stay themselves.  Negative
        exponents of substituted generators are rejected.
        """
        ring = self.ring
        result = ring.zero()
        for exps, coeff in self.terms.items():
            term = ring.const(coeff)
            for i, e in enumerate(exps):
                if e == 0:
                    continue
                if i in values:
                    if e < 0:
                        raise ValueError("cannot substitute into a negative power")
                    term = term * (values[i] ** e)
                else:
                    term = term * ring.gen(i, e)
            result = result + term
        return result

    def evaluate(self, point):
        """Evaluate at a full point (sequence of coefficients)."""
        total = 0
        for exps, coeff in self.terms.items():
            v = coeff
            for x, e in zip(point, exps):
                if e < 0:
                    raise ValueError("cannot evaluate a negative power")
                for _ in range(e):
                    v = v * x
            total = total + v
        return total

    def map_to(self, ring, gen_map):
        """Reinterpret in another ring; gen_map sends old index -> new index."""
        res = {}
        width = len(ring.gens)
        for exps, coeff in self.terms.items():
            new = [0] * width
            for i, e in enumerate(exps):
                if e:
                    new[gen_map[i]] += e
            key = tuple(new)
            s = res.get(key, 0) + coeff
            if s:
                res[key] = s
            else:
                res.pop(key, None)
        return Poly(ring, res)

    # -- division ----------------------------------------------------------

    def divides_exactly(self, divisor):
        """Return the quotient self/divisor, or None if not exactly divisible.

        Single-divisor term rewriting under graded-lex; for one divisor the
        remainder vanishes iff the division is exact.
        """
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        ring = self.ring
        # graded-lex descent needs well-ordered exponents
        for p in (self, divisor):
            for exps in p.terms:
                if any(e < 0 for e in exps):
                    raise ValueError("division of Laurent polynomials "
                                     "is not supported")
        quo = {}
        rem = dict(self.terms)
        dlead = max(divisor.terms, key=_glex_key(ring))
        dc = divisor.terms[dlead]
        while rem:
            lead = max(rem, key=_glex_key(ring))
            diff = tuple(a - b for a, b in zip(lead, dlead))
            if any(d < 0 for d in diff):
                return None
            c = _exact_coeff_div(rem[lead], dc)
            if c is None:
                return None
            quo[diff] = quo.get(diff, 0) + c
            for e2, c2 in divisor.terms.items():
                e = tuple(a + b for a, b in zip(diff, e2))
                s = rem.get(e, 0) - c * c2
                if s:
                    rem[e] = s
                else:
                    rem.pop(e, None)
        return Poly(ring, quo)

    # -- output ------------------------------------------------------------

    def sorted_terms(self):
        """Terms in ascending graded-lexicographic order (bit-exact output order)."""
        key = _glex_key(self.ring)
        return sorted(self.terms.items(), key=lambda t: key(t[0]))

    def __repr__(self):
        return self.pretty()

    def pretty(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, coeff in self.sorted_terms():
            factors = []
            for name, e in zip(self.ring.gens, exps):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append("%s^%d" % (name, e))
            body = "*".join(factors)
            cs = str(coeff)
            if body and cs == "1":
                parts.append(body)
            elif body and cs == "-1":
                parts.append("-" + body)
            elif body:
                parts.append("%s*%s" % (_wrap(cs), body))
            else:
                parts.append(_wrap(cs))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def _wrap(cs):
    return "(%s)" % cs if ("+" in cs[1:] or "-" in cs[1:] or " " in cs) else cs


def _glex_key(ring):
    def key(exps):
        return (ring.weight_of(exps), exps)
    return key


def _exact_coeff_div(a, b):
    """a/b in the coefficient ring, or None when not exact."""
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        return q if r == 0 else None
    if isinstance(a, (int, Fraction)) and isinstance(b, (int, Fraction)):
        return Fraction(a) / Fraction(b)
    div = getattr(a, "exact_div", None)
    if div is not None:
        return div(b)
    raise TypeError("no exact division for %r / %r" % (type(a), type(b)))


# ---------------------------------------------------------------------------
# Matrix helpers.  Matrices are plain lists of lists whose entries belong to
# any commutative ring (ints, Fractions, Poly, field elements).  `zero` and
# `one` default to the integers and must be passed for other entry rings.
# ---------------------------------------------------------------------------


def mat_shape(m):
    return (len(m), len(m[0]) if m else 0)


def mat_identity(n, one=1, zero=0):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_zero(rows, cols, zero=0):
    return [[zero for _ in range(cols)] for _ in range(rows)]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_neg(a):
    return [[-x for x in row] for row in a]


def mat_scal(c, a):
    return [[c * x for x in row] for row in a]


def mat_mul(a, b):
    ra, ca = mat_shape(a)
    rb, cb = mat_shape(b)
    if ca != rb:
        raise ValueError("matrix shapes %sx%s and %sx%s do not compose"
                         % (ra, ca, rb, cb))
    out = []
    for i in range(ra):
        row = []
        for j in range(cb):
            acc = None
            for k in range(ca):
                p = a[i][k] * b[k][j]
                acc = p if acc is None else acc + p
            row.append(acc)
        out.append(row)
    return out


def mat_transpose(a):
    rows, cols = mat_shape(a)
    return [[a[i][j] for i in range(rows)] for j in range(cols)]


def mat_eq(a, b):
    if mat_shape(a) != mat_shape(b):
        return False
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_apply(a, v):
    return [sum_ring(a[i][k] * v[k] for k in range(len(v))) for i in range(len(a))]


def sum_ring(it):
    acc = None
    for x in it:
        acc = x if acc is None else acc + x
    return 0 if acc is None else acc


def bareiss_det(m, zero=0, one=1):
    """Fraction-free Bareiss determinant; exact over ints and poly rings."""
    n = len(m)
    if n == 0:
        return one
    a = [list(row) for row in m]
    sign = 1
    prev = one
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = _entry_exact_div(num, prev)
            a[i][k] = zero
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def _entry_exact_div(num, den):
    if isinstance(num, Poly):
        if isinstance(den, int):
            den = num.ring.const(den)
        q = num.divides_exactly(den)
        if q is None:
            raise ArithmeticError("Bareiss division was not exact")
        return q
    q = _exact_coeff_div(num, den)
    if q is None:
        raise ArithmeticError("Bareiss division was not exact")
    return q
