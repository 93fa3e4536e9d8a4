"""Partitions, box enumeration, and symmetric polynomials in the e-generators.

Polynomials live in Z[e_1..e_r] with deg(e_i) = i (the Pontryagin weight
grading).  Schur elements are produced by the dual Jacobi-Trudi determinant
det(e_{lambda'_i - i + j}) evaluated by fraction-free elimination.
"""

from functools import lru_cache
from math import comb

from .polynomial import PolyRing, bareiss_det


class Partition:
    """A weakly decreasing sequence of positive integers."""

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError("partition parts must be positive")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError("partition parts must be weakly decreasing")
        self.parts = parts

    def weight(self):
        return sum(self.parts)

    def length(self):
        return len(self.parts)

    def conjugate(self):
        if not self.parts:
            return Partition()
        cols = self.parts[0]
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(cols)))

    def fits_in_box(self, rows, cols):
        return self.length() <= rows and (not self.parts or self.parts[0] <= cols)

    def part(self, i):
        """The i-th part (1-indexed), zero beyond the length."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def __eq__(self, other):
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self):
        return hash(self.parts)

    def __lt__(self, other):
        return sort_key(self) < sort_key(other)

    def __repr__(self):
        if not self.parts:
            return "∅"
        return "(" + ",".join(str(p) for p in self.parts) + ")"

    def to_json(self):
        return list(self.parts)


EMPTY = Partition()


def sort_key(lam):
    """Graded-lexicographic key used everywhere partitions are listed."""
    return (lam.weight(), lam.parts)


def enumerate_box_partitions(r, cols):
    """All partitions fitting in an r x cols box, graded-lex sorted.

    Includes the empty partition; the count is binomial(r + cols, r).
    """
    if r < 0 or cols < 0:
        raise ValueError("box dimensions must be nonnegative")
    out = [EMPTY]
    stack = [(())]
    while stack:
        prefix = stack.pop()
        bound = prefix[-1] if prefix else cols
        if len(prefix) == r:
            continue
        for p in range(1, bound + 1):
            lam = prefix + (p,)
            out.append(Partition(lam))
            stack.append(lam)
    out.sort(key=sort_key)
    assert len(out) == comb(r + cols, r)
    return out


@lru_cache(maxsize=None)
def elementary_ring(r):
    """Z[e_1..e_r] with deg(e_i) = i."""
    return PolyRing(tuple("e%d" % i for i in range(1, r + 1)),
                    tuple(range(1, r + 1)))


def elementary(i, r):
    """e_i as a polynomial in Z[e_1..e_r]; zero for i > r, one for i = 0."""
    ring = elementary_ring(r)
    if i == 0:
        return ring.one()
    if i < 0 or i > r:
        return ring.zero()
    return ring.gen(i - 1)


def complete_from_elementary(k, r):
    """h_k in the e-generators via h_k = sum_{i>=1} (-1)^{i+1} e_i h_{k-i}."""
    if k < 0:
        return elementary_ring(r).zero()
    hs = _complete_list(k, r)
    return hs[k]


@lru_cache(maxsize=None)
def _complete_table(r):
    return [elementary_ring(r).one()]


def _complete_list(k, r):
    hs = _complete_table(r)
    while len(hs) <= k:
        m = len(hs)
        acc = elementary_ring(r).zero()
        for i in range(1, min(m, r) + 1):
            term = elementary(i, r) * hs[m - i]
            acc = acc + term if i % 2 == 1 else acc - term
        hs.append(acc)
    return hs


def schur_in_elementary(lam, r):
    """s_lambda via the dual Jacobi-Trudi determinant det(e_{lambda'_i - i + j}).

    Returns a polynomial in Z[e_1..e_r]; identically zero when the conjugate
    has a part exceeding r (too many rows for r generators).
    """
    if not isinstance(lam, Partition):
        lam = Partition(lam)
    conj = lam.conjugate()
    m = conj.length()
    if m == 0:
        return elementary_ring(r).one()
    matrix = [[elementary(conj.part(i) - i + j, r) for j in range(1, m + 1)]
              for i in range(1, m + 1)]
    ring = elementary_ring(r)
    return bareiss_det(matrix, zero=ring.zero(), one=ring.one())


def pieri_multiply(lam, k, rows):
    """Partitions obtained from lam by adding a vertical k-strip within `rows` rows.

    This is the Pieri rule for multiplication by e_k: s_lam * e_k =
    sum of s_mu over the returned mu (all coefficients one).
    """
    if k == 0:
        return [lam]
    out = []
    n = max(lam.length() + k, rows)
    padded = [lam.part(i) for i in range(1, n + 1)]
    # choose rows to increment: mu_i in {lam_i, lam_i + 1}, result decreasing
    def rec(i, remaining, acc):
        if remaining == 0:
            mu = acc + padded[i:]
            mu = [p for p in mu if p > 0]
            if len(mu) <= rows:
                out.append(Partition(mu))
            return
        if i >= n or n - i < remaining:
            return
        prev = acc[i - 1] if i > 0 else None
        # leave row i unchanged
        if prev is None or padded[i] <= prev:
            rec(i + 1, remaining, acc + [padded[i]])
        # increment row i
        if prev is None or padded[i] + 1 <= prev:
            rec(i + 1, remaining - 1, acc + [padded[i] + 1])
    rec(0, k, [])
    return out


def poly_to_schur_coords(poly, rows):
    """Expand a polynomial in Z[e_1..e_r] over the Schur basis of <= `rows` rows.

    Returns a dict Partition -> coefficient.  Exact inverse of substituting
    the dual Jacobi-Trudi expansions; computed by iterated Pieri products.
    """
    coords = {}
    for exps, coeff in poly.terms.items():
        expansion = _monomial_schur(exps, rows)
        for lam, c in expansion.items():
            s = coords.get(lam, 0) + coeff * c
            if s:
                coords[lam] = s
            else:
                coords.pop(lam, None)
    return coords


@lru_cache(maxsize=None)
def _monomial_schur(exps, rows):
    """Schur expansion of the e-monomial with the given exponent vector."""
    # peel one generator to reuse cached smaller monomials
    for i in range(len(exps) - 1, -1, -1):
        if exps[i]:
            break
    else:
        return {EMPTY: 1}
    smaller = list(exps)
    smaller[i] -= 1
    base = _monomial_schur(tuple(smaller), rows)
    out = {}
    k = i + 1  # e_{i+1}
    for lam, c in base.items():
        for mu in pieri_multiply(lam, k, rows):
            s = out.get(mu, 0) + c
            if s:
                out[mu] = s
            else:
                out.pop(mu, None)
    return out


def poly_json(poly, coeff_str=str):
    """Canonical JSON form: graded-lex sorted [{exponents, coeff}]."""
    return [{"exponents": list(e), "coeff": coeff_str(c)}
            for e, c in poly.sorted_terms()]
