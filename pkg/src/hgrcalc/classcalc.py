"""Formal K0/GW0 bundle-class calculus.

Free abelian group on tensor words of bundle symbols, with a rewriting
engine driven by declared direct-sum decompositions.  The engine never
invents isometries: it only rewrites along registered relations, tracking
rank at every step, and it retains a full trace of each verification.
"""

from dataclasses import dataclass


class ClassCalcError(ValueError):
    pass


@dataclass(frozen=True)
class BundleSymbol:
    """A named bundle with a declared rank and symmetry type."""
    name: str
    rank: int
    symmetry: str  # symplectic | orthogonal | plain

    def __post_init__(self):
        if self.rank < 0:
            raise ClassCalcError("rank must be nonnegative")
        if self.symmetry not in ("symplectic", "orthogonal", "plain"):
            raise ClassCalcError("unknown symmetry type %r" % (self.symmetry,))
        if self.symmetry == "symplectic" and self.rank % 2:
            raise ClassCalcError("symplectic symbols must have even rank")


# symmetry of a tensor word, mirroring the duality-shift arithmetic:
# symplectic = shift 2, orthogonal = shift 0, composed mod 4
_SHIFT = {"symplectic": 2, "orthogonal": 0}


def word_symmetry(symbols, word):
    kinds = [symbols[name].symmetry for name in word]
    if "plain" in kinds:
        return "plain"
    total = sum(_SHIFT[k] for k in kinds) % 4
    return "orthogonal" if total == 0 else "symplectic"


class FormalClass:
    """Integer combination of tensor words of bundle symbols."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for w, c in terms.items():
                if c:
                    self.terms[tuple(w)] = c

    @classmethod
    def of(cls, *word):
        return cls({tuple(word): 1})

    @classmethod
    def zero(cls):
        return cls()

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, FormalClass) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other):
        res = dict(self.terms)
        for w, c in other.terms.items():
            s = res.get(w, 0) + c
            if s:
                res[w] = s
            else:
                res.pop(w, None)
        return FormalClass(res)

    def __neg__(self):
        return FormalClass({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k == 0:
            return FormalClass()
        return FormalClass({w: k * c for w, c in self.terms.items()})

    def tensor(self, other):
        """Bilinear box-product: concatenates words."""
        res = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = res.get(w, 0) + c1 * c2
                if s:
                    res[w] = s
                else:
                    res.pop(w, None)
        return FormalClass(res)

    def swap_factors(self):
        """Formal transposition of all length-two tensor words."""
        res = {}
        for w, c in self.terms.items():
            key = tuple(reversed(w)) if len(w) == 2 else w
            res[key] = res.get(key, 0) + c
        return FormalClass(res)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w, c in self.sorted_terms():
            word = "[" + " ⊠ ".join(w) + "]"
            if c == 1:
                bits.append(word)
            elif c == -1:
                bits.append("-" + word)
            else:
                bits.append("%d%s" % (c, word))
        out = bits[0]
        for b in bits[1:]:
            out += " - " + b[1:] if b.startswith("-") else " + " + b
        return out

    def to_json(self):
        return [{"word": list(w), "coeff": c} for w, c in self.sorted_terms()]


class RelationSet:
    """Declared symbols plus the rewrite rules the engine may use.

    Rules: (i) complement elimination [A^perp] -> m[T] - [A] inside any
    tensor slot, for a declared orthogonal sum A + A^perp = T^{+m};
    (ii) slot-wise absorption of the designated unit symbol (K0 only);
    (iii) word contractions such as [H % H] -> 2[H+].
    Every rule is checked to preserve rank when registered.
    """

    def __init__(self, symbols, name="relations"):
        self.name = name
        self.symbols = {s.name: s for s in symbols}
        self.complements = {}
        self.contractions = {}
        self.absorb_unit = None

    def symbol(self, name):
        if name not in self.symbols:
            raise ClassCalcError("unknown symbol %r" % (name,))
        return self.symbols[name]

    def add_complement(self, perp, partner, trivial, multiplicity):
        """Register [perp] = multiplicity*[trivial] - [partner]."""
        s, p, t = self.symbol(perp), self.symbol(partner), self.symbol(trivial)
        if s.rank + p.rank != multiplicity * t.rank:
            raise ClassCalcError("complement rule does not preserve rank")
        self.complements[perp] = (partner, trivial, multiplicity)

    def add_contraction(self, word, replacement):
        """Register an exact word rewrite, e.g. (H, H) -> {(H+,): 2}."""
        word = tuple(word)
        lhs_rank = 1
        for name in word:
            lhs_rank *= self.symbol(name).rank
        rhs_rank = 0
        for w, c in replacement.items():
            r = 1
            for name in w:
                r *= self.symbol(name).rank
            rhs_rank += c * r
        if lhs_rank != rhs_rank:
            raise ClassCalcError("contraction rule does not preserve rank")
        self.contractions[word] = {tuple(w): c for w, c in replacement.items()}

    def set_absorbing_unit(self, name):
        """Unit symbol absorbed from tensor slots: [O % X] = [X]."""
        if self.symbol(name).rank != 1:
            raise ClassCalcError("absorbing unit must have rank one")
        self.absorb_unit = name

    def rank_of(self, x):
        total = 0
        for w, c in x.terms.items():
            r = 1
            for name in w:
                r *= self.symbol(name).rank
            total += c * r
        return total

    def word_symmetry(self, word):
        return word_symmetry(self.symbols, word)


def expand(x, relations, _trace=None):
    """Confluent normal form of a formal class under the relation set.

    Returns (normal_form, trace); the trace lists each rewrite applied.
    """
    trace = [] if _trace is None else _trace
    for w in x.terms:
        for name in w:
            relations.symbol(name)
    rank_before = relations.rank_of(x)
    current = x
    changed = True
    while changed:
        changed = False
        for w, c in sorted(current.terms.items()):
            step = _rewrite_word(w, relations)
            if step is None:
                continue
            rule, replacement = step
            delta = FormalClass({w: -c}) + c * replacement
            after = current + delta
            if relations.rank_of(after) != rank_before:
                raise ClassCalcError("rewrite %r broke the rank invariant" % rule)
            trace.append({"rule": rule, "word": list(w), "coeff": c,
                          "result": repr(after)})
            current = after
            changed = True
            break
    return current, trace


def _rewrite_word(word, relations):
    # complement elimination, innermost slot first
    for i, name in enumerate(word):
        if name in relations.complements:
            partner, trivial, mult = relations.complements[name]
            w_triv = word[:i] + (trivial,) + word[i + 1:]
            w_part = word[:i] + (partner,) + word[i + 1:]
            repl = FormalClass({w_triv: mult, w_part: -1})
            return ("complement:%s" % name, repl)
    # unit absorption in multi-letter words
    if relations.absorb_unit and len(word) > 1:
        u = relations.absorb_unit
        if u in word:
            i = word.index(u)
            rest = word[:i] + word[i + 1:]
            return ("absorb:%s" % u, FormalClass({rest: 1}))
    # exact word contractions
    if word in relations.contractions:
        repl = FormalClass(relations.contractions[word])
        return ("contract:%s" % "%".join(word), repl)
    return None


# ---------------------------------------------------------------------------
# The standard relation sets of the verification battery.
# ---------------------------------------------------------------------------


def gw_relations(n, i):
    """Symbols and decompositions around HGr'(2n,4n) x HP^1 at component i.

    U2n + U2n_perp = H^{2n} on the big Grassmannian, U + U_perp = H^2 on
    the quaternionic projective line, and H % H = 2 H+.
    """
    rel = RelationSet([
        BundleSymbol("U2n", 2 * n, "symplectic"),
        BundleSymbol("U2n_perp", 2 * n, "symplectic"),
        BundleSymbol("U", 2, "symplectic"),
        BundleSymbol("U_perp", 2, "symplectic"),
        BundleSymbol("H", 2, "symplectic"),
        BundleSymbol("H+", 2, "orthogonal"),
    ], name="gw(n=%d,i=%d)" % (n, i))
    rel.add_complement("U2n_perp", "U2n", "H", 2 * n)
    rel.add_complement("U_perp", "U", "H", 2)
    rel.add_contraction(("H", "H"), {("H+",): 2})
    return rel


def k0_relations(n, i):
    """Plain K0 symbols on CGr(n,2n) x CP^1 at component i."""
    rel = RelationSet([
        BundleSymbol("U'n", n, "plain"),
        BundleSymbol("U''n", n, "plain"),
        BundleSymbol("U'1", 1, "plain"),
        BundleSymbol("U''1", 1, "plain"),
        BundleSymbol("O", 1, "plain"),
    ], name="k0(n=%d,i=%d)" % (n, i))
    rel.add_complement("U''n", "U'n", "O", 2 * n)
    rel.add_complement("U''1", "U'1", "O", 2)
    rel.set_absorbing_unit("O")
    return rel


class Verification:
    """Outcome of a class-identity check, with the full rewrite trace."""

    def __init__(self, name, ok, lhs, rhs, trace, notes):
        self.name = name
        self.ok = ok
        self.lhs = lhs
        self.rhs = rhs
        self.trace = trace
        self.notes = notes

    def __bool__(self):
        return self.ok

    def __repr__(self):
        return "Verification(%s: %s)" % (self.name, "ok" if self.ok else "FAIL")

    def to_json(self):
        return {
            "name": self.name,
            "ok": self.ok,
            "lhs_normal_form": self.lhs.to_json(),
            "rhs_normal_form": self.rhs.to_json(),
            "notes": self.notes,
            "trace": self.trace,
        }


def verify_gw_formula(n, i):
    """Pullback identity for the rank-16n orthogonal subbundle, component i.

    Left side: the declared subbundle decomposition
      (U2n % U) + (H^{n-i} % U_perp) + (U2n_perp % H) + (2n+2i) H+
    minus 8n H+.  Right side: ([U2n]-(n-i)[H]) % ([U]-[H]) by bilinearity.
    """
    if n < 1:
        raise ClassCalcError("need n >= 1")
    if abs(i) > n:
        raise ClassCalcError("component index must satisfy |i| <= n")
    rel = gw_relations(n, i)
    pulled_back = (FormalClass.of("U2n", "U")
                   + (n - i) * FormalClass.of("H", "U_perp")
                   + FormalClass.of("U2n_perp", "H")
                   + (2 * n + 2 * i) * FormalClass.of("H+"))
    lhs = pulled_back - (8 * n) * FormalClass.of("H+")
    factor1 = FormalClass.of("U2n") - (n - i) * FormalClass.of("H")
    factor2 = FormalClass.of("U") - FormalClass.of("H")
    rhs = factor1.tensor(factor2)
    return _verify("gw-formula(n=%d,i=%d)" % (n, i), lhs, rhs, rel,
                   expect_rank=0)


def verify_k0_formula(n, i):
    """K-theory analogue: h_n^*([U'_{4n}] - 4n) against the box product."""
    if n < 1:
        raise ClassCalcError("need n >= 1")
    if abs(i) > n:
        raise ClassCalcError("component index must satisfy |i| <= n")
    rel = k0_relations(n, i)
    pulled_back = (FormalClass.of("U'n", "U'1")
                   + (n - i) * FormalClass.of("O", "U''1")
                   + FormalClass.of("U''n", "O")
                   + (n + i) * FormalClass.of("O", "O"))
    lhs = pulled_back - (4 * n) * FormalClass.of("O", "O")
    factor1 = FormalClass.of("U'n") - (n - i) * FormalClass.of("O")
    factor2 = FormalClass.of("U'1") - FormalClass.of("O")
    rhs = factor1.tensor(factor2)
    return _verify("k0-formula(n=%d,i=%d)" % (n, i), lhs, rhs, rel,
                   expect_rank=0)


def _verify(name, lhs, rhs, rel, expect_rank=None):
    notes = {}
    trace = []
    lhs_rank, rhs_rank = rel.rank_of(lhs), rel.rank_of(rhs)
    notes["rank_lhs"] = lhs_rank
    notes["rank_rhs"] = rhs_rank
    lhs_nf, trace = expand(lhs, rel, trace)
    rhs_nf, trace = expand(rhs, rel, trace)
    ok = lhs_nf == rhs_nf and lhs_rank == rhs_rank
    if expect_rank is not None:
        ok = ok and lhs_rank == expect_rank
        notes["rank_expected"] = expect_rank
    return Verification(name, ok, lhs_nf, rhs_nf, trace, notes)


def mu_class(n, i, j):
    """The box product ([U]+(i-n)[H]) % ([U]+(j-n)[H]) over HGr(n,2n)^2.

    Expanded bilinearly with [H % H] -> 2[H+]; rank 4ij.
    """
    if n < 1:
        raise ClassCalcError("need n >= 1")
    rel = RelationSet([
        BundleSymbol("U", 2 * n, "symplectic"),
        BundleSymbol("H", 2, "symplectic"),
        BundleSymbol("H+", 2, "orthogonal"),
    ], name="mu(n=%d)" % n)
    rel.add_contraction(("H", "H"), {("H+",): 2})
    factor = lambda idx: FormalClass.of("U") + (idx - n) * FormalClass.of("H")
    product = factor(i).tensor(factor(j))
    nf, _ = expand(product, rel)
    return nf, rel
