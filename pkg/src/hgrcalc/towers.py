"""Inverse systems of finitely generated abelian groups: lim and lim^1.

Groups are cokernel presentations of integer matrices; towers carry a tail
policy saying how the displayed prefix continues.  The module certifies or
refutes the Mittag-Leffler condition, computes limits of surjective towers,
and assembles compatible element families into truncated limit elements.
Full lim^1 of an arbitrary tower is never computed as a group (it can be
uncountable); vanishing certificates are the deliverable.
"""


class TowerError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Exact integer matrix normal forms.
# ---------------------------------------------------------------------------


def smith_normal_form(a):
    """(U, D, V) with U*a*V = D diagonal, d_i | d_{i+1}, U, V unimodular."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    d = [list(r) for r in a]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_op(i, j, c):  # row_i += c * row_j
        for k in range(cols):
            d[i][k] += c * d[j][k]
        for k in range(rows):
            u[i][k] += c * u[j][k]

    def col_op(i, j, c):  # col_i += c * col_j
        for k in range(rows):
            d[k][i] += c * d[k][j]
        for k in range(cols):
            v[k][i] += c * v[k][j]

    def row_swap(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for k in range(rows):
            d[k][i], d[k][j] = d[k][j], d[k][i]
        for k in range(cols):
            v[k][i], v[k][j] = v[k][j], v[k][i]

    t = 0
    while t < rows and t < cols:
        # find a nonzero pivot
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if d[i][j]:
                    if pivot is None or abs(d[i][j]) < abs(d[pivot[0]][pivot[1]]):
                        pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        row_swap(t, i)
        col_swap(t, j)
        # clear row and column t
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    row_op(i, t, -q)
                    if d[i][t]:
                        row_swap(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    col_op(j, t, -q)
                    if d[t][j]:
                        col_swap(t, j)
                        dirty = True
        # divisibility: pivot must divide the rest of the block
        fixed = False
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if d[i][j] % d[t][t]:
                    row_op(t, i, 1)
                    fixed = True
                    break
            if fixed:
                break
        if fixed:
            continue
        if d[t][t] < 0:
            row_op(t, t, -2)  # negate row t
        t += 1
    return u, d, v


def invariant_factors(a):
    """Nontrivial diagonal entries of the Smith form (excluding 1s kept)."""
    _, d, _ = smith_normal_form(a)
    out = []
    for t in range(min(len(d), len(d[0]) if d else 0)):
        if d[t][t]:
            out.append(abs(d[t][t]))
    return out


def hermite_column_form(a):
    """Canonical column Hermite normal form; equal spans give equal forms."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [list(r) for r in a]
    # work column by column with integer column reduction
    cur = 0
    for r in range(rows):
        # find a column with nonzero entry in row r at position >= cur
        piv = None
        for j in range(cur, cols):
            if m[r][j]:
                piv = j
                break
        if piv is None:
            continue
        # move pivot column into place
        for k in range(rows):
            m[k][cur], m[k][piv] = m[k][piv], m[k][cur]
        # gcd-reduce remaining columns against the pivot column
        for j in range(cur + 1, cols):
            while m[r][j]:
                if abs(m[r][j]) < abs(m[r][cur]) and m[r][j]:
                    for k in range(rows):
                        m[k][cur], m[k][j] = m[k][j], m[k][cur]
                q = m[r][j] // m[r][cur]
                for k in range(rows):
                    m[k][j] -= q * m[k][cur]
        if m[r][cur] < 0:
            for k in range(rows):
                m[k][cur] = -m[k][cur]
        # reduce earlier columns modulo the pivot
        for j in range(cur):
            q = m[r][j] // m[r][cur]
            if q:
                for k in range(rows):
                    m[k][j] -= q * m[k][cur]
        cur += 1
        if cur == cols:
            break
    # drop zero columns for a canonical presentation
    keep = [j for j in range(cols) if any(m[k][j] for k in range(rows))]
    return [[m[k][j] for j in keep] for k in range(rows)]


def mat_mul_int(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if k else 0
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


def solve_integer(a, b):
    """An integer solution x of a x = b (vectors as columns), or None."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u, d, v = smith_normal_form(a)
    ub = [sum(u[i][k] * b[k] for k in range(rows)) for i in range(rows)]
    y = [0] * cols
    for i in range(rows):
        di = d[i][i] if i < cols else 0
        if di:
            if ub[i] % di:
                return None
            y[i] = ub[i] // di
        elif ub[i]:
            return None
    return [sum(v[i][k] * y[k] for k in range(cols)) for i in range(cols)]


# ---------------------------------------------------------------------------
# Finitely generated abelian groups as cokernels.
# ---------------------------------------------------------------------------


class FGAbelian:
    """coker of an integer matrix: ngens generators, relations as columns."""

    def __init__(self, ngens, relations=None):
        if ngens < 0:
            raise TowerError("negative generator count")
        self.ngens = ngens
        self.relations = [list(col) for col in (relations or [])]
        for col in self.relations:
            if len(col) != ngens:
                raise TowerError("relation length does not match generators")

    @classmethod
    def free(cls, rank):
        return cls(rank)

    @classmethod
    def cyclic(cls, n):
        if n == 0:
            return cls(1)
        return cls(1, [[n]])

    @classmethod
    def direct_sum(cls, *groups):
        ngens = sum(g.ngens for g in groups)
        rels = []
        offset = 0
        for g in groups:
            for col in g.relations:
                padded = [0] * offset + list(col) + [0] * (ngens - offset - g.ngens)
                rels.append(padded)
            offset += g.ngens
        return cls(ngens, rels)

    def relation_matrix(self):
        """Generators x relations matrix (relations as columns)."""
        if not self.relations:
            return [[0] for _ in range(self.ngens)] if self.ngens else []
        return [[col[i] for col in self.relations] for i in range(self.ngens)]

    def invariant_factors(self):
        """(free_rank, [torsion invariant factors > 1])."""
        if self.ngens == 0:
            return (0, [])
        facs = invariant_factors(self.relation_matrix())
        free_rank = self.ngens - len(facs)
        torsion = [f for f in facs if f != 1]
        return (free_rank, torsion)

    def order(self):
        """Group order, or None when infinite."""
        free_rank, torsion = self.invariant_factors()
        if free_rank:
            return None
        out = 1
        for f in torsion:
            out *= f
        return out

    def is_finite(self):
        return self.order() is not None

    def is_trivial(self):
        return self.order() == 1

    def contains(self, vector):
        """Whether the vector is a relation (i.e. zero in the group)."""
        if not self.relations:
            return all(x == 0 for x in vector)
        return solve_integer(self.relation_matrix(), list(vector)) is not None

    def __eq__(self, other):
        return (isinstance(other, FGAbelian)
                and self.invariant_factors() == other.invariant_factors())

    def __repr__(self):
        free_rank, torsion = self.invariant_factors()
        bits = ["Z"] * free_rank + ["Z/%d" % f for f in torsion]
        return " x ".join(bits) if bits else "0"


# ---------------------------------------------------------------------------
# Towers.
# ---------------------------------------------------------------------------


TAIL_POLICIES = ("eventually-constant", "template-repeating", "finite-prefix-only")


class Tower:
    """Inverse system: maps[k] is a matrix inducing levels[k+1] -> levels[k]."""

    def __init__(self, levels, maps, tail="finite-prefix-only"):
        if tail not in TAIL_POLICIES:
            raise TowerError("unknown tail policy %r" % (tail,))
        if len(maps) != len(levels) - 1 and not (tail != "finite-prefix-only"
                                                 and len(maps) == len(levels)):
            # template policies may carry one extra map for the repeated tail
            raise TowerError("need one map per adjacent pair of levels")
        self.levels = list(levels)
        self.maps = [[list(r) for r in m] for m in maps]
        self.tail = tail
        for k, m in enumerate(self.maps):
            tgt = self.levels[min(k, len(self.levels) - 1)]
            src = self.levels[min(k + 1, len(self.levels) - 1)]
            if len(m) != tgt.ngens or (m and len(m[0]) != src.ngens):
                raise TowerError("map %d has the wrong shape" % k)
            if not _map_well_defined(m, src, tgt):
                raise TowerError("map %d does not send relations into relations" % k)

    def level(self, k):
        if k < len(self.levels):
            return self.levels[k]
        if self.tail == "finite-prefix-only":
            raise TowerError("level %d beyond supplied data" % k)
        return self.levels[-1]

    def map(self, k):
        """Matrix of level_{k+1} -> level_k, honoring the tail policy."""
        if k < len(self.maps):
            return self.maps[k]
        if self.tail == "finite-prefix-only":
            raise TowerError("map %d beyond supplied data" % k)
        if self.tail == "eventually-constant":
            n = self.levels[-1].ngens
            return [[int(i == j) for j in range(n)] for i in range(n)]
        return self.maps[-1]

    def composite(self, k, j):
        """Matrix of level_{k+j} -> level_k."""
        n = self.level(k).ngens
        acc = [[int(i == jj) for jj in range(n)] for i in range(n)]
        for step in range(j):
            acc = mat_mul_int(acc, self.map(k + step))
        return acc


def _map_well_defined(matrix, src, tgt):
    for col in src.relations:
        image = [sum(matrix[i][j] * col[j] for j in range(src.ngens))
                 for i in range(tgt.ngens)]
        if not tgt.contains(image):
            return False
    return True


def _image_subgroup_form(matrix, tgt):
    """Canonical form of span(matrix columns + target relations)."""
    cols = [[matrix[i][j] for i in range(len(matrix))]
            for j in range(len(matrix[0]) if matrix else 0)]
    cols += [list(c) for c in tgt.relations]
    if not cols:
        return []
    a = [[c[i] for c in cols] for i in range(tgt.ngens)]
    return hermite_column_form(a)


def _image_index(matrix, tgt):
    """Index of the image subgroup in tgt; None when infinite."""
    cols = [[matrix[i][j] for i in range(len(matrix))]
            for j in range(len(matrix[0]) if matrix else 0)]
    cols += [list(c) for c in tgt.relations]
    g = FGAbelian(tgt.ngens, cols)
    return g.order()


class MLResult:
    """certificate | refutation | inconclusive, with the evidence."""

    def __init__(self, kind, reason, data=None):
        if kind not in ("certificate", "refutation", "inconclusive"):
            raise TowerError("bad result kind")
        self.kind = kind
        self.reason = reason
        self.data = data or {}

    def __repr__(self):
        return "MLResult(%s: %s)" % (self.kind, self.reason)

    def to_json(self):
        return {"kind": self.kind, "reason": self.reason, "data": self.data}


def check_mittag_leffler(tower, window):
    """Mittag-Leffler analysis of the image chains Im(A_{k+j} -> A_k).

    Certificate when every inspected chain stabilizes (or the tail policy
    forces it: finite level groups, or surjective repeated maps); refutation
    when a repeating template forces strictly growing image indices through
    the whole window; inconclusive otherwise.
    """
    if window < 1:
        raise TowerError("window must be at least 1")

    # finite groups force stabilization of any decreasing chain; this needs
    # the tail policy to pin the groups beyond the prefix
    if tower.tail != "finite-prefix-only":
        if all(g.is_finite() for g in tower.levels):
            return MLResult("certificate",
                            "all level groups are finite; image chains stabilize",
                            {"orders": [g.order() for g in tower.levels]})

    # surjective maps keep every image chain constant at the full group
    if tower.maps and all(_image_index(tower.maps[k], tower.levels[k]) == 1
                          for k in range(len(tower.maps))):
        return MLResult("certificate",
                        "all supplied maps are surjective; image chains are "
                        "constant at the full group",
                        {"levels_checked": len(tower.maps)})

    levels_to_check = range(len(tower.levels))
    stabilized_at = {}
    indices_level0 = []
    for k in levels_to_check:
        tgt = tower.level(k)
        prev_form = None
        stable = None
        chain_indices = []
        for j in range(1, window + 1):
            try:
                comp = tower.composite(k, j)
            except TowerError:
                break  # no data beyond the prefix: refuse to guess
            form = _image_subgroup_form(comp, tgt)
            chain_indices.append(_image_index(comp, tgt))
            if prev_form is not None and form == prev_form:
                stable = j - 1
                break
            prev_form = form
        if k == 0:
            indices_level0 = chain_indices
        if stable is None:
            stabilized_at[k] = None
        else:
            stabilized_at[k] = stable

    if all(s is not None for s in stabilized_at.values()):
        # under a repeating template, one stable step propagates forever:
        # Im(F^{j+1}) = F(Im F^j), so equality persists
        if tower.tail != "finite-prefix-only":
            return MLResult("certificate", "image chains stabilize",
                            {"stabilized_at": stabilized_at})
        return MLResult("certificate",
                        "image chains stabilize within the supplied prefix",
                        {"stabilized_at": stabilized_at})

    if tower.tail == "template-repeating":
        idx = [i for i in indices_level0 if i is not None]
        if len(idx) == len(indices_level0) and len(idx) == window:
            if all(idx[t] < idx[t + 1] for t in range(len(idx) - 1)):
                return MLResult(
                    "refutation",
                    "image indices at level 0 grow strictly through the window",
                    {"indices": idx})
        # also refute on strictly-decreasing infinite-index patterns: a
        # free group whose image spans shrink strictly under the template
        forms = []
        growing = True
        tgt = tower.level(0)
        for j in range(1, window + 1):
            form = _image_subgroup_form(tower.composite(0, j), tgt)
            forms.append(form)
        for t in range(len(forms) - 1):
            if forms[t] == forms[t + 1]:
                growing = False
        if growing and forms:
            return MLResult(
                "refutation",
                "image chain at level 0 is strictly decreasing under the "
                "repeating template",
                {"chain_length": len(forms)})

    return MLResult("inconclusive",
                    "no stabilization within the window and no forcing tail policy",
                    {"stabilized_at": stabilized_at})


class LimResult:
    def __init__(self, group, depth, lim1_zero, report):
        self.group = group
        self.depth = depth
        self.lim1_zero = lim1_zero
        self.report = report

    def __repr__(self):
        return "LimResult(depth=%d, %r, lim1=0: %s)" % (
            self.depth, self.group, self.lim1_zero)


def lim_of_surjective(tower, depth):
    """Limit approximation for a tower whose maps are surjective to `depth`.

    Surjectivity of every map gives the Mittag-Leffler condition, hence
    lim^1 = 0, and the limit surjects onto every level <= depth.
    """
    for k in range(depth):
        m = tower.map(k)
        tgt = tower.level(k)
        if _image_index(m, tgt) != 1:
            raise TowerError("map at level %d is not surjective" % k)
    report = {
        "certified": "maps surjective through depth %d" % depth,
        "lim_surjects_onto_levels": list(range(depth + 1)),
    }
    return LimResult(tower.level(depth), depth, True, report)


def milnor_assemble(tower, certificate, elements, depth=None):
    """Assemble a compatible family into the truncated limit element.

    Requires a lim^1-vanishing certificate; compatibility of the family is
    checked exactly, and the element at the requested depth is returned
    (the unique inverse-limit element truncated there).
    """
    if not isinstance(certificate, MLResult) or certificate.kind != "certificate":
        raise TowerError("milnor_assemble needs a lim^1-vanishing certificate")
    if depth is None:
        depth = len(elements) - 1
    if depth >= len(elements):
        raise TowerError("no element supplied at depth %d" % depth)
    for k in range(len(elements) - 1):
        m = tower.map(k)
        src, tgt = tower.level(k + 1), tower.level(k)
        image = [sum(m[i][j] * elements[k + 1][j] for j in range(src.ngens))
                 for i in range(tgt.ngens)]
        diff = [image[i] - elements[k][i] for i in range(tgt.ngens)]
        if not tgt.contains(diff):
            raise TowerError("family is incompatible at level %d" % k)
    return list(elements[depth])
