"""Finite-dimensional modules as quiver representations.

A left module assigns to each vertex i a space k^{d_i} and to each arrow
a: i -> j a d_j x d_i matrix; a right module carries a d_i x d_j matrix
(acting M_j -> M_i).  Right A-modules and left modules over the opposite
algebra are the same data up to the side tag, and `duality_D` is the exact
vector-space duality exchanging the two sides.

Every constructed representation is checked against the algebra: all
relations evaluate to zero and all compositions of nilbound-many arrows
vanish.
"""

from fractions import Fraction

import numpy as np

from .algebra import BoundQuiverAlgebra, ParseError
from .linalg import Mat, block_diag, hstack, rank_of_stack, vstack

LEFT = "left"
RIGHT = "right"


class RepError(ValueError):
    """Contract violation on representation data."""


class Rep:
    """A module over a bound quiver algebra, given by its representation."""

    __slots__ = ("algebra", "side", "dims", "mats", "_cache")

    def __init__(self, algebra, side, dims, mats, _validated=False):
        if side not in (LEFT, RIGHT):
            raise RepError(f"side must be left or right, got {side!r}")
        self.algebra = algebra
        self.side = side
        self.dims = tuple(int(d) for d in dims)
        self.mats = tuple(mats)
        self._cache = {}
        if len(self.dims) != algebra.quiver.vertices:
            raise RepError("dimension vector length != vertex count")
        if len(self.mats) != len(algebra.quiver.arrows):
            raise RepError("one matrix per arrow required")
        for a, m in enumerate(self.mats):
            dom, cod = self.arrow_dom_cod(a)
            if m.shape != (self.dims[cod], self.dims[dom]):
                raise RepError(
                    f"arrow {a}: matrix shape {m.shape}, expected "
                    f"({self.dims[cod]}, {self.dims[dom]})"
                )
        if not _validated:
            self._check_module_axioms()

    # arrows act dom -> cod; for left modules dom = arrow source, for right
    # modules the action goes backwards
    def arrow_dom_cod(self, a):
        s, t = self.algebra.quiver.arrows[a]
        return (s, t) if self.side == LEFT else (t, s)

    @property
    def field(self):
        return self.algebra.field

    @property
    def total_dim(self):
        return sum(self.dims)

    def is_zero(self):
        return self.total_dim == 0

    def _check_module_axioms(self):
        for rel in self.algebra.relations:
            acc = None
            for coeff, path in rel.terms:
                term = self.path_action(path).scale(coeff)
                acc = term if acc is None else acc + term
            if not acc.is_zero():
                raise RepError("relation does not annihilate representation")
        # all nilbound-fold arrow compositions vanish: iterate image spans
        n = self.algebra.nilbound
        spans = [Mat.identity(self.field, d) for d in self.dims]
        for _ in range(n):
            nxt = [[] for _ in self.dims]
            for a, m in enumerate(self.mats):
                dom, cod = self.arrow_dom_cod(a)
                if spans[dom].cols and m.rows:
                    nxt[cod].append(m @ spans[dom])
            spans = [
                hstack(chunk) if chunk else Mat.zeros(self.field, self.dims[u], 0)
                for u, chunk in enumerate(nxt)
            ]
            if all(s.is_zero() or s.cols == 0 for s in spans):
                return
        if any(not (s.is_zero() or s.cols == 0) for s in spans):
            raise RepError(f"some composition of {n} arrows acts nonzero")

    def path_action(self, path, source=None):
        """The matrix by which a path (arrow tuple, application order) acts.

        For a left module this maps the source component to the target
        component; for a right module the other way around.
        """
        path = tuple(path)
        key = ("act", path, source)
        if key in self._cache:
            return self._cache[key]
        if not path:
            if source is None:
                raise RepError("trivial path needs a vertex")
            out = Mat.identity(self.field, self.dims[source])
        elif self.side == LEFT:
            out = self.mats[path[0]]
            for a in path[1:]:
                out = self.mats[a] @ out
        else:
            out = self.mats[path[-1]]
            for a in reversed(path[:-1]):
                out = self.mats[a] @ out
        self._cache[key] = out
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Rep)
            and other.algebra is self.algebra
            and other.side == self.side
            and other.dims == self.dims
            and all(m == n for m, n in zip(self.mats, other.mats))
        )

    def __repr__(self):
        return f"<Rep {self.side} dims={self.dims}>"


class ModMap:
    """A module morphism: one matrix per vertex, commuting with all arrows."""

    __slots__ = ("source", "target", "mats")

    def __init__(self, source, target, mats, _validated=False):
        if source.algebra is not target.algebra or source.side != target.side:
            raise RepError("morphism endpoints live over different algebras/sides")
        self.source = source
        self.target = target
        self.mats = tuple(mats)
        for v, m in enumerate(self.mats):
            if m.shape != (target.dims[v], source.dims[v]):
                raise RepError(f"vertex {v}: map shape {m.shape} wrong")
        if not _validated:
            for a in range(len(source.mats)):
                dom, cod = source.arrow_dom_cod(a)
                lhs = self.mats[cod] @ source.mats[a]
                rhs = target.mats[a] @ self.mats[dom]
                if not (lhs - rhs).is_zero():
                    raise RepError(f"map does not intertwine arrow {a}")

    def compose(self, other):
        """self after other."""
        if other.target is not self.source and other.target != self.source:
            raise RepError("composition mismatch")
        return ModMap(
            other.source,
            self.target,
            [m @ n for m, n in zip(self.mats, other.mats)],
            _validated=True,
        )

    def is_zero(self):
        return all(m.is_zero() for m in self.mats)

    def rank(self):
        return sum(m.rank() for m in self.mats)

    def __repr__(self):
        return f"<ModMap {self.source.dims} -> {self.target.dims}>"


# -- constructors ------------------------------------------------------------


def zero_rep(algebra, side=LEFT):
    f = algebra.field
    dims = (0,) * algebra.quiver.vertices
    mats = [
        Mat.zeros(f, 0, 0) for _ in algebra.quiver.arrows
    ]
    return Rep(algebra, side, dims, mats, _validated=True)


def simple(algebra, vertex, side=LEFT):
    """The simple module at a vertex: indicator dimension vector, arrows zero."""
    if not 0 <= vertex < algebra.quiver.vertices:
        raise RepError(f"vertex {vertex} out of range")
    f = algebra.field
    dims = tuple(1 if v == vertex else 0 for v in range(algebra.quiver.vertices))
    mats = []
    for a, (s, t) in enumerate(algebra.quiver.arrows):
        dom, cod = (s, t) if side == LEFT else (t, s)
        mats.append(Mat.zeros(f, dims[cod], dims[dom]))
    return Rep(algebra, side, dims, mats, _validated=True)


def _basis_rep(algebra, side, ids):
    """Module on a subset of basis paths closed under the chosen action,
    with matrices read off the multiplication table."""
    f, T = algebra.field, algebra.table
    grade = algebra.path_target if side == LEFT else algebra.path_source
    by_vertex = [[] for _ in range(algebra.quiver.vertices)]
    for i in ids:
        by_vertex[grade(i)].append(i)
    pos = {}
    for v, chunk in enumerate(by_vertex):
        for k, i in enumerate(chunk):
            pos[i] = k
    dims = tuple(len(chunk) for chunk in by_vertex)
    mats = []
    for a in range(len(algebra.quiver.arrows)):
        ai = algebra.arrow_index[a]
        s, t = algebra.quiver.arrows[a]
        dom, cod = (s, t) if side == LEFT else (t, s)
        m = f.empty(dims[cod], dims[dom])
        for col, i in enumerate(by_vertex[dom]):
            vec = T[ai, i] if side == LEFT else T[i, ai]
            for j in np.nonzero(vec != 0)[0] if f.dtype is object else np.nonzero(vec)[0]:
                j = int(j)
                if j not in pos:
                    raise AssertionError("basis subset not closed under action")
                m[pos[j], col] = vec[j]
        mats.append(Mat(f, m, _normalized=True))
    return Rep(algebra, side, dims, mats), by_vertex


def projective(algebra, vertex, side=LEFT):
    """The indecomposable projective at a vertex, realized on normal-form
    paths starting (left) or ending (right) there."""
    if not 0 <= vertex < algebra.quiver.vertices:
        raise RepError(f"vertex {vertex} out of range")
    ids = (
        algebra.basis_by_source(vertex)
        if side == LEFT
        else algebra.basis_by_target(vertex)
    )
    rep, _ = _basis_rep(algebra, side, ids)
    return rep


def regular(algebra, side=LEFT):
    """A as a module over itself: the direct sum of all indecomposable
    projectives in vertex order."""
    return direct_sum(
        [projective(algebra, v, side) for v in range(algebra.quiver.vertices)],
        algebra=algebra,
        side=side,
    )


def radical_module(algebra, side=LEFT):
    """The Jacobson radical J as a module: span of positive-length paths."""
    ids = [i for i in range(algebra.dim) if algebra.path_length(i) >= 1]
    rep, _ = _basis_rep(algebra, side, ids)
    return rep


def radical_power_module(algebra, power, side=LEFT):
    """J^power as a module (J^0 = A)."""
    ids = [i for i in range(algebra.dim) if algebra.path_length(i) >= power]
    rep, _ = _basis_rep(algebra, side, ids)
    return rep


def semisimple_top(algebra, side=LEFT):
    """A/J = direct sum of all simples, one per vertex."""
    return direct_sum(
        [simple(algebra, v, side) for v in range(algebra.quiver.vertices)],
        algebra=algebra,
        side=side,
    )


def duality_D(m):
    """Vector-space duality Hom(-, k): flips the side, transposes matrices."""
    return Rep(
        m.algebra,
        RIGHT if m.side == LEFT else LEFT,
        m.dims,
        [mat.T for mat in m.mats],
        _validated=True,
    )


def injective(algebra, vertex, side=LEFT):
    """The indecomposable injective at a vertex: D of the projective on the
    other side."""
    other = RIGHT if side == LEFT else LEFT
    return duality_D(projective(algebra, vertex, other))


def injective_cogenerator(algebra, side=LEFT):
    """D(A) as a module: the direct sum of all indecomposable injectives."""
    other = RIGHT if side == LEFT else LEFT
    return duality_D(regular(algebra, other))


def direct_sum(ms, algebra=None, side=None):
    """Block-diagonal direct sum; the empty sum is the zero module."""
    ms = list(ms)
    if not ms:
        if algebra is None or side is None:
            raise RepError("empty direct sum needs algebra and side")
        return zero_rep(algebra, side)
    a0, s0 = ms[0].algebra, ms[0].side
    for m in ms[1:]:
        if m.algebra is not a0 or m.side != s0:
            raise RepError("direct sum over mixed algebras/sides")
    dims = tuple(sum(m.dims[v] for m in ms) for v in range(a0.quiver.vertices))
    mats = []
    for arr in range(len(a0.quiver.arrows)):
        mats.append(block_diag(a0.field, [m.mats[arr] for m in ms]))
    return Rep(a0, s0, dims, mats, _validated=True)


def to_opposite(m):
    """Re-read a module over the opposite algebra: a right A-module is a left
    A^op-module with identical matrices, and conversely.  Lossless."""
    op = m.algebra.opposite()
    side = LEFT if m.side == RIGHT else RIGHT
    return Rep(op, side, m.dims, m.mats, _validated=True)


# -- structure: radical, top, socle ------------------------------------------


class RadTopSoc:
    __slots__ = ("rad", "rad_incl", "top", "top_proj", "soc", "soc_incl")

    def __init__(self, rad, rad_incl, top, top_proj, soc, soc_incl):
        self.rad = rad
        self.rad_incl = rad_incl
        self.top = top
        self.top_proj = top_proj
        self.soc = soc
        self.soc_incl = soc_incl


def sub_rep_from_spans(m, spans):
    """The subrepresentation generated by per-vertex column spans (closes
    under the arrow action); returns (sub, inclusion)."""
    f = m.field
    spans = [s.column_space_canonical().T for s in spans]
    changed = True
    while changed:
        changed = False
        for a, mat in enumerate(m.mats):
            dom, cod = m.arrow_dom_cod(a)
            if spans[dom].cols == 0:
                continue
            pushed = mat @ spans[dom]
            joined = hstack([spans[cod], pushed]) if spans[cod].cols else pushed
            canon = joined.column_space_canonical().T
            if canon.cols != spans[cod].cols:
                spans[cod] = canon
                changed = True
    return _sub_rep_from_bases(m, spans)


def _sub_rep_from_bases(m, bases):
    """Subrep on given per-vertex bases (columns, assumed arrow-closed)."""
    f = m.field
    dims = tuple(b.cols for b in bases)
    mats = []
    for a, mat in enumerate(m.mats):
        dom, cod = m.arrow_dom_cod(a)
        pushed = mat @ bases[dom]
        sol = bases[cod].solve(pushed)
        if sol is None:
            raise RepError("spans not closed under arrows")
        mats.append(sol)
    sub = Rep(m.algebra, m.side, dims, mats)
    incl = ModMap(sub, m, bases)
    return sub, incl


def quotient_rep(m, incl):
    """Quotient of m by the image of an inclusion; returns (quot, projection)."""
    f = m.field
    projs = []
    for v in range(m.algebra.quiver.vertices):
        ann = incl.mats[v].T.kernel_basis().T  # rows spanning the annihilator
        projs.append(ann)
    dims = tuple(p.rows for p in projs)
    mats = []
    for a, mat in enumerate(m.mats):
        dom, cod = m.arrow_dom_cod(a)
        # solve Q_a @ proj_dom = proj_cod @ mat  (proj_dom has full row rank)
        rhs = projs[cod] @ mat
        sol = projs[dom].T.solve(rhs.T)
        if sol is None:
            raise RepError("quotient matrices do not exist; not a subrep?")
        mats.append(sol.T)
    quot = Rep(m.algebra, m.side, dims, mats)
    proj = ModMap(m, quot, projs)
    return quot, proj


def radical_top_socle(m):
    """rad = sum of arrow images, top = m/rad (semisimple), soc = joint
    kernel of all arrows (largest semisimple sub)."""
    f = m.field
    v_count = m.algebra.quiver.vertices

    rad_spans = [[] for _ in range(v_count)]
    for a, mat in enumerate(m.mats):
        dom, cod = m.arrow_dom_cod(a)
        rad_spans[cod].append(mat)
    rad_bases = []
    for v in range(v_count):
        chunk = [x for x in rad_spans[v] if x.cols]
        if chunk:
            rad_bases.append(hstack(chunk).column_space_canonical().T)
        else:
            rad_bases.append(Mat.zeros(f, m.dims[v], 0))
    rad, rad_incl = _sub_rep_from_bases(m, rad_bases)

    top, top_proj = quotient_rep(m, rad_incl)

    soc_bases = []
    for v in range(v_count):
        outs = [
            m.mats[a]
            for a in range(len(m.mats))
            if m.arrow_dom_cod(a)[0] == v and m.mats[a].rows
        ]
        if outs:
            soc_bases.append(vstack(outs).kernel_basis())
        else:
            soc_bases.append(Mat.identity(f, m.dims[v]))
    soc, soc_incl = _sub_rep_from_bases(m, soc_bases)
    return RadTopSoc(rad, rad_incl, top, top_proj, soc, soc_incl)


def is_semisimple_rep(m):
    """True iff all arrows act as zero."""
    return all(mat.is_zero() for mat in m.mats)


# -- hom spaces ---------------------------------------------------------------


def hom_space(m, n):
    """A basis of Hom(m, n) as a list of ModMap, by solving the intertwiner
    equations exactly."""
    if m.algebra is not n.algebra or m.side != n.side:
        raise RepError("hom between modules over different algebras/sides")
    f = m.field
    v_count = m.algebra.quiver.vertices
    offsets = []
    total = 0
    for v in range(v_count):
        offsets.append(total)
        total += n.dims[v] * m.dims[v]
    rows = []
    for a in range(len(m.mats)):
        dom, cod = m.arrow_dom_cod(a)
        Ma, Na = m.mats[a], n.mats[a]
        # n.mats[a] @ F_dom - F_cod @ m.mats[a] = 0, entry (r, c)
        for r in range(n.dims[cod]):
            for c in range(m.dims[dom]):
                row = f.empty(1, total)[0]
                for k in range(n.dims[dom]):
                    row[offsets[dom] + k * m.dims[dom] + c] += Na.a[r, k]
                for k in range(m.dims[cod]):
                    idx = offsets[cod] + r * m.dims[cod] + k
                    row[idx] -= Ma.a[k, c]
                rows.append(row)
    if rows:
        sys_mat = Mat(f, np.stack(rows))
        K = sys_mat.kernel_basis()
    else:
        K = Mat.identity(f, total)
    out = []
    for j in range(K.cols):
        mats = []
        for v in range(v_count):
            block = K.a[offsets[v] : offsets[v] + n.dims[v] * m.dims[v], j]
            mats.append(
                Mat(f, np.array(block).reshape(n.dims[v], m.dims[v]))
                if n.dims[v] * m.dims[v]
                else Mat.zeros(f, n.dims[v], m.dims[v])
            )
        out.append(ModMap(m, n, mats))
    return out


def hom_dim(m, n):
    return len(hom_space(m, n))


# -- module literal format ----------------------------------------------------
#
#   MODULE left 1 2 ; ARROWMAT a = [[0,1],[0,0]] ; ARROWMAT b = [[1],[0]]
#
# omitted arrows act as zero; entries are exact (ints or p/q).


def parse_module(algebra, text):
    clauses = [c.strip() for c in text.split(";") if c.strip()]
    if not clauses or not clauses[0].upper().startswith("MODULE"):
        raise ParseError("module literal must start with MODULE")
    head = clauses[0].split()
    if len(head) < 2 or head[1].lower() not in (LEFT, RIGHT):
        raise ParseError("MODULE needs a side: left or right")
    side = head[1].lower()
    try:
        dims = tuple(int(x) for x in head[2:])
    except ValueError:
        raise ParseError("MODULE dimensions must be integers") from None
    if len(dims) != algebra.quiver.vertices:
        raise ParseError(
            f"expected {algebra.quiver.vertices} dimensions, got {len(dims)}"
        )
    f = algebra.field
    name_to_idx = {n: i for i, n in enumerate(algebra.quiver.names)}
    mats = {}
    for clause in clauses[1:]:
        if not clause.upper().startswith("ARROWMAT"):
            raise ParseError(f"unknown module clause {clause!r}")
        body = clause[len("ARROWMAT"):].strip()
        name, _, entries = body.partition("=")
        name = name.strip()
        if name not in name_to_idx:
            raise ParseError(f"unknown arrow {name!r} in module literal")
        try:
            rows = _parse_nested_list(entries.strip())
        except ValueError as e:
            raise ParseError(f"bad matrix for arrow {name}: {e}") from None
        a = name_to_idx[name]
        s, t = algebra.quiver.arrows[a]
        dom, cod = (s, t) if side == LEFT else (t, s)
        mats[a] = Mat.from_rows(f, rows, cols=dims[dom]) if rows else Mat.zeros(
            f, dims[cod], dims[dom]
        )
        if mats[a].shape != (dims[cod], dims[dom]):
            raise ParseError(
                f"arrow {name}: matrix shape {mats[a].shape}, expected "
                f"({dims[cod]}, {dims[dom]})"
            )
    full = []
    for a in range(len(algebra.quiver.arrows)):
        if a in mats:
            full.append(mats[a])
        else:
            s, t = algebra.quiver.arrows[a]
            dom, cod = (s, t) if side == LEFT else (t, s)
            full.append(Mat.zeros(f, dims[cod], dims[dom]))
    try:
        return Rep(algebra, side, dims, full)
    except RepError as e:
        raise ParseError(str(e)) from None


def _parse_nested_list(text):
    """Parse [[..],[..]] with int or p/q entries, no eval."""
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError("matrix must be bracketed")
    inner = text[1:-1].strip()
    if not inner:
        return []
    rows = []
    depth = 0
    start = None
    for i, ch in enumerate(inner):
        if ch == "[":
            if depth == 0:
                start = i + 1
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth == 0:
                chunk = inner[start:i].strip()
                rows.append(
                    [Fraction(tok.strip()) for tok in chunk.split(",") if tok.strip()]
                )
        elif depth == 0 and ch not in ", \t":
            raise ValueError(f"unexpected character {ch!r}")
    if depth != 0:
        raise ValueError("unbalanced brackets")
    return rows


def format_module(m):
    parts = [f"MODULE {m.side} " + " ".join(str(d) for d in m.dims)]
    for a, name in enumerate(m.algebra.quiver.names):
        mat = m.mats[a]
        if mat.is_zero():
            continue
        rows = "[" + ",".join(
            "[" + ",".join(m.field.scalar_str(x) for x in row) + "]"
            for row in mat.a
        ) + "]"
        parts.append(f"ARROWMAT {name} = {rows}")
    return " ; ".join(parts)
