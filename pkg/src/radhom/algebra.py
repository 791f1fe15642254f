"""Bound quiver algebras A = kQ / (relations + R^N).

A presentation is a quiver, a set of k-linear relations among parallel paths
of length >= 2, and a nilpotency bound N; the ideal actually divided out is
<relations> + R^N, which is admissible by construction.  The normal-form
basis is computed by exact row reduction of the relation span inside the
space of paths of length < N: non-pivot paths survive as basis elements, and
every product of basis paths reduces to a unique normal form.

Path convention: a path stores its arrows in application order, so the path
(a, b) means "apply a, then b".  In a product x * y the right factor y acts
first; an arrow a: i -> j acts on left modules as a map M_i -> M_j.
"""

import hashlib
from fractions import Fraction

import numpy as np

from .fields import GF, field_from_name
from .linalg import Mat


class PresentationError(ValueError):
    """Invalid algebra presentation (bad relation, bad nilbound, ...)."""


class Quiver:
    """A finite quiver: vertex count plus a list of named arrows.

    Loops and parallel arrows are allowed; vertices are 0-based.
    """

    def __init__(self, vertices, arrows, names=None):
        self.vertices = int(vertices)
        self.arrows = tuple((int(s), int(t)) for s, t in arrows)
        if names is None:
            names = tuple(f"a{i}" for i in range(len(self.arrows)))
        self.names = tuple(names)
        if len(self.names) != len(self.arrows):
            raise PresentationError("one name per arrow required")
        if len(set(self.names)) != len(self.names):
            raise PresentationError("duplicate arrow names")
        for s, t in self.arrows:
            if not (0 <= s < self.vertices and 0 <= t < self.vertices):
                raise PresentationError(f"arrow endpoint out of range: ({s},{t})")

    def reversed(self):
        return Quiver(
            self.vertices, tuple((t, s) for s, t in self.arrows), self.names
        )

    def is_connected(self):
        """Connectivity of the underlying undirected graph."""
        if self.vertices == 0:
            return True
        adj = {v: set() for v in range(self.vertices)}
        for s, t in self.arrows:
            adj[s].add(t)
            adj[t].add(s)
        seen = {0}
        stack = [0]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.vertices

    def __eq__(self, other):
        return (
            isinstance(other, Quiver)
            and other.vertices == self.vertices
            and other.arrows == self.arrows
            and other.names == self.names
        )

    def __repr__(self):
        return f"Quiver({self.vertices}, {self.arrows!r})"


class Relation:
    """A k-linear combination of parallel paths, each of length in [2, N).

    Paths are tuples of arrow indices in application order.  All paths in a
    relation must share source and target, and coefficients must be nonzero.
    """

    def __init__(self, terms):
        self.terms = tuple((coeff, tuple(path)) for coeff, path in terms)
        if not self.terms:
            raise PresentationError("empty relation")

    def reversed(self):
        return Relation([(c, tuple(reversed(p))) for c, p in self.terms])

    def is_monomial(self):
        return len(self.terms) == 1

    def __repr__(self):
        return f"Relation({self.terms!r})"


def _path_endpoints(quiver, path, source_hint=None):
    """(source, target) of a path given as arrow-index tuple; validates
    composability.  Trivial paths need source_hint."""
    if not path:
        if source_hint is None:
            raise PresentationError("trivial path needs an explicit vertex")
        return source_hint, source_hint
    src = quiver.arrows[path[0]][0]
    at = src
    for a in path:
        s, t = quiver.arrows[a]
        if s != at:
            raise PresentationError(f"path {path} is not composable")
        at = t
    return src, at


class BoundQuiverAlgebra:
    """A split basic finite-dimensional algebra kQ/(relations + R^N).

    Stores the normal-form basis (as paths), the dense multiplication
    tensor T with T[i, j] = coefficient vector of basis_i * basis_j, the
    vertex idempotent indices, and arrow basis indices.  Instances are
    immutable after construction and safe to share between threads.
    """

    def __init__(self, quiver, relations, nilbound, field, _data=None):
        self.quiver = quiver
        self.relations = tuple(relations)
        self.nilbound = int(nilbound)
        self.field = field
        if _data is not None:
            # direct construction (used by opposite())
            (self.basis_paths, self.table, self.idempotent_index,
             self.arrow_index) = _data
        else:
            self._build()
        self.dim = len(self.basis_paths)
        self._cache = {}
        self._check_invariants()

    # -- construction ---------------------------------------------------

    def _validate_presentation(self):
        q, n = self.quiver, self.nilbound
        if n < 2:
            raise PresentationError(f"nilbound must be >= 2, got {n}")
        for rel in self.relations:
            ends = set()
            for coeff, path in rel.terms:
                if not (2 <= len(path) < n):
                    raise PresentationError(
                        f"relation path length {len(path)} outside [2, {n})"
                    )
                if coeff == 0:
                    raise PresentationError("zero coefficient in relation")
                ends.add(_path_endpoints(q, path))
            if len(ends) != 1:
                raise PresentationError(
                    f"relation mixes non-parallel paths: endpoints {sorted(ends)}"
                )

    def _enumerate_paths(self):
        """All paths of length < N, sorted by (length, arrows, source)."""
        q, n = self.quiver, self.nilbound
        paths = [(v, ()) for v in range(q.vertices)]
        frontier = paths
        out_arrows = {v: [] for v in range(q.vertices)}
        for a, (s, t) in enumerate(q.arrows):
            out_arrows[s].append(a)
        for _ in range(1, n):
            nxt = []
            for src, arrs in frontier:
                at = q.arrows[arrs[-1]][1] if arrs else src
                for a in out_arrows[at]:
                    nxt.append((src, arrs + (a,)))
            paths.extend(nxt)
            frontier = nxt
            if not nxt:
                break
        paths.sort(key=lambda p: (len(p[1]), p[1], p[0]))
        return paths

    def _relation_span_pivots(self, paths, index):
        """Pivot path indices of the two-sided relation span, plus the reduced
        rows used to rewrite them (None for the purely monomial fast path)."""
        q, n, f = self.quiver, self.nilbound, self.field
        target_of = {}
        source_of = {}
        for i, (src, arrs) in enumerate(paths):
            tgt = q.arrows[arrs[-1]][1] if arrs else src
            source_of[i] = src
            target_of[i] = tgt
        by_source = {}
        by_target = {}
        for i in range(len(paths)):
            by_source.setdefault(source_of[i], []).append(i)
            by_target.setdefault(target_of[i], []).append(i)

        if all(rel.is_monomial() for rel in self.relations):
            # monomial ideal: a path reduces to zero iff it contains some
            # relation path as a contiguous factor
            rel_words = [rel.terms[0][1] for rel in self.relations]
            pivots = set()
            for i, (src, arrs) in enumerate(paths):
                for w in rel_words:
                    lw = len(w)
                    if lw <= len(arrs) and any(
                        arrs[k : k + lw] == w for k in range(len(arrs) - lw + 1)
                    ):
                        pivots.add(i)
                        break
            return pivots, None

        rows = []
        for rel in self.relations:
            u, w = _path_endpoints(q, rel.terms[0][1])
            min_len = min(len(p) for _, p in rel.terms)
            for qi in by_target.get(u, []):
                q_src, q_arrs = paths[qi]
                for pi in by_source.get(w, []):
                    p_src, p_arrs = paths[pi]
                    if len(q_arrs) + min_len + len(p_arrs) >= n:
                        continue
                    vec = f.empty(1, len(paths))[0]
                    nonzero = False
                    for coeff, rp in rel.terms:
                        full = q_arrs + rp + p_arrs
                        if len(full) >= n:
                            continue
                        j = index.get((q_src, full))
                        if j is None:
                            raise AssertionError("path bookkeeping broken")
                        vec[j] = vec[j] + f.coerce(coeff)
                        nonzero = True
                    if nonzero:
                        rows.append(vec)
        if not rows:
            return set(), None
        m = Mat(f, np.stack(rows))
        R, piv = m.rref()
        return set(piv), (R, piv)

    def _build(self):
        self._validate_presentation()
        f = self.field
        paths = self._enumerate_paths()
        index = {p: i for i, p in enumerate(paths)}
        pivots, reducer = self._relation_span_pivots(paths, index)

        basis_ids = [i for i in range(len(paths)) if i not in pivots]
        self.basis_paths = tuple(paths[i] for i in basis_ids)
        basis_pos = {i: k for k, i in enumerate(basis_ids)}
        dim = len(basis_ids)

        # normal form of each enumerated path, as a coefficient vector on the basis
        nf = f.empty(len(paths), dim)
        if reducer is None:
            for i in range(len(paths)):
                if i not in pivots:
                    nf[i, basis_pos[i]] = f.coerce(1)
        else:
            # reducing e_pivot subtracts the matching rref row, which has a 1
            # there and 0 at the other pivots: nf(pivot) = -(row off-pivot part)
            R, piv = reducer
            piv_row = {c: r for r, c in enumerate(piv)}
            for i in range(len(paths)):
                if i in pivots:
                    row = R.a[piv_row[i]]
                    for k, j in enumerate(basis_ids):
                        nf[i, k] = f.neg(row[j])
                else:
                    nf[i, basis_pos[i]] = f.coerce(1)

        # multiplication tensor: T[i, j] = nf(concat(path_j, path_i)) (j acts first)
        n = self.nilbound
        T = np.zeros((dim, dim, dim), dtype=np.int64) if isinstance(f, GF) else f.empty(
            dim, dim * dim
        ).reshape(dim, dim, dim)
        q = self.quiver
        for i, (si, ai) in enumerate(self.basis_paths):
            for j, (sj, aj) in enumerate(self.basis_paths):
                tj = q.arrows[aj[-1]][1] if aj else sj
                if tj != si:
                    continue
                full = aj + ai
                if len(full) >= n:
                    continue
                T[i, j, :] = nf[index[(sj, full)]]
        self.table = T

        self.idempotent_index = tuple(
            self.basis_paths.index((v, ())) for v in range(q.vertices)
        )
        self.arrow_index = tuple(
            self.basis_paths.index((q.arrows[a][0], (a,)))
            for a in range(len(q.arrows))
        )

    # -- invariants -------------------------------------------------------

    def _check_invariants(self, triple_budget=48):
        q, f, T = self.quiver, self.field, self.table
        d = self.dim
        if d != self.quiver.vertices + sum(
            1 for _, arrs in self.basis_paths if arrs
        ):
            raise AssertionError("idempotent count broken")
        for v, i in enumerate(self.idempotent_index):
            src, arrs = self.basis_paths[i]
            assert arrs == () and src == v
        # e_i e_j = delta_ij e_i
        for i in self.idempotent_index:
            for j in self.idempotent_index:
                vec = T[i, j]
                expect = self.unit_vector(i) if i == j else None
                if expect is None:
                    assert not self._vec_any(vec), "orthogonality broken"
                else:
                    assert self._vec_eq(vec, expect), "idempotent broken"
        self._check_associativity(triple_budget)

    def _vec_any(self, vec):
        if self.field.dtype is object:
            return any(x != 0 for x in vec)
        return bool(vec.any())

    def _vec_eq(self, vec, other):
        return bool(np.all(vec == other))

    def unit_vector(self, i):
        vec = self.field.empty(1, self.dim)[0]
        vec[i] = self.field.coerce(1)
        return vec

    def _check_associativity(self, budget):
        """(b_i b_j) b_k == b_i (b_j b_k), fully when dim <= budget, on a
        deterministic sample of triples otherwise."""
        T, d, f = self.table, self.dim, self.field
        if d == 0:
            return
        if d <= budget:
            flat = T.reshape(d * d, d)
            for k in range(d):
                left = flat @ T[:, k, :]  # (d*d, d): (b_i b_j) b_k
                right = np.tensordot(T[:, k, :], T, axes=([1], [1]))
                # right[j, i, m] = sum_l T[j,k,l] * T[i,l,m]
                right = right.transpose(1, 0, 2).reshape(d * d, d)
                if isinstance(f, GF):
                    left %= f.p
                    right %= f.p
                if not np.array_equal(left, right):
                    raise AssertionError("multiplication not associative")
        else:
            rng = np.random.RandomState(0)
            for _ in range(500):
                i, j, k = (int(x) for x in rng.randint(0, d, size=3))
                lhs = f.normalize(np.tensordot(T[i, j], T[:, k, :], axes=(0, 0)))
                rhs = f.normalize(np.tensordot(T[j, k], T[i, :, :], axes=(0, 0)))
                if not np.array_equal(lhs, rhs):
                    raise AssertionError("multiplication not associative")

    # -- derived structure -------------------------------------------------

    def path_source(self, i):
        return self.basis_paths[i][0]

    def path_target(self, i):
        src, arrs = self.basis_paths[i]
        return self.quiver.arrows[arrs[-1]][1] if arrs else src

    def path_length(self, i):
        return len(self.basis_paths[i][1])

    def basis_by_source(self, v):
        return [i for i in range(self.dim) if self.path_source(i) == v]

    def basis_by_target(self, v):
        return [i for i in range(self.dim) if self.path_target(i) == v]

    def radical_dim(self):
        return self.dim - self.quiver.vertices

    def is_semisimple(self):
        return self.radical_dim() == 0

    def is_commutative(self):
        T = self.table
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if not np.array_equal(T[i, j], T[j, i]):
                    return False
        return True

    def is_local(self):
        return self.quiver.vertices == 1

    def opposite(self):
        """The opposite algebra: arrows reversed, basis paths reversed in
        place, multiplication table transposed (x * y there = y * x here)."""
        key = "opposite"
        if key in self._cache:
            return self._cache[key]
        q_op = self.quiver.reversed()
        rel_op = tuple(r.reversed() for r in self.relations)
        paths_op = []
        for src, arrs in self.basis_paths:
            if arrs:
                tgt = self.quiver.arrows[arrs[-1]][1]
                paths_op.append((tgt, tuple(reversed(arrs))))
            else:
                paths_op.append((src, ()))
        T_op = self.table.transpose(1, 0, 2).copy()
        op = BoundQuiverAlgebra(
            q_op,
            rel_op,
            self.nilbound,
            self.field,
            _data=(tuple(paths_op), T_op, self.idempotent_index, self.arrow_index),
        )
        op._cache["opposite"] = self
        self._cache[key] = op
        return op

    def fingerprint(self):
        return hashlib.sha256(format_algebra(self).encode()).hexdigest()[:16]

    def __repr__(self):
        return (
            f"<BoundQuiverAlgebra dim={self.dim} vertices={self.quiver.vertices} "
            f"arrows={len(self.quiver.arrows)} field={self.field!r} "
            f"nilbound={self.nilbound}>"
        )


def build_algebra(quiver, relations, nilbound, field):
    """Construct the bound quiver algebra kQ/(relations + R^nilbound)."""
    return BoundQuiverAlgebra(quiver, relations, nilbound, field)


# -- text format -----------------------------------------------------------
#
#   FIELD p | FIELD Q
#   NILBOUND N
#   VERTICES v
#   ARROW name src dst
#   REL c1*path1 + c2*path2 ...       path = names joined by '*', applied
#                                     right-to-left: "b*a" means a then b


class ParseError(ValueError):
    def __init__(self, msg, line=None, col=None):
        self.line = line
        self.col = col
        loc = f" (line {line}" + (f", col {col}" if col is not None else "") + ")" \
            if line is not None else ""
        super().__init__(msg + loc)


def _parse_coeff(tok, lineno):
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad coefficient {tok!r}", lineno) from None


def parse_algebra(text):
    """Parse an algebra definition; raises ParseError with line diagnostics."""
    field = None
    nilbound = None
    vertices = None
    arrows = []
    names = []
    rel_specs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        head = parts[0].upper()
        if head == "FIELD":
            if len(parts) != 2:
                raise ParseError("FIELD takes one argument", lineno)
            try:
                field = field_from_name(parts[1])
            except ValueError as e:
                raise ParseError(str(e), lineno) from None
        elif head == "NILBOUND":
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError("NILBOUND takes one integer", lineno)
            nilbound = int(parts[1])
        elif head == "VERTICES":
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError("VERTICES takes one integer", lineno)
            vertices = int(parts[1])
        elif head == "ARROW":
            if len(parts) != 4:
                raise ParseError("ARROW takes: name src dst", lineno)
            name = parts[1]
            try:
                s, t = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError("ARROW endpoints must be integers", lineno) from None
            arrows.append((s, t))
            names.append(name)
        elif head == "REL":
            rel_specs.append((lineno, line[len(parts[0]):].strip()))
        else:
            raise ParseError(f"unknown directive {parts[0]!r}", lineno)
    for what, val in (("FIELD", field), ("NILBOUND", nilbound), ("VERTICES", vertices)):
        if val is None:
            raise ParseError(f"missing {what} line")
    name_to_idx = {n: i for i, n in enumerate(names)}

    relations = []
    for lineno, body in rel_specs:
        terms = []
        for chunk in body.split("+"):
            chunk = chunk.strip()
            if not chunk:
                raise ParseError("empty relation term", lineno)
            if "*" not in chunk:
                raise ParseError(f"relation term {chunk!r} has no path", lineno)
            coeff_tok, _, path_tok = chunk.partition("*")
            # coefficient is optional when the term starts with an arrow name
            if coeff_tok in name_to_idx:
                coeff, path_tok = Fraction(1), chunk
            else:
                coeff = _parse_coeff(coeff_tok, lineno)
            steps = []
            for nm in path_tok.split("*"):
                nm = nm.strip()
                if nm not in name_to_idx:
                    raise ParseError(f"unknown arrow {nm!r} in relation", lineno)
                steps.append(name_to_idx[nm])
            # names are written leftmost-applied-last
            terms.append((coeff, tuple(reversed(steps))))
        relations.append(Relation(terms))

    quiver = Quiver(vertices, arrows, names)
    try:
        return build_algebra(quiver, relations, nilbound, field)
    except PresentationError as e:
        raise ParseError(str(e)) from None


def format_algebra(a):
    """Canonical text form; parse(format(a)) rebuilds an identical algebra."""
    lines = [
        f"FIELD {a.field.name}",
        f"NILBOUND {a.nilbound}",
        f"VERTICES {a.quiver.vertices}",
    ]
    for (s, t), name in zip(a.quiver.arrows, a.quiver.names):
        lines.append(f"ARROW {name} {s} {t}")
    for rel in a.relations:
        terms = []
        for coeff, path in rel.terms:
            word = "*".join(a.quiver.names[i] for i in reversed(path))
            terms.append(f"{coeff}*{word}")
        lines.append("REL " + " + ".join(terms))
    return "\n".join(lines) + "\n"
