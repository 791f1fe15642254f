"""Algebra-level homological invariants.

Global dimension, one-sided self-injective dimensions, the injective
dimension of the radical, Iwanaga-Gorenstein and minimal
Auslander-Gorenstein detection, Gorenstein projective/injective dimensions
in the Gorenstein regime, finitistic-dimension lower bounds over a sampled
module family, and the Koszul-complex Gorenstein test for commutative local
algebras.

Gorenstein-side dimensions are only computed under a Gorenstein witness;
without one, only lower bounds are reported (total-reflexivity search is out
of scope and the closed formulas hold under finiteness hypotheses only).
"""

import json

from .dimvalue import DimValue, known_equal, max_of
from .complexes import ChainComplex, complex_has_finite_pd
from .coresolve import (
    dominant_dimension_algebra,
    inj_dim,
)
from .linalg import Mat, block_diag
from .rep import (
    LEFT,
    RIGHT,
    ModMap,
    direct_sum,
    duality_D,
    injective_cogenerator,
    radical_module,
    radical_power_module,
    simple,
    to_opposite,
)
from .resolve import (
    DEFAULT_BOUND,
    DEFAULT_DIM_CAP,
    BoundExhausted,
    _regular_cached,
    ext_window,
    proj_dim,
    resolution,
    syzygy,
)

INCONCLUSIVE = "inconclusive"


def _simple_cached(algebra, v, side):
    key = ("simple_module", v, side)
    if key not in algebra._cache:
        algebra._cache[key] = simple(algebra, v, side)
    return algebra._cache[key]


def _radical_cached(algebra, side):
    key = ("radical_module", side)
    if key not in algebra._cache:
        algebra._cache[key] = radical_module(algebra, side)
    return algebra._cache[key]


def gl_dim(algebra, bound=DEFAULT_BOUND, side=LEFT, dim_cap=DEFAULT_DIM_CAP):
    """Global dimension = projective dimension of A/J = max over simples."""
    key = ("gl_dim", bound, side)
    if key in algebra._cache:
        return algebra._cache[key]
    values = [
        proj_dim(_simple_cached(algebra, v, side), bound, dim_cap)
        for v in range(algebra.quiver.vertices)
    ]
    out = max_of(values)
    if out.is_zero_module:  # no vertices cannot happen; semisimple gives 0s
        out = DimValue.exact(0)
    algebra._cache[key] = out
    return out


def inj_dim_radical(algebra, side=LEFT, bound=DEFAULT_BOUND,
                    dim_cap=DEFAULT_DIM_CAP):
    """Injective dimension of J as a one-sided module; ZeroModule for a
    semisimple algebra (the equality with gl dim then reads 0 = 0)."""
    j_mod = _radical_cached(algebra, side)
    if j_mod.is_zero():
        return DimValue.zero_module()
    return inj_dim(j_mod, bound, dim_cap)


def self_injective_dimension(algebra, side=LEFT, bound=DEFAULT_BOUND,
                             dim_cap=DEFAULT_DIM_CAP):
    """inj dim of the regular module on the given side."""
    key = ("self_inj_dim", bound, side)
    if key in algebra._cache:
        return algebra._cache[key]
    out = inj_dim(_regular_cached(algebra, side), bound, dim_cap)
    algebra._cache[key] = out
    return out


class GorensteinVerdict:
    """yes(d) / no_within_bound / inconclusive, with the one-sided values."""

    __slots__ = ("status", "d", "left", "right")

    YES = "yes"
    NO = "no_within_bound"

    def __init__(self, status, d, left, right):
        self.status = status
        self.d = d
        self.left = left
        self.right = right

    @property
    def is_gorenstein(self):
        return self.status == self.YES

    def __repr__(self):
        if self.status == self.YES:
            return f"gorenstein yes({self.d})"
        return f"gorenstein {self.status} (left {self.left}, right {self.right})"

    def to_json(self):
        return {
            "status": self.status,
            "d": self.d,
            "inj_dim_A_left": self.left.to_json(),
            "inj_dim_A_right": self.right.to_json(),
        }


def detect_gorenstein(algebra, bound=DEFAULT_BOUND, dim_cap=DEFAULT_DIM_CAP):
    """Iwanaga-Gorenstein detection from both one-sided self-injective
    dimensions.  Exact-but-unequal sides would falsify Zaks' theorem and
    are reported as an engine failure."""
    key = ("gorenstein", bound)
    if key in algebra._cache:
        return algebra._cache[key]
    left = self_injective_dimension(algebra, LEFT, bound, dim_cap)
    right = self_injective_dimension(algebra, RIGHT, bound, dim_cap)
    if left.is_exact and right.is_exact:
        if left.n != right.n:
            raise AssertionError(
                f"one-sided self-injective dimensions differ ({left} vs {right}); "
                "this contradicts Zaks' theorem and indicates an engine bug"
            )
        out = GorensteinVerdict(GorensteinVerdict.YES, left.n, left, right)
    elif (left.is_at_least and left.infinite) or (
        right.is_at_least and right.infinite
    ):
        if (left.is_exact and right.infinite) or (right.is_exact and left.infinite):
            raise AssertionError(
                "one self-injective dimension finite, the other certified "
                "infinite; contradicts Zaks' theorem"
            )
        out = GorensteinVerdict(GorensteinVerdict.NO, None, left, right)
    else:
        out = GorensteinVerdict(INCONCLUSIVE, None, left, right)
    algebra._cache[key] = out
    return out


def gproj_dim_gorenstein(m, d, dim_cap=DEFAULT_DIM_CAP):
    """Gorenstein projective dimension under a d-Gorenstein witness:
    the largest i <= d with Ext^i(m, A) != 0 (all higher degrees vanish by
    Gorensteinness)."""
    if d < 0:
        raise ValueError("Gorenstein witness must be a nonnegative integer")
    if m.is_zero():
        return DimValue.zero_module()
    a_mod = _regular_cached(m.algebra, m.side)
    dims, complete = ext_window(m, a_mod, d, dim_cap)
    if not complete:
        raise BoundExhausted("Ext window truncated below the Gorenstein bound")
    nonzero = [i for i, x in enumerate(dims) if x != 0]
    return DimValue.exact(max(nonzero) if nonzero else 0)


def ginj_dim_bounds(m, bound=DEFAULT_BOUND, gorenstein_d=None,
                    dim_cap=DEFAULT_DIM_CAP):
    """(lower, exact): lower bound sup{0, i : Ext^i(DA, m) != 0} within the
    window, and the exact Gorenstein-injective dimension when a Gorenstein
    witness makes the bound an equality."""
    algebra, side = m.algebra, m.side
    key = ("DA_module", side)
    if key not in algebra._cache:
        algebra._cache[key] = injective_cogenerator(algebra, side)
    da = algebra._cache[key]
    if m.is_zero():
        return 0, DimValue.zero_module()
    upto = bound if gorenstein_d is None else max(bound, gorenstein_d)
    dims, complete = ext_window(da, m, upto, dim_cap)
    nonzero = [i for i, x in enumerate(dims) if x != 0]
    lower = max(nonzero) if nonzero else 0
    exact = None
    if gorenstein_d is not None:
        if complete or (dims and max(nonzero or [0]) <= gorenstein_d):
            exact = DimValue.exact(lower)
    return lower, exact


def detect_minimal_AG(algebra, bound=DEFAULT_BOUND, dim_cap=DEFAULT_DIM_CAP):
    """Minimal Auslander-Gorenstein: Gorenstein with inj dim A <= dom dim A.
    Returns True / False / "inconclusive"."""
    gor = detect_gorenstein(algebra, bound, dim_cap)
    if gor.status == GorensteinVerdict.NO:
        return False
    if gor.status == INCONCLUSIVE:
        return INCONCLUSIVE
    dom = dominant_dimension_algebra(algebra, LEFT, bound, dim_cap)
    if dom.is_exact:
        return gor.d <= dom.n
    if dom.is_at_least:
        if gor.d <= dom.n or dom.infinite:
            return True
        return INCONCLUSIVE
    return INCONCLUSIVE


def default_module_family(algebra, side=LEFT, bound=DEFAULT_BOUND,
                          syzygy_depth=None, dim_cap=DEFAULT_DIM_CAP):
    """The sampled family the checks quantify over: simples, J, radical
    powers, and syzygies/cosyzygies of the simples up to min(bound, 10);
    deduplicated, labeled."""
    from .coresolve import cosyzygy

    depth = min(bound, 10) if syzygy_depth is None else syzygy_depth
    out = []
    seen = set()

    def add(label, mod):
        if mod.is_zero():
            return
        sig = (mod.dims, tuple(m.signature() for m in mod.mats))
        if sig in seen:
            return
        seen.add(sig)
        out.append((label, mod))

    for v in range(algebra.quiver.vertices):
        add(f"S{v}", _simple_cached(algebra, v, side))
    add("J", _radical_cached(algebra, side))
    power = 2
    while True:
        jp = radical_power_module(algebra, power, side)
        if jp.is_zero():
            break
        add(f"J^{power}", jp)
        power += 1
    for v in range(algebra.quiver.vertices):
        s = _simple_cached(algebra, v, side)
        for n in range(1, depth + 1):
            try:
                om = syzygy(s, n, dim_cap)
            except BoundExhausted:
                break
            if om.is_zero() or om.total_dim > dim_cap:
                break
            add(f"O^{n}(S{v})", om)
        for n in range(1, depth + 1):
            try:
                com = cosyzygy(s, n, dim_cap)
            except BoundExhausted:
                break
            if com.is_zero() or com.total_dim > dim_cap:
                break
            add(f"O^-{n}(S{v})", com)
    return out


def findim_lower_bounds(algebra, bound=DEFAULT_BOUND, side=LEFT,
                        dim_cap=DEFAULT_DIM_CAP, family=None):
    """(fp_lower, fi_lower): max Exact projective (resp. injective) dimension
    over the sampled family.  Lower bounds only; the true finitistic
    dimensions are not computable by sampling."""
    if family is None:
        family = default_module_family(algebra, side, bound, dim_cap=dim_cap)
    fp = 0
    fi = 0
    for _, mod in family:
        pd = proj_dim(mod, bound, dim_cap)
        if pd.is_exact:
            fp = max(fp, pd.n)
        idim = inj_dim(mod, bound, dim_cap)
        if idim.is_exact:
            fi = max(fi, idim.n)
    return fp, fi


# -- commutative local Koszul test ------------------------------------------------


def koszul_cogenerator_complex(algebra):
    """K ⊗ E for a commutative local algebra: the Koszul complex on the loop
    arrows, tensored degreewise with E = D(A)."""
    if not algebra.is_local():
        raise ValueError("Koszul test needs a local (one-vertex) algebra")
    if not algebra.is_commutative():
        raise ValueError("Koszul test needs a commutative algebra")
    e_mod = injective_cogenerator(algebra, LEFT)
    f = algebra.field
    n = len(algebra.quiver.arrows)
    if n == 0:
        return ChainComplex([e_mod], [], bottom=0)

    from itertools import combinations

    subsets = [list(combinations(range(n), j)) for j in range(n + 1)]
    terms = []
    for j in range(n + 1):
        terms.append(
            direct_sum([e_mod] * len(subsets[j]), algebra=algebra, side=LEFT)
        )
    e_dim = e_mod.total_dim
    diffs = []
    for j in range(1, n + 1):
        src_sets = subsets[j]
        tgt_index = {s: k for k, s in enumerate(subsets[j - 1])}
        big = f.empty(terms[j - 1].dims[0], terms[j].dims[0])
        for col, s in enumerate(src_sets):
            for t, gen in enumerate(s):
                rest = tuple(x for x in s if x != gen)
                row = tgt_index[rest]
                sign = 1 if t % 2 == 0 else -1
                block = e_mod.mats[gen].a if sign == 1 else f.normalize(
                    -e_mod.mats[gen].a
                )
                big[
                    row * e_dim : (row + 1) * e_dim,
                    col * e_dim : (col + 1) * e_dim,
                ] = block
        diffs.append(
            ModMap(terms[j], terms[j - 1], [Mat(f, big, _normalized=True)])
        )
    return ChainComplex(terms, diffs, bottom=0)


def koszul_gorenstein_test(algebra, bound=DEFAULT_BOUND, dim_cap=DEFAULT_DIM_CAP):
    """Gorenstein test for a commutative local algebra: the top homology of
    K ⊗ E must be nonzero (the socle of E), and the algebra is Gorenstein iff
    that complex has finite projective dimension.

    Returns True / False / "inconclusive"."""
    cx = koszul_cogenerator_complex(algebra)
    n = len(algebra.quiver.arrows)
    if cx.homology_total_dim(n) == 0:
        raise AssertionError("H_n(K ⊗ E) = 0: socle argument violated")
    try:
        return complex_has_finite_pd(cx, bound, dim_cap)
    except BoundExhausted:
        return INCONCLUSIVE


# -- the profile -------------------------------------------------------------------


class AlgebraProfile:
    """Every algebra-level invariant in one bundle, serializable to JSON."""

    FIELDS = (
        "gl_dim",
        "gl_dim_right",
        "inj_dim_A_left",
        "inj_dim_A_right",
        "inj_dim_J_left",
        "inj_dim_J_right",
        "dom_dim",
        "dom_dim_right",
    )

    def __init__(self, algebra, bound, values, gorenstein, minimal_ag,
                 fp_dim_lower, fi_dim_lower):
        self.algebra = algebra
        self.bound = bound
        self.values = values
        self.gorenstein = gorenstein
        self.minimal_ag = minimal_ag
        self.fp_dim_lower = fp_dim_lower
        self.fi_dim_lower = fi_dim_lower

    def to_json(self):
        d = {
            "fingerprint": self.algebra.fingerprint(),
            "field": self.algebra.field.name,
            "dim": self.algebra.dim,
            "bound": self.bound,
            "gorenstein": self.gorenstein.to_json(),
            "minimal_auslander_gorenstein": self.minimal_ag
            if isinstance(self.minimal_ag, (bool, str))
            else str(self.minimal_ag),
            "fp_dim_lower": self.fp_dim_lower,
            "fi_dim_lower": self.fi_dim_lower,
        }
        for name in self.FIELDS:
            d[name] = self.values[name].to_json()
        return d

    def render_table(self):
        rows = [("dim A", str(self.algebra.dim))]
        for name in self.FIELDS:
            rows.append((name, str(self.values[name])))
        rows.append(("gorenstein", repr(self.gorenstein)))
        rows.append(("minimal_AG", str(self.minimal_ag)))
        rows.append(("fp_dim_lower", str(self.fp_dim_lower)))
        rows.append(("fi_dim_lower", str(self.fi_dim_lower)))
        width = max(len(r[0]) for r in rows)
        return "\n".join(f"{k:<{width}}  {v}" for k, v in rows)


def compute_profile(algebra, bound=DEFAULT_BOUND, dim_cap=DEFAULT_DIM_CAP):
    values = {
        "gl_dim": gl_dim(algebra, bound, LEFT, dim_cap),
        "gl_dim_right": gl_dim(algebra, bound, RIGHT, dim_cap),
        "inj_dim_A_left": self_injective_dimension(algebra, LEFT, bound, dim_cap),
        "inj_dim_A_right": self_injective_dimension(algebra, RIGHT, bound, dim_cap),
        "inj_dim_J_left": inj_dim_radical(algebra, LEFT, bound, dim_cap),
        "inj_dim_J_right": inj_dim_radical(algebra, RIGHT, bound, dim_cap),
        "dom_dim": dominant_dimension_algebra(algebra, LEFT, bound, dim_cap),
        "dom_dim_right": dominant_dimension_algebra(algebra, RIGHT, bound, dim_cap),
    }
    gor = detect_gorenstein(algebra, bound, dim_cap)
    minimal_ag = detect_minimal_AG(algebra, bound, dim_cap)
    fp, fi = findim_lower_bounds(algebra, bound, LEFT, dim_cap)
    return AlgebraProfile(algebra, bound, values, gor, minimal_ag, fp, fi)
