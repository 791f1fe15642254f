"""Injective coresolutions through duality.

Injectives are never built directly: the minimal injective coresolution of m
is D of the minimal projective resolution of D(m) over the opposite algebra,
so a single resolution engine serves both sides.  Dominant and codominant
dimension count how long the coresolution (resp. resolution) stays
projective (resp. injective).
"""

from .dimvalue import DimValue
from .linalg import Mat
from .rep import (
    LEFT,
    RIGHT,
    duality_D,
    injective_cogenerator,
    to_opposite,
    zero_rep,
)
from .resolve import (
    DEFAULT_BOUND,
    DEFAULT_DIM_CAP,
    BoundExhausted,
    is_projective,
    proj_dim,
    projective_data,
    resolution,
    syzygy,
)


def dual_over_opposite(m):
    """D(m) read as a module over the opposite algebra (left <-> right)."""
    return to_opposite(duality_D(m))


def _dual_op_cached(m):
    if "dual_op" not in m._cache:
        m._cache["dual_op"] = dual_over_opposite(m)
    return m._cache["dual_op"]


def inj_dim(m, bound=DEFAULT_BOUND, dim_cap=DEFAULT_DIM_CAP):
    """Injective dimension = projective dimension of D(m) over A^op."""
    if m.is_zero():
        return DimValue.zero_module()
    return proj_dim(_dual_op_cached(m), bound, dim_cap)


def cosyzygy(m, n, dim_cap=DEFAULT_DIM_CAP):
    """Ω^{-n}(m) = D(Ω^n of D(m) over the opposite algebra)."""
    if n < 0:
        raise ValueError("cosyzygy index must be >= 0")
    if n == 0:
        return m
    om = syzygy(_dual_op_cached(m), n, dim_cap)
    return duality_D(to_opposite(om))


def vertex_injective_is_projective(algebra, vertex, side=LEFT):
    """Is the indecomposable injective I_vertex projective (on the given
    side)?  Cached per algebra; drives dominant-dimension bookkeeping."""
    key = ("inj_is_proj", vertex, side)
    if key not in algebra._cache:
        other = RIGHT if side == LEFT else LEFT
        i_mod = duality_D(projective_data(algebra, vertex, other).rep)
        algebra._cache[key] = is_projective(i_mod)
    return algebra._cache[key]


def vertex_projective_is_injective(algebra, vertex, side=LEFT):
    """Is the indecomposable projective P_vertex injective?  P_v is injective
    iff D(P_v) is projective over the other side."""
    key = ("proj_is_inj", vertex, side)
    if key not in algebra._cache:
        p_mod = projective_data(algebra, vertex, side).rep
        other_side_mod = to_opposite(duality_D(p_mod))
        algebra._cache[key] = is_projective(other_side_mod)
    return algebra._cache[key]


def is_injective(m):
    """m is injective iff D(m) is projective over the opposite algebra."""
    if m.is_zero():
        return True
    return is_projective(_dual_op_cached(m))


def is_projective_injective(m):
    """Projective and injective at once: both cover kernels vanish."""
    if m.is_zero():
        return True
    return is_projective(m) and is_injective(m)


class Coresolution:
    """View of the minimal injective coresolution 0 -> m -> I^0 -> I^1 -> ...

    Wraps the projective resolution of D(m) over the opposite algebra; step n
    records the injective multiplicities of I^n and whether I^n is projective
    over the original algebra.
    """

    def __init__(self, m, dim_cap=DEFAULT_DIM_CAP):
        self.module = m
        self.algebra = m.algebra
        self.side = m.side
        self._res = resolution(_dual_op_cached(m), dim_cap)

    def extend_to(self, depth, stop_on_certificate=True):
        self._res.extend_to(depth, stop_on_certificate=stop_on_certificate)

    @property
    def depth(self):
        return self._res.depth

    @property
    def terminated(self):
        return self._res.terminated

    @property
    def certificate(self):
        return self._res.certificate

    @property
    def capped_at(self):
        return self._res.capped_at

    def multiplicities(self, n):
        """Multiplicity of I_v in I^n (indexed by vertex)."""
        return self._res.mults(n)

    def term_is_projective(self, n):
        """Is I^n projective?  I^n = ⊕ I_v^{m_v}, so check the vertices that
        occur."""
        mults = self.multiplicities(n)
        return all(
            m == 0 or vertex_injective_is_projective(self.algebra, v, self.side)
            for v, m in enumerate(mults)
        )

    def cosyzygy(self, n):
        if n == 0:
            return self.module
        om = self._res.syzygy(n)
        from .rep import to_opposite as back

        return duality_D(back(om))


def coresolution(m, dim_cap=DEFAULT_DIM_CAP):
    if "coresolution" not in m._cache:
        m._cache["coresolution"] = Coresolution(m, dim_cap)
    return m._cache["coresolution"]


def dominant_dimension(m, bound=DEFAULT_BOUND, dim_cap=DEFAULT_DIM_CAP):
    """First coresolution index whose term is not projective.

    AtLeast(bound) when the first `bound` terms are all projective; if the
    coresolution terminates with every term projective the dominant dimension
    is infinite (certified).
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if m.is_zero():
        return DimValue.at_least(bound, infinite=True, note="zero module")
    cores = coresolution(m, dim_cap)
    n = 0
    while n <= bound:
        try:
            cores.extend_to(n + 1, stop_on_certificate=False)
            mults = cores.multiplicities(n)
        except BoundExhausted:
            return DimValue.at_least(n, note="coresolution truncated")
        if all(x == 0 for x in mults):
            # coresolution ended; every term so far was projective
            return DimValue.at_least(
                bound, infinite=True, note="finite all-projective coresolution"
            )
        if not cores.term_is_projective(n):
            return DimValue.exact(n)
        n += 1
    return DimValue.at_least(bound)


def codominant_dimension(m, bound=DEFAULT_BOUND, dim_cap=DEFAULT_DIM_CAP):
    """codom dim m = dom dim of D(m) over the opposite algebra; equivalently
    the first index of the projective resolution whose term is not injective."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    if m.is_zero():
        return DimValue.at_least(bound, infinite=True, note="zero module")
    return dominant_dimension(_dual_op_cached(m), bound, dim_cap)


def dominant_dimension_algebra(algebra, side=LEFT, bound=DEFAULT_BOUND,
                               dim_cap=DEFAULT_DIM_CAP):
    """dom dim A = dominant dimension of the regular module."""
    from .resolve import _regular_cached

    return dominant_dimension(_regular_cached(algebra, side), bound, dim_cap)
