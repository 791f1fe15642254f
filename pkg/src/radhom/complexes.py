"""Bounded chain complexes of modules and their projective replacements.

The finite-projective-dimension test for a bounded complex C works by
building a Cartan-Eilenberg style total complex Tot -> C out of minimal
resolutions of the boundaries and homologies of C (glued with horseshoe
twists, so rows and columns commute on the nose and the horizontal maps
square to zero).  Tot is a bounded-below complex of projectives, exact above
s = sup H(C), so C has finite projective dimension iff the boundary module
B_s(Tot) = im(Tot_{s+1} -> Tot_s) does: the question reduces to an ordinary
module-level projective dimension with all of its certificates.
"""

import numpy as np

from .linalg import Mat
from .rep import ModMap, Rep, _sub_rep_from_bases, direct_sum, quotient_rep, zero_rep
from .resolve import (
    DEFAULT_BOUND,
    DEFAULT_DIM_CAP,
    BoundExhausted,
    FreeProj,
    free_map,
    proj_dim,
    resolution,
)


class ChainComplex:
    """Homologically graded: terms[i] sits in degree bottom + i and
    diffs[i]: terms[i] -> terms[i-1] (for i >= 1).  d . d = 0 is checked."""

    def __init__(self, terms, diffs, bottom=0):
        self.terms = list(terms)
        self.diffs = list(diffs)
        self.bottom = int(bottom)
        if len(self.diffs) != max(len(self.terms) - 1, 0):
            raise ValueError("need exactly one differential between terms")
        for i, d in enumerate(self.diffs, start=1):
            if d.source is not self.terms[i] or d.target is not self.terms[i - 1]:
                raise ValueError(f"differential {i} endpoints wrong")
        for i in range(2, len(self.terms)):
            if not self.diffs[i - 2].compose(self.diffs[i - 1]).is_zero():
                raise ValueError(f"d.d != 0 at degree {self.bottom + i}")

    @property
    def top(self):
        return self.bottom + len(self.terms) - 1

    def term(self, degree):
        i = degree - self.bottom
        if 0 <= i < len(self.terms):
            return self.terms[i]
        return None

    def diff(self, degree):
        """d_degree: term(degree) -> term(degree-1); None outside range."""
        i = degree - self.bottom
        if 1 <= i < len(self.terms):
            return self.diffs[i - 1]
        return None

    def homology_total_dim(self, degree):
        t = self.term(degree)
        if t is None:
            return 0
        total = 0
        for v in range(len(t.dims)):
            d_out = self.diff(degree)
            d_in = self.diff(degree + 1)
            r_out = d_out.mats[v].rank() if d_out is not None else 0
            r_in = d_in.mats[v].rank() if d_in is not None else 0
            total += t.dims[v] - r_out - r_in
        return total

    def sup_homology(self):
        """Largest degree with nonzero homology, or None for an acyclic
        complex."""
        for degree in range(self.top, self.bottom - 1, -1):
            if self.homology_total_dim(degree):
                return degree
        return None


def single_module_complex(m, degree=0):
    return ChainComplex([m], [], bottom=degree)


# -- lifting helpers ------------------------------------------------------------


def lift_through_surjection(phi, surj, free):
    """psi with surj . psi = phi, for phi out of a free module (choose a
    preimage of each generator image, extend freely)."""
    f = phi.target.field
    gens = []
    for ci, (v, _) in enumerate(free.copies):
        grow = free.gens[ci][1]
        col = Mat(f, phi.mats[v].a[:, grow : grow + 1], _normalized=True)
        pre = surj.mats[v].solve(col)
        if pre is None:
            raise AssertionError("lift through surjection failed")
        gens.append(pre.a[:, 0])
    return free_map(free, surj.source, gens)


def pull_through_injection(phi, incl):
    """The unique psi with incl . psi = phi (image of phi must lie in the
    image of incl); per-vertex solves, module property is inherited."""
    mats = []
    for v in range(len(phi.mats)):
        sol = incl.mats[v].solve(phi.mats[v])
        if sol is None:
            raise AssertionError("pull through injection failed")
        mats.append(sol)
    return ModMap(phi.source, incl.source, mats, _validated=True)


# -- resolution chains -----------------------------------------------------------


class FreeChain:
    """A projective resolution presented as explicit chain data:
    frees[t] covers height t, diffs[t]: frees[t] -> frees[t-1], and
    augment: frees[0].rep -> module."""

    __slots__ = ("module", "frees", "diffs", "augment")

    def __init__(self, module, frees, diffs, augment):
        self.module = module
        self.frees = frees
        self.diffs = diffs
        self.augment = augment

    def term(self, t):
        return self.frees[t].rep


def resolution_chain(module, height, dim_cap=DEFAULT_DIM_CAP):
    """Minimal resolution of a module as a FreeChain up to the given height
    (zero frees past termination)."""
    res = resolution(module, dim_cap)
    res.extend_to(height + 1, stop_on_certificate=False)
    if res.depth < height + 1 and not res.terminated:
        raise BoundExhausted("resolution capped while building chain")
    algebra, side = module.algebra, module.side
    zero_free = FreeProj(algebra, side, (0,) * algebra.quiver.vertices)
    frees, diffs = [], [None]
    for t in range(height + 1):
        if t < res.depth:
            frees.append(res.steps[t].free)
        else:
            frees.append(zero_free)
    for t in range(1, height + 1):
        if t < res.depth:
            diffs.append(res.differential(t))
        else:
            diffs.append(_zero_map(frees[t].rep, frees[t - 1].rep))
    if res.depth:
        augment = res.steps[0].cover
    else:
        augment = _zero_map(frees[0].rep, module)
    return FreeChain(module, frees, diffs, augment)


def _zero_map(src, tgt):
    f = src.field
    return ModMap(
        src,
        tgt,
        [Mat.zeros(f, tgt.dims[v], src.dims[v]) for v in range(len(src.dims))],
        _validated=True,
    )


class SumChain:
    """A chain of direct sums of free parts (a horseshoe output): parts[t] is
    the list of FreeProj summands, terms[t] the summed Rep, diffs/augment as
    in FreeChain."""

    __slots__ = ("module", "parts", "terms", "diffs", "augment")

    def __init__(self, module, parts, terms, diffs, augment):
        self.module = module
        self.parts = parts
        self.terms = terms
        self.diffs = diffs
        self.augment = augment

    def term(self, t):
        return self.terms[t]


def _paste(big, block, roff, coff):
    big[roff : roff + block.shape[0], coff : coff + block.shape[1]] = block


def _sum_with_offsets(reps, algebra, side):
    summed = direct_sum(reps, algebra=algebra, side=side)
    offsets = []
    run = [0] * algebra.quiver.vertices
    for r in reps:
        offsets.append(tuple(run))
        run = [run[v] + r.dims[v] for v in range(len(run))]
    return summed, offsets


def horseshoe(incl, proj, chain_k, chain_q, height):
    """Resolution of X from resolutions of K and Q along
    0 -> K --incl--> X --proj--> Q -> 0.

    Terms are K_t (+) Q_t; the differential gets a twist tau_t: Q_t -> K_{t-1}
    solved so that squares close (classical horseshoe lemma)."""
    x_mod = incl.target
    algebra, side, f = x_mod.algebra, x_mod.side, x_mod.field

    # lambda: Q_0 -> X lifting the Q-augmentation through proj
    lam = lift_through_surjection(chain_q.augment, proj, chain_q.frees[0])

    taus = [None]  # tau_t for t >= 1
    for t in range(1, height + 1):
        if t == 1:
            # epsK . tau_1 = -incl^{-1}(lam . dQ_1)
            w = lam.compose(chain_q.diffs[1])
            w_k = pull_through_injection(w, incl)
            rhs = _scale_map(w_k, -1)
            tau = lift_through_surjection(rhs, chain_k.augment, chain_q.frees[1])
        else:
            # dK_{t-1} . tau_t = -tau_{t-1} . dQ_t
            rhs = _scale_map(taus[t - 1].compose(chain_q.diffs[t]), -1)
            tau = lift_through_surjection(rhs, chain_k.diffs[t - 1],
                                          chain_q.frees[t])
        taus.append(tau)

    parts, terms, offsets = [], [], []
    for t in range(height + 1):
        ps = [chain_k.frees[t], chain_q.frees[t]]
        summed, offs = _sum_with_offsets([p.rep for p in ps], algebra, side)
        parts.append(ps)
        terms.append(summed)
        offsets.append(offs)

    diffs = [None]
    for t in range(1, height + 1):
        mats = []
        for v in range(algebra.quiver.vertices):
            big = f.empty(terms[t - 1].dims[v], terms[t].dims[v])
            _paste(big, chain_k.diffs[t].mats[v].a, 0, 0)
            _paste(big, chain_q.diffs[t].mats[v].a,
                   offsets[t - 1][1][v], offsets[t][1][v])
            _paste(big, taus[t].mats[v].a, 0, offsets[t][1][v])
            mats.append(Mat(f, big, _normalized=True))
        diffs.append(ModMap(terms[t], terms[t - 1], mats))

    aug_mats = []
    for v in range(algebra.quiver.vertices):
        big = f.empty(x_mod.dims[v], terms[0].dims[v])
        _paste(big, (incl.compose(chain_k.augment)).mats[v].a, 0, 0)
        _paste(big, lam.mats[v].a, 0, offsets[0][1][v])
        aug_mats.append(Mat(f, big, _normalized=True))
    augment = ModMap(terms[0], x_mod, aug_mats)
    return SumChain(x_mod, parts, terms, diffs, augment)


def _scale_map(m, c):
    return ModMap(
        m.source, m.target, [mat.scale(c) for mat in m.mats], _validated=True
    )


# -- Cartan-Eilenberg total complex ----------------------------------------------


class CEColumn:
    """The resolution column over one complex degree j: terms are
    B_j (+) H_j (+) B_{j-1} resolutions glued by two horseshoes."""

    __slots__ = ("chain", "b_lower_frees", "zpart_dims")

    def __init__(self, chain, b_lower_frees, zpart_dims):
        self.chain = chain
        self.b_lower_frees = b_lower_frees  # FreeProj per height (B_{j-1} part)
        self.zpart_dims = zpart_dims  # per height, per vertex dim of the Z-part


def _boundary_and_cycle_subreps(cx, degree):
    """(Z_degree with inclusion, B_degree with inclusion into C_degree)."""
    t = cx.term(degree)
    f = t.field
    d_out = cx.diff(degree)
    if d_out is None:
        z_bases = [Mat.identity(f, d) for d in t.dims]
    else:
        z_bases = [d_out.mats[v].kernel_basis() for v in range(len(t.dims))]
    z, z_incl = _sub_rep_from_bases(t, z_bases)
    d_in = cx.diff(degree + 1)
    if d_in is None:
        b_bases = [Mat.zeros(f, d, 0) for d in t.dims]
    else:
        b_bases = [
            d_in.mats[v].column_space_canonical().T for v in range(len(t.dims))
        ]
    b, b_incl = _sub_rep_from_bases(t, b_bases)
    return (z, z_incl), (b, b_incl)


def ce_total_complex(cx, height, dim_cap=DEFAULT_DIM_CAP):
    """Total complex of a Cartan-Eilenberg resolution of cx, built to total
    degree cx.bottom + height; returns a ChainComplex of projective terms
    quasi-isomorphic to cx in the available range."""
    algebra = cx.terms[0].algebra
    side = cx.terms[0].side
    f = cx.terms[0].field
    zero_free = FreeProj(algebra, side, (0,) * algebra.quiver.vertices)

    columns = {}
    b_chain_cache = {}

    def b_chain(degree, h):
        # resolution chain of B_degree = im(d_{degree+1]) inside C_degree
        if degree not in b_chain_cache:
            t = cx.term(degree)
            if t is None:
                b_chain_cache[degree] = None
            else:
                (_, _), (b, b_incl) = _boundary_and_cycle_subreps(cx, degree)
                b_chain_cache[degree] = (b, b_incl, resolution_chain(b, h, dim_cap))
        return b_chain_cache[degree]

    for degree in range(cx.bottom, cx.top + 1):
        c_term = cx.term(degree)
        (z, z_incl), _ = _boundary_and_cycle_subreps(cx, degree)
        b_data = b_chain(degree, height)
        _, b_incl_c, chain_b = b_data
        # incl of B_degree into Z_degree, and the quotient H
        b_in_z = pull_through_injection(b_incl_c, z_incl)
        h, h_proj = quotient_rep(z, b_in_z)
        chain_h = resolution_chain(h, height, dim_cap)
        chain_z = horseshoe(b_in_z, h_proj, chain_b, chain_h, height)

        below = cx.term(degree - 1)
        if below is None:
            chain_b_below = resolution_chain(
                zero_rep(algebra, side), height, dim_cap
            )
            b_below_frees = chain_b_below.frees
            # X = Z here; pad with zero lower-boundary part
            pi_to_b = _zero_map(c_term, zero_rep(algebra, side))
            chain_c = _horseshoe_over_sum(
                z_incl, pi_to_b, chain_z, chain_b_below, height, c_term
            )
        else:
            b_below, b_below_incl, chain_b_below = b_chain(degree - 1, height)
            b_below_frees = chain_b_below.frees
            pi_to_b = pull_through_injection(cx.diff(degree), b_below_incl)
            chain_c = _horseshoe_over_sum(
                z_incl, pi_to_b, chain_z, chain_b_below, height, c_term
            )
        zdims = [chain_z.term(t).dims for t in range(height + 1)]
        columns[degree] = CEColumn(chain_c, b_below_frees, zdims)

    # assemble total terms and differentials
    tot_terms = []
    tot_diffs = []
    degrees = list(range(cx.bottom, cx.top + 1))
    layouts = []
    for n in range(cx.bottom, cx.bottom + height + 1):
        parts = []
        layout = []
        for j in degrees:
            t = n - j
            if 0 <= t <= height:
                parts.append(columns[j].chain.term(t))
                layout.append((j, t))
        summed, offs = _sum_with_offsets(parts, algebra, side)
        tot_terms.append(summed)
        layouts.append((layout, offs))

    for idx in range(1, len(tot_terms)):
        n = cx.bottom + idx
        src_layout, src_offs = layouts[idx]
        tgt_layout, tgt_offs = layouts[idx - 1]
        tgt_pos = {jt: k for k, jt in enumerate(tgt_layout)}
        mats = []
        for v in range(algebra.quiver.vertices):
            big = f.empty(tot_terms[idx - 1].dims[v], tot_terms[idx].dims[v])
            for k, (j, t) in enumerate(src_layout):
                col = columns[j]
                coff = src_offs[k][v]
                if t >= 1 and (j, t - 1) in tgt_pos:
                    block = col.chain.diffs[t].mats[v].a
                    _paste(big, block, tgt_offs[tgt_pos[(j, t - 1)]][v], coff)
                if (j - 1, t) in tgt_pos:
                    # horizontal: project to the B_{j-1} part, include into the
                    # Z-part (first block) of column j-1, with sign (-1)^t
                    b_dim = col.b_lower_frees[t].rep.dims[v]
                    if b_dim:
                        src_start = coff + col.chain.term(t).dims[v] - b_dim
                        sign = 1 if t % 2 == 0 else -1
                        tgt_start = tgt_offs[tgt_pos[(j - 1, t)]][v]
                        eye = Mat.identity(f, b_dim).a
                        blk = eye if sign == 1 else f.normalize(-eye)
                        _paste(big, blk, tgt_start, src_start)
            mats.append(Mat(f, big, _normalized=True))
        tot_diffs.append(ModMap(tot_terms[idx], tot_terms[idx - 1], mats))

    return ChainComplex(tot_terms, tot_diffs, bottom=cx.bottom)


def _horseshoe_over_sum(z_incl, pi_to_b, chain_z, chain_b_below, height, c_term):
    """Second horseshoe 0 -> Z -> C -> B_below -> 0 where the Z-resolution is
    itself a SumChain; produces the flat column chain [Bpart, Hpart, B_below]."""
    algebra, side, f = c_term.algebra, c_term.side, c_term.field

    if chain_b_below.module.is_zero():
        lam = _zero_map(chain_b_below.frees[0].rep, c_term)
    else:
        lam = lift_through_surjection(chain_b_below.augment, pi_to_b,
                                      chain_b_below.frees[0])

    # sigma_t: B_below_t -> Z-chain term at t-1 (as a map into C-part coords)
    sigmas = [None]
    z_aug_into_c = z_incl.compose(chain_z.augment)
    for t in range(1, height + 1):
        src_free = chain_b_below.frees[t]
        if src_free.rep.is_zero():
            sigmas.append(_zero_map(src_free.rep, chain_z.term(t - 1)))
            continue
        if t == 1:
            w = lam.compose(chain_b_below.diffs[1])
            w_z = pull_through_injection(w, z_incl)
            rhs = _scale_map(w_z, -1)
            sigma = lift_through_surjection(rhs, chain_z.augment, src_free)
        else:
            rhs = _scale_map(sigmas[t - 1].compose(chain_b_below.diffs[t]), -1)
            sigma = lift_through_surjection(rhs, chain_z.diffs[t - 1], src_free)
        sigmas.append(sigma)

    terms, offsets = [], []
    for t in range(height + 1):
        summed, offs = _sum_with_offsets(
            [chain_z.term(t), chain_b_below.frees[t].rep], algebra, side
        )
        terms.append(summed)
        offsets.append(offs)

    diffs = [None]
    for t in range(1, height + 1):
        mats = []
        for v in range(algebra.quiver.vertices):
            big = f.empty(terms[t - 1].dims[v], terms[t].dims[v])
            _paste(big, chain_z.diffs[t].mats[v].a, 0, 0)
            _paste(big, chain_b_below.diffs[t].mats[v].a,
                   offsets[t - 1][1][v], offsets[t][1][v])
            _paste(big, sigmas[t].mats[v].a, 0, offsets[t][1][v])
            mats.append(Mat(f, big, _normalized=True))
        diffs.append(ModMap(terms[t], terms[t - 1], mats))

    aug_mats = []
    for v in range(algebra.quiver.vertices):
        big = f.empty(c_term.dims[v], terms[0].dims[v])
        _paste(big, z_aug_into_c.mats[v].a, 0, 0)
        _paste(big, lam.mats[v].a, 0, offsets[0][1][v])
        aug_mats.append(Mat(f, big, _normalized=True))
    augment = ModMap(terms[0], c_term, aug_mats)
    return SumChain(c_term, None, terms, diffs, augment)


def boundary_module_of_total(cx, dim_cap=DEFAULT_DIM_CAP):
    """B_s(Tot) for s = sup H(cx): the image of Tot_{s+1} -> Tot_s, as a
    module.  None for an acyclic complex."""
    s = cx.sup_homology()
    if s is None:
        return None
    height = s + 1 - cx.bottom
    tot = ce_total_complex(cx, height, dim_cap)
    d = tot.diff(s + 1)
    src = tot.term(s + 1)
    tgt = tot.term(s)
    bases = [
        d.mats[v].column_space_canonical().T for v in range(len(tgt.dims))
    ]
    b, _ = _sub_rep_from_bases(tgt, bases)
    return b


def complex_has_finite_pd(cx, bound=DEFAULT_BOUND, dim_cap=DEFAULT_DIM_CAP):
    """Does the bounded complex admit a bounded projective replacement?

    True when certified finite, False when certified infinite; raises
    BoundExhausted when the bound/size caps block a verdict."""
    if all(t.is_zero() for t in cx.terms):
        return True
    b = boundary_module_of_total(cx, dim_cap)
    if b is None:
        return True  # acyclic
    value = proj_dim(b, bound, dim_cap)
    if value.is_zero_module or value.is_exact:
        return True
    if value.infinite:
        return False
    raise BoundExhausted(f"projective dimension undecided at bound {bound}")
