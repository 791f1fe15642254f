"""Theorem checkers, algebra generators, and the sweep driver.

Each check turns one statement into a pass / fail / inconclusive verdict on
one algebra.  Proved statements are engine self-checks: a confirmed
Exact-level violation means a bug and aborts the sweep with a reproducible
witness.  The open question (injective dimension of higher syzygies of A/J)
is checked as mathematics: a confirmed violation is a
COUNTEREXAMPLE-CANDIDATE, persisted with the full algebra file, never an
abort.  Verdict logic is monotone in information: mutual lower bounds are
logged as consistent-at-bound, never upgraded to an Exact-level pass.
"""

import json
import random
import time
from multiprocessing import Pool

from .algebra import ParseError, PresentationError, format_algebra, parse_algebra
from .coresolve import (
    codominant_dimension,
    cosyzygy,
    dominant_dimension,
    dominant_dimension_algebra,
    inj_dim,
    is_projective_injective,
)
from .dimvalue import DimValue, compare
from .dims import (
    INCONCLUSIVE,
    GorensteinVerdict,
    default_module_family,
    detect_gorenstein,
    detect_minimal_AG,
    gl_dim,
    gproj_dim_gorenstein,
    inj_dim_radical,
)
from .rep import LEFT, RIGHT, direct_sum, semisimple_top, simple, to_opposite
from .resolve import (
    DEFAULT_BOUND,
    DEFAULT_DIM_CAP,
    BoundExhausted,
    _regular_cached,
    ext_map_surjective,
    ext_window,
    proj_dim,
    syzygy,
)

PASS = "pass"
FAIL = "fail"
CANDIDATE = "counterexample_candidate"


class EngineBugError(AssertionError):
    """A proved theorem failed at the Exact level: an engine bug, reported
    with its witness."""

    def __init__(self, report, algebra_text):
        self.report = report
        self.algebra_text = algebra_text
        super().__init__(f"{report.check}: {report.reason}")


class VerdictReport:
    __slots__ = ("check", "fingerprint", "status", "level", "witness",
                 "reason", "bound", "seconds")

    def __init__(self, check, fingerprint, status, bound, level=None,
                 witness=None, reason=None, seconds=0.0):
        self.check = check
        self.fingerprint = fingerprint
        self.status = status
        self.level = level
        self.witness = witness
        self.reason = reason
        self.bound = bound
        self.seconds = seconds

    def to_json(self, with_timing=True):
        d = {
            "check": self.check,
            "fingerprint": self.fingerprint,
            "status": self.status,
            "bound": self.bound,
        }
        if self.level:
            d["level"] = self.level
        if self.reason:
            d["reason"] = self.reason
        if self.witness:
            d["witness"] = self.witness
        if with_timing:
            d["seconds"] = round(self.seconds, 6)
        return d

    def __repr__(self):
        tail = f" ({self.level})" if self.level else ""
        return f"<{self.check}: {self.status}{tail}>"


def _pd_le(pd_value, d):
    """Is pd <= d?  True/False/None under truncation."""
    if pd_value.is_zero_module:
        return True
    if pd_value.is_exact:
        return pd_value.n <= d
    if pd_value.infinite:
        return False
    if pd_value.n > d:
        return False
    return None


# -- checks ----------------------------------------------------------------------


def check_prop22(algebra, bound=DEFAULT_BOUND, dim_cap=DEFAULT_DIM_CAP,
                 modules=None):
    """Projective-dimension characterization: pd(M) <= d iff
    Ext^{d+1}(M, J) = 0 iff Ext^d(M, pi) is onto, for every sampled M and
    every d <= bound, among decidable verdicts."""
    fp = algebra.fingerprint()
    if modules is None:
        modules = default_module_family(algebra, LEFT, bound, dim_cap=dim_cap)
    j_mod = algebra._cache.get(("radical_module", LEFT))
    if j_mod is None:
        from .rep import radical_module

        j_mod = radical_module(algebra, LEFT)
        algebra._cache[("radical_module", LEFT)] = j_mod
    blocked = 0
    compared = 0
    for label, m in modules:
        pd = proj_dim(m, bound, dim_cap)
        dims, _complete = ext_window(m, j_mod, bound + 1, dim_cap)
        for d in range(0, bound + 1):
            c1 = _pd_le(pd, d)
            c2 = (dims[d + 1] == 0) if d + 1 < len(dims) else None
            if j_mod.is_zero():
                c2 = True
            try:
                c3 = ext_map_surjective(m, d, dim_cap)
            except BoundExhausted:
                c3 = None
            verdicts = [c for c in (c1, c2, c3) if c is not None]
            if len(verdicts) <= 1:
                blocked += 1
                continue
            compared += 1
            if any(v != verdicts[0] for v in verdicts):
                return VerdictReport(
                    "prop22", fp, FAIL, bound,
                    reason=f"equivalence broken at module {label}, degree {d}",
                    witness={
                        "module": label,
                        "degree": d,
                        "pd": str(pd),
                        "pd_le_d": c1,
                        "ext_vanishes": c2,
                        "ext_map_surjective": c3,
                    },
                )
    if compared == 0:
        return VerdictReport("prop22", fp, INCONCLUSIVE, bound,
                             reason="every comparison blocked by truncation")
    level = "exact" if blocked == 0 else "partial-window"
    return VerdictReport("prop22", fp, PASS, bound, level=level)


def _compare_dimvalues(x, y):
    """(verdict, level): 'equal'/'unequal'/'unknown' with the information
    level that decided it."""
    c = compare(x, y, zero_module_as=0)
    if c == 0:
        if x.is_exact or x.is_zero_module:
            return "equal", "exact"
        return "equal", "infinite"
    if c is not None:
        return "unequal", "exact"
    if x.is_at_least and y.is_at_least and not x.infinite and not y.infinite:
        return "unknown", "mutual-at-least"
    return "unknown", "truncated"


def check_thm_injdim_radical(algebra, bound=DEFAULT_BOUND,
                             dim_cap=DEFAULT_DIM_CAP):
    """inj dim J = gl dim A on both sides (a proved theorem; Exact-level
    disagreement is an engine bug)."""
    fp = algebra.fingerprint()
    gl = gl_dim(algebra, bound, LEFT, dim_cap)
    gl_r = gl_dim(algebra, bound, RIGHT, dim_cap)
    sides = {
        "left": inj_dim_radical(algebra, LEFT, bound, dim_cap),
        "right": inj_dim_radical(algebra, RIGHT, bound, dim_cap),
    }
    verdicts = {}
    for name, val in sides.items():
        verdicts[name] = _compare_dimvalues(val, gl)
    verdicts["gl_left_vs_right"] = _compare_dimvalues(gl, gl_r)
    if any(v == "unequal" for v, _ in verdicts.values()):
        return VerdictReport(
            "thm_injdim_radical", fp, FAIL, bound,
            reason="inj dim J != gl dim at Exact level",
            witness={
                "gl_dim": str(gl),
                "gl_dim_right": str(gl_r),
                "inj_dim_J_left": str(sides["left"]),
                "inj_dim_J_right": str(sides["right"]),
            },
        )
    levels = [lvl for _, lvl in verdicts.values()]
    if any(v == "unknown" and lvl == "truncated"
           for v, lvl in verdicts.values()):
        return VerdictReport(
            "thm_injdim_radical", fp, INCONCLUSIVE, bound,
            reason="one side Exact, other side bound-limited",
            witness={k: str(v) for k, v in sides.items()} | {"gl_dim": str(gl)},
        )
    if all(v == "equal" for v, _ in verdicts.values()):
        level = "exact" if all(l == "exact" for l in levels) else "infinite"
        return VerdictReport("thm_injdim_radical", fp, PASS, bound, level=level)
    return VerdictReport(
        "thm_injdim_radical", fp, PASS, bound, level="mutual-at-least",
        reason="both values exceed the bound; consistent but not decided",
        witness={k: str(v) for k, v in sides.items()} | {"gl_dim": str(gl)},
    )


def _syzygy_of_top(algebra, n, dim_cap):
    """Ω^n(A/J) as the direct sum of the simple syzygies."""
    parts = []
    for v in range(algebra.quiver.vertices):
        om = syzygy(simple(algebra, v, LEFT), n, dim_cap)
        if not om.is_zero():
            parts.append(om)
    return direct_sum(parts, algebra=algebra, side=LEFT)


def check_question_syzygy(algebra, bound=DEFAULT_BOUND,
                          dim_cap=DEFAULT_DIM_CAP):
    """Open question: inj dim Ω^n(A/J) = gl dim A whenever Ω^n(A/J) != 0.
    A confirmed Exact-level inequality is a counterexample candidate."""
    fp = algebra.fingerprint()
    gl = gl_dim(algebra, bound, LEFT, dim_cap)
    if algebra.is_semisimple():
        return VerdictReport("question_syzygy", fp, PASS, bound,
                             level="vacuous", reason="semisimple: J = 0")
    gor = detect_gorenstein(algebra, bound, dim_cap)
    if gor.is_gorenstein and gl.is_at_least and gl.infinite:
        # Gorenstein of infinite global dimension: finite pd iff finite
        # inj dim, and all syzygies have infinite pd
        return VerdictReport(
            "question_syzygy", fp, PASS, bound, level="gorenstein-infinite",
            reason="Gorenstein with certified infinite gl dim: "
                   "inj dim of every syzygy is infinite",
        )
    per_n = []
    inconclusive = 0
    for n in range(0, bound + 1):
        try:
            om = _syzygy_of_top(algebra, n, dim_cap)
        except BoundExhausted:
            inconclusive += 1
            break
        if om.is_zero():
            break
        idim = inj_dim(om, bound, dim_cap)
        verdict, level = _compare_dimvalues(idim, gl)
        per_n.append((n, str(idim), verdict, level))
        if verdict == "unequal":
            return VerdictReport(
                "question_syzygy", fp, CANDIDATE, bound,
                reason=f"inj dim Ω^{n}(A/J) = {idim} but gl dim = {gl}",
                witness={
                    "n": n,
                    "inj_dim_syzygy": str(idim),
                    "gl_dim": str(gl),
                    "algebra": format_algebra(algebra),
                },
            )
        if verdict == "unknown" and level == "truncated":
            inconclusive += 1
    if inconclusive:
        return VerdictReport(
            "question_syzygy", fp, INCONCLUSIVE, bound,
            reason="some degrees blocked by truncation",
            witness={"per_n": per_n},
        )
    if per_n and all(v == "equal" and l == "exact" for _, _, v, l in per_n):
        return VerdictReport("question_syzygy", fp, PASS, bound, level="exact")
    return VerdictReport(
        "question_syzygy", fp, PASS, bound, level="at-bound",
        reason="no violation; some degrees only consistent at the bound",
    )


def check_gorenstein_gpd(algebra, bound=DEFAULT_BOUND, dim_cap=DEFAULT_DIM_CAP):
    """Under a Gorenstein witness d: Gproj(A/J) = d and Gproj(J) = d-1 on
    both sides; without one, the Ext(A/J, A) window must stay consistent
    with the infiniteness certificates."""
    fp = algebra.fingerprint()
    if algebra.is_semisimple():
        return VerdictReport("gorenstein_gpd", fp, PASS, bound, level="vacuous",
                             reason="semisimple")
    gor = detect_gorenstein(algebra, bound, dim_cap)
    op = algebra.opposite()
    if gor.is_gorenstein:
        d = gor.d
        expected_j = max(d - 1, 0)
        results = {}
        for tag, alg in (("left", algebra), ("right", op)):
            a0 = semisimple_top(alg, LEFT)
            from .rep import radical_module

            j_mod = radical_module(alg, LEFT)
            try:
                results[f"gpd_top_{tag}"] = gproj_dim_gorenstein(a0, d, dim_cap)
                results[f"gpd_rad_{tag}"] = gproj_dim_gorenstein(
                    j_mod, d, dim_cap
                ) if not j_mod.is_zero() else DimValue.exact(0)
            except BoundExhausted:
                return VerdictReport(
                    "gorenstein_gpd", fp, INCONCLUSIVE, bound,
                    reason=f"Ext window truncated on the {tag} side",
                )
        bad = {}
        for tag in ("left", "right"):
            if results[f"gpd_top_{tag}"].n != d:
                bad[f"gpd_top_{tag}"] = str(results[f"gpd_top_{tag}"])
            if results[f"gpd_rad_{tag}"].n != expected_j:
                bad[f"gpd_rad_{tag}"] = str(results[f"gpd_rad_{tag}"])
        if bad:
            return VerdictReport(
                "gorenstein_gpd", fp, FAIL, bound,
                reason=f"Gorenstein Gproj formulas broken (d = {d})",
                witness=bad | {"d": d},
            )
        return VerdictReport("gorenstein_gpd", fp, PASS, bound, level="exact",
                             witness={"d": d})
    if gor.status == GorensteinVerdict.NO:
        # necessary condition per side: a certified-infinite self-injective
        # dimension forbids a vanishing tail in Ext^*(A/J, A)
        for tag, alg, side_val in (
            ("left", algebra, gor.left),
            ("right", op, gor.right),
        ):
            if not (side_val.is_at_least and side_val.infinite):
                continue
            a0 = semisimple_top(alg, LEFT)
            dims, complete = ext_window(
                a0, _regular_cached(alg, LEFT), bound, dim_cap
            )
            nonzero = [i for i, x in enumerate(dims) if x != 0]
            top = max(nonzero) if nonzero else -1
            if complete and top < len(dims) - 1:
                return VerdictReport(
                    "gorenstein_gpd", fp, FAIL, bound,
                    reason=f"{tag} self-injective dimension certified infinite "
                           f"but Ext^i(A/J, A) vanishes for i > {top}",
                    witness={"side": tag, "ext_window": dims},
                )
        return VerdictReport("gorenstein_gpd", fp, PASS, bound,
                             level="non-gorenstein-consistent")
    return VerdictReport("gorenstein_gpd", fp, INCONCLUSIVE, bound,
                         reason="Gorenstein status undecided at bound")


def check_domdim_suite(algebra, bound=DEFAULT_BOUND, dim_cap=DEFAULT_DIM_CAP,
                       modules=None):
    """Dominant-dimension statements: the proof-level cosyzygy shift, the
    two inequalities, both Auslander-Buchsbaum style equalities on connected
    minimal Auslander-Gorenstein algebras, and inj dim Ω^n(A/J) = gl dim on
    minimal AG algebras."""
    fp = algebra.fingerprint()
    if modules is None:
        modules = default_module_family(algebra, LEFT, bound, dim_cap=dim_cap)
    dom_a = dominant_dimension_algebra(algebra, LEFT, bound, dim_cap)
    dom_a_r = dominant_dimension_algebra(algebra, RIGHT, bound, dim_cap)
    eqv, _ = _compare_dimvalues(dom_a, dom_a_r)
    if eqv == "unequal":
        return VerdictReport(
            "domdim_suite", fp, FAIL, bound,
            reason="dom dim A differs between sides",
            witness={"left": str(dom_a), "right": str(dom_a_r)},
        )
    minimal_ag = detect_minimal_AG(algebra, bound, dim_cap)
    connected = algebra.quiver.is_connected()
    checked = 0
    blocked = 0
    for label, m in modules:
        pd = proj_dim(m, bound, dim_cap)
        dom = dominant_dimension(m, bound, dim_cap)
        pi = is_projective_injective(m)
        # (i) proof-level: Ω^{-u}(M) has projective dimension u + r
        if pd.is_exact and dom.is_exact and not pi:
            try:
                shifted = cosyzygy(m, dom.n, dim_cap)
                spd = proj_dim(shifted, bound + dom.n, dim_cap)
            except BoundExhausted:
                spd = None
            if spd is not None and spd.is_exact:
                checked += 1
                if spd.n != dom.n + pd.n:
                    return VerdictReport(
                        "domdim_suite", fp, FAIL, bound,
                        reason="cosyzygy shift pd(Ω^{-u} M) != u + r",
                        witness={"module": label, "u": dom.n, "r": pd.n,
                                 "pd_shifted": str(spd)},
                    )
            else:
                blocked += 1
        # (ii) pd M + dom M >= dom A; inj M + codom M >= dom A
        idim = inj_dim(m, bound, dim_cap)
        codom = codominant_dimension(m, bound, dim_cap)
        for x, y, names in (
            (pd, dom, ("pd", "dom")),
            (idim, codom, ("inj", "codom")),
        ):
            if dom_a.is_exact and x.is_exact and y.is_exact:
                checked += 1
                if x.n + y.n < dom_a.n:
                    return VerdictReport(
                        "domdim_suite", fp, FAIL, bound,
                        reason=f"{names[0]} + {names[1]} < dom dim A",
                        witness={"module": label, names[0]: x.n,
                                 names[1]: y.n, "dom_dim_A": str(dom_a)},
                    )
        # (iii) both equalities on connected minimal AG algebras
        if (
            minimal_ag is True
            and connected
            and not pi
            and pd.is_exact
            and dom_a.is_exact
        ):
            if dom.is_exact and idim.is_exact and codom.is_exact:
                checked += 1
                ok1 = pd.n + dom.n == dom_a.n
                ok2 = idim.n + codom.n == dom_a.n
                if not (ok1 and ok2):
                    return VerdictReport(
                        "domdim_suite", fp, FAIL, bound,
                        reason="Auslander-Buchsbaum style equality broken",
                        witness={"module": label, "pd": pd.n, "dom": dom.n,
                                 "inj": idim.n, "codom": codom.n,
                                 "dom_dim_A": dom_a.n},
                    )
            else:
                blocked += 1
    # (iv) minimal AG: inj dim Ω^n(A/J) = gl dim (a proved theorem here)
    if minimal_ag is True and not algebra.is_semisimple():
        gl = gl_dim(algebra, bound, LEFT, dim_cap)
        for n in range(0, bound + 1):
            try:
                om = _syzygy_of_top(algebra, n, dim_cap)
            except BoundExhausted:
                blocked += 1
                break
            if om.is_zero():
                break
            idim = inj_dim(om, bound, dim_cap)
            verdict, level = _compare_dimvalues(idim, gl)
            if verdict == "unequal":
                return VerdictReport(
                    "domdim_suite", fp, FAIL, bound,
                    reason=f"minimal AG but inj dim Ω^{n}(A/J) != gl dim",
                    witness={"n": n, "inj_dim": str(idim), "gl_dim": str(gl)},
                )
            checked += 1 if verdict == "equal" else 0
            blocked += 1 if verdict == "unknown" else 0
    if checked == 0 and blocked > 0:
        return VerdictReport("domdim_suite", fp, INCONCLUSIVE, bound,
                             reason="every instance blocked by truncation")
    level = "exact" if blocked == 0 else "partial-window"
    return VerdictReport("domdim_suite", fp, PASS, bound, level=level,
                         witness={"instances": checked})


CHECKS = {
    "prop22": check_prop22,
    "thm_injdim_radical": check_thm_injdim_radical,
    "question_syzygy": check_question_syzygy,
    "gorenstein_gpd": check_gorenstein_gpd,
    "domdim_suite": check_domdim_suite,
}

PROVED_CHECKS = {"prop22", "thm_injdim_radical", "gorenstein_gpd",
                 "domdim_suite"}


def run_check(name, algebra, bound=DEFAULT_BOUND, dim_cap=DEFAULT_DIM_CAP):
    if name not in CHECKS:
        raise KeyError(f"unknown check {name!r}")
    t0 = time.perf_counter()
    report = CHECKS[name](algebra, bound, dim_cap)
    report.seconds = time.perf_counter() - t0
    return report


# -- generators --------------------------------------------------------------------


class GeneratorSpec:
    """Deterministic family of algebras: same spec, same stream."""

    FAMILIES = ("nakayama", "truncated", "monomial")

    def __init__(self, family, count, seed, field="1009", vmax=4, arrows_max=5,
                 nmax=4, power_max=5, relations_max=3, dim_max=60,
                 cyclic=None):
        if family not in self.FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        self.family = family
        self.count = int(count)
        self.seed = int(seed)
        self.field = str(field)
        self.vmax = int(vmax)
        self.arrows_max = int(arrows_max)
        self.nmax = int(nmax)
        self.power_max = int(power_max)
        self.relations_max = int(relations_max)
        self.dim_max = int(dim_max)
        self.cyclic = cyclic

    def describe(self):
        return {
            "family": self.family,
            "count": self.count,
            "seed": self.seed,
            "field": self.field,
            "vmax": self.vmax,
            "arrows_max": self.arrows_max,
            "nmax": self.nmax,
            "power_max": self.power_max,
            "relations_max": self.relations_max,
            "dim_max": self.dim_max,
        }

    @classmethod
    def parse(cls, text, seed=0):
        """ "nakayama:count=100,vmax=5" -> GeneratorSpec."""
        name, _, rest = text.partition(":")
        kwargs = {"count": 10, "seed": seed}
        for chunk in filter(None, rest.split(",")):
            k, _, v = chunk.partition("=")
            if k not in ("field",):
                v = int(v)
            kwargs[k] = v
        return cls(name.strip(), **kwargs)


def _nakayama_text(rng, spec):
    v = rng.randint(1, spec.vmax)
    cyclic = spec.cyclic if spec.cyclic is not None else (
        v >= 1 and rng.random() < 0.5
    )
    lines = [f"FIELD {spec.field}", "VERTICES %d" % v]
    arrows = []
    if cyclic:
        for i in range(v):
            arrows.append((f"a{i}", i, (i + 1) % v))
    else:
        for i in range(v - 1):
            arrows.append((f"a{i}", i, i + 1))
    powers = [rng.randint(2, spec.power_max) for _ in range(v)]
    if cyclic:
        # Kupisch consistency: c_{i+1} >= c_i - 1 cyclically
        for _ in range(2 * v):
            for i in range(v):
                j = (i + 1) % v
                if powers[j] < powers[i] - 1:
                    powers[j] = powers[i] - 1
        nilbound = max(powers)
    else:
        longest = v - 1
        powers = [min(p, longest - i) for i, p in enumerate(powers)]
        nilbound = max(2, max([p for p in powers if p >= 2], default=2))
    lines.insert(1, f"NILBOUND {nilbound}")
    for name, s, t in arrows:
        lines.append(f"ARROW {name} {s} {t}")
    rels = []
    for i in range(v):
        c = powers[i] if i < len(powers) else 0
        if c < 2 or c >= nilbound:
            continue  # killed by the nilbound or no relation
        word = []
        at = i
        ok = True
        for _ in range(c):
            nxt = [(k, a) for k, (nm, s, t) in enumerate(arrows) if s == at]
            if not nxt:
                ok = False
                break
            k, _a = nxt[0]
            word.append(arrows[k][0])
            at = arrows[k][2]
        if ok:
            rels.append("REL 1*" + "*".join(reversed(word)))
    lines.extend(rels)
    return "\n".join(lines) + "\n"


def _random_quiver_lines(rng, spec):
    v = rng.randint(1, spec.vmax)
    e = rng.randint(1, spec.arrows_max)
    arrows = [(f"a{k}", rng.randrange(v), rng.randrange(v)) for k in range(e)]
    return v, arrows


def _truncated_text(rng, spec):
    v, arrows = _random_quiver_lines(rng, spec)
    n = rng.randint(2, spec.nmax)
    lines = [f"FIELD {spec.field}", f"NILBOUND {n}", f"VERTICES {v}"]
    lines += [f"ARROW {nm} {s} {t}" for nm, s, t in arrows]
    return "\n".join(lines) + "\n"


def _monomial_text(rng, spec):
    v, arrows = _random_quiver_lines(rng, spec)
    n = rng.randint(3, max(3, spec.nmax))
    lines = [f"FIELD {spec.field}", f"NILBOUND {n}", f"VERTICES {v}"]
    lines += [f"ARROW {nm} {s} {t}" for nm, s, t in arrows]
    rel_count = rng.randint(0, spec.relations_max)
    rels = set()
    for _ in range(rel_count):
        length = rng.randint(2, n - 1)
        # random walk through composable arrows
        start = rng.randrange(len(arrows))
        word = [start]
        at = arrows[start][2]
        ok = True
        for _ in range(length - 1):
            nxt = [k for k, (nm, s, t) in enumerate(arrows) if s == at]
            if not nxt:
                ok = False
                break
            k = nxt[rng.randrange(len(nxt))]
            word.append(k)
            at = arrows[k][2]
        if ok:
            rels.add(tuple(word))
    for word in sorted(rels):
        names = [arrows[k][0] for k in word]
        lines.append("REL 1*" + "*".join(reversed(names)))
    return "\n".join(lines) + "\n"


_FAMILY_BUILDERS = {
    "nakayama": _nakayama_text,
    "truncated": _truncated_text,
    "monomial": _monomial_text,
}


def generate(spec, log=None):
    """Deterministic stream of (definition_text, algebra) for a spec.
    Draws exceeding dim_max or failing admissibility are skipped and logged,
    never repaired."""
    rng = random.Random(spec.seed)
    build = _FAMILY_BUILDERS[spec.family]
    produced = 0
    attempts = 0
    while produced < spec.count:
        attempts += 1
        if attempts > 50 * spec.count + 100:
            raise RuntimeError(
                f"generator for {spec.family} rejected too many draws"
            )
        text = build(rng, spec)
        try:
            algebra = parse_algebra(text)
        except (ParseError, PresentationError) as e:
            if log is not None:
                log.append({"skipped": str(e), "text": text})
            continue
        if algebra.dim > spec.dim_max:
            if log is not None:
                log.append({"skipped": f"dim {algebra.dim} > {spec.dim_max}"})
            continue
        produced += 1
        yield text, algebra


# -- sweep -------------------------------------------------------------------------


def _run_all_checks(text, check_names, bound, dim_cap):
    algebra = parse_algebra(text)
    reports = []
    for name in check_names:
        reports.append(run_check(name, algebra, bound, dim_cap))
    return text, reports


def _sweep_worker(args):
    text, check_names, bound, dim_cap = args
    try:
        _, reports = _run_all_checks(text, check_names, bound, dim_cap)
        return text, [r.to_json(with_timing=True) for r in reports], None
    except Exception as e:  # propagate as data; main process decides
        return text, [], f"{type(e).__name__}: {e}"


def sweep(specs, check_names, bound=DEFAULT_BOUND, workers=1,
          dim_cap=DEFAULT_DIM_CAP, out_dir=None):
    """Run checks over every generated algebra.

    Returns (summary_dict, reports).  A FAIL on a proved check raises
    EngineBugError with the witness; counterexample candidates are collected
    (and persisted next to the summary when out_dir is given).
    """
    for name in check_names:
        if name not in CHECKS:
            raise KeyError(f"unknown check {name!r}")
    t0 = time.perf_counter()
    gen_log = []
    texts = []
    for spec in specs:
        for text, _algebra in generate(spec, log=gen_log):
            texts.append(text)

    all_reports = []
    errors = []
    if workers <= 1:
        for text in texts:
            text, payload, err = _sweep_worker((text, check_names, bound, dim_cap))
            if err:
                errors.append((text, err))
            all_reports.extend((text, p) for p in payload)
    else:
        jobs = [(text, check_names, bound, dim_cap) for text in texts]
        with Pool(processes=workers) as pool:
            for text, payload, err in pool.imap_unordered(_sweep_worker, jobs):
                if err:
                    errors.append((text, err))
                all_reports.extend((text, p) for p in payload)
    if errors:
        errors.sort()
        text, err = errors[0]
        raise RuntimeError(f"check crashed on algebra:\n{text}\n{err}")

    # deterministic merge: fingerprint order, then check name
    all_reports.sort(key=lambda tp: (tp[1]["fingerprint"], tp[1]["check"]))
    reports = [p for _, p in all_reports]

    by_text = {}
    for text, p in all_reports:
        by_text[p["fingerprint"]] = text

    candidates = []
    for p in reports:
        if p["status"] == FAIL and p["check"] in PROVED_CHECKS:
            rep = VerdictReport(p["check"], p["fingerprint"], FAIL,
                                p["bound"], reason=p.get("reason"),
                                witness=p.get("witness"))
            raise EngineBugError(rep, by_text[p["fingerprint"]])
        if p["status"] == CANDIDATE:
            candidates.append(p)

    counts = {}
    for name in check_names:
        counts[name] = {
            "pass": 0, "fail": 0, "inconclusive": 0, "candidates": [],
        }
    for p in reports:
        slot = counts[p["check"]]
        if p["status"] == PASS:
            slot["pass"] += 1
        elif p["status"] in (FAIL, CANDIDATE):
            slot["fail"] += 1
            if p["status"] == CANDIDATE:
                slot["candidates"].append(p["fingerprint"])
        else:
            slot["inconclusive"] += 1

    summary = {
        "bound": bound,
        "seed": [s.seed for s in specs],
        "families": [s.describe() for s in specs],
        "algebras": len(texts),
        "skipped_draws": len(gen_log),
        "checks": [
            {"name": name} | counts[name] for name in check_names
        ],
        "wall_time_s": round(time.perf_counter() - t0, 3),
    }

    if out_dir is not None and candidates:
        import os

        os.makedirs(out_dir, exist_ok=True)
        for p in candidates:
            path = os.path.join(out_dir, f"candidate_{p['fingerprint']}.alg")
            with open(path, "w") as fh:
                fh.write(by_text[p["fingerprint"]])
    return summary, reports


def summary_json(summary, with_timing=True):
    """Canonical serialization; the timing block is the only
    nondeterministic part and can be excluded for byte comparison."""
    d = dict(summary)
    if not with_timing:
        d.pop("wall_time_s", None)
    return json.dumps(d, sort_keys=True, indent=2) + "\n"
