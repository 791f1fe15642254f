"""Three-valued homological dimensions.

Truncating a resolution at a bound B can never prove finiteness on its own,
so every dimension answer is Exact(n), AtLeast(b) (the computation ran out
of depth at b), or ZeroModule (the module was zero; projective dimension of
0 has no honest integer value).  An AtLeast value may additionally carry an
infiniteness certificate (e.g. a detected syzygy period), in which case the
true value is known to be infinite even though no integer fits.

Comparison never lets truncation fabricate an answer: AtLeast(b) exceeds
Exact(n) only when n < b, certified-infinite values compare as +infinity,
and everything else is incomparable (None).
"""


class DimValue:
    __slots__ = ("kind", "n", "infinite", "note")

    EXACT = "exact"
    AT_LEAST = "at_least"
    ZERO_MODULE = "zero_module"

    def __init__(self, kind, n=None, infinite=False, note=None):
        self.kind = kind
        self.n = n
        self.infinite = bool(infinite)
        self.note = note
        if kind == self.EXACT and (n is None or n < 0):
            raise ValueError("Exact needs n >= 0")
        if kind == self.AT_LEAST and (n is None or n < 0):
            raise ValueError("AtLeast needs a bound >= 0")

    @classmethod
    def exact(cls, n):
        return cls(cls.EXACT, int(n))

    @classmethod
    def at_least(cls, bound, infinite=False, note=None):
        return cls(cls.AT_LEAST, int(bound), infinite=infinite, note=note)

    @classmethod
    def zero_module(cls):
        return cls(cls.ZERO_MODULE)

    @property
    def is_exact(self):
        return self.kind == self.EXACT

    @property
    def is_at_least(self):
        return self.kind == self.AT_LEAST

    @property
    def is_zero_module(self):
        return self.kind == self.ZERO_MODULE

    def as_exact_or_zero(self):
        """Exact value with the zero-module convention 0; None otherwise."""
        if self.is_exact:
            return self.n
        if self.is_zero_module:
            return 0
        return None

    def __eq__(self, other):
        if not isinstance(other, DimValue):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.n == other.n
            and self.infinite == other.infinite
        )

    def __hash__(self):
        return hash((self.kind, self.n, self.infinite))

    def __str__(self):
        if self.is_exact:
            return str(self.n)
        if self.is_zero_module:
            return "zero-module"
        base = "infinite" if self.infinite else f">={self.n}"
        return f"{base} ({self.note})" if self.note else base

    def __repr__(self):
        return f"DimValue({self!s})"

    def to_json(self):
        d = {"kind": self.kind}
        if self.n is not None:
            d["n"] = self.n
        if self.infinite:
            d["infinite"] = True
        if self.note:
            d["note"] = self.note
        return d

    @classmethod
    def from_json(cls, d):
        return cls(d["kind"], d.get("n"), d.get("infinite", False), d.get("note"))


def compare(x, y, zero_module_as=None):
    """Total-information comparison: -1/0/1 when decidable, None otherwise.

    zero_module_as: if an integer, ZeroModule values compare as it (the
    paper-convention 0 in the places that license it); otherwise ZeroModule
    is only comparable to itself.
    """

    def norm(v):
        if v.is_zero_module and zero_module_as is not None:
            return DimValue.exact(zero_module_as)
        return v

    x, y = norm(x), norm(y)
    if x.is_zero_module or y.is_zero_module:
        return 0 if x.is_zero_module and y.is_zero_module else None
    xi = x.is_at_least and x.infinite
    yi = y.is_at_least and y.infinite
    if xi and yi:
        return 0
    if xi:
        return None if y.is_at_least else 1
    if yi:
        return None if x.is_at_least else -1
    if x.is_exact and y.is_exact:
        return (x.n > y.n) - (x.n < y.n)
    if x.is_at_least and y.is_exact:
        return 1 if y.n < x.n else None
    if x.is_exact and y.is_at_least:
        return -1 if x.n < y.n else None
    return None  # AtLeast vs AtLeast without certificates


def known_equal(x, y, zero_module_as=None):
    return compare(x, y, zero_module_as=zero_module_as) == 0


def known_le(x, y, zero_module_as=None):
    """True/False when decidable, None when truncation blocks a verdict."""
    c = compare(x, y, zero_module_as=zero_module_as)
    if c is not None:
        return c <= 0
    x0 = x if not (x.is_zero_module and zero_module_as is not None) else DimValue.exact(zero_module_as)
    y0 = y if not (y.is_zero_module and zero_module_as is not None) else DimValue.exact(zero_module_as)
    # Exact(n) <= AtLeast(b) is decidable when n <= b even if strictness isn't
    if x0.is_exact and y0.is_at_least and x0.n <= y0.n:
        return True
    if y0.is_at_least and y0.infinite and not x0.is_at_least:
        return True
    return None


def max_of(values):
    """Maximum with honest truncation semantics (for sup-style dimensions).

    ZeroModule entries are the sup over an empty family and are skipped;
    an empty input yields ZeroModule.
    """
    vals = [v for v in values if not v.is_zero_module]
    if not vals:
        return DimValue.zero_module()
    if any(v.is_at_least and v.infinite for v in vals):
        keep = [v for v in vals if v.is_at_least and v.infinite]
        best = max(keep, key=lambda v: v.n)
        return best
    if all(v.is_exact for v in vals):
        return DimValue.exact(max(v.n for v in vals))
    # some AtLeast: result is at least the largest lower bound seen
    lo = max(v.n for v in vals)
    note = next((v.note for v in vals if v.is_at_least and v.note), None)
    return DimValue.at_least(lo, note=note)
