"""The trusted database of level-one self-dual cuspidal constituents.

Everything here is catalog data (classification results taken as
axioms): eigenform-space dimensions, the Siegel pair list up to motivic
weight 23, the constituent list with admissible SL2-block sizes, and the
symplectic root-number recipe.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .errors import CatalogExhausted, NotSymplecticPair, OddWeight, ParseError
from .gkring import (
    EXP_ZERO,
    ExpVec,
    HalfInt,
    config_letter,
    elliptic_letter,
    siegel_letters,
)

#: (w1, w2) pairs of vector-valued Siegel eigenforms of level one, with
#: eigenform multiplicity, complete through motivic weight 23.
SIEGEL_PAIRS = (
    (19, 7, 1),
    (21, 5, 1),
    (21, 9, 1),
    (21, 13, 1),
    (23, 7, 1),
    (23, 9, 1),
    (23, 13, 1),
)

#: Largest bound the built-in lists are complete for.
MAX_BOUND = 24


def dim_cusp_forms(k: int) -> int:
    """dim S_k(SL_2(Z)) for even k >= 0, by the classical dimension formula."""
    if k < 0:
        raise ValueError("negative weight")
    if k % 2:
        raise OddWeight("cusp form dimension at odd weight %d" % k)
    if k < 4:
        return 0
    if k % 12 == 2:
        return max(k // 12 - 1, 0)
    return k // 12


def siegel_catalog(max_w1: int):
    """Siegel pairs with w1 <= max_w1, as (w1, w2, multiplicity)."""
    if max_w1 > 23:
        raise CatalogExhausted(
            "Siegel pairs above motivic weight 23 are not in the catalog"
        )
    return [p for p in SIEGEL_PAIRS if p[0] <= max_w1]


@dataclass(frozen=True)
class Constituent:
    """A level-one self-dual cuspidal building block.

    ``pos_exponents`` are the positive standard exponents as exponent
    vectors (strictly decreasing slot values); constituents of odd
    standard dimension carry the implicit exponent 0 in addition.
    ``letter_families`` groups the letters by eigenform family together
    with the family multiplicity, for letter-cancellation bookkeeping.
    """

    kind: str
    name: str
    n: int
    parity: str  # "orthogonal" | "symplectic"
    pos_exponents: tuple
    mult: int
    letter_families: tuple = ()

    def __post_init__(self):
        assert len(self.pos_exponents) == self.n // 2
        slots = [e.slot for e in self.pos_exponents]
        assert all(s > 0 for s in slots)
        assert all(slots[i] > slots[i + 1] for i in range(len(slots) - 1))

    @property
    def symplectic(self) -> bool:
        return self.parity == "symplectic"

    def full_exponents(self) -> list:
        """All n standard exponents (positive, negated, and 0 if n is odd)."""
        out = list(self.pos_exponents)
        if self.n % 2:
            out.append(EXP_ZERO)
        out.extend(-e for e in self.pos_exponents)
        return out

    def __str__(self):
        return self.name


def trivial_constituent() -> Constituent:
    return Constituent("trivial", "1", 1, "orthogonal", (), 1)


def delta_w(w: int) -> Constituent:
    s = dim_cusp_forms(w + 1)
    x = elliptic_letter(w)
    return Constituent(
        "delta",
        "Delta_{%d}" % w,
        2,
        "symplectic",
        (ExpVec.make({x: 1}),),
        s,
        ((frozenset([x]), s),),
    )


def sym2_delta_w(w: int) -> Constituent:
    s = dim_cusp_forms(w + 1)
    x = elliptic_letter(w)
    return Constituent(
        "sym2",
        "Sym2Delta_{%d}" % w,
        3,
        "orthogonal",
        (ExpVec.make({x: 2}),),
        s,
        ((frozenset([x]), s),),
    )


def delta_tensor(w1: int, w2: int) -> Constituent:
    if not w1 > w2:
        raise ValueError("tensor factors must satisfy w1 > w2")
    s1, s2 = dim_cusp_forms(w1 + 1), dim_cusp_forms(w2 + 1)
    y, z = elliptic_letter(w1), elliptic_letter(w2)
    return Constituent(
        "tensor",
        "Delta_{%d}xDelta_{%d}" % (w1, w2),
        4,
        "orthogonal",
        (ExpVec.make({y: 1, z: 1}), ExpVec.make({y: 1, z: -1})),
        s1 * s2,
        ((frozenset([y]), s1), (frozenset([z]), s2)),
    )


def siegel_delta(w1: int, w2: int, mult: int = 1) -> Constituent:
    c1, c2 = siegel_letters(w1, w2)
    return Constituent(
        "siegel",
        "Delta_{%d,%d}" % (w1, w2),
        4,
        "symplectic",
        (ExpVec.make({c1: 1, c2: 1}), ExpVec.make({c1: 1, c2: -1})),
        mult,
        ((frozenset([c1, c2]), mult),),
    )


def lambda_star_siegel(w1: int, w2: int, mult: int = 1) -> Constituent:
    c1, c2 = siegel_letters(w1, w2)
    return Constituent(
        "lambda",
        "Lambda*Delta_{%d,%d}" % (w1, w2),
        5,
        "orthogonal",
        (ExpVec.make({c1: 2}), ExpVec.make({c2: 2})),
        mult,
        ((frozenset([c1, c2]), mult),),
    )


def config_constituent(name: str, n: int, parity: str, weights, mult: int) -> Constituent:
    """Constituent registered through a catalog extension file.

    ``weights`` are the positive slot values as HalfInts, strictly
    decreasing; each gets its own opaque letter of motivic weight twice
    the slot value.
    """
    if len(weights) != n // 2:
        raise ParseError(
            "constituent %s: %d weights for dimension %d" % (name, len(weights), n)
        )
    letters = [
        config_letter(name, i, w.doubled) for i, w in enumerate(weights)
    ]
    exps = tuple(ExpVec.make({l: 1}) for l in letters)
    return Constituent(
        "config",
        name,
        n,
        parity,
        exps,
        mult,
        ((frozenset(letters), mult),),
    )


# ---------------------------------------------------------------------------
# blocks


@dataclass(frozen=True)
class Block:
    """A constituent tensored with a d-dimensional SL2 block."""

    constituent: Constituent
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("block size must be positive")
        if self.constituent.symplectic != (self.d % 2 == 0):
            raise ValueError(
                "parity mismatch: %s[%d]" % (self.constituent.name, self.d)
            )

    @property
    def n(self) -> int:
        return self.constituent.n

    @property
    def nd(self) -> int:
        return self.n * self.d

    @property
    def is_odd(self) -> bool:
        return self.nd % 2 == 1

    @cached_property
    def slots(self) -> tuple:
        """Positive infinitesimal-character slots, descending; None if irregular."""
        vals = []
        half = HalfInt.half_of(self.d - 1)  # (d-1)/2
        for e in self.constituent.pos_exponents:
            base = e.slot
            for k in range(self.d):
                vals.append(base + half - k)
        if self.n % 2:
            for k in range((self.d - 1) // 2):
                vals.append(half - k)
        if any(not v.is_integral or v <= 0 for v in vals):
            return None
        ints = sorted((int(v) for v in vals), reverse=True)
        if len(set(ints)) != len(ints):
            return None
        return tuple(ints)

    @property
    def regular(self) -> bool:
        return self.slots is not None

    @cached_property
    def k_value(self) -> Fraction:
        """Weight budget |tau^(i)| - n*floor(d^2/2)/4 of the block."""
        if not self.regular:
            raise ValueError("k of an irregular block")
        return Fraction(sum(self.slots)) - Fraction(self.nd_correction, 1)

    @property
    def nd_correction(self) -> Fraction:
        return Fraction(self.n * (self.d * self.d // 2), 4)

    def __str__(self):
        if self.constituent.kind == "trivial":
            return "[%d]" % self.d
        return "%s[%d]" % (self.constituent.name, self.d)


def trivial_block(d: int) -> Block:
    """The block [2d+1] for d >= 0."""
    return Block(trivial_constituent(), 2 * d + 1)


# ---------------------------------------------------------------------------
# the catalog


def parse_config_text(text: str):
    """Parse extension records ``name n parity w_1,...,w_r mult``."""
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 5:
            raise ParseError("catalog extension line %d: expected 5 fields" % lineno)
        name, n_str, parity, weights_str, mult_str = parts
        if parity not in ("orthogonal", "symplectic"):
            raise ParseError("catalog extension line %d: bad parity %r" % (lineno, parity))
        try:
            n = int(n_str)
            mult = int(mult_str)
            weights = [HalfInt.parse(tok) for tok in weights_str.split(",")]
        except ValueError as exc:
            raise ParseError("catalog extension line %d: %s" % (lineno, exc)) from exc
        if sorted(weights, reverse=True) != weights or len(set(w.doubled for w in weights)) != len(weights):
            raise ParseError(
                "catalog extension line %d: weights must be strictly decreasing" % lineno
            )
        entries.append(config_constituent(name, n, parity, weights, mult))
    return entries


class Catalog:
    """Immutable constituent catalog up to a configurable weight budget."""

    def __init__(self, bound: int = 23, extensions=()):
        if bound > MAX_BOUND:
            raise CatalogExhausted(
                "built-in catalog is only complete up to %d" % MAX_BOUND
            )
        self.bound = bound
        self.extensions = tuple(extensions)
        self._constituents = self._build()

    @classmethod
    def from_config_file(cls, path, bound: int = MAX_BOUND) -> "Catalog":
        with open(path, "r", encoding="utf-8") as fh:
            return cls(bound, parse_config_text(fh.read()))

    def _build(self):
        out = [trivial_constituent()]
        w = 11
        while w <= self.bound + 1:
            if dim_cusp_forms(w + 1) > 0:
                out.append(delta_w(w))
                out.append(sym2_delta_w(w))
            w += 2
        elliptic = [c for c in out if c.kind == "delta"]
        for c1 in elliptic:
            for c2 in elliptic:
                w1 = c1.pos_exponents[0].weight.doubled // 2
                w2 = c2.pos_exponents[0].weight.doubled // 2
                if w1 > w2:
                    out.append(delta_tensor(w1, w2))
        for w1, w2, mult in siegel_catalog(min(self.bound, 23)):
            out.append(siegel_delta(w1, w2, mult))
            out.append(lambda_star_siegel(w1, w2, mult))
        out.extend(self.extensions)
        return tuple(out)

    @property
    def constituents(self):
        return self._constituents

    def constituents_up_to(self, m: int):
        """(constituent, admissible d list) pairs with block budget k <= m.

        The trivial constituent admits every odd block size, returned as
        the sentinel string "all".
        """
        if m > self.bound:
            raise CatalogExhausted(
                "catalog configured up to %d, requested %d" % (self.bound, m)
            )
        out = []
        for c in self._constituents:
            if c.kind == "trivial":
                out.append((c, "all"))
                continue
            allowed = []
            # Within the regular range the budget k is strictly increasing
            # in d for every family, so the run ends at the first failure.
            d = 2 if c.symplectic else 1
            while True:
                block = Block(c, d)
                if not block.regular or block.k_value > m:
                    break
                allowed.append(d)
                d += 2
            if allowed:
                out.append((c, allowed))
        return out

    def blocks(self, m: int):
        """All regular nontrivial blocks with k <= m."""
        out = []
        for c, allowed in self.constituents_up_to(m):
            if allowed == "all":
                continue
            out.extend(Block(c, d) for d in allowed)
        return out


def epsilon_half(a: Constituent, b: Constituent) -> int:
    """Symplectic root number of the pair, from the weights alone.

    Over the multiset of sums e + f, e running over all signed exponents
    of one constituent and f over the other, the sign is the product of
    i^(2s+1) over the positive sums s.  Valid (and real) exactly when
    one of the two constituents is symplectic.
    """
    if a.symplectic == b.symplectic:
        raise NotSymplecticPair("%s x %s is not symplectic" % (a.name, b.name))
    quarter_turns = 0
    for e in a.full_exponents():
        for f in b.full_exponents():
            s = e.slot + f.slot
            if s > 0:
                if s.is_integral:
                    raise NotSymplecticPair(
                        "integral exponent sum in %s x %s" % (a.name, b.name)
                    )
                quarter_turns += s.doubled + 1
    assert quarter_turns % 2 == 0
    return 1 if quarter_turns % 4 == 0 else -1
