"""Exact arithmetic for exponent vectors, motive symbols, and Grothendieck-ring elements.

Everything downstream (parameter contributions, Euler characteristics,
table entries) is expressed in the structures defined here.  All values
are immutable after construction and all operations are pure.

Conventions
-----------
* A :class:`HalfInt` is an element of (1/2)Z stored as twice its value.
* A :class:`Letter` stands for the Satake-eigenvalue aggregate of one
  eigenform family; it carries an integer motivic weight.
* An :class:`ExpVec` is a monomial ``prod letter^e * p^tate`` with
  half-integer exponents; its weight is ``sum e*wt(letter) + 2*tate``.
* Motive symbols store a centered (negation-symmetric) character, so the
  eigenvalue multiset of ``X (x) L^t`` is the character shifted by a tate
  exponent of ``wt(X)/2 + t``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import UnsupportedProduct


# ---------------------------------------------------------------------------
# half integers


class HalfInt:
    """An exact element of (1/2)Z.  ``doubled`` is twice the value."""

    __slots__ = ("doubled",)

    def __init__(self, value=0):
        if isinstance(value, HalfInt):
            self.doubled = value.doubled
        elif isinstance(value, int):
            self.doubled = 2 * value
        else:
            raise TypeError("HalfInt from %r" % (value,))

    @classmethod
    def half_of(cls, doubled: int) -> "HalfInt":
        h = cls.__new__(cls)
        h.doubled = doubled
        return h

    @classmethod
    def parse(cls, text: str) -> "HalfInt":
        """Parse an exact rational with denominator 1 or 2, e.g. ``19/2``."""
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            frac = Fraction(int(num), int(den))
        else:
            frac = Fraction(int(text))
        if frac.denominator not in (1, 2):
            raise ValueError("denominator must be 1 or 2: %s" % text)
        return cls.half_of(int(2 * frac))

    @property
    def is_integral(self) -> bool:
        return self.doubled % 2 == 0

    def __int__(self) -> int:
        if not self.is_integral:
            raise ValueError("%s is not an integer" % self)
        return self.doubled // 2

    def halved(self) -> "HalfInt":
        if self.doubled % 2:
            raise ValueError("cannot halve %s exactly" % self)
        return HalfInt.half_of(self.doubled // 2)

    def as_fraction(self) -> Fraction:
        return Fraction(self.doubled, 2)

    def __add__(self, other):
        return HalfInt.half_of(self.doubled + HalfInt(other).doubled)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt.half_of(self.doubled - HalfInt(other).doubled)

    def __rsub__(self, other):
        return HalfInt(other) - self

    def __neg__(self):
        return HalfInt.half_of(-self.doubled)

    def __mul__(self, other):
        if isinstance(other, int):
            return HalfInt.half_of(self.doubled * other)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (HalfInt, int)):
            return self.doubled == HalfInt(other).doubled
        return NotImplemented

    def __lt__(self, other):
        return self.doubled < HalfInt(other).doubled

    def __le__(self, other):
        return self.doubled <= HalfInt(other).doubled

    def __gt__(self, other):
        return self.doubled > HalfInt(other).doubled

    def __ge__(self, other):
        return self.doubled >= HalfInt(other).doubled

    def __hash__(self):
        return hash(self.as_fraction())

    def __bool__(self):
        return self.doubled != 0

    def __str__(self):
        if self.is_integral:
            return str(self.doubled // 2)
        return "%d/2" % self.doubled

    def __repr__(self):
        return "HalfInt(%s)" % self


ZERO_HALF = HalfInt(0)


# ---------------------------------------------------------------------------
# letters


@dataclass(frozen=True, order=True)
class Letter:
    """One eigenform-family letter with its motivic weight.

    kind "ell": elliptic family of odd motivic weight w.
    kind "sg1"/"sg2": the two coordinate letters of a Siegel pair
    (w1, w2), of motivic weights (w1+w2)/2 and (w1-w2)/2.
    kind "cfg": opaque letter of a catalog-extension constituent.
    """

    kind: str
    data: tuple

    @property
    def weight(self) -> int:
        if self.kind == "ell":
            return self.data[0]
        if self.kind == "sg1":
            return (self.data[0] + self.data[1]) // 2
        if self.kind == "sg2":
            return (self.data[0] - self.data[1]) // 2
        # cfg: data = (name, index, motivic weight)
        return self.data[2]

    def __str__(self):
        if self.kind == "ell":
            return "a%d" % self.data[0]
        if self.kind in ("sg1", "sg2"):
            return "%s(%d,%d)" % ("b" if self.kind == "sg1" else "c", *self.data)
        return "%s.%d" % (self.data[0], self.data[1])


def elliptic_letter(w: int) -> Letter:
    if w % 2 == 0:
        raise ValueError("elliptic letters have odd motivic weight")
    return Letter("ell", (w,))


def siegel_letters(w1: int, w2: int) -> tuple[Letter, Letter]:
    if not (w1 > w2 > 0 and w1 % 2 == 1 and w2 % 2 == 1):
        raise ValueError("Siegel pair must be odd with w1 > w2 > 0")
    return Letter("sg1", (w1, w2)), Letter("sg2", (w1, w2))


def config_letter(name: str, index: int, weight: int) -> Letter:
    return Letter("cfg", (name, index, weight))


# ---------------------------------------------------------------------------
# exponent vectors


@dataclass(frozen=True)
class ExpVec:
    """A monomial in the letters and p, with half-integer exponents.

    ``exps`` is a sorted tuple of (letter, doubled exponent) with zero
    exponents dropped; ``tate2`` is the doubled tate exponent.
    """

    exps: tuple = ()
    tate2: int = 0

    @classmethod
    def make(cls, exps=None, tate=ZERO_HALF) -> "ExpVec":
        items = []
        for letter, e in (exps or {}).items():
            e2 = HalfInt(e).doubled
            if e2:
                items.append((letter, e2))
        items.sort()
        return cls(tuple(items), HalfInt(tate).doubled)

    @property
    def tate(self) -> HalfInt:
        return HalfInt.half_of(self.tate2)

    @property
    def exponents(self) -> dict:
        return {letter: HalfInt.half_of(e2) for letter, e2 in self.exps}

    @property
    def weight(self) -> HalfInt:
        """Motivic weight: sum of exponent * letter weight plus 2 * tate."""
        d = 2 * self.tate2
        for letter, e2 in self.exps:
            d += e2 * letter.weight
        return HalfInt.half_of(d)

    @property
    def slot(self) -> HalfInt:
        """Infinitesimal-character slot value (half the motivic weight)."""
        return self.weight.halved()

    @property
    def is_tate(self) -> bool:
        return not self.exps

    def letters(self) -> frozenset:
        return frozenset(letter for letter, _ in self.exps)

    def __add__(self, other: "ExpVec") -> "ExpVec":
        acc = dict(self.exps)
        for letter, e2 in other.exps:
            c = acc.get(letter, 0) + e2
            if c:
                acc[letter] = c
            elif letter in acc:
                del acc[letter]
        return ExpVec(tuple(sorted(acc.items())), self.tate2 + other.tate2)

    def __neg__(self) -> "ExpVec":
        return ExpVec(tuple((l, -e2) for l, e2 in self.exps), -self.tate2)

    def __sub__(self, other: "ExpVec") -> "ExpVec":
        return self + (-other)

    def halved(self) -> "ExpVec":
        if self.tate2 % 2 or any(e2 % 2 for _, e2 in self.exps):
            raise ValueError("cannot halve %s exactly" % (self,))
        return ExpVec(tuple((l, e2 // 2) for l, e2 in self.exps), self.tate2 // 2)

    def shift_tate(self, t) -> "ExpVec":
        return ExpVec(self.exps, self.tate2 + HalfInt(t).doubled)

    def drop_tate(self) -> "ExpVec":
        return ExpVec(self.exps, 0)

    def __str__(self):
        parts = ["%s^%s" % (l, HalfInt.half_of(e2)) for l, e2 in self.exps]
        if self.tate2 or not parts:
            parts.append("p^%s" % self.tate)
        return "*".join(parts)


EXP_ZERO = ExpVec()


# ---------------------------------------------------------------------------
# motive symbols


@dataclass(frozen=True)
class MotiveSymbol:
    """A named motive with its centered character and Hodge bidegrees.

    ``character`` has ``dim`` entries; for eigenform aggregates it is the
    family-level multiset repeated ``family_mult`` times, and
    ``template`` (the single-family character) is what recognition
    subtracts.
    """

    name: str
    character: tuple
    dim: int
    motivic_weight: int
    hodge: tuple
    family_mult: int = 1

    @property
    def template(self) -> tuple:
        if self.family_mult == 1:
            return self.character
        n = len(self.character) // self.family_mult
        return self.character[:n]

    @property
    def is_tate(self) -> bool:
        return self.name == "1"

    def __str__(self):
        return self.name


ONE = MotiveSymbol("1", (EXP_ZERO,), 1, 0, ((0, 0),))


def _ev(exps, tate=0):
    return ExpVec.make(exps, HalfInt(tate))


def elliptic_symbol(w: int, mult: int) -> MotiveSymbol:
    """S<w+1>: the motive of weight-(w+1) cusp forms, aggregated over eigenforms."""
    if mult < 1:
        raise ValueError("no cusp forms of weight %d" % (w + 1))
    x = elliptic_letter(w)
    fam = (_ev({x: 1}), _ev({x: -1}))
    return MotiveSymbol(
        name="S<%d>" % (w + 1),
        character=fam * mult,
        dim=2 * mult,
        motivic_weight=w,
        hodge=((w, 0), (0, w)) * mult,
        family_mult=mult,
    )


def sym2_elliptic_symbol(w: int) -> MotiveSymbol:
    """Sym2 S<w+1>, only valid when the eigenform space is one dimensional."""
    x = elliptic_letter(w)
    return MotiveSymbol(
        name="Sym2S<%d>" % (w + 1),
        character=(_ev({x: 2}), EXP_ZERO, _ev({x: -2})),
        dim=3,
        motivic_weight=2 * w,
        hodge=((2 * w, 0), (w, w), (0, 2 * w)),
    )


def siegel_symbol(w1: int, w2: int) -> MotiveSymbol:
    """S<a,b>: the four-dimensional motive of the Siegel pair (w1, w2)."""
    c1, c2 = siegel_letters(w1, w2)
    a, b = (w1 + w2 - 4) // 2, (w1 - w2 - 2) // 2
    h = (w1 + w2) // 2, (w1 - w2) // 2
    return MotiveSymbol(
        name="S<%d,%d>" % (a, b),
        character=(
            _ev({c1: 1, c2: 1}),
            _ev({c1: 1, c2: -1}),
            _ev({c1: -1, c2: 1}),
            _ev({c1: -1, c2: -1}),
        ),
        dim=4,
        motivic_weight=w1,
        hodge=((w1, 0), (h[0], h[1]), (h[1], h[0]), (0, w1)),
    )


def lambda2_siegel_symbol(w1: int, w2: int) -> MotiveSymbol:
    """Lambda2 S<a,b>: the exterior square of the Siegel motive."""
    c1, c2 = siegel_letters(w1, w2)
    s = siegel_symbol(w1, w2)
    a, b = (w1 + w2 - 4) // 2, (w1 - w2 - 2) // 2
    hodge = tuple(
        (p1 + p2, q1 + q2)
        for (p1, q1), (p2, q2) in itertools.combinations(s.hodge, 2)
    )
    return MotiveSymbol(
        name="Lambda2S<%d,%d>" % (a, b),
        character=(
            _ev({c1: 2}),
            _ev({c2: 2}),
            EXP_ZERO,
            EXP_ZERO,
            _ev({c2: -2}),
            _ev({c1: -2}),
        ),
        dim=6,
        motivic_weight=w1 + w2,
        hodge=hodge,
    )


def composite_symbol(x: MotiveSymbol, y: MotiveSymbol) -> MotiveSymbol:
    """Opaque product symbol; character and Hodge set are multiset products."""
    if x.is_tate or y.is_tate:
        raise UnsupportedProduct("composite with a Tate factor")
    a, b = sorted((x, y), key=lambda s: s.name)
    return MotiveSymbol(
        name="%s*%s" % (a.name, b.name),
        character=tuple(u + v for u in a.character for v in b.character),
        dim=a.dim * b.dim,
        motivic_weight=a.motivic_weight + b.motivic_weight,
        hodge=tuple(
            (p1 + p2, q1 + q2) for (p1, q1) in a.hodge for (p2, q2) in b.hodge
        ),
    )


# ---------------------------------------------------------------------------
# Grothendieck-ring elements


def _term_weight(term) -> int:
    sym, twist = term
    return sym.motivic_weight + 2 * twist


def _term_sort_key(term):
    sym, twist = term
    return (_term_weight(term), sym.name, twist)


def term_string(term, coeff: int = 1) -> str:
    sym, twist = term
    if sym.is_tate:
        body = "L^%d" % twist
    elif twist == 0:
        body = sym.name
    else:
        body = "%s*L^%d" % (sym.name, twist)
    if coeff == 1:
        return body
    if coeff == -1:
        return "-" + body
    return "%d%s" % (coeff, body)


class GKElem:
    """A finite integer combination of twisted motive symbols."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for term, coeff in (terms or {}).items():
            if coeff:
                clean[term] = coeff
        self.terms = clean

    @classmethod
    def zero(cls) -> "GKElem":
        return cls()

    @classmethod
    def tate(cls, k: int, coeff: int = 1) -> "GKElem":
        return cls({(ONE, k): coeff})

    @classmethod
    def of(cls, sym: MotiveSymbol, twist: int = 0, coeff: int = 1) -> "GKElem":
        return cls({(sym, twist): coeff})

    def __eq__(self, other):
        return isinstance(other, GKElem) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "GKElem") -> "GKElem":
        acc = dict(self.terms)
        for term, coeff in other.terms.items():
            acc[term] = acc.get(term, 0) + coeff
        return GKElem(acc)

    def __neg__(self) -> "GKElem":
        return GKElem({t: -c for t, c in self.terms.items()})

    def __sub__(self, other: "GKElem") -> "GKElem":
        return self + (-other)

    def scale(self, n: int) -> "GKElem":
        return GKElem({t: n * c for t, c in self.terms.items()})

    def twist(self, k: int) -> "GKElem":
        return GKElem({(sym, t + k): c for (sym, t), c in self.terms.items()})

    def __mul__(self, other: "GKElem") -> "GKElem":
        acc = GKElem.zero()
        for (xs, xt), xc in self.terms.items():
            for (ys, yt), yc in other.terms.items():
                acc = acc + _atom_product(xs, ys).twist(xt + yt).scale(xc * yc)
        return acc

    @property
    def dim(self) -> int:
        return sum(c * sym.dim for (sym, _), c in self.terms.items())

    def is_pure_tate(self) -> bool:
        return all(sym.is_tate for sym, _ in self.terms)

    def mod_tate(self) -> "GKElem":
        return GKElem(
            {(s, t): c for (s, t), c in self.terms.items() if not s.is_tate}
        )

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda item: _term_sort_key(item[0]))

    def render(self) -> str:
        """Canonical string: terms by (weight, name, twist), joined with ' + '."""
        if not self.terms:
            return "0"
        out = []
        for term, coeff in self.sorted_terms():
            if out and coeff < 0:
                out.append(" - " + term_string(term, -coeff).lstrip("-"))
            else:
                out.append((" + " if out else "") + term_string(term, coeff))
        return "".join(out)

    def render_table(self) -> str:
        """Table variant: non-Tate terms first, then Tate terms, ascending weight."""
        if not self.terms:
            return "0"
        symbols = [t for t in self.sorted_terms() if not t[0][0].is_tate]
        tates = [t for t in self.sorted_terms() if t[0][0].is_tate]
        return " + ".join(term_string(t, c) for t, c in symbols + tates)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return "GKElem(%s)" % self


def _atom_product(x: MotiveSymbol, y: MotiveSymbol) -> GKElem:
    """Rewrite the product of two atomic symbols.

    Only Tate * anything, S<12> * S<12>, and opaque composites are
    required; S<12>^2 resolves because the weight-12 eigenform space is
    one dimensional.
    """
    if x.is_tate:
        return GKElem.of(y)
    if y.is_tate:
        return GKElem.of(x)
    if x.name == y.name == "S<12>":
        return GKElem.of(sym2_elliptic_symbol(11)) + GKElem.tate(11)
    return GKElem.of(composite_symbol(x, y))


def gk_add(a: GKElem, b: GKElem) -> GKElem:
    return a + b


def gk_mul(a: GKElem, b: GKElem) -> GKElem:
    return a * b


def mod_tate(a: GKElem) -> GKElem:
    return a.mod_tate()


class GradedGK:
    """A degree-graded Grothendieck-ring element (the shape of IH output)."""

    __slots__ = ("by_degree",)

    def __init__(self, by_degree=None):
        self.by_degree = {
            k: v for k, v in (by_degree or {}).items() if v.terms
        }

    def __eq__(self, other):
        return isinstance(other, GradedGK) and self.by_degree == other.by_degree

    def __bool__(self):
        return bool(self.by_degree)

    def __add__(self, other: "GradedGK") -> "GradedGK":
        acc = dict(self.by_degree)
        for k, v in other.by_degree.items():
            acc[k] = acc.get(k, GKElem.zero()) + v
        return GradedGK(acc)

    def degree(self, k: int) -> GKElem:
        return self.by_degree.get(k, GKElem.zero())

    def degrees(self):
        return sorted(self.by_degree)

    def total(self) -> GKElem:
        acc = GKElem.zero()
        for v in self.by_degree.values():
            acc = acc + v
        return acc

    def graded_dims(self) -> dict:
        return {k: v.dim for k, v in sorted(self.by_degree.items())}

    def __str__(self):
        return "; ".join(
            "IH^%d: %s" % (k, self.by_degree[k]) for k in self.degrees()
        )


def truncate_weight(a: GradedGK, max_weight) -> GradedGK:
    """Drop every term of motivic weight + 2*twist above the bound."""
    if max_weight is None:
        return a
    out = {}
    for k, elem in a.by_degree.items():
        kept = GKElem(
            {t: c for t, c in elem.terms.items() if _term_weight(t) <= max_weight}
        )
        if kept:
            out[k] = kept
    return GradedGK(out)
