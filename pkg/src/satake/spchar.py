"""Exact Sp(2g) character kernel.

Weyl characters via Freudenthal's recursion, tensor decomposition by
highest-weight peeling, wedge powers of the standard local system, and
the multiplicity polynomials that drive the Euler-characteristic
computations for fiber powers of the universal abelian variety.

Characters are sparse integer maps over the weight lattice Z^g,
invariant under the Weyl group (signed permutations).  Products run
through the packed-key convolution kernel in :mod:`satake._kernels`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import _kernels
from .errors import NotACharacter, OutOfRange


def check_dominant(g: int, lam) -> tuple:
    lam = tuple(lam)
    if len(lam) != g:
        raise ValueError("weight %r has %d entries, expected %d" % (lam, len(lam), g))
    if any(lam[i] < lam[i + 1] for i in range(g - 1)) or (g and lam[-1] < 0):
        raise ValueError("%r is not dominant" % (lam,))
    return lam


@lru_cache(maxsize=None)
def positive_roots(g: int) -> tuple:
    roots = []
    for i in range(g):
        for j in range(i + 1, g):
            for sign in (1, -1):
                v = [0] * g
                v[i], v[j] = 1, sign
                roots.append(tuple(v))
        v = [0] * g
        v[i] = 2
        roots.append(tuple(v))
    return tuple(roots)


def rho(g: int) -> tuple:
    return tuple(range(g, 0, -1))


def _ip(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def _dominantize(v) -> tuple:
    return tuple(sorted((abs(x) for x in v), reverse=True))


def weyl_dim(g: int, lam) -> int:
    """Dimension of the irreducible with highest weight lam (Weyl formula)."""
    lam = check_dominant(g, lam)
    taus = tuple(l + r for l, r in zip(lam, rho(g)))
    d = Fraction(1)
    for alpha in positive_roots(g):
        d *= Fraction(_ip(taus, alpha), _ip(rho(g), alpha))
    assert d.denominator == 1
    return int(d)


@lru_cache(maxsize=None)
def _dominant_weights_below(g: int, lam: tuple) -> tuple:
    """Dominant mu <= lam in dominance order, sorted by decreasing height."""
    out = []

    def rec(prefix):
        k = len(prefix)
        if k == g:
            diff = sum(lam) - sum(prefix)
            if diff >= 0 and diff % 2 == 0:
                out.append(tuple(prefix))
            return
        # partial sums of lam - mu stay non-negative
        hi = min(prefix[-1] if prefix else lam[0], sum(lam[: k + 1]) - sum(prefix))
        for v in range(hi, -1, -1):
            rec(prefix + [v])

    rec([])
    r = rho(g)
    out.sort(key=lambda mu: -_ip(mu, r))
    return tuple(out)


@lru_cache(maxsize=None)
def weight_multiplicities(g: int, lam: tuple) -> dict:
    """Dominant weight -> multiplicity for V_lam, by Freudenthal's recursion."""
    lam = check_dominant(g, lam)
    r = rho(g)
    lam_rho = tuple(l + x for l, x in zip(lam, r))
    c_top = _ip(lam_rho, lam_rho)
    dominants = _dominant_weights_below(g, lam)
    index = set(dominants)
    table = {lam: 1}
    for mu in dominants:
        if mu == lam:
            continue
        num = 0
        for alpha in positive_roots(g):
            k = 1
            while True:
                nu = tuple(m + k * a for m, a in zip(mu, alpha))
                dom = _dominantize(nu)
                if dom not in index:
                    break
                num += table[dom] * _ip(nu, alpha)
                k += 1
        mu_rho = tuple(m + x for m, x in zip(mu, r))
        denom = c_top - _ip(mu_rho, mu_rho)
        assert denom > 0 and (2 * num) % denom == 0
        table[mu] = 2 * num // denom
    return table


def _orbit(mu: tuple):
    """The Weyl orbit of a dominant weight: signed permutations, deduplicated."""
    seen = set()
    for perm in set(itertools.permutations(mu)):
        nz = [i for i, v in enumerate(perm) if v]
        for signs in itertools.product((1, -1), repeat=len(nz)):
            w = list(perm)
            for i, s in zip(nz, signs):
                w[i] *= s
            seen.add(tuple(w))
    return seen


@dataclass
class CharPoly:
    """A Weyl-invariant weight-multiplicity map."""

    g: int
    coeffs: dict

    @property
    def dim(self) -> int:
        return sum(self.coeffs.values())

    def __eq__(self, other):
        return (
            isinstance(other, CharPoly)
            and self.g == other.g
            and self.coeffs == other.coeffs
        )

    def __mul__(self, other: "CharPoly") -> "CharPoly":
        if self.g != other.g:
            raise ValueError("rank mismatch")
        n = self.g
        a = {_kernels.pack(w, n): c for w, c in self.coeffs.items()}
        b = {_kernels.pack(w, n): c for w, c in other.coeffs.items()}
        out = _kernels.convolve(a, b, n)
        return CharPoly(n, {_kernels.unpack(k, n): c for k, c in out.items()})

    def is_weyl_invariant(self) -> bool:
        for w, c in self.coeffs.items():
            dom = _dominantize(w)
            if any(self.coeffs.get(v, 0) != c for v in _orbit(dom)):
                return False
        return True


@lru_cache(maxsize=None)
def _character_dict(g: int, lam: tuple) -> dict:
    full = {}
    for mu, m in weight_multiplicities(g, lam).items():
        for w in _orbit(mu):
            full[w] = m
    return full


def weyl_character(g: int, lam) -> CharPoly:
    lam = check_dominant(g, lam)
    return CharPoly(g, dict(_character_dict(g, lam)))


def decompose(c: CharPoly, virtual: bool = False) -> dict:
    """Write c as an integer combination of irreducible characters.

    Peels the lexicographically largest dominant weight first.  With
    ``virtual=False`` any negative or non-dominant leading term raises
    :class:`NotACharacter`.
    """
    g = c.g
    work = {w: m for w, m in c.coeffs.items() if m}
    out = {}
    while work:
        wmax = max(work)
        if list(wmax) != sorted(wmax, reverse=True) or wmax[-1] < 0:
            raise NotACharacter("leading weight %r is not dominant" % (wmax,))
        m = work[wmax]
        if m < 0 and not virtual:
            raise NotACharacter("negative multiplicity at %r" % (wmax,))
        out[wmax] = m
        for w, mult in _character_dict(g, wmax).items():
            v = work.get(w, 0) - m * mult
            if v:
                work[w] = v
            elif w in work:
                del work[w]
    return out


# ---------------------------------------------------------------------------
# graded characters: weights plus extra integer grading fields


class GradedChar:
    """Sparse polynomial over Z^g weights with extra grading fields (T, L)."""

    __slots__ = ("g", "extra", "coeffs")

    def __init__(self, g: int, extra: int, coeffs=None):
        self.g = g
        self.extra = extra
        self.coeffs = coeffs or {}

    @property
    def n_fields(self) -> int:
        return self.g + self.extra

    @classmethod
    def from_items(cls, g: int, extra: int, items) -> "GradedChar":
        poly = cls(g, extra)
        for weights, extras, coeff in items:
            key = _kernels.pack(tuple(weights) + tuple(extras), g + extra)
            poly.coeffs[key] = poly.coeffs.get(key, 0) + coeff
        poly.coeffs = {k: v for k, v in poly.coeffs.items() if v}
        return poly

    def items(self):
        n = self.n_fields
        for key, coeff in self.coeffs.items():
            v = _kernels.unpack(key, n)
            yield v[: self.g], v[self.g :], coeff

    def __mul__(self, other: "GradedChar") -> "GradedChar":
        assert (self.g, self.extra) == (other.g, other.extra)
        return GradedChar(
            self.g, self.extra, _kernels.convolve(self.coeffs, other.coeffs, self.n_fields)
        )

    def __add__(self, other: "GradedChar") -> "GradedChar":
        assert (self.g, self.extra) == (other.g, other.extra)
        acc = dict(self.coeffs)
        for k, v in other.coeffs.items():
            c = acc.get(k, 0) + v
            if c:
                acc[k] = c
            elif k in acc:
                del acc[k]
        return GradedChar(self.g, self.extra, acc)

    def power(self, s: int) -> "GradedChar":
        result = GradedChar.from_items(self.g, self.extra, [((0,) * self.g, (0,) * self.extra, 1)])
        for _ in range(s):
            result = result * self
        return result

    def slices(self) -> dict:
        """Group into CharPoly slices keyed by the extra-field tuple."""
        out = {}
        for w, extras, coeff in self.items():
            out.setdefault(extras, {})[w] = coeff
        return {k: CharPoly(self.g, v) for k, v in out.items()}


# ---------------------------------------------------------------------------
# wedge powers of the standard local system


@dataclass(frozen=True)
class LocalSystemDecomp:
    """Multiset of (highest weight, tate twist, multiplicity) entries."""

    entries: tuple

    def as_dict(self) -> dict:
        return {(lam, m): mult for lam, m, mult in self.entries}


def wedge_local_system(g: int, i: int) -> LocalSystemDecomp:
    """Decomposition of the i-th wedge of the weight-one standard system.

    For i <= g the wedge splits as sum of V_{1^{i-2j}}(-j); above g the
    dual rule contributes the extra twist i-g on the 2g-i wedge.
    """
    if not 0 <= i <= 2 * g:
        raise OutOfRange("wedge index %d outside [0, %d]" % (i, 2 * g))
    shift = max(0, i - g)
    i2 = min(i, 2 * g - i)
    entries = []
    for j in range(i2 // 2 + 1):
        lam = tuple([1] * (i2 - 2 * j) + [0] * (g - (i2 - 2 * j)))
        entries.append((lam, j + shift, 1))
    return LocalSystemDecomp(tuple(entries))


@lru_cache(maxsize=None)
def _wedge_char_items(g: int, i: int):
    """The character of the i-th wedge of the standard rep, as items.

    As a representation the wedge above g coincides with its dual below;
    the missing Tate twist is recovered from the weight count q - |lam|.
    """
    i2 = min(i, 2 * g - i)
    acc: dict = {}
    for lam, _m, mult in wedge_local_system(g, i2).entries:
        for w, c in _character_dict(g, lam).items():
            acc[w] = acc.get(w, 0) + mult * c
    return tuple(acc.items())


@lru_cache(maxsize=None)
def _kunneth_factor(g: int) -> GradedChar:
    """sum_i char(wedge_i) * T^i, fields (weights..., T)."""
    items = []
    for i in range(2 * g + 1):
        for w, c in _wedge_char_items(g, i):
            items.append((w, (i,), c))
    return GradedChar.from_items(g, 1, items)


def rpi_decomposition(g: int, s: int, q: int, k: int = 0) -> LocalSystemDecomp:
    """Full decomposition of R^q of the s-fold fiber power, twisted by -k.

    Every V_lam inside the weight-q piece carries the determined twist
    m = k + (q - |lam|)/2.
    """
    if not 0 <= q <= 2 * g * s:
        raise OutOfRange("q=%d outside [0, %d]" % (q, 2 * g * s))
    if k < 0:
        raise ValueError("twist must be non-negative")
    total = _kunneth_factor(g).power(s)
    entries = []
    for extras, char in sorted(total.slices().items()):
        if extras[0] != q:
            continue
        for lam, mult in sorted(decompose(char).items()):
            if mult:
                assert (q - sum(lam)) % 2 == 0
                m = k + (q - sum(lam)) // 2
                assert sum(lam) + 2 * m == q + 2 * k and m >= k and lam[0] <= s
                entries.append((lam, m, mult))
    return LocalSystemDecomp(tuple(entries))


# ---------------------------------------------------------------------------
# Euler-characteristic multiplicity polynomials


@lru_cache(maxsize=None)
def _signed_factor(g: int) -> GradedChar:
    """sum_i (-1)^i char(wedge_i) * T^i."""
    items = []
    for i in range(2 * g + 1):
        sign = -1 if i % 2 else 1
        for w, c in _wedge_char_items(g, i):
            items.append((w, (i,), sign * c))
    return GradedChar.from_items(g, 1, items)


@lru_cache(maxsize=None)
def _parity_factor(g: int, odd: bool) -> GradedChar:
    """The even- or odd-degree half of the signed factor, for the order-2 action.

    The action fixes even wedge degrees and negates odd ones, so the odd
    half carries an overall minus sign in the Euler characteristic.
    """
    items = []
    for i in range(2 * g + 1):
        if (i % 2 == 1) != odd:
            continue
        sign = -1 if odd else 1
        for w, c in _wedge_char_items(g, i):
            items.append((w, (i,), sign * c))
    return GradedChar.from_items(g, 1, items)


def _extract_poly(total: GradedChar, lam: tuple) -> dict:
    """Multiplicity polynomial of lam: L-degree (q - |lam|)/2 per q-slice."""
    poly = {}
    for extras, char in total.slices().items():
        coeff = decompose(char, virtual=True).get(lam, 0)
        if coeff:
            q = extras[0]
            assert (q - sum(lam)) % 2 == 0
            poly[(q - sum(lam)) // 2] = poly.get((q - sum(lam)) // 2, 0) + coeff
    return poly


@lru_cache(maxsize=None)
def _ec_product(g: int, s: int) -> GradedChar:
    return _signed_factor(g).power(s)


@lru_cache(maxsize=None)
def _ec_product_signed(g: int, s: int, odd: bool) -> GradedChar:
    return _parity_factor(g, odd) * _signed_factor(g).power(s - 1)


def ec_mult_poly(g: int, s: int, lam) -> dict:
    """Coefficient polynomial of e_c(A_g, V_lam) in e_c of the s-fold power.

    Returns the polynomial in L as {degree: coefficient}: the signed sum
    over cohomology degrees of the multiplicities of V_lam(-m), including
    the duality twists of the wedges above degree g.
    """
    lam = check_dominant(g, lam)
    return _extract_poly(_ec_product(g, s), lam)


def ec_mult_poly_signed(g: int, s: int, lam, flipped_factor_count: int = 1):
    """Split of ec_mult_poly under the order-2 action on one tensor factor."""
    if flipped_factor_count != 1:
        raise ValueError("exactly one flipped factor is supported")
    if s < 1:
        raise ValueError("need at least one factor")
    lam = check_dominant(g, lam)
    plus = _extract_poly(_ec_product_signed(g, s, odd=False), lam)
    minus = _extract_poly(_ec_product_signed(g, s, odd=True), lam)
    return plus, minus


# ---------------------------------------------------------------------------
# polynomial rendering (canonical ascending grammar)


def poly_str(poly: dict) -> str:
    """Render {degree: coeff} as ``c0 + c1 L + c2 L^2 ...``."""
    if not poly:
        return "0"
    parts = []
    for deg in sorted(poly):
        c = poly[deg]
        if c == 0:
            continue
        if deg == 0:
            body = str(c)
        else:
            lpow = "L" if deg == 1 else "L^%d" % deg
            if c == 1:
                body = lpow
            elif c == -1:
                body = "-" + lpow
            else:
                body = "%d%s" % (c, lpow)
        if parts and not body.startswith("-"):
            parts.append(" + " + body)
        elif parts:
            parts.append(" - " + body[1:])
        else:
            parts.append(body)
    return "".join(parts) or "0"
