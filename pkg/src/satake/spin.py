"""Spin weight multisets, block signs, and assembled contributions.

The contribution of a parameter is the tensor product of the full spin
multiset of its odd block with one half-spin multiset per even block
(side selected by the sign u_i), globally twisted by
g(g+1)/4 + |lambda|/2, then recognized as a combination of catalog
motives and graded by purity.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import reduce

from .arthur import ArthurParam, tau_cover
from .catalog import Block, dim_cusp_forms, epsilon_half
from .errors import SideMismatch, Unrecognized
from .gkring import (
    EXP_ZERO,
    ExpVec,
    GKElem,
    GradedGK,
    HalfInt,
    MotiveSymbol,
    ONE,
    elliptic_symbol,
    lambda2_siegel_symbol,
    siegel_symbol,
    sym2_elliptic_symbol,
)


def std_exponents(block: Block) -> list:
    """All n*d standard exponents of the block (constituent + tate ladder)."""
    out = []
    half = HalfInt.half_of(block.d - 1)  # (d-1)/2
    for e in block.constituent.full_exponents():
        for k in range(block.d):
            out.append(e.shift_tate(half - k))
    return out


def positive_std_exponents(block: Block) -> list:
    """The floor(nd/2) standard exponents of positive slot, decreasing."""
    pos = [e for e in std_exponents(block) if e.weight > 0]
    pos.sort(key=lambda e: -e.weight.doubled)
    assert len(pos) == block.nd // 2
    return pos


@dataclass(frozen=True)
class SpinMultiset:
    elements: tuple
    side: str  # "full" | "plus" | "minus"


def spin_multiset(block: Block, side: str) -> SpinMultiset:
    """Half-sums of signed positive standard exponents.

    ``full`` (odd blocks) takes every sign pattern; ``plus`` keeps the
    patterns with an even number of minus signs (hence the all-plus
    element), ``minus`` the rest.
    """
    if side not in ("full", "plus", "minus"):
        raise SideMismatch("unknown side %r" % side)
    if (side == "full") != block.is_odd:
        raise SideMismatch("side %r for block %s" % (side, block))
    pos = positive_std_exponents(block)
    elems = []
    for signs in itertools.product((1, -1), repeat=len(pos)):
        if side == "plus" and signs.count(-1) % 2 == 1:
            continue
        if side == "minus" and signs.count(-1) % 2 == 0:
            continue
        total = EXP_ZERO
        for s, e in zip(signs, pos):
            total = total + (e if s == 1 else -e)
        elems.append(total.halved())
    want = 2 ** (block.nd // 2) if side == "full" else 2 ** (block.nd // 2 - 1)
    assert len(elems) == want
    return SpinMultiset(tuple(elems), side)


def u_sign(psi: ArthurParam, i: int, cover: dict) -> int:
    """The half-spin selector of even block i (i >= 1)."""
    if i < 1:
        raise ValueError("u is defined for even blocks only")
    _, f_i = cover[i]
    sign = -1 if f_i % 2 else 1
    bi = psi.blocks[i]
    for j, bj in enumerate(psi.blocks):
        if j == i or (bi.d + bj.d) % 2 == 0:
            continue
        if min(bi.d, bj.d) % 2 == 1:
            sign *= epsilon_half(bi.constituent, bj.constituent)
    return sign


# ---------------------------------------------------------------------------
# recognition


def _match_symbol(extreme: ExpVec) -> MotiveSymbol | None:
    """The catalog motive whose character peaks at the given letter monomial."""
    exps = extreme.exps
    if len(exps) == 1:
        letter, e2 = exps[0]
        if letter.kind == "ell":
            w = letter.data[0]
            if abs(e2) == 2:
                return elliptic_symbol(w, dim_cusp_forms(w + 1))
            if abs(e2) == 4 and dim_cusp_forms(w + 1) == 1:
                return sym2_elliptic_symbol(w)
        if letter.kind in ("sg1", "sg2") and abs(e2) == 4:
            return lambda2_siegel_symbol(*letter.data)
    if len(exps) == 2:
        (l1, e1), (l2, e2) = exps
        if (
            {l1.kind, l2.kind} == {"sg1", "sg2"}
            and l1.data == l2.data
            and abs(e1) == abs(e2) == 2
        ):
            return siegel_symbol(*l1.data)
    return None


def _extreme_key(e: ExpVec):
    return (tuple(sorted((abs(x) for _, x in e.exps), reverse=True)), e.weight.doubled)


def recognize(elements) -> GKElem:
    """Express a multiset of exponent vectors in catalog motives with twists.

    Elements are grouped by their tate exponent (the characters of atomic
    symbols are centered, so one twisted symbol occupies one group), then
    peeled from the extreme letter monomial inward.  Raises
    :class:`Unrecognized` with the unconsumed residue on failure.
    """
    groups: dict = {}
    for e in elements:
        groups.setdefault(e.tate2, Counter())[e.drop_tate()] += 1
    acc = GKElem.zero()
    for tate2 in sorted(groups):
        residual = groups[tate2]
        while residual:
            extreme = max(residual, key=_extreme_key)
            if extreme.is_tate:
                # pure tate leftovers: each element is one L^t
                t = HalfInt.half_of(tate2)
                assert t.is_integral and int(t) >= 0
                acc = acc + GKElem.tate(int(t), residual[extreme])
                del residual[extreme]
                continue
            sym = _match_symbol(extreme)
            if sym is None:
                raise Unrecognized(
                    "no catalog motive matches %s" % extreme,
                    _restore(residual, tate2),
                )
            need = Counter(sym.template)
            if any(residual[e] < c for e, c in need.items()):
                raise Unrecognized(
                    "incomplete character of %s in residue" % sym.name,
                    _restore(residual, tate2),
                )
            residual -= need
            twist2 = tate2 - sym.motivic_weight
            assert twist2 % 2 == 0 and twist2 >= 0
            acc = acc + GKElem.of(sym, twist2 // 2)
    return acc


def _restore(residual: Counter, tate2: int) -> list:
    out = []
    for e, c in residual.items():
        out.extend([e.shift_tate(HalfInt.half_of(tate2))] * c)
    return out


# ---------------------------------------------------------------------------
# assembled contributions


def _tensor(multisets) -> list:
    return [reduce(lambda a, b: a + b, combo) for combo in itertools.product(*multisets)]


def contribution(psi: ArthurParam, g: int, lam) -> GradedGK:
    """The graded Grothendieck-ring contribution of one parameter."""
    lam = tuple(lam)
    cover = tau_cover(psi, g, lam)
    multisets = [spin_multiset(psi.blocks[0], "full").elements]
    for i in range(1, len(psi.blocks)):
        side = "plus" if u_sign(psi, i, cover) == 1 else "minus"
        multisets.append(spin_multiset(psi.blocks[i], side).elements)
    twist = HalfInt.half_of(g * (g + 1) // 2 + sum(lam))  # g(g+1)/4 + |lam|/2
    elements = [e.shift_tate(twist) for e in _tensor(multisets)]

    # effectivity: final weights are non-negative integers
    for e in elements:
        assert e.weight.is_integral and e.weight >= 0, "non-effective element %s" % e

    # letters absent from the final support contribute their family size
    support = frozenset().union(*(e.letters() for e in elements))
    factor = 1
    seen = set()
    for block in psi.blocks:
        for letters, mult in block.constituent.letter_families:
            if letters in seen:
                continue
            seen.add(letters)
            if not (letters & support):
                factor *= mult

    by_degree: dict = {}
    groups: dict = {}
    for e in elements:
        groups.setdefault(e.tate2, []).append(e)
    size = sum(len(v) for v in groups.values())
    assert size == len(elements)
    for tate2, group in groups.items():
        degree = tate2 - sum(lam)
        assert degree >= 0, "negative degree for %s" % psi
        elem = recognize(group).scale(factor)
        by_degree[degree] = by_degree.get(degree, GKElem.zero()) + elem
    return GradedGK(by_degree)
