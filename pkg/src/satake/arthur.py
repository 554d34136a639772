"""Enumeration of formal parameters and their weight-budget bounds.

A parameter is a multiset of blocks (constituent, d), exactly one of
odd standard dimension times d, whose infinitesimal-character entries
tile {±tau_1, ..., ±tau_g, 0} without repetition for tau = lambda + rho.
Enumeration covers the positive slot set {tau_1, ..., tau_g} plus the
slot 0, branching on whichever block covers the largest uncovered value;
the 0 slot is owned by the unique odd block, which enforces the parity
condition for free.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .catalog import Block, Catalog, trivial_block
from .errors import CatalogExhausted


@lru_cache(maxsize=None)
def default_catalog(bound: int = 23) -> Catalog:
    return Catalog(bound)


def tau_of(g: int, lam) -> tuple:
    lam = tuple(lam)
    assert len(lam) == g
    return tuple(l + (g - i) for i, l in enumerate(lam))


def lam_of_slots(slots) -> tuple:
    """Recover (g, lambda) from a set of distinct positive slots."""
    tau = sorted(slots, reverse=True)
    g = len(tau)
    lam = tuple(t - (g - i) for i, t in enumerate(tau))
    if any(l < 0 for l in lam):
        raise ValueError("slot set %r is not of the form lambda + rho" % (slots,))
    return g, lam


def _block_sort_key(block: Block):
    trivialness = 1 if block.constituent.kind == "trivial" else 0
    top = block.slots[0] if block.slots else 0
    return (trivialness, -top, block.constituent.name, block.d)


@dataclass(frozen=True)
class ArthurParam:
    """A formal parameter; blocks[0] is the unique odd block."""

    blocks: tuple
    g: int
    lam: tuple

    def __post_init__(self):
        assert sum(1 for b in self.blocks if b.is_odd) == 1
        assert self.blocks[0].is_odd
        covered = [s for b in self.blocks for s in b.slots]
        assert sorted(covered, reverse=True) == list(tau_of(self.g, self.lam))

    @classmethod
    def from_blocks(cls, blocks) -> "ArthurParam":
        odd = [b for b in blocks if b.is_odd]
        even = sorted((b for b in blocks if not b.is_odd), key=_block_sort_key)
        if len(odd) != 1:
            raise ValueError("a parameter needs exactly one odd block")
        slots = [s for b in blocks for s in b.slots]
        if len(set(slots)) != len(slots):
            raise ValueError("overlapping block slots")
        g, lam = lam_of_slots(slots)
        return cls(tuple(odd + even), g, lam)

    @property
    def is_trivial(self) -> bool:
        return len(self.blocks) == 1 and self.blocks[0].constituent.kind == "trivial"

    @cached_property
    def k_values(self) -> tuple:
        return tuple(b.k_value for b in self.blocks)

    @property
    def k_total(self) -> Fraction:
        return sum(self.k_values, Fraction(0))

    def display_blocks(self) -> tuple:
        """Even blocks by decreasing top slot, odd block last (paper layout)."""
        return tuple(sorted(self.blocks[1:], key=_block_sort_key)) + (self.blocks[0],)

    def render(self) -> str:
        return " (+) ".join(str(b) for b in self.display_blocks())

    def sort_key(self):
        return tuple(_block_sort_key(b) for b in self.display_blocks())

    def __str__(self):
        return self.render()


def min_degree(psi: ArthurParam, g: int) -> int:
    """Low degree below which the parameter cannot contribute."""
    val = Fraction(g * (g + 1), 2) - sum(b.nd_correction for b in psi.blocks)
    assert val.denominator == 1
    return int(val)


def k_of(block: Block) -> Fraction:
    """Weight budget of a block (the sum of its positive slots, corrected)."""
    return block.k_value


def tau_cover(psi: ArthurParam, g: int, lam) -> dict:
    """J_i (1-indexed tau positions) and f_i (even positions) per even block."""
    tau = tau_of(g, tuple(lam))
    position = {t: i + 1 for i, t in enumerate(tau)}
    cover = {}
    for i, block in enumerate(psi.blocks):
        if i == 0:
            continue
        j = frozenset(position[s] for s in block.slots)
        cover[i] = (j, sum(1 for x in j if x % 2 == 0))
    return cover


def check_k_bounds(psi: ArthurParam) -> list:
    """Per-block verification of the lower bounds on the weight budget."""
    report = []
    for block in psi.blocks:
        r = block.n // 2
        wsum = sum((e.slot.as_fraction() for e in block.constituent.pos_exponents), Fraction(0))
        if block.d % 2:
            bound_w = wsum
            bound_r = Fraction(r * (r + 1), 2)
        else:
            bound_w = 2 * wsum - r
            bound_r = Fraction(2 * r * r)
        ok = block.k_value >= bound_w >= bound_r and block.k_value >= 0
        report.append(
            {
                "block": str(block),
                "k": block.k_value,
                "weight_bound": bound_w,
                "rank_bound": bound_r,
                "ok": ok,
            }
        )
    return report


# ---------------------------------------------------------------------------
# enumeration


def _cover(target: frozenset, candidates_by_top: dict, chosen, results):
    if not target:
        results.append(tuple(chosen))
        return
    top = max(target)
    for block in candidates_by_top.get(top, ()):
        slots = set(block.slots)
        if block.is_odd:
            slots.add(0)
        if slots <= target:
            chosen.append(block)
            _cover(target - frozenset(slots), candidates_by_top, chosen, results)
            chosen.pop()


def enumerate_parameters(g: int, lam, m_bound=None, catalog: Catalog | None = None):
    """All parameters for (g, lambda), optionally filtered by total budget.

    The returned list is in canonical order and includes the trivial
    parameter [2g+1] when lambda = 0.
    """
    lam = tuple(lam)
    if catalog is None:
        catalog = default_catalog(24 if (m_bound is not None and m_bound > 23) else 23)
    m_eff = catalog.bound if m_bound is None else m_bound
    if m_eff > catalog.bound:
        raise CatalogExhausted(
            "bound %d exceeds catalog bound %d" % (m_eff, catalog.bound)
        )
    tau = tau_of(g, lam)
    target = frozenset(tau) | {0}

    by_top = {}
    for block in catalog.blocks(m_eff):
        slots = block.slots
        if not set(slots) <= set(tau):
            continue
        by_top.setdefault(slots[0], []).append(block)
    # trivial blocks [2d+1]: cover {d, ..., 1, 0}; generated on demand
    for d in range(g + 1):
        block = trivial_block(d)
        top = block.slots[0] if block.slots else 0
        if set(block.slots) <= set(tau) or d == 0:
            by_top.setdefault(top, []).append(block)

    combos: list = []
    _cover(target, by_top, [], combos)
    params = []
    for blocks in combos:
        psi = ArthurParam.from_blocks(blocks)
        assert (psi.g, psi.lam) == (g, lam)
        if m_bound is not None and psi.k_total > m_bound:
            continue
        params.append(psi)
    params.sort(key=ArthurParam.sort_key)
    return params


def enumerate_all_nontrivial(m_bound: int, catalog: Catalog | None = None):
    """Every nontrivial parameter of total budget <= m_bound, over all (g, lambda).

    Assembles one odd block with a set of even blocks on disjoint slots.
    Trivial odd blocks [2d+1] range over every d below the smallest even
    slot; pure-trivial parameters are excluded (they exist for every g).
    """
    if catalog is None:
        catalog = default_catalog(min(m_bound, 24))
    if m_bound > catalog.bound:
        raise CatalogExhausted(
            "bound %d exceeds catalog bound %d" % (m_bound, catalog.bound)
        )
    blocks = catalog.blocks(m_bound)
    evens = sorted(
        (b for b in blocks if not b.is_odd), key=lambda b: str(b)
    )
    odds = [b for b in blocks if b.is_odd]

    even_sets: list = []

    def build(start, chosen, used, budget):
        even_sets.append((tuple(chosen), frozenset(used), budget))
        for i in range(start, len(evens)):
            b = evens[i]
            s = set(b.slots)
            nb = budget + b.k_value
            if nb <= m_bound and not (s & used):
                chosen.append(b)
                build(i + 1, chosen, used | s, nb)
                chosen.pop()

    build(0, [], set(), Fraction(0))

    params = []
    for chosen, used, budget in even_sets:
        # nontrivial odd blocks from the catalog
        for ob in odds:
            s = set(ob.slots)
            if budget + ob.k_value <= m_bound and not (s & used):
                params.append(ArthurParam.from_blocks(chosen + (ob,)))
        # trivial odd block [2d+1]; requires at least one even block
        if chosen:
            for d in range(min(used)):
                params.append(ArthurParam.from_blocks(chosen + (trivial_block(d),)))
    params.sort(key=lambda p: (p.g, p.lam, p.sort_key()))
    return params
