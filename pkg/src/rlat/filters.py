"""Filters, generated filters, and the full filter lattice.

A filter is a nonempty subset that is closed under the monoid product and
upward closed.  Filters are passed around as bitmasks over the carrier;
the lattice of all filters is materialized as a canonically ordered tuple.
"""

from dataclasses import dataclass

from .algebra import Algebra
from .bitsets import bits, is_subset, sort_key
from .errors import CapExceeded

DEFAULT_FILTER_CAP = 1_000_000


def unit_filter(alg: Algebra) -> int:
    """The least filter {top}."""
    return 1 << alg.top


def is_filter(alg: Algebra, mask: int) -> bool:
    """Nonempty, product-closed, and upward closed."""
    if mask == 0:
        return False
    elems = list(bits(mask))
    for x in elems:
        if alg.up_mask(x) & ~mask:
            return False
        for y in elems:
            if not mask >> alg.prod[x][y] & 1:
                return False
    return True


def generated_filter(alg: Algebra, mask: int) -> int:
    """Least filter containing the given set; the empty set generates {top}.

    Fixpoint of product-saturation followed by upward closure; on a finite
    carrier this stabilizes within n rounds.
    """
    cur = mask | (1 << alg.top)
    while True:
        nxt = cur
        elems = list(bits(cur))
        for x in elems:
            for y in elems:
                nxt |= 1 << alg.prod[x][y]
        for x in list(bits(nxt)):
            nxt |= alg.up_mask(x)
        if nxt == cur:
            return cur
        cur = nxt


def principal_filter(alg: Algebra, x: int) -> int:
    """Filter generated by a single element: all a with x^n <= a for some n."""
    return generated_filter(alg, 1 << x)


def filter_meet(alg: Algebra, f: int, g: int) -> int:
    return f & g


def filter_join(alg: Algebra, f: int, g: int) -> int:
    return generated_filter(alg, f | g)


@dataclass(frozen=True)
class FilterLattice:
    """All filters of an algebra, canonically ordered (size, then mask)."""

    algebra: Algebra
    filters: tuple[int, ...]

    def __iter__(self):
        return iter(self.filters)

    def __len__(self):
        return len(self.filters)

    def __contains__(self, mask: int) -> bool:
        return mask in self.filters

    def index(self, mask: int) -> int:
        return self.filters.index(mask)

    def proper(self) -> tuple[int, ...]:
        full = self.algebra.carrier_mask
        return tuple(f for f in self.filters if f != full)


def all_filters(alg: Algebra, cap: int = DEFAULT_FILTER_CAP) -> FilterLattice:
    """Enumerate every filter by closing generated extensions.

    Starting from {top}, repeatedly adjoin one missing element and close;
    every filter is reachable this way.  Raises CapExceeded when the count
    passes the configured bound.
    """
    seed = unit_filter(alg)
    seen = {seed}
    queue = [seed]
    while queue:
        f = queue.pop()
        for x in range(alg.size):
            if f >> x & 1:
                continue
            g = generated_filter(alg, f | (1 << x))
            if g not in seen:
                if len(seen) >= cap:
                    raise CapExceeded(f"more than {cap} filters")
                seen.add(g)
                queue.append(g)
    ordered = tuple(sorted(seen, key=sort_key))
    return FilterLattice(algebra=alg, filters=ordered)


def upward_closure(alg: Algebra, mask: int) -> int:
    out = mask
    for x in list(bits(mask)):
        out |= alg.up_mask(x)
    return out


def finite_generating_subset(alg: Algebra, mask: int) -> int:
    """A minimal subset of the given set generating the same filter.

    Used to witness that a set generating the whole carrier already has a
    finite (here: irredundant) generating subset.
    """
    target = generated_filter(alg, mask)
    cur = mask
    for x in list(bits(mask)):
        trial = cur & ~(1 << x)
        if generated_filter(alg, trial) == target:
            cur = trial
    return cur
