"""Prime, maximal, and minimal prime filters, and the order machinery
(coannihilators, divisor sets, join-closed separation) that drives the
separation theorems for the hull-kernel topologies.
"""

from dataclasses import dataclass
from functools import lru_cache

from .algebra import Algebra
from .bitsets import bits, is_subset, sort_key
from .errors import (
    BaseNotContained,
    InternalInconsistency,
    MultipleMaximal,
    NotPrime,
    NotProper,
    Overlap,
)
from .filters import all_filters, generated_filter, is_filter, unit_filter


@dataclass(frozen=True)
class PrimeCollection:
    """A canonically ordered, duplicate-free family of prime filters."""

    algebra: Algebra
    members: tuple[int, ...]
    kind: str  # spec | max | min | minover | custom
    base: int | None = None  # generating set for kind == "minover"

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def index(self, mask: int) -> int:
        return self.members.index(mask)

    def intersection(self) -> int:
        """Kernel of the whole collection; the full carrier when empty."""
        out = self.algebra.carrier_mask
        for m in self.members:
            out &= m
        return out

    def is_full(self) -> bool:
        """Every proper filter is contained in some member."""
        full = self.algebra.carrier_mask
        for f in all_filters(self.algebra):
            if f == full:
                continue
            if not any(is_subset(f, p) for p in self.members):
                return False
        return True


def _collection(alg: Algebra, masks, kind: str, base: int | None = None) -> PrimeCollection:
    ordered = tuple(sorted(set(masks), key=sort_key))
    return PrimeCollection(algebra=alg, members=ordered, kind=kind, base=base)


def is_vee_closed(alg: Algebra, mask: int) -> bool:
    """Nonempty and closed under join."""
    if mask == 0:
        return False
    elems = list(bits(mask))
    return all(mask >> alg.join[x][y] & 1 for x in elems for y in elems)


def is_prime(alg: Algebra, f: int) -> bool:
    """Proper filter whose membership is prime for joins.

    Computed from the join condition and cross-checked against the
    complement being join-closed; the two are equivalent by definition.
    """
    if f == alg.carrier_mask:
        raise NotProper("the full carrier is not a prime filter")
    n = alg.size
    direct = all(
        not (f >> alg.join[x][y] & 1) or (f >> x & 1) or (f >> y & 1)
        for x in range(n) for y in range(n)
    )
    complement = alg.carrier_mask & ~f
    via_complement = is_vee_closed(alg, complement)
    if direct != via_complement:
        raise InternalInconsistency("prime test disagrees with its complement form")
    return direct


@lru_cache(maxsize=2048)
def spec(alg: Algebra) -> PrimeCollection:
    """All prime filters."""
    full = alg.carrier_mask
    primes = [f for f in all_filters(alg) if f != full and is_prime(alg, f)]
    return _collection(alg, primes, "spec")


@lru_cache(maxsize=2048)
def max_filters(alg: Algebra) -> PrimeCollection:
    """Maximal proper filters; each one is prime (asserted)."""
    proper = all_filters(alg).proper()
    maxima = [f for f in proper
              if not any(g != f and is_subset(f, g) for g in proper)]
    for m in maxima:
        if not is_prime(alg, m):
            raise InternalInconsistency("a maximal filter failed the prime test")
    return _collection(alg, maxima, "max")


@lru_cache(maxsize=2048)
def min_primes(alg: Algebra) -> PrimeCollection:
    """Minimal prime filters (minimal over the unit filter)."""
    members = min_primes_over(alg, unit_filter(alg)).members
    return _collection(alg, members, "min")


def min_primes_over(alg: Algebra, xmask: int) -> PrimeCollection:
    """Minimal elements of the primes containing the given set.

    Empty when the set generates the whole carrier.  Each member's
    complement is verified to be a maximal join-closed set avoiding the
    generated filter (the minimal-prime characterization).
    """
    over = [p for p in spec(alg) if is_subset(xmask, p)]
    minimal = [p for p in over
               if not any(q != p and is_subset(q, p) for q in over)]
    base = generated_filter(alg, xmask)
    for p in minimal:
        _assert_maximal_vee_closed_complement(alg, p, base)
    return _collection(alg, minimal, "minover", base=xmask)


def _assert_maximal_vee_closed_complement(alg: Algebra, p: int, base: int):
    comp = alg.carrier_mask & ~p
    if not is_vee_closed(alg, comp) or comp & base:
        raise InternalInconsistency("minimal prime complement is not join-closed "
                                    "away from the base filter")
    # maximality: adjoining any outside element makes the closure meet the base
    for x in bits(p):
        grown = _vee_closure(alg, comp | (1 << x))
        if not grown & base:
            raise InternalInconsistency(
                "minimal prime complement is not maximal join-closed")


def _vee_closure(alg: Algebra, mask: int) -> int:
    cur = mask
    while True:
        nxt = cur
        elems = list(bits(cur))
        for x in elems:
            for y in elems:
                nxt |= 1 << alg.join[x][y]
        if nxt == cur:
            return cur
        cur = nxt


def prime_avoiding(alg: Algebra, f: int, c: int) -> int:
    """A prime filter containing f, disjoint from the join-closed set c,
    and maximal among the filters avoiding c.

    When several maximal avoiders exist the canonically least is returned.
    """
    if f & c:
        raise Overlap("filter and join-closed set intersect")
    if not is_vee_closed(alg, c):
        raise ValueError("avoided set must be nonempty and join-closed")
    avoiders = [g for g in all_filters(alg) if is_subset(f, g) and not g & c]
    maximal = [g for g in avoiders
               if not any(h != g and is_subset(g, h) for h in avoiders)]
    winner = min(maximal, key=sort_key)
    if not is_prime(alg, winner):
        raise InternalInconsistency("maximal filter avoiding a join-closed set "
                                    "must be prime")
    return winner


def coannihilator(alg: Algebra, f: int, xmask: int) -> int:
    """(f : X) = {a : x v a in f for every x in X}; the carrier when X is empty."""
    out = 0
    for a in range(alg.size):
        if all(f >> alg.join[x][a] & 1 for x in bits(xmask)):
            out |= 1 << a
    return out


def perp(alg: Algebra, xmask: int) -> int:
    """Coannihilator relative to the unit filter {top}."""
    return coannihilator(alg, unit_filter(alg), xmask)


@dataclass(frozen=True)
class CoannihilatorTable:
    """Per-element coannihilators (f : x) for a fixed base filter."""

    algebra: Algebra
    base: int
    per_element: tuple[int, ...]

    def __getitem__(self, x: int) -> int:
        return self.per_element[x]


def coannihilator_table(alg: Algebra, f: int) -> CoannihilatorTable:
    per = []
    for x in range(alg.size):
        cx = coannihilator(alg, f, 1 << x)
        if not is_filter(alg, cx) or not is_subset(f, cx):
            raise InternalInconsistency("(f:x) must be a filter containing f")
        per.append(cx)
    return CoannihilatorTable(algebra=alg, base=f, per_element=tuple(per))


def d_set(alg: Algebra, f: int, p: int) -> int:
    """D_f(p) = {a : (f:a) not contained in p} for a prime p.

    Checked against the equivalent union form U_{x not in p} (f:x).
    """
    if not is_prime(alg, p):
        raise NotPrime("d_set needs a prime filter")
    out = 0
    for a in range(alg.size):
        if not is_subset(coannihilator(alg, f, 1 << a), p):
            out |= 1 << a
    union = 0
    for x in bits(alg.carrier_mask & ~p):
        union |= coannihilator(alg, f, 1 << x)
    if out != union:
        raise InternalInconsistency("divisor set disagrees with its union form")
    return out


@dataclass(frozen=True)
class FClosedReport:
    holds: bool
    witnesses: dict  # (i, j) member-index pair -> (a1, a2) element witness
    failing_pair: tuple[int, int] | None


def f_closed(pi: PrimeCollection, f: int) -> FClosedReport:
    """Pairwise separation into f: distinct members P1, P2 admit a1 not in
    P1 and a2 not in P2 whose join lands in f.

    Witnesses are recorded for every unordered pair; the first failing pair
    stops the scan.  Raises BaseNotContained unless f sits inside the
    kernel of the collection.
    """
    alg = pi.algebra
    if not is_subset(f, pi.intersection()):
        raise BaseNotContained("base filter must lie inside every member")
    witnesses: dict[tuple[int, int], tuple[int, int]] = {}
    for i, p1 in enumerate(pi.members):
        for j in range(i + 1, len(pi.members)):
            p2 = pi.members[j]
            found = None
            for a1 in bits(alg.carrier_mask & ~p1):
                for a2 in bits(alg.carrier_mask & ~p2):
                    if f >> alg.join[a1][a2] & 1:
                        found = (a1, a2)
                        break
                if found:
                    break
            if found is None:
                return FClosedReport(False, witnesses, (i, j))
            witnesses[(i, j)] = found
    return FClosedReport(True, witnesses, None)


def is_f_closed(pi: PrimeCollection, f: int) -> bool:
    return f_closed(pi, f).holds


def is_antichain(pi: PrimeCollection) -> bool:
    """No member contains another."""
    ms = pi.members
    return not any(
        i != j and is_subset(ms[i], ms[j]) for i in range(len(ms)) for j in range(len(ms))
    )


def s_pi(pi: PrimeCollection) -> PrimeCollection:
    """Primes squeezed between the kernel of the collection and a member."""
    alg = pi.algebra
    inter = pi.intersection()
    members = [q for q in spec(alg)
               if is_subset(inter, q) and any(is_subset(q, p) for p in pi.members)]
    return _collection(alg, members, "custom")


def check_minimality(alg: Algebra, f: int, p: int) -> bool:
    """Three equivalent minimality criteria for a prime p over a filter f.

    (1) p is minimal among primes containing f; (2) p equals its divisor
    set D_f(p); (3) for every x exactly one of x in p, (f:x) <= p holds.
    All three are computed; disagreement raises InternalInconsistency.
    """
    if not is_prime(alg, p):
        raise NotPrime("check_minimality needs a prime filter")
    if not is_subset(f, p):
        raise BaseNotContained("the prime must contain the base filter")
    c1 = p in min_primes_over(alg, f).members
    c2 = p == d_set(alg, f, p)
    c3 = all(
        (p >> x & 1) != is_subset(coannihilator(alg, f, 1 << x), p)
        for x in range(alg.size)
    )
    if not (c1 == c2 == c3):
        raise InternalInconsistency(
            f"minimality criteria disagree: minimal={c1} divisor={c2} exactly_one={c3}")
    return c1


def unique_maximal_over(alg: Algebra, p: int) -> int:
    """The unique maximal filter containing p, or MultipleMaximal."""
    if p == alg.carrier_mask:
        raise NotProper("need a proper filter")
    above = [m for m in max_filters(alg) if is_subset(p, m)]
    if len(above) != 1:
        raise MultipleMaximal(above)
    return above[0]


def has_unique_maximal_property(alg: Algebra) -> bool:
    """Every prime filter lies below exactly one maximal filter."""
    for p in spec(alg):
        if sum(1 for m in max_filters(alg) if is_subset(p, m)) != 1:
            return False
    return True
