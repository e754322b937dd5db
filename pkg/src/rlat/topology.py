"""Hull/kernel operators over a prime filter collection and the two finite
topologies they induce.

The hull of a subset X of the carrier is the set of collection members
containing X; the kernel of a family of members is its intersection.  The
hull-kernel topology has basic opens d(x) = {P : x not in P}; the dual
topology is generated by the basic sets h(x) = {P : x in P}.  Both are
materialized as explicit open-set families: ground sets are tiny, and
explicit families make every separation predicate a direct computation.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from .algebra import Algebra
from .bitsets import bits, is_subset, mask_of, sort_key
from .errors import CapExceeded, InternalInconsistency, NotPm, NotPrimeCollection
from .filters import all_filters, generated_filter, unit_filter
from .sampling import sample_subsets
from .spectrum import (
    PrimeCollection,
    coannihilator,
    f_closed,
    is_antichain,
    is_prime,
    max_filters,
    min_primes,
    perp,
    spec,
)

RETRACTION_SEARCH_CAP = 1_000_000


# -- hull and kernel --------------------------------------------------------


def hull(pi: PrimeCollection, xmask: int) -> int:
    """Ground mask of members containing the given carrier subset."""
    out = 0
    for i, p in enumerate(pi.members):
        if is_subset(xmask, p):
            out |= 1 << i
    return out


def kernel(pi: PrimeCollection, gmask: int) -> int:
    """Intersection of the selected members; the full carrier when empty."""
    out = pi.algebra.carrier_mask
    for i in bits(gmask):
        out &= pi.members[i]
    return out


def d_open(pi: PrimeCollection, xmask: int) -> int:
    """Ground mask of members NOT containing the subset."""
    return ((1 << len(pi.members)) - 1) & ~hull(pi, xmask)


# -- finite topologies -------------------------------------------------------


@dataclass(frozen=True)
class BasisSet:
    members: int  # ground mask
    tag: str  # "d" or "h"
    element: int  # generating carrier element


@dataclass(frozen=True)
class FiniteTopology:
    ground_size: int
    opens: tuple[int, ...]  # ground masks, sorted by (size, mask)
    basis: tuple[BasisSet, ...]

    @property
    def ground_mask(self) -> int:
        return (1 << self.ground_size) - 1

    def is_open(self, gmask: int) -> bool:
        return gmask in self.opens

    def closed_sets(self) -> tuple[int, ...]:
        g = self.ground_mask
        return tuple(sorted((g & ~u for u in self.opens), key=sort_key))

    def is_closed(self, gmask: int) -> bool:
        return (self.ground_mask & ~gmask) in self.opens

    def closure_of(self, gmask: int) -> int:
        out = self.ground_mask
        for c in self.closed_sets():
            if is_subset(gmask, c):
                out &= c
        return out

    def clopens(self) -> tuple[int, ...]:
        return tuple(u for u in self.opens if self.is_closed(u))


def _unions_of(basis_masks, ground_size: int) -> tuple[int, ...]:
    distinct = sorted(set(basis_masks))
    opens = {0}
    for k in range(1, len(distinct) + 1):
        for combo in combinations(distinct, k):
            u = 0
            for m in combo:
                u |= m
            opens.add(u)
    return tuple(sorted(opens, key=sort_key))


def _check_collection(pi: PrimeCollection):
    alg = pi.algebra
    for p in pi.members:
        if p == alg.carrier_mask or not is_prime(alg, p):
            raise NotPrimeCollection(f"member {alg.set_names(p)} is not prime")


def _check_intersection_stable(topo: FiniteTopology):
    # unions of the basis must already be closed under pairwise intersection
    opens = set(topo.opens)
    for u in topo.opens:
        for v in topo.opens:
            if u & v not in opens:
                raise InternalInconsistency("open family not intersection-closed")


def hk_topology(pi: PrimeCollection) -> FiniteTopology:
    """The hull-kernel topology: opens are unions of the d(x).

    Closed sets are verified to be exactly the hulls of carrier subsets
    (equivalently, hulls of filters).
    """
    _check_collection(pi)
    basis = tuple(BasisSet(d_open(pi, 1 << x), "d", x) for x in range(pi.algebra.size))
    topo = FiniteTopology(
        ground_size=len(pi.members),
        opens=_unions_of([b.members for b in basis], len(pi.members)),
        basis=basis,
    )
    _check_intersection_stable(topo)
    hulls = {hull(pi, f) for f in all_filters(pi.algebra)}
    hulls.add(hull(pi, pi.algebra.carrier_mask))
    if set(topo.closed_sets()) != hulls:
        raise InternalInconsistency("closed sets differ from the hull family")
    return topo


def dual_topology(pi: PrimeCollection) -> FiniteTopology:
    """The dual topology, generated by the basic sets h(x)."""
    _check_collection(pi)
    basis = tuple(BasisSet(hull(pi, 1 << x), "h", x) for x in range(pi.algebra.size))
    topo = FiniteTopology(
        ground_size=len(pi.members),
        opens=_unions_of([b.members for b in basis], len(pi.members)),
        basis=basis,
    )
    _check_intersection_stable(topo)
    return topo


@dataclass(frozen=True)
class HullKernelSpace:
    collection: PrimeCollection
    hk: FiniteTopology
    dual: FiniteTopology

    def topology(self, dual: bool = False) -> FiniteTopology:
        return self.dual if dual else self.hk


@lru_cache(maxsize=2048)
def build_space(pi: PrimeCollection) -> HullKernelSpace:
    return HullKernelSpace(collection=pi, hk=hk_topology(pi), dual=dual_topology(pi))


def closure(space: HullKernelSpace, gmask: int) -> int:
    """hk-closure of a set of members, checked against the topological one."""
    pi = space.collection
    via_ops = hull(pi, kernel(pi, gmask))
    via_topo = space.hk.closure_of(gmask)
    if via_ops != via_topo:
        raise InternalInconsistency("hull-of-kernel differs from topological closure")
    return via_ops


# -- identity batteries ------------------------------------------------------


@dataclass(frozen=True)
class IdentityResult:
    check: str
    ok: bool
    witness: str | None = None


def _family_subsets(count: int, seed_masks=None) -> list[int]:
    if count <= 12:
        return list(range(1 << count))
    # huge grounds are out of scope; keep a deterministic slice
    return sorted({0, (1 << count) - 1, *(seed_masks or ())})


def check_galois(pi: PrimeCollection, sample: tuple[int, ...] | None = None) -> list[IdentityResult]:
    """Exhaustive hull/kernel adjunction battery over a sample family of
    carrier subsets and every subfamily of the collection."""
    alg = pi.algebra
    if sample is None:
        sample = sample_subsets(alg)
    fams = _family_subsets(len(pi.members))
    results = []

    def run(check, pred, witness=""):
        results.append(IdentityResult(check, pred, None if pred else witness))

    ok = True
    w = None
    for x in sample:
        kx = hull(pi, x)
        for fam in fams:
            if (is_subset(x, kernel(pi, fam))) != (is_subset(fam, kx)):
                ok, w = False, f"X={alg.set_names(x)} fam={fam:#x}"
                break
        if not ok:
            break
    run("galois.adjunction", ok, w)

    ok, w = True, None
    for x in sample:
        for y in sample:
            if is_subset(x, y) and not is_subset(hull(pi, y), hull(pi, x)):
                ok, w = False, f"X={alg.set_names(x)} Y={alg.set_names(y)}"
    run("galois.hull_antitone", ok, w)

    ok, w = True, None
    for f1 in fams:
        for f2 in fams:
            if is_subset(f1, f2) and not is_subset(kernel(pi, f2), kernel(pi, f1)):
                ok, w = False, f"fams {f1:#x} {f2:#x}"
    run("galois.kernel_antitone", ok, w)

    run("galois.hkh", all(hull(pi, kernel(pi, hull(pi, x))) == hull(pi, x) for x in sample))
    run("galois.khk", all(kernel(pi, hull(pi, kernel(pi, f))) == kernel(pi, f) for f in fams))
    run("galois.hk_extensive", all(is_subset(f, hull(pi, kernel(pi, f))) for f in fams))
    run("galois.hk_monotone", all(
        not is_subset(f1, f2) or is_subset(hull(pi, kernel(pi, f1)), hull(pi, kernel(pi, f2)))
        for f1 in fams for f2 in fams))
    run("galois.hk_idempotent", all(
        hull(pi, kernel(pi, hull(pi, kernel(pi, f)))) == hull(pi, kernel(pi, f))
        for f in fams))
    run("galois.hull_of_union", all(
        hull(pi, x | y) == hull(pi, x) & hull(pi, y)
        for x in sample for y in sample))
    return results


def dh_identities(pi: PrimeCollection) -> list[IdentityResult]:
    """Element-level algebra of the basic open and closed sets."""
    alg = pi.algebra
    n = alg.size
    res = []

    def run(check, pred, witness=None):
        res.append(IdentityResult(check, pred, witness))

    run("basic.d_meet", all(
        d_open(pi, 1 << x) & d_open(pi, 1 << y) == d_open(pi, 1 << alg.join[x][y])
        for x in range(n) for y in range(n)))
    run("basic.d_join", all(
        d_open(pi, 1 << x) | d_open(pi, 1 << y) == d_open(pi, 1 << alg.prod[x][y])
        for x in range(n) for y in range(n)))
    run("basic.h_meet", all(
        hull(pi, 1 << x) & hull(pi, 1 << y) == hull(pi, 1 << alg.prod[x][y])
        for x in range(n) for y in range(n)))
    run("basic.h_join", all(
        hull(pi, 1 << x) | hull(pi, 1 << y) == hull(pi, 1 << alg.join[x][y])
        for x in range(n) for y in range(n)))
    run("basic.h_in_d_neg", all(
        is_subset(hull(pi, 1 << x), d_open(pi, 1 << alg.neg(x))) for x in range(n)))
    return res


# -- separation, compactness, connectedness ----------------------------------


@dataclass(frozen=True)
class SeparationRecord:
    t0: bool
    t1: bool
    hausdorff: bool
    normal: bool
    t4: bool


def _t0(topo: FiniteTopology) -> bool:
    for p in range(topo.ground_size):
        for q in range(p + 1, topo.ground_size):
            if not any((u >> p & 1) != (u >> q & 1) for u in topo.opens):
                return False
    return True


def _t1(topo: FiniteTopology) -> bool:
    for p in range(topo.ground_size):
        for q in range(topo.ground_size):
            if p == q:
                continue
            if not any(u >> p & 1 and not u >> q & 1 for u in topo.opens):
                return False
    return True


def _hausdorff(topo: FiniteTopology) -> bool:
    for p in range(topo.ground_size):
        for q in range(p + 1, topo.ground_size):
            if not any(
                u >> p & 1 and v >> q & 1 and u & v == 0
                for u in topo.opens for v in topo.opens
            ):
                return False
    return True


def _normal(topo: FiniteTopology) -> bool:
    closed = topo.closed_sets()
    for c1 in closed:
        for c2 in closed:
            if c1 & c2:
                continue
            if not any(
                is_subset(c1, u) and is_subset(c2, v) and u & v == 0
                for u in topo.opens for v in topo.opens
            ):
                return False
    return True


def separation(space: HullKernelSpace, dual: bool = False) -> SeparationRecord:
    """Separation axioms decided directly on the open family.

    Cross-checked against the collection-level characterizations: T0 always
    holds, T1 iff the collection is an antichain, Hausdorff iff the
    collection separates into its own kernel.  A mismatch is a theorem
    violation and raises InternalInconsistency.
    """
    pi = space.collection
    topo = space.topology(dual)
    t0 = _t0(topo)
    t1 = _t1(topo)
    h2 = _hausdorff(topo)
    nrm = _normal(topo)

    if not t0:
        raise InternalInconsistency("a prime collection must be T0")
    if t1 != is_antichain(pi):
        raise InternalInconsistency("T1 must coincide with the antichain test")
    if h2 != f_closed(pi, pi.intersection()).holds:
        raise InternalInconsistency(
            "Hausdorff must coincide with kernel-separation of the collection")
    return SeparationRecord(t0=t0, t1=t1, hausdorff=h2, normal=nrm, t4=t1 and nrm)


@dataclass(frozen=True)
class CompactnessRecord:
    compact_h: bool
    compact_d: bool
    full: bool  # every proper filter lies below a member


def reduce_cover(topo: FiniteTopology, cover: list[int]) -> list[int]:
    """Smallest subcover of a covering family, ties broken lexicographically.

    The input must cover the ground set; on a finite ground this always
    succeeds, which is exactly what the compactness flags certify.
    """
    target = topo.ground_mask
    union = 0
    for m in cover:
        union |= m
    if union != target:
        raise ValueError("input family is not a cover")
    for k in range(len(cover) + 1):
        for combo in combinations(range(len(cover)), k):
            u = 0
            for i in combo:
                u |= cover[i]
            if u == target:
                return [cover[i] for i in combo]
    raise InternalInconsistency("a finite cover failed to reduce")  # pragma: no cover


def _every_basis_cover_reduces(topo: FiniteTopology) -> bool:
    distinct = sorted({b.members for b in topo.basis})
    ground = topo.ground_mask
    if ground == 0:
        return True
    for k in range(1, len(distinct) + 1):
        for combo in combinations(distinct, k):
            u = 0
            for m in combo:
                u |= m
            if u == ground:
                reduce_cover(topo, list(combo))
    return True


def compactness(space: HullKernelSpace) -> CompactnessRecord:
    """Finite spaces are compact; the value is in exercising the cover
    reduction machinery and recording the fullness of the collection."""
    return CompactnessRecord(
        compact_h=_every_basis_cover_reduces(space.hk),
        compact_d=_every_basis_cover_reduces(space.dual),
        full=space.collection.is_full(),
    )


@dataclass(frozen=True)
class ConnectednessRecord:
    zero_dimensional: bool
    totally_disconnected: bool
    extremally_disconnected: bool
    stonean: bool


def connectedness(space: HullKernelSpace, dual: bool = False) -> ConnectednessRecord:
    topo = space.topology(dual)
    clopen = topo.clopens()

    zero_dim = all(
        mask_of(()) | _union((k for k in clopen if is_subset(k, u))) == u
        for u in topo.opens
    )
    totally = all(
        any(k >> p & 1 and not k >> q & 1 for k in clopen)
        for p in range(topo.ground_size)
        for q in range(topo.ground_size)
        if p != q
    )
    extremally = all(topo.is_open(topo.closure_of(u)) for u in topo.opens)
    compact = _every_basis_cover_reduces(topo)
    hausdorff = _hausdorff(topo)
    return ConnectednessRecord(
        zero_dimensional=zero_dim,
        totally_disconnected=totally,
        extremally_disconnected=extremally,
        stonean=extremally and compact and hausdorff,
    )


def _union(masks) -> int:
    out = 0
    for m in masks:
        out |= m
    return out


# -- retractions --------------------------------------------------------------


def _continuous(f: list[int], dom: FiniteTopology, cod: FiniteTopology) -> bool:
    for u in cod.opens:
        pre = mask_of(i for i, fi in enumerate(f) if u >> fi & 1)
        if pre not in dom.opens:
            return False
    return True


def retraction_spec_to_max(alg: Algebra) -> dict[int, int]:
    """The retraction sending each prime to its unique maximal over-filter.

    Raises NotPm with a witness prime when some prime lies below several
    maximal filters.  The returned map is verified continuous for the
    hull-kernel topologies and the identity on the maximal members.
    """
    sp = spec(alg)
    mx = max_filters(alg)
    f = []
    for p in sp.members:
        above = [m for m in mx.members if is_subset(p, m)]
        if len(above) != 1:
            raise NotPm(p)
        f.append(mx.index(above[0]))
    for m in mx.members:
        if mx.members[f[sp.index(m)]] != m:
            raise InternalInconsistency("retraction must fix maximal filters")
    if not _continuous(f, build_space(sp).hk, build_space(mx).hk):
        raise InternalInconsistency("unique-maximal retraction must be continuous")
    return {p: mx.members[f[i]] for i, p in enumerate(sp.members)}


def find_retraction(sup: PrimeCollection, pi: PrimeCollection, dual: bool = False) -> list[int] | None:
    """Brute-force search for a continuous map from sup onto pi fixing pi.

    Returns the first retraction in deterministic order, or None.  The
    members of pi must all appear in sup.
    """
    dom = build_space(sup).topology(dual)
    cod = build_space(pi).topology(dual)
    fixed: dict[int, int] = {}
    free: list[int] = []
    for i, q in enumerate(sup.members):
        if q in pi.members:
            fixed[i] = pi.index(q)
        else:
            free.append(i)
    if len(pi) == 0:
        return None if len(sup) else []
    if len(pi) ** len(free) > RETRACTION_SEARCH_CAP:
        raise CapExceeded("retraction search space too large")
    for choice in product(range(len(pi)), repeat=len(free)):
        f = [0] * len(sup.members)
        for i, j in fixed.items():
            f[i] = j
        for i, j in zip(free, choice):
            f[i] = j
        if _continuous(f, dom, cod):
            return f
    return None


# -- the minimal prime space ---------------------------------------------------


def min_space_identities(alg: Algebra, sample: tuple[int, ...] | None = None) -> list[IdentityResult]:
    """Identity battery for the space of minimal prime filters.

    All hulls and kernels below refer to the minimal prime collection.
    """
    pi = min_primes(alg)
    space = build_space(pi)
    if sample is None:
        sample = sample_subsets(alg)
    n = alg.size
    res = []

    def run(check, pred, witness=None):
        res.append(IdentityResult(check, pred, witness))

    run("minspace.kd_is_perp", all(
        kernel(pi, d_open(pi, x)) == perp(alg, x)
        and kernel(pi, d_open(pi, x)) == coannihilator(alg, pi.intersection(), x)
        for x in sample))
    run("minspace.h_meets_h_perp_empty", all(
        hull(pi, 1 << x) & hull(pi, perp(alg, 1 << x)) == 0 for x in range(n)))
    run("minspace.d_is_h_perp", all(
        d_open(pi, 1 << x) == hull(pi, perp(alg, 1 << x))
        and d_open(pi, perp(alg, 1 << x)) == hull(pi, 1 << x)
        for x in range(n)))
    run("minspace.hkd_is_d", all(
        hull(pi, kernel(pi, d_open(pi, 1 << x))) == d_open(pi, 1 << x)
        for x in range(n)))
    run("minspace.kh_perp_fixed", all(
        kernel(pi, hull(pi, perp(alg, x))) == perp(alg, x) for x in sample))
    run("minspace.h_double_perp", all(
        hull(pi, 1 << x) == hull(pi, perp(alg, perp(alg, 1 << x))) for x in range(n)))
    run("minspace.h_perp_eq_h", all(
        (hull(pi, perp(alg, 1 << x)) == hull(pi, 1 << y))
        == (perp(alg, perp(alg, 1 << x)) == perp(alg, 1 << y))
        for x in range(n) for y in range(n)))

    ok = True
    for x in sample:
        s = _union(hull(pi, perp(alg, 1 << e)) for e in bits(x))
        if space.hk.closure_of(s) != hull(pi, perp(alg, x)):
            ok = False
            break
    run("minspace.closure_of_perp_union", ok)
    return res
