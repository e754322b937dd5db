"""Instance-wise verification of the proposition catalog, the star
classifications, and exhaustive enumeration of small residuated lattices.

Every catalog check is a statement that holds on residuated lattices (with
one documented exception that fails on concrete instances, kept in the
catalog so the failure is visible data).  ``run_suite`` evaluates the whole
catalog on one algebra; ``run_census`` sweeps it over every algebra of a
bounded size, up to isomorphism.
"""

import hashlib
import time
from dataclasses import dataclass
from itertools import combinations, permutations

from .algebra import Algebra, check_prod_distrib, residual_from_prod, validate
from .bitsets import bits, is_subset, sort_key
from .errors import CapExceeded, InternalInconsistency, NotPm, ValidationFailed
from .filters import (
    all_filters,
    filter_join,
    filter_meet,
    finite_generating_subset,
    generated_filter,
    unit_filter,
)
from .sampling import sample_subsets
from .spectrum import (
    PrimeCollection,
    coannihilator,
    check_minimality,
    d_set,
    f_closed,
    has_unique_maximal_property,
    is_antichain,
    is_prime,
    is_vee_closed,
    max_filters,
    min_primes,
    min_primes_over,
    perp,
    prime_avoiding,
    s_pi,
    spec,
)
from .topology import (
    build_space,
    check_galois,
    closure,
    compactness,
    connectedness,
    d_open,
    dh_identities,
    find_retraction,
    hull,
    kernel,
    min_space_identities,
    retraction_spec_to_max,
    separation,
)


# -- star classifications ------------------------------------------------------


def star_check(alg: Algebra) -> bool:
    """Every double coannihilator of an element is the coannihilator of an
    element.  Forced on finite carriers; observed, never assumed."""
    perps = {perp(alg, 1 << y) for y in range(alg.size)}
    return all(perp(alg, perp(alg, 1 << x)) in perps for x in range(alg.size))


def bigstar_check(alg: Algebra) -> bool:
    """Every member of the intersection closure of the element
    coannihilators is itself an element coannihilator."""
    perps = {perp(alg, 1 << x) for x in range(alg.size)}
    closure_family = set(perps)
    while True:
        extra = {a & b for a in closure_family for b in closure_family} - closure_family
        if not extra:
            break
        closure_family |= extra
    return closure_family <= perps


def compmin_consistency(alg: Algebra) -> bool:
    """Star property, coincidence of the two topologies on the minimal
    prime space, and its compactness must all agree; divergence trips the
    theorem-violation trap."""
    star = star_check(alg)
    space = build_space(min_primes(alg))
    coincide = space.hk.opens == space.dual.opens
    compact = compactness(space).compact_h
    if not (star == coincide == compact):
        raise InternalInconsistency(
            f"star={star}, topologies_coincide={coincide}, min_compact={compact}")
    return star


def stonean_consistency(alg: Algebra) -> bool:
    bigstar = bigstar_check(alg)
    stonean = connectedness(build_space(min_primes(alg))).stonean
    if bigstar != stonean:
        raise InternalInconsistency(f"bigstar={bigstar} but min_stonean={stonean}")
    return bigstar


# -- suite context -------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    description: str
    passed: bool
    witness: str | None = None


@dataclass(frozen=True)
class TheoremReport:
    algebra_id: str
    size: int
    checks: tuple[CheckResult, ...]

    @property
    def passed(self) -> int:
        return sum(1 for c in self.checks if c.passed)

    @property
    def failed(self) -> tuple[CheckResult, ...]:
        return tuple(c for c in self.checks if not c.passed)

    @property
    def ok(self) -> bool:
        return not self.failed


SUITE_SIZE_CAP = 12


class _Ctx:
    """Shared precomputations for one suite run."""

    def __init__(self, alg: Algebra):
        if alg.size > SUITE_SIZE_CAP:
            raise CapExceeded(
                f"the theorem suite runs exhaustive checks; carriers above "
                f"{SUITE_SIZE_CAP} elements are not supported")
        self.alg = alg
        self.filters = all_filters(alg)
        self.spec = spec(alg)
        self.max = max_filters(alg)
        self.min = min_primes(alg)
        self.minovers = [min_primes_over(alg, f) for f in self.filters]
        self.collections: list[PrimeCollection] = [self.spec, self.max, self.min]
        self.collections += [c for c in self.minovers]
        self.sample = sample_subsets(alg)
        self.subsets = range(alg.carrier_mask + 1)  # carriers are tiny
        self.primes = self.spec.members
        self.unit = unit_filter(alg)


def _names(alg, mask):
    return "{" + ",".join(alg.set_names(mask)) + "}"


# -- catalog ---------------------------------------------------------------------

CATALOG: list[tuple[str, str, "callable"]] = []


def check(check_id: str, description: str):
    def deco(fn):
        CATALOG.append((check_id, description, fn))
        return fn
    return deco


@check("algebra.adjointness", "product and arrow form an adjoint pair")
def _c(ctx):
    a = ctx.alg
    for x in range(a.size):
        for y in range(a.size):
            for z in range(a.size):
                if a.leq(a.prod[x][y], z) != a.leq(x, a.res[y][z]):
                    return False, f"({a.names[x]},{a.names[y]},{a.names[z]})"
    return True, None


@check("algebra.residuum_roundtrip", "the arrow table is recovered from the product")
def _c(ctx):
    a = ctx.alg
    return residual_from_prod(a.join, a.meet, a.prod) == a.res, None


@check("algebra.prod_distributes_join",
       "product distributes over join; join dominates the product spread")
def _c(ctx):
    r1, r2 = check_prod_distrib(ctx.alg)
    return r1 and r2, None if (r1 and r2) else f"r1={r1} r2={r2}"


@check("algebra.order_partial", "the derived order is a bounded partial order")
def _c(ctx):
    a = ctx.alg
    n = a.size
    refl = all(a.leq(x, x) for x in range(n))
    anti = all(not (a.leq(x, y) and a.leq(y, x)) or x == y
               for x in range(n) for y in range(n))
    trans = all(not (a.leq(x, y) and a.leq(y, z)) or a.leq(x, z)
                for x in range(n) for y in range(n) for z in range(n))
    bounds = all(a.leq(a.bottom, x) and a.leq(x, a.top) for x in range(n))
    ok = refl and anti and trans and bounds
    return ok, None


@check("filters.lattice_closed",
       "the filter family contains the unit and the carrier and is closed "
       "under intersection and generated join")
def _c(ctx):
    a = ctx.alg
    fams = set(ctx.filters.filters)
    if ctx.unit not in fams or a.carrier_mask not in fams:
        return False, "missing bound"
    for f in fams:
        for g in fams:
            if filter_meet(a, f, g) not in fams:
                return False, f"meet {_names(a, f)} {_names(a, g)}"
            if filter_join(a, f, g) not in fams:
                return False, f"join {_names(a, f)} {_names(a, g)}"
    return True, None


@check("filters.generated_is_prime_intersection",
       "the generated filter is the intersection of the primes containing the set")
def _c(ctx):
    a = ctx.alg
    for x in ctx.subsets:
        inter = a.carrier_mask
        for p in ctx.primes:
            if is_subset(x, p):
                inter &= p
        if generated_filter(a, x) != inter:
            return False, _names(a, x)
    return True, None


@check("filters.generated_is_minimal_intersection",
       "the generated filter is the intersection of the minimal primes over the set")
def _c(ctx):
    a = ctx.alg
    for x in ctx.subsets:
        mins = min_primes_over(a, x)
        if generated_filter(a, x) != mins.intersection():
            return False, _names(a, x)
    return True, None


@check("filters.adjoin_laws",
       "adjoining elements to a filter: meet goes to join, join goes to product, "
       "and adjoining is antitone in the element")
def _c(ctx):
    a = ctx.alg
    for f in ctx.filters:
        gen = [generated_filter(a, f | (1 << x)) for x in range(a.size)]
        for x in range(a.size):
            for y in range(a.size):
                if gen[x] & gen[y] != gen[a.join[x][y]]:
                    return False, f"meet law at F={_names(a, f)} x={a.names[x]} y={a.names[y]}"
                if filter_join(a, gen[x], gen[y]) != gen[a.prod[x][y]]:
                    return False, f"join law at F={_names(a, f)} x={a.names[x]} y={a.names[y]}"
                if a.leq(x, y) and not is_subset(gen[y], gen[x]):
                    return False, f"antitone at F={_names(a, f)}"
    return True, None


@check("filters.finite_generation",
       "a set generating the carrier has an irredundant subset that still does")
def _c(ctx):
    a = ctx.alg
    for x in ctx.subsets:
        if generated_filter(a, x) == a.carrier_mask:
            small = finite_generating_subset(a, x)
            if generated_filter(a, small) != a.carrier_mask:
                return False, _names(a, x)
    return True, None


@check("primes.definitions_agree",
       "meet-irreducibility, meet-primality, the join condition, and the "
       "join-closed complement agree on every proper filter")
def _c(ctx):
    a = ctx.alg
    fams = ctx.filters.filters
    for p in fams:
        if p == a.carrier_mask:
            continue
        irr = not any(
            f1 != p and f2 != p and (f1 & f2) == p
            for f1 in fams for f2 in fams)
        mprime = all(
            not is_subset(f1 & f2, p) or is_subset(f1, p) or is_subset(f2, p)
            for f1 in fams for f2 in fams)
        joincond = is_prime(a, p)
        comp = is_vee_closed(a, a.carrier_mask & ~p)
        if not (irr == mprime == joincond == comp):
            return False, f"{_names(a, p)}: {irr} {mprime} {joincond} {comp}"
    return True, None


@check("primes.maximal_prime_and_full",
       "maximal filters are prime; the spectrum and the maximal family are full")
def _c(ctx):
    for m in ctx.max:
        if not is_prime(ctx.alg, m):
            return False, _names(ctx.alg, m)
    if not ctx.max.is_full() or not ctx.spec.is_full():
        return False, "not full"
    return True, None


@check("primes.union_complement_join_closed",
       "the complement of a union of primes is join-closed")
def _c(ctx):
    from .topology import _family_subsets

    a = ctx.alg
    for sel in _family_subsets(len(ctx.primes)):
        u = 0
        for i in bits(sel):
            u |= ctx.primes[i]
        comp = a.carrier_mask & ~u
        if comp and not is_vee_closed(a, comp):
            return False, f"selection {sel:#x}"
    return True, None


@check("primes.avoiding_maximal_prime",
       "a maximal filter avoiding a join-closed set exists, is prime, and "
       "extends the given filter")
def _c(ctx):
    a = ctx.alg
    cands = {a.carrier_mask & ~p for p in ctx.primes}
    cands |= {1 << x for x in range(a.size)}
    for f in ctx.filters.proper():
        for c in cands:
            if f & c or not is_vee_closed(a, c):
                continue
            p = prime_avoiding(a, f, c)  # internal traps check the claim
            if not is_subset(f, p) or p & c:
                return False, f"F={_names(a, f)} C={_names(a, c)}"
    return True, None


@check("primes.minimal_three_way",
       "minimality over a base filter, fixed divisor set, and the "
       "exactly-one criterion coincide for every prime over every filter")
def _c(ctx):
    a = ctx.alg
    for f in ctx.filters:
        for p in ctx.primes:
            if not is_subset(f, p):
                continue
            check_minimality(a, f, p)  # raises InternalInconsistency on divergence
    return True, None


@check("primes.over_contains_minimal",
       "every prime containing a set contains a minimal prime over it")
def _c(ctx):
    a = ctx.alg
    for x in ctx.subsets:
        mins = min_primes_over(a, x).members
        for p in ctx.primes:
            if is_subset(x, p) and not any(is_subset(m, p) for m in mins):
                return False, f"X={_names(a, x)} P={_names(a, p)}"
    return True, None


@check("coann.kernel_intersection_formula",
       "the coannihilator of a set in a collection kernel is the intersection "
       "of the members omitting the set")
def _c(ctx):
    a = ctx.alg
    for pi in ctx.collections:
        inter = pi.intersection()
        for x in ctx.sample:
            rhs = a.carrier_mask
            for p in pi.members:
                if not is_subset(x, p):
                    rhs &= p
            if coannihilator(a, inter, x) != rhs:
                return False, f"{pi.kind} X={_names(a, x)}"
    return True, None


@check("coann.perp_intersection_formulas",
       "the unit coannihilator equals the intersection of omitting primes and "
       "of omitting minimal primes")
def _c(ctx):
    a = ctx.alg
    for x in ctx.subsets:
        lhs = perp(a, x)
        via_spec = a.carrier_mask
        for p in ctx.primes:
            if not is_subset(x, p):
                via_spec &= p
        via_min = a.carrier_mask
        for m in ctx.min.members:
            if not is_subset(x, m):
                via_min &= m
        if lhs != via_spec or lhs != via_min:
            return False, _names(a, x)
    return True, None


@check("coann.dset_monotone_bounded",
       "divisor sets contain the base, shrink up the prime order, and stay "
       "inside primes over the base")
def _c(ctx):
    a = ctx.alg
    for f in ctx.filters:
        ds = {p: d_set(a, f, p) for p in ctx.primes}
        for p in ctx.primes:
            if not is_subset(f, ds[p]):
                return False, f"F not inside D at {_names(a, p)}"
            if is_subset(f, p) and not is_subset(ds[p], p):
                return False, f"D outside P at {_names(a, p)}"
            for q in ctx.primes:
                if is_subset(p, q) and not is_subset(ds[q], ds[p]):
                    return False, f"not antitone {_names(a, p)} {_names(a, q)}"
    return True, None


@check("coann.dset_is_min_intersection",
       "the divisor set is the intersection of the base-minimal primes below the prime")
def _c(ctx):
    a = ctx.alg
    for f in ctx.filters:
        for p in ctx.primes:
            mins = [m for m in min_primes_over(a, f).members if is_subset(m, p)]
            rhs = a.carrier_mask
            for m in mins:
                rhs &= m
            if d_set(a, f, p) != rhs:
                return False, f"F={_names(a, f)} P={_names(a, p)}"
    return True, None


@check("coann.dset_is_spec_intersection",
       "the divisor set is the intersection of the primes between base and prime")
def _c(ctx):
    a = ctx.alg
    for f in ctx.filters:
        for p in ctx.primes:
            rhs = a.carrier_mask
            for q in ctx.primes:
                if is_subset(f, q) and is_subset(q, p):
                    rhs &= q
            if d_set(a, f, p) != rhs:
                return False, f"F={_names(a, f)} P={_names(a, p)}"
    return True, None


@check("coann.minover_of_dset",
       "minimal primes over the divisor set are the base-minimal primes below the prime")
def _c(ctx):
    a = ctx.alg
    for f in ctx.filters:
        for p in ctx.primes:
            lhs = set(min_primes_over(a, d_set(a, f, p)).members)
            rhs = {m for m in min_primes_over(a, f).members if is_subset(m, p)}
            if lhs != rhs:
                return False, f"F={_names(a, f)} P={_names(a, p)}"
            if not all(is_subset(m, p) for m in lhs):
                return False, "a divisor-minimal prime escapes the prime"
    return True, None


@check("separation.fclosed_iff_unique_dset",
       "pairwise separation into the base holds exactly when each member is "
       "the unique member containing its divisor set")
def _c(ctx):
    a = ctx.alg
    for pi in ctx.collections:
        for f in {ctx.unit, pi.intersection()}:
            lhs = f_closed(pi, f).holds
            rhs = all(
                sum(1 for q in pi.members if is_subset(d_set(a, f, p), q)) == 1
                for p in pi.members)
            if lhs != rhs:
                return False, f"{pi.kind} F={_names(a, f)}"
    return True, None


@check("separation.fclosed_chain",
       "separation into the base forces unique containment over the sandwich "
       "collection, which forces an antichain; the converse needs the "
       "prelinearity terms inside the base")
def _c(ctx):
    a = ctx.alg
    for pi in ctx.collections:
        spi = s_pi(pi)
        for f in {ctx.unit, pi.intersection()}:
            closed = f_closed(pi, f).holds
            uniq = all(
                sum(1 for p in pi.members if is_subset(q, p)) == 1
                for q in spi.members)
            chain_ok = (not closed or uniq) and (not uniq or is_antichain(pi))
            if not chain_ok:
                return False, f"{pi.kind} F={_names(a, f)}"
            prelin = all(
                f >> a.join[a.res[x][y]][a.res[y][x]] & 1
                for x in range(a.size) for y in range(a.size))
            if is_antichain(pi) and prelin and not closed:
                return False, f"{pi.kind} antichain+prelinearity but not separated"
    return True, None


@check("separation.mtl_unit_closed_iff_antichain",
       "on prelinear algebras, separation into the unit filter is the antichain "
       "condition (vacuous otherwise)")
def _c(ctx):
    from .algebra import is_mtl

    if not is_mtl(ctx.alg):
        return True, None
    for pi in ctx.collections:
        if f_closed(pi, ctx.unit).holds != is_antichain(pi):
            return False, pi.kind
    return True, None


@check("topology.galois_battery",
       "hull and kernel form an antitone Galois connection with the expected "
       "composite behaviour")
def _c(ctx):
    for pi in (ctx.spec, ctx.max, ctx.min):
        for r in check_galois(pi, ctx.sample):
            if not r.ok:
                return False, f"{pi.kind}:{r.check} {r.witness or ''}"
    return True, None


@check("topology.basic_set_algebra",
       "the basic open and closed sets satisfy the element-level set algebra")
def _c(ctx):
    a = ctx.alg
    for pi in ctx.collections:
        for r in dh_identities(pi):
            if not r.ok:
                return False, f"{pi.kind}:{r.check}"
        inter = pi.intersection()
        ground = (1 << len(pi.members)) - 1
        for x in ctx.sample:
            dx = d_open(pi, x)
            if (dx == 0) != is_subset(x, inter):
                return False, f"{pi.kind}: empty-open test at {_names(a, x)}"
            if dx != d_open(pi, generated_filter(a, x)):
                return False, f"{pi.kind}: open of generated filter"
            if kernel(pi, dx) != coannihilator(a, inter, x):
                return False, f"{pi.kind}: kernel of open"
            if pi.is_full():
                if (dx == ground) != (generated_filter(a, x) == a.carrier_mask):
                    return False, f"{pi.kind}: full-open test at {_names(a, x)}"
    return True, None


@check("topology.closure_operator",
       "hull-of-kernel is a topological closure: empty set fixed, unions "
       "preserved, extensive and idempotent; closed sets are exactly hulls")
def _c(ctx):
    from .topology import _family_subsets

    for pi in (ctx.spec, ctx.max, ctx.min):
        space = build_space(pi)  # construction verifies closed == hulls

        def hk(g):
            return hull(pi, kernel(pi, g))

        if hk(0) != 0:
            return False, f"{pi.kind}: empty set not fixed"
        fams = _family_subsets(len(pi.members))
        pair_fams = fams[:256]  # binary identity on a deterministic slice
        for fam1 in fams:
            if not is_subset(fam1, hk(fam1)) or hk(hk(fam1)) != hk(fam1):
                return False, f"{pi.kind}: not a closure operator"
            closure(space, fam1)  # traps if it disagrees with the topology
        for fam1 in pair_fams:
            for fam2 in pair_fams:
                if hk(fam1 | fam2) != hk(fam1) | hk(fam2):
                    return False, f"{pi.kind}: union not preserved"
    return True, None


@check("topology.spec_hull_classifies",
       "over the full spectrum, kernels of hulls are generated filters and "
       "hulls classify generated filters; hulls of a set and its "
       "coannihilator cover every collection")
def _c(ctx):
    a = ctx.alg
    pi = ctx.spec
    for x in ctx.subsets:
        if kernel(pi, hull(pi, x)) != generated_filter(a, x):
            return False, f"kh at {_names(a, x)}"
    for x in ctx.sample:
        for y in ctx.sample:
            if (hull(pi, x) == hull(pi, y)) != (generated_filter(a, x) == generated_filter(a, y)):
                return False, f"classification at {_names(a, x)},{_names(a, y)}"
    for pj in ctx.collections:
        ground = (1 << len(pj.members)) - 1
        for x in ctx.sample:
            if hull(pj, x) | hull(pj, perp(a, x)) != ground:
                return False, f"{pj.kind}: perp cover at {_names(a, x)}"
    return True, None


@check("topology.specialization_order",
       "containment of primes, closure membership, and dual closure membership "
       "say the same thing")
def _c(ctx):
    for pi in ctx.collections:
        space = build_space(pi)
        for i, p in enumerate(pi.members):
            for j, q in enumerate(pi.members):
                inc = is_subset(p, q)
                in_hk = bool(space.hk.closure_of(1 << i) >> j & 1)
                in_dual = bool(space.dual.closure_of(1 << j) >> i & 1)
                if not (inc == in_hk == in_dual):
                    return False, f"{pi.kind} pair ({i},{j})"
    return True, None


@check("topology.t0_t1_hausdorff",
       "T0 always; T1 exactly for antichains; Hausdorff exactly for "
       "kernel-separated collections, in both topologies")
def _c(ctx):
    for pi in ctx.collections:
        space = build_space(pi)
        for dual in (False, True):
            rec = separation(space, dual=dual)  # traps on any mismatch
            if not rec.t0:
                return False, pi.kind
    return True, None


@check("topology.minover_hausdorff",
       "minimal primes over any filter form a Hausdorff space")
def _c(ctx):
    for pi in ctx.minovers:
        rec = separation(build_space(pi))
        if not rec.hausdorff:
            return False, pi.kind
    return True, None


@check("topology.compactness_full",
       "every basis cover reduces in both topologies; the spectrum and the "
       "maximal family are full")
def _c(ctx):
    for pi in ctx.collections:
        rec = compactness(build_space(pi))
        if not (rec.compact_h and rec.compact_d):
            return False, pi.kind
        if pi.kind in ("spec", "max") and not rec.full:
            return False, f"{pi.kind} not full"
    return True, None


@check("topology.min_space_zero_dim",
       "the minimal prime space is zero-dimensional and totally disconnected, "
       "and its dual topology refines the hull-kernel one")
def _c(ctx):
    space = build_space(ctx.min)
    rec = connectedness(space)
    if not rec.zero_dimensional or not rec.totally_disconnected:
        return False, "connectedness"
    if not set(space.hk.opens) <= set(space.dual.opens):
        return False, "dual does not refine"
    return True, None


@check("topology.min_space_identities",
       "the coannihilator identities of the minimal prime space hold")
def _c(ctx):
    for r in min_space_identities(ctx.alg, ctx.sample):
        if not r.ok:
            return False, r.check
    return True, None


@check("topology.min_extremally_disconnected",
       "the minimal prime space is extremally disconnected exactly when "
       "hulls of coannihilators are open (finitely: always)")
def _c(ctx):
    space = build_space(ctx.min)
    rec = connectedness(space)
    all_open = all(
        space.hk.is_open(hull(ctx.min, perp(ctx.alg, x))) for x in ctx.sample)
    if rec.extremally_disconnected != all_open:
        return False, "equivalence"
    if not rec.extremally_disconnected:
        return False, "finite space not extremally disconnected"
    return True, None


@check("star.finite_and_compmin",
       "the star property holds and agrees with topology coincidence and "
       "compactness on the minimal prime space")
def _c(ctx):
    return compmin_consistency(ctx.alg), None


@check("bigstar.finite_and_stonean",
       "the big-star property holds and agrees with the minimal prime space "
       "being Stonean")
def _c(ctx):
    return stonean_consistency(ctx.alg), None


@check("retract.pm_iff_retraction",
       "unique maximal filters over every prime is equivalent to the maximal "
       "family being a retract of the spectrum")
def _c(ctx):
    pm = has_unique_maximal_property(ctx.alg)
    found = find_retraction(ctx.spec, ctx.max) is not None
    if pm:
        retraction_spec_to_max(ctx.alg)  # natural map must exist and be continuous
    else:
        try:
            retraction_spec_to_max(ctx.alg)
            return False, "natural retraction exists without unique maximality"
        except NotPm:
            pass
    return pm == found, f"pm={pm} retraction_found={found}" if pm != found else None


@check("retract.implies_max_hausdorff",
       "if the maximal family is a retract of the spectrum it is Hausdorff")
def _c(ctx):
    if find_retraction(ctx.spec, ctx.max) is None:
        return True, None
    rec = separation(build_space(ctx.max))
    return rec.hausdorff, None


@check("retract.dual_unique_containment",
       "a dual-topology retraction from the sandwich collection forces unique "
       "containment in the collection")
def _c(ctx):
    for pi in (ctx.max, ctx.min):
        spi = s_pi(pi)
        f = find_retraction(spi, pi, dual=True)
        if f is None:
            continue
        for q in spi.members:
            if sum(1 for p in pi.members if is_subset(q, p)) != 1:
                return False, pi.kind
    return True, None


@check("normality.spec_normal_implies_max_hausdorff",
       "a normal spectrum forces a Hausdorff maximal family")
def _c(ctx):
    spec_normal = separation(build_space(ctx.spec)).normal
    if not spec_normal:
        return True, None
    return separation(build_space(ctx.max)).hausdorff, None


@check("normality.max_hausdorff_implies_spec_normal",
       "a Hausdorff maximal family forces a normal spectrum (fails on concrete "
       "instances; kept so the failure is visible)")
def _c(ctx):
    max_h = separation(build_space(ctx.max)).hausdorff
    spec_normal = separation(build_space(ctx.spec)).normal
    if max_h == spec_normal:
        return True, None
    return False, f"max_hausdorff={max_h} spec_normal={spec_normal}"


@check("normality.retraction_t4_compact",
       "a retraction onto a compact T4 collection makes the sandwich "
       "collection normal")
def _c(ctx):
    for pi in (ctx.max, ctx.min):
        spi = s_pi(pi)
        if find_retraction(spi, pi) is None:
            continue
        rec = separation(build_space(pi))
        if not rec.t4:
            continue
        if not compactness(build_space(spi)).compact_h:
            continue
        if not separation(build_space(spi)).normal:
            return False, pi.kind
    return True, None


@check("normality.antichain_sandwich_normal",
       "an antichain whose sandwich space is normal is itself Hausdorff")
def _c(ctx):
    for pi in ctx.collections:
        if not is_antichain(pi):
            continue
        spi = s_pi(pi)
        if not separation(build_space(spi)).normal:
            continue
        if not separation(build_space(pi)).hausdorff:
            return False, pi.kind
    return True, None


@check("mtl.max_hausdorff_and_spec_normal",
       "prelinear algebras have a Hausdorff maximal family and a normal spectrum")
def _c(ctx):
    from .algebra import is_mtl

    if not is_mtl(ctx.alg):
        return True, None
    if not separation(build_space(ctx.max)).hausdorff:
        return False, "max not hausdorff"
    if not separation(build_space(ctx.spec)).normal:
        return False, "spec not normal"
    return True, None


@check("mtl.hausdorff_iff_antichain",
       "on prelinear algebras a collection is Hausdorff exactly when it is "
       "an antichain")
def _c(ctx):
    from .algebra import is_mtl

    if not is_mtl(ctx.alg):
        return True, None
    for pi in ctx.collections:
        if separation(build_space(pi)).hausdorff != is_antichain(pi):
            return False, pi.kind
    return True, None


def catalog_ids() -> list[str]:
    return [cid for cid, _, _ in CATALOG]


def catalog_table() -> list[tuple[str, str]]:
    return [(cid, desc) for cid, desc, _ in CATALOG]


def algebra_digest(alg: Algebra) -> str:
    from .io import emit

    return hashlib.sha256(emit(alg).encode()).hexdigest()[:10]


def run_suite(alg: Algebra, label: str | None = None) -> TheoremReport:
    """Evaluate the whole catalog on one validated algebra.

    The algebra is re-validated first; the suite refuses to run on tables
    that fail the axioms.  Check failures are data in the report; the
    theorem-violation traps (InternalInconsistency) propagate.
    """
    report = validate(alg)
    if not report.ok:
        raise ValidationFailed(report)
    ctx = _Ctx(alg)
    results = []
    for cid, desc, fn in CATALOG:
        passed, witness = fn(ctx)
        results.append(CheckResult(cid, desc, bool(passed), witness))
    return TheoremReport(
        algebra_id=label or f"n{alg.size}-{algebra_digest(alg)}",
        size=alg.size,
        checks=tuple(results),
    )


# -- enumeration ----------------------------------------------------------------


def _middle_posets(m: int):
    """All partial orders on m labeled points, as leq matrices."""
    pairs = list(combinations(range(m), 2))
    out = []
    for states in _ternary(len(pairs)):
        leq = [[i == j for j in range(m)] for i in range(m)]
        for (i, j), st in zip(pairs, states):
            if st == 1:
                leq[i][j] = True
            elif st == 2:
                leq[j][i] = True
        if _transitive(leq):
            out.append(leq)
    return out


def _ternary(k: int):
    state = [0] * k
    while True:
        yield tuple(state)
        i = 0
        while i < k and state[i] == 2:
            state[i] = 0
            i += 1
        if i == k:
            return
        state[i] += 1


def _transitive(leq) -> bool:
    m = len(leq)
    for i in range(m):
        for j in range(m):
            if not leq[i][j]:
                continue
            for k in range(m):
                if leq[j][k] and not leq[i][k]:
                    return False
    return True


def _bounded_leq(n: int, middle):
    """Extend a middle poset to indices 0..n-1 with global bottom and top."""
    leq = [[False] * n for _ in range(n)]
    for i in range(n):
        leq[i][i] = True
        leq[0][i] = True
        leq[i][n - 1] = True
    for i in range(n - 2):
        for j in range(n - 2):
            if middle[i][j]:
                leq[i + 1][j + 1] = True
    return leq


def _lattice_tables(leq):
    """Join and meet tables when every pair has a least upper and greatest
    lower bound; None otherwise."""
    n = len(leq)
    join = [[0] * n for _ in range(n)]
    meet = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            ubs = [z for z in range(n) if leq[x][z] and leq[y][z]]
            least = [u for u in ubs if all(leq[u][v] for v in ubs)]
            lbs = [z for z in range(n) if leq[z][x] and leq[z][y]]
            greatest = [u for u in lbs if all(leq[v][u] for v in lbs)]
            if len(least) != 1 or len(greatest) != 1:
                return None
            join[x][y] = least[0]
            meet[x][y] = greatest[0]
    return tuple(map(tuple, join)), tuple(map(tuple, meet))


def _middle_perms(n: int):
    for p in permutations(range(1, n - 1)):
        yield (0, *p, n - 1)


def _apply_perm(table, perm):
    n = len(table)
    out = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            out[perm[x]][perm[y]] = perm[table[x][y]]
    return tuple(map(tuple, out))


def _canon_tables(tables: tuple, n: int) -> tuple:
    """Lexicographically least relabeling over permutations fixing the bounds."""
    best = None
    for perm in _middle_perms(n):
        cand = tuple(_apply_perm(t, perm) for t in tables)
        if best is None or cand < best:
            best = cand
    return best


def bounded_lattices(n: int) -> list[tuple]:
    """All bounded lattices on n elements up to isomorphism, as canonical
    (join, meet) table pairs with element 0 the bottom and n-1 the top."""
    seen = {}
    for middle in _middle_posets(n - 2):
        leq = _bounded_leq(n, middle)
        tabs = _lattice_tables(leq)
        if tabs is None:
            continue
        canon = _canon_tables(tabs, n)
        seen[canon] = canon
    return sorted(seen.values())


def _monoid_tables(join, meet, n: int):
    """Commutative monoid tables with identity top, absorbing bottom, and
    product-join distributivity; exactly the residuated products.

    Cells over the middle elements are filled by backtracking; candidate
    values sit below the meet and the fill is pruned by monotonicity.
    """
    top = n - 1

    def leq(a, b):
        return meet[a][b] == a

    cells = [(x, y) for x in range(1, n - 1) for y in range(x, n - 1)]
    prod = [[None] * n for _ in range(n)]
    for x in range(n):
        prod[0][x] = prod[x][0] = 0
        prod[top][x] = prod[x][top] = x

    downs = [[z for z in range(n) if leq(z, d)] for d in range(n)]

    def fill(idx: int):
        if idx == len(cells):
            tab = tuple(tuple(row) for row in prod)
            if _is_assoc(tab, n) and _distributes(tab, join, n):
                yield tab
            return
        x, y = cells[idx]
        for v in downs[meet[x][y]]:
            ok = True
            for (px, py) in cells[:idx]:
                pv = prod[px][py]
                if leq(px, x) and leq(py, y) and not leq(pv, v):
                    ok = False
                    break
                if leq(x, px) and leq(y, py) and not leq(v, pv):
                    ok = False
                    break
                if leq(px, y) and leq(py, x) and not leq(pv, v):
                    ok = False
                    break
                if leq(y, px) and leq(x, py) and not leq(v, pv):
                    ok = False
                    break
            if not ok:
                continue
            prod[x][y] = prod[y][x] = v
            yield from fill(idx + 1)
            prod[x][y] = prod[y][x] = None

    yield from fill(0)


def _is_assoc(tab, n: int) -> bool:
    # commutative table: all three groupings of each sorted triple must agree
    for x in range(1, n - 1):
        for y in range(x, n - 1):
            for z in range(y, n - 1):
                via_xy = tab[tab[x][y]][z]
                if via_xy != tab[x][tab[y][z]] or via_xy != tab[tab[x][z]][y]:
                    return False
    return True


def _distributes(tab, join, n: int) -> bool:
    for x in range(n):
        for y in range(n):
            for z in range(y, n):
                if tab[x][join[y][z]] != join[tab[x][y]][tab[x][z]]:
                    return False
    return True


def _default_names(n: int) -> tuple[str, ...]:
    if n == 1:
        return ("1",)
    middle = tuple(f"x{i}" for i in range(1, n - 1))
    return ("0", *middle, "1")


def enumerate_algebras(n: int, max_count: int | None = None,
                       time_budget: float | None = None):
    """Yield every residuated lattice of the given size up to isomorphism,
    in a deterministic canonical order.

    Raises CapExceeded when the optional count or wall-clock caps trip.
    """
    if not 2 <= n <= 6:
        raise ValueError("enumeration supports sizes 2 through 6")
    started = time.monotonic()
    found = {}
    for join, meet in bounded_lattices(n):
        for prod in _monoid_tables(join, meet, n):
            if time_budget is not None and time.monotonic() - started > time_budget:
                raise CapExceeded("enumeration time budget exceeded")
            canon = _canon_tables((join, meet, prod), n)
            if canon in found:
                continue
            if max_count is not None and len(found) >= max_count:
                raise CapExceeded("enumeration count cap exceeded")
            found[canon] = canon
    names = _default_names(n)
    for join, meet, prod in sorted(found.values()):
        res = residual_from_prod(join, meet, prod)
        alg = Algebra(size=n, names=names, join=join, meet=meet, prod=prod, res=res)
        rep = validate(alg)
        if not rep.ok:
            raise InternalInconsistency(
                "enumerated tables failed validation: " + ", ".join(sorted(rep.laws())))
        yield alg


# -- census ----------------------------------------------------------------------


@dataclass(frozen=True)
class CensusRecord:
    size: int
    index: int
    encoding: str  # canonical .rlat text; round-trips through the parser
    filters: int
    primes: int
    maximal: int
    minimal: int
    mtl: bool
    star: bool
    bigstar: bool
    pm: bool
    checks_passed: int
    checks_total: int
    failed_checks: tuple[str, ...]


def census_record(alg: Algebra, index: int) -> CensusRecord:
    from .algebra import is_mtl
    from .io import emit

    report = run_suite(alg, label=f"n{alg.size}#{index}")
    return CensusRecord(
        size=alg.size,
        index=index,
        encoding=emit(alg),
        filters=len(all_filters(alg)),
        primes=len(spec(alg)),
        maximal=len(max_filters(alg)),
        minimal=len(min_primes(alg)),
        mtl=is_mtl(alg),
        star=star_check(alg),
        bigstar=bigstar_check(alg),
        pm=has_unique_maximal_property(alg),
        checks_passed=report.passed,
        checks_total=len(report.checks),
        failed_checks=tuple(c.check_id for c in report.failed),
    )


def run_census(max_n: int = 5, max_count: int | None = None,
               time_budget: float | None = None) -> list[CensusRecord]:
    """Run the suite over every algebra of size 2..max_n up to isomorphism.

    Counts are computed by exhaustive enumeration; there is no external
    baseline for them.  Failed check ids are carried on each record rather
    than raised, so a sweep always completes.
    """
    records = []
    for n in range(2, max_n + 1):
        for i, alg in enumerate(enumerate_algebras(n, max_count=max_count,
                                                   time_budget=time_budget)):
            records.append(census_record(alg, i))
    return records
