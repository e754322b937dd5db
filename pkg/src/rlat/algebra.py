"""Finite residuated lattices as operation tables over an indexed carrier.

An algebra is a bounded lattice (join, meet, 0, 1) together with a
commutative monoid product whose identity is the top element, such that
product and arrow form an adjoint pair:

    x ⊙ y ≤ z  ⇔  x ≤ y → z

Elements are dense indices 0..n-1 with index 0 the bottom and index n-1
the top (the file parser canonicalizes input to this form).  The lattice
order is derived from the meet table; the join table is cross-checked
against it rather than trusted.
"""

from dataclasses import dataclass, field
from functools import lru_cache

from .bitsets import bits, mask_of
from .errors import CapExceeded, NotResiduated, TableOutOfRange

MAX_SIZE = 64

Table = tuple[tuple[int, ...], ...]


def freeze_table(rows, n: int, what: str = "table") -> Table:
    """Normalize a square table to tuples, checking entries lie in range."""
    out = []
    for row in rows:
        row = tuple(row)
        if len(row) != n:
            raise TableOutOfRange(f"{what}: expected {n} columns, got {len(row)}")
        for v in row:
            if not isinstance(v, int) or v < 0 or v >= n:
                raise TableOutOfRange(f"{what}: entry {v!r} outside 0..{n - 1}")
        out.append(row)
    if len(out) != n:
        raise TableOutOfRange(f"{what}: expected {n} rows, got {len(out)}")
    return tuple(out)


@dataclass(frozen=True)
class Algebra:
    """Immutable residuated-lattice candidate.

    Construction checks only shape and the size cap; whether the tables
    satisfy the axioms is the job of :func:`validate`.
    """

    size: int
    names: tuple[str, ...]
    join: Table
    meet: Table
    prod: Table
    res: Table
    bottom: int = 0
    top: int = field(default=-1)

    def __post_init__(self):
        n = self.size
        if n < 1:
            raise TableOutOfRange("carrier must be nonempty")
        if n > MAX_SIZE:
            raise CapExceeded(f"carrier size {n} exceeds the cap of {MAX_SIZE}")
        if self.top == -1:
            object.__setattr__(self, "top", n - 1)
        if len(self.names) != n or len(set(self.names)) != n:
            raise TableOutOfRange("need exactly one distinct name per element")
        for what, tab in (("join", self.join), ("meet", self.meet),
                          ("prod", self.prod), ("res", self.res)):
            object.__setattr__(self, what, freeze_table(tab, n, what))

    # -- order helpers ----------------------------------------------------

    def leq(self, x: int, y: int) -> bool:
        """Lattice order derived from the meet table."""
        return self.meet[x][y] == x

    def neg(self, x: int) -> int:
        """Negation x -> bottom."""
        return self.res[x][self.bottom]

    @property
    def carrier_mask(self) -> int:
        return (1 << self.size) - 1

    def up_mask(self, x: int) -> int:
        """Bitmask of all y with x <= y."""
        return _up_masks(self)[x]

    def down_mask(self, x: int) -> int:
        return _down_masks(self)[x]

    def covers(self) -> list[tuple[int, int]]:
        """Covering pairs (x, y): x < y with nothing strictly between."""
        out = []
        n = self.size
        for x in range(n):
            for y in range(n):
                if x == y or not self.leq(x, y):
                    continue
                between = self.up_mask(x) & self.down_mask(y) & ~(1 << x) & ~(1 << y)
                if between == 0:
                    out.append((x, y))
        return out

    def set_names(self, mask: int) -> list[str]:
        return [self.names[i] for i in bits(mask)]

    def __repr__(self):
        return f"Algebra(size={self.size}, names={'/'.join(self.names)})"


@lru_cache(maxsize=2048)
def _up_masks(alg: Algebra) -> tuple[int, ...]:
    return tuple(
        mask_of(y for y in range(alg.size) if alg.leq(x, y)) for x in range(alg.size)
    )


@lru_cache(maxsize=2048)
def _down_masks(alg: Algebra) -> tuple[int, ...]:
    return tuple(
        mask_of(y for y in range(alg.size) if alg.leq(y, x)) for x in range(alg.size)
    )


# -- validation -----------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple[int, ...]
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    size: int
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def laws(self) -> set[str]:
        return {v.law for v in self.violations}


def validate(alg: Algebra) -> ValidationReport:
    """Check every axiom, reporting all violations with concrete witnesses.

    An empty violation list means the tables form a residuated lattice.
    """
    n = alg.size
    jn, mt, pr, rs = alg.join, alg.meet, alg.prod, alg.res
    nm = alg.names
    bad: list[Violation] = []

    def leq(x, y):
        return mt[x][y] == x

    for op, tab in (("join", jn), ("meet", mt), ("prod", pr)):
        for x in range(n):
            for y in range(n):
                if tab[x][y] != tab[y][x]:
                    bad.append(Violation(
                        f"{op}.commutative", (x, y),
                        f"{op}({nm[x]},{nm[y]})={nm[tab[x][y]]} but "
                        f"{op}({nm[y]},{nm[x]})={nm[tab[y][x]]}"))
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    lhs = tab[tab[x][y]][z]
                    rhs = tab[x][tab[y][z]]
                    if lhs != rhs:
                        bad.append(Violation(
                            f"{op}.associative", (x, y, z),
                            f"({nm[x]},{nm[y]},{nm[z]}): {nm[lhs]} != {nm[rhs]}"))

    for op, tab in (("join", jn), ("meet", mt)):
        for x in range(n):
            if tab[x][x] != x:
                bad.append(Violation(
                    f"{op}.idempotent", (x,), f"{op}({nm[x]},{nm[x]})={nm[tab[x][x]]}"))

    for x in range(n):
        for y in range(n):
            if jn[x][mt[x][y]] != x:
                bad.append(Violation(
                    "absorption.join_meet", (x, y),
                    f"{nm[x]} ∨ ({nm[x]} ∧ {nm[y]}) != {nm[x]}"))
            if mt[x][jn[x][y]] != x:
                bad.append(Violation(
                    "absorption.meet_join", (x, y),
                    f"{nm[x]} ∧ ({nm[x]} ∨ {nm[y]}) != {nm[x]}"))

    for x in range(n):
        if mt[alg.bottom][x] != alg.bottom:
            bad.append(Violation("bounds.bottom_least", (x,),
                                 f"{nm[alg.bottom]} ∧ {nm[x]} != {nm[alg.bottom]}"))
        if jn[alg.top][x] != alg.top:
            bad.append(Violation("bounds.top_greatest", (x,),
                                 f"{nm[alg.top]} ∨ {nm[x]} != {nm[alg.top]}"))
        if pr[alg.top][x] != x:
            bad.append(Violation("prod.identity", (x,),
                                 f"{nm[alg.top]} ⊙ {nm[x]} = {nm[pr[alg.top][x]]}"))

    # join must agree with the least upper bound of the meet-derived order
    lattice_ok = not bad
    if lattice_ok:
        for x in range(n):
            for y in range(n):
                ubs = [z for z in range(n) if leq(x, z) and leq(y, z)]
                lub = [u for u in ubs if all(leq(u, v) for v in ubs)]
                if len(lub) != 1 or jn[x][y] != lub[0]:
                    bad.append(Violation(
                        "join.agrees_with_meet_order", (x, y),
                        f"join({nm[x]},{nm[y]})={nm[jn[x][y]]} is not the least "
                        f"upper bound of the meet-derived order"))

    for x in range(n):
        for y in range(n):
            for z in range(n):
                if leq(pr[x][y], z) != leq(x, rs[y][z]):
                    bad.append(Violation(
                        "adjointness", (x, y, z),
                        f"{nm[x]}⊙{nm[y]} ≤ {nm[z]} is "
                        f"{leq(pr[x][y], z)} but {nm[x]} ≤ "
                        f"{nm[y]}→{nm[z]} is {leq(x, rs[y][z])}"))

    return ValidationReport(size=n, violations=tuple(bad))


def residual_from_prod(join: Table, meet: Table, prod: Table) -> Table:
    """Derive the arrow table: x -> y is the greatest z with x*z <= y.

    Raises NotResiduated with witness (x, y) when {z : x*z <= y} is empty
    or has no greatest element.  The order is read off the meet table.
    """
    n = len(meet)

    def leq(a, b):
        return meet[a][b] == a

    res = []
    for x in range(n):
        row = []
        for y in range(n):
            zs = [z for z in range(n) if leq(prod[x][z], y)]
            if not zs:
                raise NotResiduated(x, y)
            greatest = [m for m in zs if all(leq(z, m) for z in zs)]
            if not greatest:
                raise NotResiduated(x, y)
            row.append(greatest[0])
        res.append(tuple(row))
    return tuple(res)


def is_mtl(alg: Algebra) -> bool:
    """Pre-linearity: (x -> y) v (y -> x) = top for all x, y."""
    n, jn, rs = alg.size, alg.join, alg.res
    return all(
        jn[rs[x][y]][rs[y][x]] == alg.top for x in range(n) for y in range(n)
    )


def negation(alg: Algebra, x: int) -> int:
    return alg.neg(x)


def check_prod_distrib(alg: Algebra) -> tuple[bool, bool]:
    """Exhaustive product/join interplay over all triples.

    First: x*(y v z) = (x*y) v (x*z).
    Second: x v (y*z) >= (x v y)*(x v z).
    Both hold on every valid residuated lattice.
    """
    n, jn, pr = alg.size, alg.join, alg.prod
    first = all(
        pr[x][jn[y][z]] == jn[pr[x][y]][pr[x][z]]
        for x in range(n) for y in range(n) for z in range(n)
    )
    second = all(
        alg.leq(pr[jn[x][y]][jn[x][z]], jn[x][pr[y][z]])
        for x in range(n) for y in range(n) for z in range(n)
    )
    return first, second


def validated(size, names, join, meet, prod, res=None) -> Algebra:
    """Build an Algebra, deriving the arrow when absent, and validate it.

    Raises ValidationFailed when any axiom is violated.
    """
    from .errors import ValidationFailed

    if res is None:
        res = residual_from_prod(
            freeze_table(join, size, "join"),
            freeze_table(meet, size, "meet"),
            freeze_table(prod, size, "prod"),
        )
    alg = Algebra(size=size, names=tuple(names), join=join, meet=meet,
                  prod=prod, res=res)
    report = validate(alg)
    if not report.ok:
        raise ValidationFailed(report)
    return alg
