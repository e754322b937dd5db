"""The .rlat text format, canonical JSON reports, and DOT export.

File format (whitespace separated, ``#`` starts a comment):

    size N
    elements <N names>
    bottom <name>
    top <name>
    table join|meet|odot     followed by N rows of N names
    table arrow              optional; must equal the derived residuum

The parser canonicalizes element order so that internally index 0 is the
bottom and index n-1 the top, with the remaining elements in declaration
order.  The arrow table is derived from the product when absent and
cross-checked when present.
"""

import json
from pathlib import Path

from .algebra import Algebra, Violation, ValidationReport, residual_from_prod, validate
from .bitsets import bits
from .errors import ArrowMismatch, NotResiduated, ParseError, ValidationFailed

SCHEMA = "rlat/1"

_TABLE_NAMES = ("join", "meet", "odot", "arrow")


def parse_text(text: str) -> Algebra:
    """Parse .rlat source into a validated, canonicalized Algebra."""
    size = None
    names: list[str] | None = None
    bottom = top = None
    tables: dict[str, list[list[int]]] = {}
    pending: str | None = None  # table currently being filled
    index: dict[str, int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()

        if pending is not None:
            row = []
            for t in toks:
                if t not in index:
                    raise ParseError(lineno, f"unknown element {t!r} in table {pending}")
                row.append(index[t])
            if len(row) != size:
                raise ParseError(lineno, f"table {pending}: expected {size} entries")
            tables[pending].append(row)
            if len(tables[pending]) == size:
                pending = None
            continue

        key = toks[0]
        if key == "size":
            if size is not None:
                raise ParseError(lineno, "duplicate size directive")
            try:
                size = int(toks[1])
            except (IndexError, ValueError):
                raise ParseError(lineno, "size needs one integer argument") from None
            if size < 1:
                raise ParseError(lineno, "size must be positive")
        elif key == "elements":
            if size is None:
                raise ParseError(lineno, "elements before size")
            if len(toks) - 1 != size:
                raise ParseError(lineno, f"expected {size} element names")
            names = toks[1:]
            if len(set(names)) != size:
                raise ParseError(lineno, "element names must be distinct")
            index = {t: i for i, t in enumerate(names)}
        elif key in ("bottom", "top"):
            if names is None:
                raise ParseError(lineno, f"{key} before elements")
            if len(toks) != 2 or toks[1] not in index:
                raise ParseError(lineno, f"{key} needs one declared element name")
            if key == "bottom":
                bottom = index[toks[1]]
            else:
                top = index[toks[1]]
        elif key == "table":
            if names is None:
                raise ParseError(lineno, "table before elements")
            if len(toks) != 2 or toks[1] not in _TABLE_NAMES:
                raise ParseError(lineno, "table needs a name: join, meet, odot, arrow")
            if toks[1] in tables:
                raise ParseError(lineno, f"duplicate table {toks[1]}")
            tables[toks[1]] = []
            pending = toks[1]
        else:
            raise ParseError(lineno, f"unknown directive {key!r}")

    last = text.count("\n") + 1
    if pending is not None:
        raise ParseError(last, f"table {pending} is incomplete")
    if size is None or names is None:
        raise ParseError(last, "missing size or elements")
    if bottom is None or top is None:
        raise ParseError(last, "missing bottom or top")
    for t in ("join", "meet", "odot"):
        if t not in tables:
            raise ParseError(last, f"missing table {t}")

    # canonicalize: bottom -> 0, top -> n-1, others keep declaration order
    order = [bottom] + [i for i in range(size) if i not in (bottom, top)]
    if top != bottom:
        order.append(top)
    perm = [0] * size  # old index -> new index
    for new, old in enumerate(order):
        perm[old] = new

    def remap(rows):
        out = [[0] * size for _ in range(size)]
        for x in range(size):
            for y in range(size):
                out[perm[x]][perm[y]] = perm[rows[x][y]]
        return tuple(tuple(r) for r in out)

    new_names = tuple(names[old] for old in order)
    join = remap(tables["join"])
    meet = remap(tables["meet"])
    prod = remap(tables["odot"])

    try:
        res = residual_from_prod(join, meet, prod)
    except NotResiduated as exc:
        x, y = exc.witness
        report = ValidationReport(size=size, violations=(
            Violation("residuation", (x, y),
                      f"{{z : {new_names[x]}⊙z ≤ {new_names[y]}}} has no "
                      f"greatest element"),))
        raise ValidationFailed(report) from exc

    if "arrow" in tables:
        given = remap(tables["arrow"])
        for x in range(size):
            for y in range(size):
                if given[x][y] != res[x][y]:
                    raise ArrowMismatch(
                        (new_names[x], new_names[y]),
                        new_names[given[x][y]], new_names[res[x][y]])

    alg = Algebra(size=size, names=new_names, join=join, meet=meet,
                  prod=prod, res=res)
    report = validate(alg)
    if not report.ok:
        raise ValidationFailed(report)
    return alg


def parse(path: str | Path) -> Algebra:
    return parse_text(Path(path).read_text())


def emit(alg: Algebra) -> str:
    """Canonical .rlat text for a validated algebra; parse(emit(a)) == a."""
    lines = [f"size {alg.size}", "elements " + " ".join(alg.names),
             f"bottom {alg.names[alg.bottom]}", f"top {alg.names[alg.top]}"]
    for label, tab in (("join", alg.join), ("meet", alg.meet),
                       ("odot", alg.prod), ("arrow", alg.res)):
        lines.append(f"table {label}")
        for row in tab:
            lines.append(" ".join(alg.names[v] for v in row))
    return "\n".join(lines) + "\n"


# -- JSON reports ----------------------------------------------------------


def set_names(alg: Algebra, mask: int) -> list[str]:
    """A subset serialized as names in canonical element order."""
    return [alg.names[i] for i in bits(mask)]


def envelope(alg: Algebra, command: str, payload) -> dict:
    return {
        "schema": SCHEMA,
        "algebra": {"size": alg.size, "elements": list(alg.names)},
        "command": command,
        "payload": payload,
    }


def to_json(doc) -> str:
    """Byte-stable JSON rendering used by every --json path."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


# -- DOT export ------------------------------------------------------------


def dot_hasse(alg: Algebra) -> str:
    """Hasse diagram of the carrier order: covering edges only."""
    lines = ["digraph hasse {", "  rankdir=BT;", "  node [shape=circle];"]
    for i, name in enumerate(alg.names):
        lines.append(f'  n{i} [label="{name}"];')
    for x, y in alg.covers():
        lines.append(f"  n{x} -> n{y};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_spec(alg: Algebra) -> str:
    """Hasse diagram of the prime spectrum under inclusion."""
    from .spectrum import spec as spec_of

    primes = spec_of(alg).members
    lines = ["digraph spec {", "  rankdir=BT;", "  node [shape=box];"]
    for i, p in enumerate(primes):
        label = "{" + ",".join(set_names(alg, p)) + "}"
        lines.append(f'  p{i} [label="{label}"];')
    for i, p in enumerate(primes):
        for j, q in enumerate(primes):
            if i == j or p & ~q != 0:
                continue  # need p strictly below q
            if p == q:
                continue
            between = [k for k, r in enumerate(primes)
                       if k not in (i, j) and p & ~r == 0 and r & ~q == 0 and r not in (p, q)]
            if not between:
                lines.append(f"  p{i} -> p{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
