"""Deterministic subset sampling for set-quantified identity checks.

The sample family for identities quantified over arbitrary subsets is the
empty set, the full carrier, every singleton, every filter, and 64
pseudo-random subsets drawn from a fixed seed.  The seed defaults to 0xA6
and can be overridden through the RLAT_SEED environment variable, keeping
reports byte-stable across runs.
"""

import os
import random

from .algebra import Algebra
from .filters import all_filters

DEFAULT_SEED = 0xA6
RANDOM_DRAWS = 64


def sampling_seed() -> int:
    raw = os.environ.get("RLAT_SEED")
    if raw is None:
        return DEFAULT_SEED
    return int(raw, 0)


def sample_subsets(alg: Algebra, seed: int | None = None) -> tuple[int, ...]:
    """Deterministic family of carrier subsets, duplicates removed,
    preserving first-seen order."""
    if seed is None:
        seed = sampling_seed()
    rng = random.Random(seed)
    family = [0, alg.carrier_mask]
    family += [1 << x for x in range(alg.size)]
    family += list(all_filters(alg))
    family += [rng.randrange(alg.carrier_mask + 1) for _ in range(RANDOM_DRAWS)]
    seen = []
    have = set()
    for m in family:
        if m not in have:
            have.add(m)
            seen.append(m)
    return tuple(seen)
