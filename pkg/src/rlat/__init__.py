"""Finite residuated lattices: filters, prime spectra, hull-kernel
topologies, and an exhaustive small-model verification suite."""

from .algebra import (
    Algebra,
    ValidationReport,
    check_prod_distrib,
    is_mtl,
    negation,
    residual_from_prod,
    validate,
    validated,
)
from .errors import RlatError
from .filters import (
    FilterLattice,
    all_filters,
    filter_join,
    filter_meet,
    generated_filter,
    is_filter,
    principal_filter,
    unit_filter,
)
from .harness import (
    CensusRecord,
    TheoremReport,
    bigstar_check,
    enumerate_algebras,
    run_census,
    run_suite,
    star_check,
)
from .io import emit, parse, parse_text
from .spectrum import (
    PrimeCollection,
    coannihilator,
    d_set,
    is_antichain,
    is_f_closed,
    is_prime,
    is_vee_closed,
    max_filters,
    min_primes,
    min_primes_over,
    perp,
    prime_avoiding,
    s_pi,
    spec,
    unique_maximal_over,
)
from .topology import (
    FiniteTopology,
    HullKernelSpace,
    build_space,
    check_galois,
    closure,
    compactness,
    connectedness,
    dual_topology,
    hk_topology,
    hull,
    kernel,
    min_space_identities,
    retraction_spec_to_max,
    separation,
)

__version__ = "0.1.0"
