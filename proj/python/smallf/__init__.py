"""Exact finite constructions: tube families, Cantor schedules,
well-approximable sets and digit-block sums."""

from ._core import (  # noqa: F401
    DimensionFunction,
    DomainError,
    PreconditionError,
    compare,
    compute_St,
    covering_radius,
    critlow_ex48,
    discrepancy_threshold,
    dk_sequence,
    min_separation,
    primes_in_window,
    run_acceptance,
    set_threads,
    sumset_covers,
    threads,
    tower_sequence,
    union_St_count,
    verify_gset,
    witness_search,
)

__version__ = "0.1.0"
