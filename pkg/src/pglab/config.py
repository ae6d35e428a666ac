"""Resource caps.  PGLAB_* environment variables override the defaults."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

ENV_PREFIX = "PGLAB_"


@dataclass(frozen=True)
class Caps:
    """Hard limits for the enumerative operations.

    Every cap is a refusal threshold: operations raise OrderCapExceeded or
    CostCapExceeded instead of silently truncating their answer.
    """

    order_cap: int = 16            # largest accepted base-group order
    arity_cap: int = 8             # largest accepted operation arity
    automorphism_cap: int = 16     # largest order for automorphism search
    axiom_cost_cap: int = 10_000_000   # elementary evaluations for axiom checks
    partition_cap: int = 10        # carrier size for the all-partitions scan
    square_cap: int = 256          # |G x G| for the direct-square subgroup scan
    subset_scan_cap: int = 12      # carrier size for the 2^m subset scan
    hom_oracle_cap: int = 1_000_000    # candidate maps in the hom oracle
    census_exhaustive_cap: int = 4096  # candidate tables in the exhaustive census


DEFAULT_CAPS = Caps()


def caps_from_env(base: Caps = DEFAULT_CAPS, environ=None) -> Caps:
    """Apply PGLAB_<FIELD> overrides from the environment."""
    env = os.environ if environ is None else environ
    overrides = {}
    for f in fields(Caps):
        key = ENV_PREFIX + f.name.upper()
        if key in env:
            overrides[f.name] = int(env[key])
    return replace(base, **overrides)
