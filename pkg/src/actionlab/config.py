"""Resource caps used across the package.

All caps live in one frozen dataclass so tests can construct relaxed or
tightened variants explicitly.  The only environment hook is
ACTIONLAB_MAX_ORDER, which overrides the subgroup-enumeration order cap.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

ENV_MAX_ORDER = "ACTIONLAB_MAX_ORDER"


@dataclass(frozen=True)
class Caps:
    closure_limit: int = 20000        # elements a generated closure may reach
    subgroup_order: int = 512         # max group order for subgroup enumeration
    aut_order: int = 64               # max group order for automorphism search
    aut_search_count: int = 500000    # max automorphisms collected before abort
    oracle_group_order: int = 16      # max |G| for the bar-complex oracle
    oracle_matrix_cells: int = 2_000_000  # max rows*cols for one differential


def active_caps() -> Caps:
    """Default caps, with ACTIONLAB_MAX_ORDER applied when set and valid."""
    caps = Caps()
    raw = os.environ.get(ENV_MAX_ORDER)
    if raw is not None:
        try:
            value = int(raw)
        except ValueError:
            return caps
        if value >= 1:
            caps = replace(caps, subgroup_order=value)
    return caps
