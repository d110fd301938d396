"""Guard configuration for brute-force enumeration.

Subspace enumeration over GF(p) grows like p^(dim^2/4), and the
subrepresentation scans used by the Harder-Narasimhan oracle multiply
such counts across vertices.  The guards below keep those scans in the
"finishes in seconds" regime; exceeding a guard raises GuardError rather
than silently degrading.

The environment variable HNZZ_GUARD_OVERRIDE can raise the limits for
offline experiments.  It is parsed as a comma-separated list of
``key=value`` pairs with keys ``dim``, ``p``, ``total2``, ``total3`` (and
generally ``totalP`` for a prime P).  Overriding the guards is unsafe for
routine use: runtimes blow up combinatorially.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field


@dataclass(frozen=True)
class GuardConfig:
    # largest ambient dimension subspace_enumerator will accept
    max_enum_dim: int = 6
    # largest field characteristic the enumerators will accept
    max_enum_p: int = 3
    # per-characteristic cap on the total dimension of a representation
    # handed to the subrepresentation scan
    max_total_dim: dict[int, int] = field(
        default_factory=lambda: {2: 8, 3: 6}
    )

    def total_cap(self, p: int) -> int:
        cap = self.max_total_dim.get(p)
        return cap if cap is not None else 0


def load_guard() -> GuardConfig:
    """Default guards, with optional HNZZ_GUARD_OVERRIDE adjustments."""
    raw = os.environ.get("HNZZ_GUARD_OVERRIDE")
    if not raw:
        return GuardConfig()
    max_dim, max_p = 6, 3
    totals = {2: 8, 3: 6}
    for item in raw.split(","):
        item = item.strip()
        if not item:
            continue
        key, _, value = item.partition("=")
        key, value = key.strip(), value.strip()
        if key == "dim":
            max_dim = int(value)
        elif key == "p":
            max_p = int(value)
        elif key.startswith("total"):
            totals[int(key[len("total"):])] = int(value)
        else:
            raise ValueError(f"unknown guard override key: {key!r}")
    return GuardConfig(max_enum_dim=max_dim, max_enum_p=max_p, max_total_dim=totals)
