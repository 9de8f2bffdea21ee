"""Resource caps shared across modules.

Every exhaustive routine in the package refuses to run past one of these
limits. The defaults keep the full test suite to a few minutes on a laptop.
"""

import os
from dataclasses import dataclass, replace

AUDIT_CAP_ENV = "SHORBENCH_AUDIT_MAX_N"


class ResourceCapError(ValueError):
    """An input exceeds a configured exhaustive-computation cap."""


@dataclass(frozen=True)
class Caps:
    order_iterations: int = 10**7
    oracle_max_m: int = 26
    sampler_max_m: int = 24
    audit_max_n: int = 3000
    exhaustive_max_n: int = 10**6
    census_max_h: int = 10**4
    prime_max: int = 3_317_044_064_679_887_385_961_981

    def with_env(self) -> "Caps":
        raw = os.environ.get(AUDIT_CAP_ENV)
        if raw is None:
            return self
        cap = int(raw)
        if cap > self.exhaustive_max_n:
            raise ResourceCapError(f"{AUDIT_CAP_ENV}={cap} exceeds {self.exhaustive_max_n}")
        return replace(self, audit_max_n=cap)


DEFAULT_CAPS = Caps()
