"""Resource caps shared by the CLI and the scripts."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .errors import InputError

ENV_MAX_STEPS = "QDSLAB_MAX_STEPS"


@dataclass(frozen=True)
class Limits:
    max_steps: int = 10_000_000  # geometry scans and the Singer search
    max_nodes: int = 1_000_000  # automorphism / isomorphism search nodes
    enumeration_cap: int = 1_000_000  # largest group verified element by element
    singer_cap: int = 100_000  # largest q^2+q+1 for the Singer search

    @classmethod
    def from_env(cls, env=None, **overrides) -> "Limits":
        """Defaults, then QDSLAB_MAX_STEPS, then explicit overrides (None is ignored)."""
        env = os.environ if env is None else env
        lim = cls()
        raw = env.get(ENV_MAX_STEPS)
        if raw:
            try:
                n = int(raw)
            except ValueError:
                raise InputError(f"{ENV_MAX_STEPS} must be an integer, got {raw!r}") from None
            lim = replace(lim, max_steps=n, max_nodes=n)
        overrides = {k: v for k, v in overrides.items() if v is not None}
        lim = replace(lim, **overrides)
        for k, v in lim.__dict__.items():
            if v < 1:
                raise InputError(f"{k} must be positive")
        return lim
