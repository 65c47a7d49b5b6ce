"""Deliberate-corruption switches guarding the suites against vacuous passes.

Negative-control tests flip one frozen convention at a time and assert that
the affected verification suites start reporting failures.  Production runs
never touch these; the default instance is the frozen convention set.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, replace
from fractions import Fraction


@dataclass
class Hooks:
    sigma_factor: Fraction = Fraction(1, 2)   # the 1/2 in the sigma map
    sigma_ad_sign: int = 1                    # relative sign of sigma's Ad term
    omega_sign: int = 1                       # global sign of the double 2-form
    dorfman_twist_scale: int = 1              # scale on the eta term of the bracket


CURRENT = Hooks()

CORRUPTIONS = {
    "sigma-half": dict(sigma_factor=Fraction(1)),
    "sigma-ad-flip": dict(sigma_ad_sign=-1),
    "omega-sign": dict(omega_sign=-1),
    "dorfman-eta": dict(dorfman_twist_scale=0),
}


def apply_corruption(name: str | None) -> None:
    """Set process-wide hooks; used by the CLI and by campaign workers."""
    global CURRENT
    if name is None:
        CURRENT = Hooks()
        return
    if name not in CORRUPTIONS:
        raise ValueError(f"unknown corruption {name!r}")
    CURRENT = replace(Hooks(), **CORRUPTIONS[name])


@contextmanager
def corruption(name: str | None):
    global CURRENT
    saved = CURRENT
    try:
        apply_corruption(name)
        yield CURRENT
    finally:
        CURRENT = saved
