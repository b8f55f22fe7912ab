"""Global size guards.

``group_bound`` caps the order of groups whose subgroup lattice we enumerate,
``output_bound`` caps the number of points of any constructed G-set.
"""

from contextlib import contextmanager
from dataclasses import dataclass


@dataclass
class Settings:
    group_bound: int = 24
    output_bound: int = 10 ** 6


settings = Settings()


@contextmanager
def limits(group_bound=None, output_bound=None):
    old = (settings.group_bound, settings.output_bound)
    if group_bound is not None:
        settings.group_bound = group_bound
    if output_bound is not None:
        settings.output_bound = output_bound
    try:
        yield settings
    finally:
        settings.group_bound, settings.output_bound = old
