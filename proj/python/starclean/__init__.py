"""*-cleanness of group rings RG for SLC groups G."""

import json

from . import _core
from ._core import (
    CapacityError,
    DiscrepancyError,
    exists_n_dividing,
    group_order,
    perlis_walker,
    ring_name,
    three_squares,
)

__all__ = [
    "CapacityError",
    "DiscrepancyError",
    "brute",
    "canonical",
    "crossval",
    "decide",
    "exists_n_dividing",
    "group_order",
    "levels",
    "lift",
    "perlis_walker",
    "ring_name",
    "three_squares",
    "witness",
]


def _wrap(fn):
    def call(*args, **kwargs):
        return json.loads(fn(*args, **kwargs))

    call.__name__ = fn.__name__
    call.__doc__ = fn.__doc__
    return call


decide = _wrap(_core.decide)
brute = _wrap(_core.brute)
witness = _wrap(_core.witness)
canonical = _wrap(_core.canonical)
lift = _wrap(_core.lift)
crossval = _wrap(_core.crossval)
levels = _wrap(_core.levels)
