"""Matchings between finite abelian group subsets and field extension subspaces.

Instances are plain dicts mirroring the CLI's JSON shapes:

    group instance:  {"group": {"free_rank": 0, "torsion": [6]},
                      "A": [[0], [2], [4], [5]], "B": [[1], [2], [3], [4]]}
    field instance:  {"field": {"p": 2, "n": 4},
                      "A": [[1, 0, 0, 0]], "B": [[0, 1, 0, 0]]}
"""

from matchable._core import (
    AuditFailure,
    PreconditionFailure,
    SizeBound,
    SpecMismatch,
    field_check,
    field_construct,
    field_property,
    field_sweep,
    group_certify,
    group_check,
    group_property,
    group_sweep,
    group_verify_certificate,
)
from matchable._core import group_count as _group_count


def group_count(instance, max_size=20):
    """Number of matchings from A to B as a Python int (may exceed 64 bits)."""
    return int(_group_count(instance, max_size))


__all__ = [
    "AuditFailure",
    "PreconditionFailure",
    "SizeBound",
    "SpecMismatch",
    "field_check",
    "field_construct",
    "field_property",
    "field_sweep",
    "group_certify",
    "group_check",
    "group_count",
    "group_property",
    "group_sweep",
    "group_verify_certificate",
]
