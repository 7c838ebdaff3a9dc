"""Point counts, infinity structure, and record search for fibre products
of hyperelliptic curves.

The heavy lifting lives in the compiled extension; this wrapper turns its
JSON reports into plain dicts.
"""

import json as _json

from . import _core
from ._core import (
    ParseError,
    ValidationError,
    default_fixtures_path,
    field_order,
    genus_fibre,
    geometric_infinity,
    hws_bound,
)

__all__ = [
    "ParseError",
    "ValidationError",
    "count",
    "default_fixtures_path",
    "field_order",
    "genus_fibre",
    "geometric_infinity",
    "hws_bound",
    "search",
    "verify_isogeny",
    "verify_paper",
]


def count(field, polys):
    """Full point-count report for the fibre product of y_i^2 = f_i(x).

    `field` is a field spec string ("17", "13^2", "5^2:1,1,1"); `polys` is a
    list of coefficient strings, ascending powers.
    """
    return _json.loads(_core.count_json(field, list(polys)))


def verify_isogeny(field, polys):
    """Check predicted extension counts from the product L-polynomial."""
    return _json.loads(_core.verify_isogeny_json(field, list(polys)))


def verify_paper(fixtures_path=None):
    """Recompute every fixture row and compare against its stated values."""
    if fixtures_path is None:
        fixtures_path = default_fixtures_path()
    return _json.loads(_core.verify_paper_json(fixtures_path))


def search(
    field,
    degrees,
    strategy="exhaustive",
    budget=100000,
    seed=0,
    monic_only=True,
    lc_classes=False,
    normalize=True,
    top=10,
    threads=1,
    patience=200,
):
    """Search for many-point fibre products; returns leaderboard and stats."""
    return _json.loads(
        _core.search_json(
            field,
            list(degrees),
            strategy,
            budget,
            seed,
            monic_only,
            lc_classes,
            normalize,
            top,
            threads,
            patience,
        )
    )
