"""Centralizers of ordinary differential operators over differential fields."""

import json

from ._core import ContractError, Error, ParseError, ResourceError, almost_commuting, run_json, serialize_entry

__all__ = [
    "ContractError",
    "Error",
    "ParseError",
    "ResourceError",
    "almost_commuting",
    "run",
    "serialize_entry",
]


def run(operation, **options):
    """Run one job and return (exit_code, report dict).

    Options use the same keys as the JSON config of the command line tool,
    e.g. ``run("centralizer", field="hyperbolic", op="D^3 + 6/eta^2*D", level=4)``.
    """
    config = dict(options, operation=operation)
    code, report = run_json(json.dumps(config))
    return code, json.loads(report)
