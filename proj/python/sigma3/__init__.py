"""Python access to the sigma3 library: reports, families and check suites."""

import json

from ._sigma3 import ResourceCapExceeded, __version__, family_pcp, normalize_path, pq, suite_names
from . import _sigma3


def report(pcp="", family="", e=0, path="", depth=1, steps=(), descendants=False, max_order_exp=20):
    """Report for one group as a dict (same content as `sigma3 --json report`)."""
    return json.loads(
        _sigma3.report_json(pcp, family, e, path, depth, list(steps), descendants, max_order_exp)
    )


def run_suite(name, max_order_exp=20, budget=0.0):
    return json.loads(_sigma3.run_suite_json(name, max_order_exp, budget))


__all__ = [
    "ResourceCapExceeded",
    "__version__",
    "family_pcp",
    "normalize_path",
    "pq",
    "report",
    "run_suite",
    "suite_names",
]
