"""Feeding a hand-written resolution through the strata route.

A resolution is a list of divisors with discrepancies and the Hodge-Deligne
polynomials of the open strata.  Here: the A1 point in five variables,
whose single exceptional divisor is a smooth three-dimensional quadric.
"""

import json

from adestringy import SingularitySpec, build_resolution, contribution_from_strata, rf_limit_at_one
from adestringy.catalog import ResolutionError, resolution_from_json
from adestringy.stringy import stringy_euler_direct

data = {
    "divisors": [{"label": "D1", "discrepancy": 2}],
    "strata": [{"divisors": ["D1"], "hodge": ["1", "1", "1", "1"]}],
}
res = resolution_from_json(data, source="hand-written")
E = contribution_from_strata(res)
print("contribution:", E.to_text())
print("euler:", rf_limit_at_one(E), "=", stringy_euler_direct(res))
assert E == contribution_from_strata(build_resolution(SingularitySpec("A", 1, 5)))

# the catalog emits the same schema, so any catalog entry can be edited and fed back
print(json.dumps(build_resolution(SingularitySpec("D", 4, 5)).to_json())[:120], "...")

# broken inputs come back with JSON pointers
bad = {"divisors": [{"label": "D1", "discrepancy": -1}],
       "strata": [{"divisors": ["D1"], "hodge": ["1"]}, {"divisors": ["D1"], "hodge": ["2"]}]}
try:
    resolution_from_json(bad)
except ResolutionError as exc:
    print(exc)
