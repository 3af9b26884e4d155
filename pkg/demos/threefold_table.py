"""Threefold contributions, computed two ways.

Run with ``python demos/threefold_table.py``.
"""

from adestringy import (
    SingularitySpec,
    build_resolution,
    classify_polynomiality,
    contribution_closed,
    contribution_from_strata,
    rf_limit_at_one,
)

# %% One representative per row of the m = 4 table
specs = [
    SingularitySpec("A", 3, 4),
    SingularitySpec("A", 4, 4),
    SingularitySpec("D", 6, 4),
    SingularitySpec("D", 7, 4),
    SingularitySpec.of("E6", m=4),
    SingularitySpec.of("E7", m=4),
    SingularitySpec.of("E8", m=4),
]

for spec in specs:
    res = build_resolution(spec)
    by_strata = contribution_from_strata(res)
    closed = contribution_closed(spec)
    assert by_strata == closed
    tag = "polynomial" if classify_polynomiality(spec) else "rational"
    print(f"{spec.name:4} {len(res.divisors):2} divisors  {tag:10} "
          f"euler {rf_limit_at_one(closed)!s:6}  {closed.to_text()}")

# %% Higher dimensions never give polynomials
spec = SingularitySpec("D", 4, 5)
print()
print(spec, "->", contribution_closed(spec).to_text())
