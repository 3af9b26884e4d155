"""Stringy E-function of a projective threefold with three D4 points.

The smooth locus has Hodge-Deligne polynomial ``w^3 + 5w^2 - w - 2``;
adding three local contributions gives a palindromic polynomial with
nonnegative coefficients.
"""

from adestringy import (
    SingularitySpec,
    W,
    assemble_global,
    build_resolution,
    contribution_from_strata,
    rf_as_polynomial,
)
from adestringy.stringy import make_report

smooth = W**3 + 5 * W**2 - W - 2
d4 = contribution_from_strata(build_resolution(SingularitySpec("D", 4, 4)))
print("local contribution of D4:", d4.to_text())

E = assemble_global(smooth, [d4] * 3)
print("E_st:", E.to_text())

report = make_report("three D4 points", E, dim=3, projective=True)
print("hodge numbers:", list(report.hodge_numbers))
for name, verdict in report.checks.items():
    print(f"  {name:16} {verdict.value}")

# same thing from the command line:
#   printf 'w^3 + 5w^2 - w - 2' > smooth.txt
#   adestringy assemble --smooth-part smooth.txt --sing D:4:m=4 --sing D:4:m=4 \
#       --sing D:4:m=4 --projective --dim 3
assert rf_as_polynomial(E) == W**3 + 5 * W**2 + 5 * W + 1
