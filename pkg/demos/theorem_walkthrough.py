"""Build both sides of a two-parameter identity and show where a wrong sign first shows up."""

from qhecke import harness
from qhecke.series import render_text

case = harness.make_case("mf4", 12, t=1, m=1)
lhs, rhs = harness.RECIPES[case.recipe](6, **case.kwargs)
print("left side to q^3:")
print(render_text(lhs, 3))
print(harness.verify(case).line())

# flip the sign of the double-product term and the comparison fails at the constant term
bad = harness.make_case("mf4", 12, t=1, m=1, lead_sign=-1)
print(harness.verify(bad).line())

for name in ("base", "functional"):
    print(harness.run_suite(name).to_text().splitlines()[-1])
