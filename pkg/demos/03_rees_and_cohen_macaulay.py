"""Rees algebras by saturation, linear type, depth and the spread."""

from diffrees import (GradedAlgebra, VariableContext, analytic_spread,
                      depth_and_cm, is_linear_type, parse_polynomial,
                      rees_ideal)

# Positive case: the cone over a conic.
ctx = VariableContext(("X", "Y", "Z"))
cone = GradedAlgebra.validate(ctx, [parse_polynomial(ctx, "X*Y - Z^2")])
rp = rees_ideal(cone)
print("quadric cone: test element", rp.test_element)
print("  linear type:", is_linear_type(rp))
print("  ", depth_and_cm(rp.ideal))
print("  spread:", analytic_spread(rp).value)

# Negative case: two coordinate lines; the symmetric algebra has torsion
# and the Rees algebra loses depth.
flat = VariableContext(("X", "Y"))
cross = GradedAlgebra.validate(flat, [parse_polynomial(flat, "X*Y")])
rp = rees_ideal(cross)
print("coordinate cross: torsion generators",
      [str(t) for t in rp.torsion_generators])
print("  linear type:", is_linear_type(rp))
print("  ", depth_and_cm(rp.ideal))
print("  spread:", analytic_spread(rp).value)
