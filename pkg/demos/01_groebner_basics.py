"""Groebner bases, elimination, saturation and dimension, step by step."""

from diffrees import LEX, IdealHandle, VariableContext, parse_polynomial

ctx = VariableContext(("X", "Y", "Z"))
X, Y, Z = ctx.gens()

# The twisted cubic as a graph: eliminating X with a lex basis leaves the
# equation of the projected curve.
curve = IdealHandle(ctx, [Y - X**2, Z - X**3])
print("lex basis of (Y - X^2, Z - X^3):")
for g in curve.groebner_basis(LEX):
    print("  ", g)

# Membership is a normal-form computation.
p = parse_polynomial(ctx, "Y^3 - Z^2")
print("Y^3 - Z^2 in the ideal:", curve.contains(p))

# Saturation removes the component supported on a hypersurface: here the
# X-axis multiplicity drops out in one elimination.
I = IdealHandle(ctx, [X**2 * Y])
print("(X^2*Y : X^inf) =", I.saturation(X))

# Dimension via independent variable subsets modulo leading terms.
axes = IdealHandle(ctx, [X * Y, Y * Z])
report = axes.krull_dimension()
print("dim Q[X,Y,Z]/(XY, YZ) =", report.dimension,
      "witness:", report.witness)
