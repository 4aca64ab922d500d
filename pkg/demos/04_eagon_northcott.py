"""Eagon-Northcott complexes and the height criterion for exactness."""

from diffrees import (PolyMatrix, VariableContext, build_en, en_acyclicity,
                      koszul_complex)

ctx = VariableContext(("X", "Y", "Z", "W"))
X, Y, Z, W = ctx.gens()

# One row degenerates to the Koszul complex.
row = PolyMatrix(ctx, ((X, Y, Z),))
print("one-row complex ranks:", build_en(row).ranks,
      "= Koszul:", koszul_complex((X, Y, Z)).ranks)

# The 2x3 catalecticant: its minor ideal has maximal height, so the
# complex is a resolution.
cat = PolyMatrix(ctx, ((X, Y, Z), (Y, Z, W)))
en = build_en(cat)
print("catalecticant ranks:", en.ranks, "d o d = 0:", en.is_complex())
print("first differential:", [str(p) for p in en.differentials[0].row(0)])
print("acyclicity:", en_acyclicity(cat))

# A repeated entry keeps the height low and the criterion fails.
flat = VariableContext(("X", "Y"))
fx, _ = flat.gens()
print("degenerate row:", en_acyclicity(PolyMatrix(flat, ((fx, fx),))))
