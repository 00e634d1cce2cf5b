"""Common transversals: lines meeting four given lines in P^3.

Meeting a line is one linear condition on Pluecker coordinates, so four
lines cut the Grassmannian quadric in (generically) two points.  The solver
works exactly: the two transversals have coordinates in Q(sqrt(disc)), and
the sign of the discriminant decides whether they are real.
"""

from fractions import Fraction as F

from quadtangents import (
    check_plucker_relations,
    dual_plucker,
    incidence,
    line_through,
    moment_osculating_flat,
    tetrahedron_lines,
    transversals_to_4_lines,
)

# %% the coordinate tetrahedron: two rational transversals

lines = tetrahedron_lines()
result = transversals_to_4_lines(lines)
print(f"tetrahedron edges: {result.count} transversals, "
      f"{result.real_count} real, discriminant {result.discriminant}")
for t in result.transversals:
    print("  Pluecker:", t.vector.coords)
    checks = [incidence(t.vector, dual_plucker(l.dual())) for l in lines]
    print("  incidence values (all exactly zero):", checks)

# %% tangent lines of the twisted cubic

# The tangent lines of (s, s^2, s^3) at any four distinct parameters have
# exactly two real transversals; here the discriminant is an explicit
# positive rational.
tangents = [moment_osculating_flat(3, s) for s in (0, 1, 2, 3)]
result = transversals_to_4_lines(tangents)
print(f"\ntwisted-cubic tangents at 0,1,2,3: {result.real_count} real, "
      f"disc = {result.discriminant}")

tangents = [moment_osculating_flat(3, s) for s in (F(-5, 2), F(1, 3), 2, 7)]
result = transversals_to_4_lines(tangents)
print(f"at -5/2, 1/3, 2, 7: {result.real_count} real, disc = {result.discriminant}")
for t in result.transversals:
    rel = check_plucker_relations(t.vector)
    print("  exact coordinates in Q(sqrt(disc)):",
          [str(c) for c in t.vector.coords][:3], "...")
    print("  Pluecker relation residual:", rel)

# %% a complex pair

skew = [
    line_through([3, 0, 3, 0], [-3, -1, 1, 0]),
    line_through([0, 3, 3, -1], [0, -1, 1, -2]),
    line_through([1, -2, -1, -2], [3, -3, 1, 3]),
    line_through([-1, 1, 2, 3], [1, -2, -1, -3]),
]
result = transversals_to_4_lines(skew)
print(f"\na skewed configuration: disc = {result.discriminant} "
      f"-> {result.real_count} real of {result.count}")
print("the two transversals are complex conjugates:",
      [str(result.transversals[0].vector.coords[2]),
       str(result.transversals[1].vector.coords[2])])

# %% degenerate input: four concurrent lines

origin = [1, 0, 0, 0]
concurrent = [line_through(origin, [0, 1, 0, 0]),
              line_through(origin, [0, 0, 1, 0]),
              line_through(origin, [0, 0, 0, 1]),
              line_through(origin, [0, 1, 1, 1])]
result = transversals_to_4_lines(concurrent)
print(f"\nfour lines through one point: infinite family? {result.infinite}")
