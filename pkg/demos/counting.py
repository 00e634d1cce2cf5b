"""How many lines touch four general quadric surfaces?

The space of lines in P^3 is four-dimensional, and tangency to one quadric
is a single quadratic condition, so four general quadrics leave finitely
many common tangent lines.  The count is 2^4 times the degree of the
Grassmannian of lines, which is 2: thirty-two.

This script walks the general (k, n) bookkeeping: dimension, degree, and
the resulting tangency counts, against the much smaller classical counts
for spheres.
"""

from quadtangents import counts, sphere_tangent_line_count
from quadtangents.grassmann import catalan

# %% lines in P^3

c = counts(1, 3)
print(f"lines in P^3: Grassmannian dimension {c.dim}, degree {c.degree}")
print(f"tangents to {c.dim} general quadrics: 2^{c.dim} * {c.degree} = {c.total}")

# %% the gap between spheres and general quadrics

print("\n   n   spheres (3*2^(n-1))   general quadrics (2^d * deg)")
for n in range(3, 10):
    c = counts(1, n)
    print(f"{n:>4}   {sphere_tangent_line_count(n):>19}   {c.total:>28}")

# %% the degree of the line Grassmannian is a Catalan number

print("\ndegree of G(1,n) vs Catalan number C(n-1):")
for n in range(3, 10):
    print(f"  n={n}: degree {counts(1, n).degree:>6}   C_{n-1} = {catalan(n - 1)}")

# %% higher-dimensional flats

print("\nplanes tangent to quadrics:")
for k, n in [(2, 4), (2, 5), (3, 5)]:
    c = counts(k, n)
    print(f"  {k}-planes in P^{n}: dim {c.dim}, degree {c.degree}, "
          f"count {c.total}")
