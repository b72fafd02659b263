"""From a group presentation to a ball permutoid.

Run:  python demos/02_ball_permutoids_from_presentations.py
"""

from permutoid_lab import (
    FreeGroup,
    cameron_permutoid,
    cayley_ball,
    format_presentation,
    parse_presentation,
    radius_extension,
    todd_coxeter,
    triangulate,
    universal_group,
    validate_morphism,
)

# Coset enumeration realizes a finite presentation as a multiplication
# table (element 0 is the identity).
s3 = parse_presentation("gens: a, b\nrels: a^2, b^3, a b a b")
group = todd_coxeter(s3, max_cosets=100)
print("symmetric group on three letters, order", group.order)

# Word-metric balls: elements reachable by short words in the generators
# and their inverses, each with a geodesic representative.
ball = cayley_ball(group, 2)
print("|B_1| =", ball.prefix_size(1), " |B_2| =", ball.size)

# The ball permutoid: left multiplication by each inner-ball element,
# acting from the radius-rho ball into the radius-2rho ball.
cam = cameron_permutoid(group, 1)
print(
    "\nball permutoid at radius 1:",
    cam.permutoid.ground_size,
    "points,",
    len(cam.permutoid.elements),
    "elements, labels",
    cam.labels,
)

# Growing the radius embeds one ball permutoid into the next.
free = FreeGroup(1)
ext = radius_extension(free, 1, 2)
kind = validate_morphism(ext)
print(
    "\ninfinite cyclic group: radius 1 -> 2 gives an extension of",
    f"{ext.source.ground_size} points into {ext.target.ground_size},",
    "extension?",
    kind.is_extension,
)

# The universal group of a permutoid: one generator per element, one
# relation per witness triple.  At large enough radius it recovers the
# group that built the ball.
uni = universal_group(cameron_permutoid(group, 3).permutoid)
print("\nuniversal group of the radius-3 ball permutoid:")
print("  generators:", len(uni.generators), " relators:", len(uni.relators))
print("  realized order:", todd_coxeter(uni, 10_000).order)

# Triangulation: present the same group with one generator per ball
# element and only length-three relations.
tri = triangulate(s3, 3)
print("\ntriangulated presentation:", len(tri.generators), "generators,",
      len(tri.relators), "relators, realized order",
      todd_coxeter(tri, 10_000).order)
print(format_presentation(tri).splitlines()[0])
