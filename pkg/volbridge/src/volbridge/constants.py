"""Reference constants for hyperbolic volume checks."""

# Volume of the ideal regular hyperbolic octahedron: 8 * Lobachevsky(pi/4),
# which evaluates to exactly four times Catalan's constant.
V_OCT = 3.6638623767088760602
