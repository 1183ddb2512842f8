"""Games as dense tables, and the exact transforms that rewrite them.

A cooperative game on n players is a table of 2**n worths indexed by
coalition bitmask (bit i set = player i+1 present).  This script builds a
few small games, looks at their Mobius coefficients, and applies the two
difference operators everything else in the package is built from.
"""

import numpy as np

from pbindex import (
    PseudoBooleanFunction,
    eval_multilinear_extension,
    mask_from_players,
    mobius,
    players_from_mask,
    s_difference,
    sigma_s,
    unanimity_game,
    zeta,
)


def show(label, table):
    n = table.n
    cells = ", ".join(
        f"{{{','.join(map(str, players_from_mask(m)))}}}={table.values[m]:g}"
        for m in range(1 << n)
    )
    print(f"{label}: {cells}")


print("== the two-player OR game ==")
or_game = PseudoBooleanFunction(2, [0, 1, 1, 1])
show("worths", or_game)

a = mobius(or_game)
print("Mobius coefficients:", a.coeffs.tolist())
print("so OR = u_{1} + u_{2} - u_{1,2}, and zeta() undoes the transform:")
show("zeta(mobius(f))", zeta(a))

print()
print("== multilinear extension ==")
print("the unique multilinear interpolant through the 4 vertices;")
print("at (p1, p2) it equals p1 + p2 - p1*p2:")
for x in ([1.0, 1.0], [0.3, 0.8], [0.5, 0.5]):
    print(f"  fbar({x}) = {eval_multilinear_extension(a, x):.6f}")

print()
print("== discrete derivatives ==")
print("Delta_S f stacks single-variable differences; sigma_S f switches the")
print("whole block S between all-in and all-out:")
show("Delta_{1} OR", s_difference(or_game, mask_from_players([1], 2)))
show("sigma_{1} OR", sigma_s(or_game, mask_from_players([1], 2)))

print()
print("== unanimity games are the natural basis ==")
u = unanimity_game(3, mask_from_players([1, 3], 3))
show("u_{1,3}", u)
print("its Mobius transform is a single spike:", mobius(u).coeffs.tolist())

print()
print("== a bigger random game roundtrips exactly ==")
rng = np.random.default_rng(0)
f = PseudoBooleanFunction(10, rng.uniform(-1, 1, 1 << 10))
err = np.max(np.abs(zeta(mobius(f)).values - f.values))
print(f"n=10 roundtrip max error: {err:.2e}")
