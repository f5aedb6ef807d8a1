"""Pentagons as squashed hexagons, and the tangent-line side of the story."""

from mysticum.dual_degenerate import DUAL_STATEMENTS, pentagon_limit, tangent_scene, verify_dual

rep = pentagon_limit(seed=6)
print("tangent-at-A line:", rep.limit_line)
for n, err in rep.errors.items():
    print(f"  F one step 1/{n} away from A: probe error {float(err):.2e}")

print()
for stmt, (n, _) in DUAL_STATEMENTS.items():
    print(f"{stmt}: circumscribed {n}-gon ->", verify_dual(stmt, tangent_scene(n, seed=6)))
