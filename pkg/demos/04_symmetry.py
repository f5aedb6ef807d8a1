"""Label symmetries: who fixes a mystic conic, and how pencils of them split up."""

from mysticum.symmetry import conic_stabilizer_census

census = conic_stabilizer_census()
print(f"classical conics examined: {census.conics}")
print(f"stabilizer orders: {census.orders}")
print(f"dihedral stabilizers: {census.dihedral}")
print("\nFor the pencil orbits run:  mysticum octagon census --scene SCENE --pencils")
