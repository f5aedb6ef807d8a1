"""Pascal's line from two cubics, without ever computing their last three meets.

Six rational points on the unit circle carry two triangles' worth of sides.
The two cubics l(AB)l(CD)l(EF) and l(BC)l(DE)l(FA) meet in nine points: the
six vertices plus three more. A combination of the cubics divisible by the
circle leaves a linear quotient, and that line is Pascal's line.
"""

from mysticum import residual_curve
from mysticum.hexagon import HexScene, classical_pascal_line, general_hex_scene

scene = general_hex_scene(seed=11)
hexagon = HexScene(scene)
print("vertices:")
for label, p in scene.points.items():
    print(f"  {label} = {p}")

d1 = hexagon.cubic("AB CD EF")
d2 = hexagon.cubic("BC DE FA")
cert = residual_curve(d1, d2, scene.conic, list(scene.points.values()))
print(f"\nlambda = {cert.lam}, mu = {cert.mu}, auxiliary parameter {cert.aux_param}")
print(f"quotient (degree {cert.residual.degree}): {cert.residual}")
print("identity re-multiplies exactly:", cert.verify())
print("same as the line through the opposite-side meets:",
      classical_pascal_line(hexagon, "ABCDEF").coeffs == tuple(cert.residual.coeffs))
