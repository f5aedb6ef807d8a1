"""The full hexagram: sixty lines and the points and lines they organise into."""

from mysticum.hexagon import census, general_hex_scene

rep = census(general_hex_scene(seed=4))
for name, count in rep.counts.items():
    print(f"{name:>24}: {count}")
print()
for name, value in rep.cross_checks.items():
    print(f"{name:>32}: {value}")
print("\nEach Salmon point turns out to sit on four Cayley-Salmon lines.")
