"""The disc family D(i) and the closed family C(i).

D(i) is the disc grown by i couplings of long cells onto the basic short
cell; C(i) closes it up.  Both have explicit skeletons, and the face
boundaries are traced mechanically through them.
"""

from foldcx import build_C, build_D, classify, free_faces, isomorphic, kp, odd_part

for i in (0, 1, 2, 3):
    d = build_D(i)
    print(
        f"D:{i}: {len(d.complex.vertices)} vertices, {len(d.complex.edges)} edges,"
        f" {len(d.complex.faces)} faces, free edges {sorted(free_faces(d.complex))}"
    )

for i in (1, 3, 5):
    c = build_C(i)
    print(f"C:{i}: {len(c.complex.vertices)} vertices, no free faces:",
          not free_faces(c.complex))

# the smallest closed-up complex is the target itself
print("C:1 isomorphic to the target:", isomorphic(build_C(1), kp()) is not None)

# even indices collapse to their largest odd divisor
for i in (2, 6, 12, 40):
    print(f"C:{i} == C:{odd_part(i)}:",
          isomorphic(build_C(i), build_C(odd_part(i))) is not None)

# mirror variants reverse every a-edge; for C they are isomorphic to the
# plain complexes, for D they are genuinely different
print("mirror C:5 ~ C:5:", isomorphic(build_C(5, "tilde"), build_C(5)) is not None)
print("mirror D:2 ~ D:2:", isomorphic(build_D(2, "tilde"), build_D(2)) is not None)
print("classify recognizes the mirror disc:", classify(build_D(2, "tilde")))
