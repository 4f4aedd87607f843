"""Factoring an anchored map through C(FS M), and two ways it can fail.

Run: python3 demos/universal_property.py
"""

from freecourant import (
    AnchoredMap,
    AnchoredModule,
    Dorfman,
    FreeLeibniz,
    NonVanishingOnIdeal,
    NonVanishingOnInv,
    build_associated_courant,
    build_quotient,
    descend_to_symmetric,
    extend_to_free,
    format_reports,
    natural_courant,
    universal_pipeline,
)
from freecourant.universal import broken_equal_target

M = AnchoredModule.from_config({"vars": ["x"], "generators": ["e"], "anchor": [["1"]]})
Q = build_quotient(FreeLeibniz(M, 3, 3))
C = build_associated_courant(Q)
D = Dorfman(["x"])
phi = AnchoredMap(M, D, [D.parse("∂x + x*dx")])

m = universal_pipeline(C, phi, natural_courant(D))
print("phi(e) = ∂x + x dx")
for w in Q.labels[-4:]:
    print(f"  phi1({Q.free.format_word(w)}) = {D.format(m.phi1.images[w])}")
print(format_reports(m.reports, "diagrams into Dorfman"))

# a pairing that is not invariant cannot receive phi2
try:
    universal_pipeline(C, phi, broken_equal_target(D))
except NonVanishingOnInv as ex:
    print(f"\nbroken target: {ex}")

# F M is not symmetric, so F phi into it does not kill J1
F = FreeLeibniz(M, 3, 3)
try:
    descend_to_symmetric(extend_to_free(AnchoredMap(M, F, [F.generator(0)]), Q.free), Q)
except NonVanishingOnIdeal as ex:
    print(f"non-symmetric target: {ex}")
