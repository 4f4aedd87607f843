"""The symmetric square, its Inv quotient R(E) and the associated Courant data C(E).

Run: python3 demos/associated_courant.py
"""

from freecourant import (
    AnchoredModule,
    FreeLeibniz,
    SymSquare,
    build_associated_courant,
    build_quotient,
    check_precourant,
    check_square,
    format_reports,
)

M = AnchoredModule.from_config({"vars": ["x"], "generators": ["e"], "anchor": [["1"]]})
Q = build_quotient(FreeLeibniz(M, 4, 2))
sq = SymSquare(Q)
e = Q.parse("e")

ee = sq.pair(e, e)
print(f"mu_left(e)(e⊙e)  = {sq.format(sq.mu_left(e, ee))}")
print(f"mu_right(e)(e⊙e) = {sq.format(sq.mu_right(e, ee))}")
print(f"I(e, e, e)       = {sq.format(sq.inv_generator(e, e, e)) or '0'}")
xe = Q.parse("(x*e)")
print(f"I(x e, e, e)     = {sq.format(sq.inv_generator(xe, e, e))}")

print()
print(format_reports(check_square(sq), "bimodule lemma on E⊙²"))

C = build_associated_courant(Q)
res = C.residue
print(f"\nR(E) per weight (pairs, relations, survivors): {[t[1:] for t in res.dims()]}")
print(f"(e | e⊗e) = {C.format_value(C.pairing(e, Q.parse('e⊗e')))}")
print()
print(format_reports(check_precourant(C), "C(FS M)"))
