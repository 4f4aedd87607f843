"""Words, brackets and the A-action in the free Leibniz pseudoalgebra F M.

Run: python3 demos/free_leibniz_tour.py
"""

from freecourant import AnchoredModule, FreeLeibniz, TruncationOverflow, check_leibniz, format_reports
from freecourant.poly import Poly

M = AnchoredModule.from_config({"vars": ["x"], "generators": ["e1", "e2"], "anchor": [["1"], ["x"]]})
F = FreeLeibniz(M, 3, 3)
print(M)
print(f"{len(F.labels)} basis words with weight <= 3 and total degree <= 3\n")

# a bracket with a weight-1 left argument is just the tensor product
for expr in ("[e1, e2]", "[e1, (x*e2)⊗(e1)]", "[e1⊗e2, e1]", "[e2⊗e1, (x*e1)]"):
    print(f"{expr:<22} = {F.format(F.parse(expr))}")

# the A-action peels one factor at a time: f(m⊗w) = m⊗(fw) - a(m)(f) w
x = Poly.var(0, 1)
u = F.parse("e1⊗e2")
print(f"\nx · (e1⊗e2) = {F.format(F.act(x, u))}")
print(f"x · (e2⊗e1) = {F.format(F.act(x, F.parse('e2⊗e1')))}")

# leaving the (W_max, P_max) piece is an error, never a silent truncation
try:
    F.parse("[e1⊗e2, e2⊗e1]")
except TruncationOverflow as ex:
    print(f"[e1⊗e2, e2⊗e1] -> TruncationOverflow: {ex}")

# the induced anchor turns brackets into commutators of vector fields
for expr in ("e1⊗e2", "e2⊗e1", "e1⊗e1"):
    print(f"Fa({expr}) = {F.anchor(F.parse(expr)).format(M.vars)}")

print()
print(format_reports(check_leibniz(F), "Leibniz pseudoalgebra axioms on F M"))
