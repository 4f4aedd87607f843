"""Saturating J1 + J2 and checking that FS M is symmetric while F M is not.

Run: python3 demos/symmetric_quotient.py
"""

from freecourant import AnchoredModule, FreeLeibniz, build_quotient, check_symmetric, format_reports

M = AnchoredModule.from_config({"vars": ["x"], "generators": ["e"], "anchor": [["1"]]})
F = FreeLeibniz(M, 3, 3)

print(format_reports(check_symmetric(F), "F M itself", max_witnesses=1))

Q = build_quotient(F)
sat = Q.saturation
print(f"\nrelation rank per saturation round: {sat.history} (stopped at delta={sat.delta})")
for k, n, r, d in Q.dims():
    print(f"  weight {k}: {n} words, {r} relations, {d} survive")

kinds = {}
for g in Q.generators:
    kinds[g.kind] = kinds.get(g.kind, 0) + 1
print(f"nonzero generators: {kinds}")
g = Q.generators[0]
print(f"e.g. {g.kind} with f={g.f.format(M.vars)}: {F.format(g.element)}")
print(f"     its anchor: {F.anchor(g.element).format(M.vars)}")

# words that carry a relation pivot are rewritten in terms of the cobasis
for w in [w for w in sat.space.pivot_labels() if len(w) == 2]:
    print(f"{F.format_word(w)} = {Q.format(Q.basis(w))} in FS M")

print()
print(format_reports(check_symmetric(Q), "FS M"))
