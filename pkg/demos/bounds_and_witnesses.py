"""
Bounds, defects, and the record graphs of degree 11
===================================================

The bipartite Moore bound caps how many vertices a bipartite graph of
maximum degree d and diameter D can have. This script walks the bound's
values, then builds the three published 190-vertex degree-11 graphs and
re-verifies every claimed property from scratch.
"""

from bipmoore import (
    KNOWN_DEGREE11_SPECS,
    build_phi_spec,
    defect,
    diameter,
    girth,
    moore_bound,
    parse_spec,
    regularity_check,
)

print("Moore bounds at diameter 3:")
for d in (4, 5, 6, 7, 11):
    print(f"  degree {d:2d}: {moore_bound(d, 3):4d}")

print()
print("The known degree-7 graph on 80 vertices has defect",
      defect(7, 3, 80).defect, "- optimal, since defect 4 is impossible (see the audit demo).")

print()
print("Rebuilding the degree-11 record graphs:")
for text in KNOWN_DEGREE11_SPECS:
    g = build_phi_spec(parse_spec(text))
    record = defect(11, 3, g.order)
    print(
        f"  {text}\n"
        f"    order {g.order}, {regularity_check(g).degree}-regular,"
        f" diameter {diameter(g)}, girth {girth(g)}, defect {record.defect}"
    )

print()
print("Every graph above realizes 190 vertices at degree 11 and diameter 3,")
print("which pins the best known lower bound for that parameter pair.")
