"""
The degree-7 non-existence audit
================================

A bipartite graph of degree 7, diameter 3 and defect 4 would have 82
vertices and a short-cycle structure split across three kinds of unions.
The audit mechanizes every way those unions could cover the graph - two
entries are computations (an exhaustive offset search and a contraction
enumeration), the rest are arithmetic - and confirms that none survives,
which settles the optimal order 80 for degree 7.
"""

from bipmoore import contraction_feasibility, nonexistence_case_audit

report = nonexistence_case_audit(7)
print(report.to_text())

print()
print("The contraction entry depends on the quotient cap d-3 = 4 that the")
print("component-joining rule imposes. Without the cap, plain divisibility")
print("admits one multiset:")

survey = contraction_feasibility(ratio_cap=None)
print(f"  uncapped feasible multisets: {[list(p) for p in survey.feasible]}")
survey_capped = contraction_feasibility()
print(f"  capped   feasible multisets: {[list(p) for p in survey_capped.feasible]}")

print()
print("Generic degrees rerun only the arithmetic entries; the mixed cases")
print("rely on degree-7 reach constants and are reported out-of-scope:")
report6 = nonexistence_case_audit(6)
print(f"  degree 6 verdict: {report6.verdict}")
