"""
Two-step residues and the exhaustive offset search
==================================================

Whether the circulant-style graph on 2m vertices with offsets A has
diameter 3 reduces to a covering question: the residues reachable from one
vertex in exactly two steps must exhaust Z_m. That turns a graph search
into integer arithmetic, which is what makes exhausting whole parameter
ranges cheap.
"""

import time

from bipmoore import (
    PhiSpec,
    SearchTask,
    diameter_at_most_3,
    format_spec,
    max_m,
    search_offsets,
    two_step_residues,
)

# A single offset can already cover everything: {4} works at m = 11.
cov = two_step_residues(PhiSpec(11, (4,)))
print("m=11, offsets {4}: covered", sorted(cov.covered), "-> full:", cov.full)

# One step up the modulus ladder it fails: residue 6 is unreachable.
cov12 = two_step_residues(PhiSpec(12, (4,)))
print("m=12, offsets {4}: missing", sorted(set(range(12)) - cov12.covered))

print()
print("Exhausting each degree at its maximal modulus m = d*d - d - 1:")
for d in (4, 5, 6, 7, 8, 9):
    m = d * d - d - 1
    start = time.perf_counter()
    report = search_offsets(SearchTask(d=d, m=m))
    elapsed = time.perf_counter() - start
    witnesses = ", ".join(format_spec(s) for s in report.solutions) or "none"
    print(
        f"  d={d}, m={m:3d}: {witnesses:18s}"
        f" ({report.counters.nodes_visited} nodes, {elapsed:.2f}s)"
    )

print()
print("Degrees 6 through 9 admit nothing at the maximal modulus; degrees 4 and 5 do.")
print("Scanning downward finds the largest workable modulus per degree:")
for d in (4, 5, 6, 7, 8):
    result = max_m(d, 5, d * d - d - 1)
    print(f"  degree {d}: best modulus {result.best_m}, witness {format_spec(result.witnesses[0])}")

# Membership checking doubles as verification for published tuples.
spec = PhiSpec(95, (4, 7, 16, 27, 38, 52, 62, 81))
print()
print(f"{format_spec(spec)} covers Z_95:", diameter_at_most_3(spec))
