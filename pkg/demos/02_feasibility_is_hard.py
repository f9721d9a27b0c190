# Checking whether a given robust flow over time is feasible.
#
# The clique construction hides a clique question inside a single capacity
# check: one capacitated edge (d0, d1) and one unit path per graph edge.

from robustflow import gen_clique_reduction, verify_feasibility

inst, cand = gen_clique_reduction([1, 2, 3], [(1, 2), (2, 3), (1, 3)], 3)
print("T =", inst.T, "gamma =", inst.gamma, "paths:", len(cand))
v = verify_feasibility(cand, inst)
print(v.record(inst))

# Delaying all three vertex edges makes each candidate path pick up both of
# its delays, and all three land on (d0, d1) at t = 16.

# A 4-cycle has no triangle, so nothing collides.
inst, cand = gen_clique_reduction("abce", [("a", "b"), ("b", "c"), ("c", "e"), ("e", "a")], 3)
print("C4:", verify_feasibility(cand, inst))

# For r = 3 the capacity is C(3,2) - 1 = 2, and three paths that are each
# delayed only once can still meet.  K_{2,3} is triangle-free, yet:
edges = [(a, b) for a in "pq" for b in "xyz"]
inst, cand = gen_clique_reduction(list("pqxyz"), edges, 3)
v = verify_feasibility(cand, inst)
print("K23:", v.record(inst), "| last instant:", 2 ** (len(edges) + 1))

# From r = 4 on, r once-delayed paths stay below C(r,2) - 1 and only a
# clique can overload the edge.
k4 = [(i, j) for i in range(1, 5) for j in range(i + 1, 5)]
inst, cand = gen_clique_reduction([1, 2, 3, 4], k4, 4)
print("K4, r=4:", verify_feasibility(cand, inst).record(inst))
