# Temporally repeated flows versus general robust flows on the two gap families.
#
# A temporally repeated (TR) flow pushes a constant rate into each path for
# as long as the path can still deliver by the horizon.  Against an adversary
# who may delay up to gamma edges, that rigidity costs a lot.

from robustflow import gen_linear_gap, gen_log_gap, solve_general, solve_tr_exact

# The log-gap instance for r = 3: three parallel edges trade travel time for
# delay, so every path takes exactly T = 3 once its edge is delayed.
inst, cert = gen_log_gap(3)
for e in inst.edges:
    print(e.id, "tau =", e.tau, "delta =", e.delta)

tr = solve_tr_exact(inst)
print("best TR value:", tr.robust_value)
for p, x in tr.flow.rates.items():
    print("  ", p, "rate", x)

# The optimum equalizes the damage: every pair of delayed parallel edges
# leaves the same 6/11 units.
general = solve_general(inst)
print("best general value:", general.robust_value)
for t in general.solution:
    print("  ", t.path, "rate", t.rate, f"over [{t.a},{t.b})")

# Sweeping r shows the TR optimum is 1/H_r while the general optimum stays 1.
print("\nr   TR      general  gap")
for r in range(2, 6):
    inst, _ = gen_log_gap(r)
    a, b = solve_tr_exact(inst).robust_value, solve_general(inst).robust_value
    print(r, " ", str(a).ljust(7), b, "      ", b / a)

# With unbounded delays the gap grows linearly instead.
print("\nlinear family")
for r in range(2, 5):
    inst, _ = gen_linear_gap(r)
    a, b = solve_tr_exact(inst).robust_value, solve_general(inst).robust_value
    print(r, a, b, b / a)
