# Any piecewise-constant robust flow can be averaged on unit intervals
# without changing its value or breaking feasibility.

import random
from fractions import Fraction

from robustflow import PiecewiseConstantFlow, Path, discretize, gen_log_gap, robust_value
from robustflow.evaluation import pcf_max_load_ratio, pcf_robust_value

inst = gen_log_gap(3)[0].replace(gamma=1)
p, q = Path(("e0", "estar")), Path(("e2", "estar"))
flow = PiecewiseConstantFlow({
    p: [(Fraction(1, 3), Fraction(1, 2)), (Fraction(5, 3), 0)],
    q: [(0, Fraction(3, 4)), (Fraction(1, 2), Fraction(1, 4))],
})
print("max load / capacity:", pcf_max_load_ratio(flow, inst))
print("value before:", pcf_robust_value(flow, inst))

sol = discretize(flow, inst)
for t in sol:
    print("  ", t.path, "rate", t.rate, f"over [{t.a},{t.b})")
print("value after: ", robust_value(sol, inst).robust_value)

# The same holds on random flows.
rng = random.Random(0)
same = 0
for _ in range(20):
    f = PiecewiseConstantFlow({
        p: [(Fraction(rng.randrange(9), 3), Fraction(rng.randrange(4), 4))],
        q: [(Fraction(rng.randrange(9), 3), Fraction(rng.randrange(4), 4))],
    })
    same += robust_value(discretize(f, inst), inst).robust_value == pcf_robust_value(f, inst)
print(same, "of 20 random flows keep their value")
