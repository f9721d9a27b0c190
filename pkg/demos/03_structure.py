# Structural parameters that govern how far TR flows can fall behind.

from robustflow import Edge, Instance, analyze, gen_linear_gap, gen_log_gap
from robustflow.analysis import compute_k

# k measures how many pairwise separated arrival windows one edge must serve.
for name, (inst, _) in (("log-gap", gen_log_gap(3)), ("linear-gap", gen_linear_gap(3))):
    rep = compute_k(inst)
    print(name, "k =", rep.k, "busiest edge witnesses:",
          max(rep.witnesses.items(), key=lambda kv: len(kv[1])))

print(analyze(gen_log_gap(3)[0], gap=True).record())
print(analyze(gen_linear_gap(3)[0], gap=True).record())

# With finite delays the adversary destroys a bounded amount of flow, so for
# long horizons TR flows become nearly optimal.
for T in (10, 100, 1000):
    inst = Instance(("s", "d"), [Edge("e", "s", "d", 1, 0, 1)], "s", "d", T, 1)
    print(f"T={T}:", analyze(inst, gap=True, bound=True).record())
