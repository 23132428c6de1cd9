"""
Stuck-crosspoint fault testing
==============================

The single stuck-crosspoint model: every crosspoint, stuck connected and
stuck disconnected, classified as detectable (with a test vector) or not.
"""

from plakit import (
    Fault,
    PlaProfile,
    compile_equations,
    enumerate_faults,
    eval_pla,
    find_test_vector,
    inject_fault,
    parse_equations,
)

state, report = compile_equations(
    parse_equations("M = A'BC + AB'C + ABC' + ABC"),
    PlaProfile(3, 4, 1),
    minimize=True,
)

# One fault by hand: the OR crosspoint that feeds term BC into M reads as
# open. Rows where only BC covered the function are the ones that change.
fault = Fault("or", 0, 0, "disconnected")
vector = find_test_vector(state, fault)
print(f"{fault}: apply {vector}")
faulty = inject_fault(state, fault)
print("good device:", eval_pla(state, vector), "| faulty device:",
      eval_pla(faulty, vector))

# The full sweep. Faults stuck at the programmed value change nothing and
# are undetectable; so are faults buried where no output can see them.
faults = enumerate_faults(state.profile)
detected = {}
undetectable = []
for f in faults:
    v = find_test_vector(state, f)
    if v is None:
        undetectable.append(f)
    else:
        detected[f] = v

print(f"\n{len(faults)} single faults on this device")
print(f"{len(detected)} detectable, {len(undetectable)} undetectable")
print("coverage: %.1f%%" % (100.0 * len(detected) / len(faults)))

# A compact test set: the distinct vectors, each exposing many faults.
test_set = sorted(set(detected.values()))
print("\ntest vectors:", " ".join(test_set))
for v in test_set:
    exposed = sum(1 for f, tv in detected.items() if tv == v)
    print(f"  {v} exposes {exposed} faults at the lowest-row choice")
