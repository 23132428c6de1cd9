"""
Simulation and exhaustive verification
======================================

Evaluating a programmed device vector by vector, proving it equivalent to
its source equations, and realizing active-low outputs with the XOR bit.
"""

from plakit import (
    PlaProfile,
    compile_equations,
    equivalent,
    eval_pla,
    output_masks,
    parse_equations,
    parse_expression,
    set_polarity,
    table_from_expr,
)

equations = parse_equations("F = ABC + A'BC + AB'C'")
state, report = compile_equations(equations, PlaProfile(3, 4, 1))

# Vector-at-a-time simulation mirrors a bench supply-and-probe session.
print("A B C | F")
for row in range(8):
    bits = format(row, "03b")
    print(" ".join(bits), "|", eval_pla(state, bits))

# Verification never samples: output_masks folds all 2^n rows of each
# output into one integer, so equality there is exhaustive equality.
expected = table_from_expr(parse_expression("ABC + A'BC + AB'C'"), ("A", "B", "C"))
device_bits = output_masks(state)[0]
print("\nexhaustively equivalent?", device_bits == expected.bits)

# A deliberate wiring mistake is caught the same way, with the first
# offending vector recoverable from the differing bit.
broken = compile_equations(parse_equations("F = ABC + AB'C'"), PlaProfile(3, 4, 1))[0]
diff = output_masks(broken)[0] ^ expected.bits
first = (diff & -diff).bit_length() - 1
print("broken device first differs at row", format(first, "03b"))

# Product-of-sums on SOP hardware: store the complement, set the XOR bit.
# compile_equations does both when asked for polarity, so the pin still
# computes the equation -- with OR-plane terms covering the 0-rows instead.
pos_profile = PlaProfile(3, 8, 1, has_output_xor=True)
active_low, _ = compile_equations(
    parse_equations("F = ABC + A'BC + AB'C'"), pos_profile, polarity={"F": 1}
)
print("\npolarity bit set:", active_low.polarity)
print("pin function unchanged?", output_masks(active_low)[0] == expected.bits)

# The raw device-level bit is a plain complement of whatever is stored.
flipped = set_polarity(active_low, 0, 0)
print("clearing the bit complements the pin:",
      output_masks(flipped)[0] == expected.bits ^ ((1 << 8) - 1))

# equivalent() accepts expressions, tables, and covers interchangeably.
print("\nsanity:", equivalent(
    parse_expression("ABC + A'BC + AB'C'"),
    parse_expression("BC + AB'C'"),
))
