"""
Crosspoint diagrams
===================

The ASCII rendering of a programmed device: one column pair per input
(true and complement), one row per product term, OR plane to the right.
"""

from plakit import (
    PlaProfile,
    compile_equations,
    parse_equations,
    render_crosspoint_diagram,
)

# Minimized majority: three 2-literal terms, all feeding the one output.
state, report = compile_equations(
    parse_equations("M = A'BC + AB'C + ABC' + ABC"),
    PlaProfile(3, 4, 1),
    minimize=True,
)
print(render_crosspoint_diagram(state, report.input_names, report.output_names))

# Reading it: X = crosspoint connected, . = open. T0 connects B and C,
# so T0 is the product BC; the column after '|' shows it driving M.
# The all-dot spare row T3 is disconnected, an AND row that would float
# to constant 1 -- harmless while its OR column stays open.

# Two outputs sharing a term, plus the polarity row of an XOR-equipped part.
state2, report2 = compile_equations(
    parse_equations("F1 = AB + C\nF2 = AB + C'"),
    PlaProfile(3, 4, 2, has_output_xor=True),
    polarity={"F2": 1},
    minimize=True,
)
print(render_crosspoint_diagram(state2, report2.input_names, report2.output_names))
print("note: F2 is stored complemented; POL 1 flips it back at the pin")
