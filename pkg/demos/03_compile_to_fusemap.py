"""
Compiling equations into a programmed device
============================================

From named equations to a fuse map: capacity checking, the fit report,
and the text formats the rest of the toolchain exchanges.
"""

from plakit import (
    CapacityError,
    PlaProfile,
    canonical_sop,
    compile_equations,
    emit_fusemap,
    parse_equations,
    share_terms,
    table_from_expr,
    write_berkeley_pla,
)

# A five-term function of four variables, written the way a datasheet
# would print it. Compilation keeps the written terms: one AND row each.
source = """
# decoded enable for the upper bank
G = A'B + AB'CD + BC' + ABD + B'C'D'
"""
equations = parse_equations(source)

profile = PlaProfile(n_inputs=4, n_terms=8, n_outputs=2)
state, report = compile_equations(equations, profile)
print(report.summary())

# The fuse map is the programming artifact: every crosspoint, in text,
# with 1 meaning "connected" for fuse and antifuse parts alike.
print(emit_fusemap(state, report.input_names, report.output_names))

# Refusals are exact: the design needs 5 terms, a 4-term part has 4.
try:
    compile_equations(equations, PlaProfile(4, 4, 1))
except CapacityError as exc:
    print("refused:", exc)
    print("axis:", exc.axis, "| needed:", exc.needed, "| available:", exc.available)

# The same cover travels as Berkeley .pla for other two-level tools.
table = table_from_expr(equations[0][1], ("A", "B", "C", "D"))
print()
print(write_berkeley_pla(share_terms([("G", canonical_sop(table))])))
