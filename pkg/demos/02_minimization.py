"""
Two-level minimization
======================

Prime implicants, exact minimum covers, don't-cares, and sharing product
terms across several outputs.
"""

from plakit import (
    MinimizeSpec,
    format_expression,
    minimize,
    minimum_cover,
    parse_expression,
    prime_implicants,
    share_terms,
    table_from_expr,
)

# The majority function again. Its canonical SOP has four 3-literal
# minterms; the minimum cover is three 2-literal cubes.
majority = table_from_expr(
    parse_expression("A'BC + AB'C + ABC' + ABC"), ("A", "B", "C")
)
cover = minimize(majority)
print("minimized majority:", format_expression(cover.to_expr()))
print("cubes:", cover.cubes)  # '-' marks a variable dropped from the term

# The two stages separately: Quine-McCluskey prime generation, then cover
# selection (essential primes first, Petrick's method for the rest).
spec = MinimizeSpec(("A", "B", "C"), frozenset(majority.on_set()))
primes = prime_implicants(spec)
print("\nprime implicants:", primes)
print("minimum cover:", minimum_cover(primes, spec).cubes)

# Don't-cares let the minimizer absorb rows you never exercise. Here rows
# 1, 3, 7 are required, row 5 is free -- and claiming it collapses the
# whole function to the single literal C.
sparse = table_from_expr(parse_expression("A'B'C + A'BC + ABC"), ("A", "B", "C"))
print("\nwithout don't-cares:", minimize(sparse).cubes)
print("with row 5 free:   ", minimize(sparse, dc={5}).cubes)

# Multi-output covers pool identical products, which is exactly what a
# shared AND plane rewards. AB appears once, feeding both outputs.
f1 = minimize(table_from_expr(parse_expression("AB + C"), ("A", "B", "C", "D")))
f2 = minimize(table_from_expr(parse_expression("AB + D"), ("A", "B", "C", "D")))
mc = share_terms([("F1", f1), ("F2", f2)])
print("\nterm pool:", mc.term_pool)
for name, sel in mc.outputs:
    print(f"{name} uses rows {sel}")
