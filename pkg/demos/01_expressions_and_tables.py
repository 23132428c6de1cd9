"""
Boolean expressions and truth tables
====================================

Parsing datasheet-style algebra, evaluating it, and turning it into
truth tables and canonical forms.
"""

from plakit import (
    canonical_pos,
    canonical_sop,
    counterexample,
    equivalent,
    evaluate,
    format_expression,
    parse_expression,
    table_from_expr,
    variables,
)

# Single-letter mode reads like a datasheet: juxtaposition is AND, the
# apostrophe is NOT, '+' is OR. Explicit AND via '*', '.', or '·' also works.
majority = parse_expression("A'BC + AB'C + ABC' + ABC")
print("parsed:", format_expression(majority))
print("variables in order of appearance:", variables(majority))

# Evaluate one assignment at a time...
print("M(1,1,0) =", evaluate(majority, {"A": 1, "B": 1, "C": 0}))

# ...or sweep all of them at once. Rows are big-endian: the leftmost
# variable is the most significant bit, so row 6 is A=1, B=1, C=0.
table = table_from_expr(majority, ("A", "B", "C"))
print("\nA B C | M")
for bits, value in table.rows():
    print(" ".join(bits), "|", value)

# The canonical sum of products lists one minterm per 1-row; the canonical
# product of sums lists one maxterm per 0-row. Both reproduce the table.
sop = canonical_sop(table)
print("\ncanonical SOP:", format_expression(sop.to_expr()))
pos = canonical_pos(table)
print("canonical POS:", format_expression(pos))
print("POS == SOP table?", equivalent(pos, sop))

# Equivalence checking is exhaustive under the hood; a counterexample, when
# one exists, is the lowest differing input vector.
and_or = parse_expression("AB + AC + BC")
print("\nmajority == AB + AC + BC?", equivalent(majority, and_or))
almost = parse_expression("AB + AC")
print("counterexample against AB + AC:", counterexample(majority, almost))

# Multi-letter mode switches identifiers to full names; AND must then be
# written explicitly, since 'enable' would otherwise parse as six variables.
gated = parse_expression("enable * (load + shift')", multi_letter=True)
print("\nmulti-letter:", format_expression(gated))
