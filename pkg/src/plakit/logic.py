"""Truth tables, cubes, and covers.

A truth table over n ordered variables is stored as one Python int whose
bit i is the output on input row i. Rows are numbered big-endian from the
variable order: the leftmost variable is the most significant bit, so with
order (A, B, C) row 6 is A=1, B=1, C=0. Bit-parallel evaluation makes an
exhaustive sweep one expression walk instead of 2^n.

A cube is a string over {'0', '1', '-'}, one character per variable in
order: '1' means the variable appears true, '0' complemented, '-' absent.
This matches the input-plane characters of the Berkeley PLA format. A
cover is an ordered list of cubes whose union (OR of products) is the
function.
"""

from dataclasses import dataclass, field
from functools import lru_cache

from . import expr as ex

MAX_VARS = 24  # exhaustive 2^n sweeps stay cheap up to here

_CUBE_CHARS = frozenset("01-")


def _check_order(order):
    order = tuple(order)
    if not order:
        raise ValueError("variable order must not be empty")
    if len(set(order)) != len(order):
        raise ValueError(f"duplicate variable in order: {order}")
    if len(order) > MAX_VARS:
        raise ValueError(f"{len(order)} variables exceeds the limit of {MAX_VARS}")
    return order


@lru_cache(maxsize=None)
def _var_mask(n, j):
    """Bitmask whose row-i bit equals the value of variable j on row i."""
    k = n - 1 - j  # column weight: variable j toggles with period 2^(k+1)
    chunk = 1 << k
    mask = ((1 << chunk) - 1) << chunk  # one period: chunk zeros then chunk ones
    width = 2 * chunk
    total = 1 << n
    while width < total:
        mask |= mask << width
        width *= 2
    return mask


@dataclass(frozen=True)
class TruthTable:
    """Single-output truth table: bit i of `bits` is the output on row i."""

    order: tuple
    bits: int

    def __post_init__(self):
        object.__setattr__(self, "order", _check_order(self.order))
        full = (1 << (1 << len(self.order))) - 1
        if not 0 <= self.bits <= full:
            raise ValueError("table bits out of range for variable count")

    @property
    def n(self):
        return len(self.order)

    def value(self, row):
        if not 0 <= row < (1 << self.n):
            raise ValueError(f"row {row} out of range")
        return (self.bits >> row) & 1

    def rows(self):
        """Yield (input_string, output_bit) over all 2^n rows in order."""
        n = self.n
        for i in range(1 << n):
            yield format(i, f"0{n}b"), (self.bits >> i) & 1

    def on_set(self):
        """Row indices where the output is 1, ascending."""
        return [i for i in range(1 << self.n) if (self.bits >> i) & 1]

    def complement(self):
        full = (1 << (1 << self.n)) - 1
        return TruthTable(self.order, self.bits ^ full)


def table_from_expr(expr, order=None):
    """Build the table of an expression; order defaults to first appearance."""
    if order is None:
        order = ex.variables(expr)
        if not order:
            # constant expression: give it a dummy single-row table? No --
            # keep it honest and refuse; callers supply an order for constants.
            raise ValueError("expression has no variables; pass an explicit order")
    order = _check_order(order)
    missing = set(ex.variables(expr)) - set(order)
    if missing:
        raise ValueError(f"order is missing variables: {sorted(missing)}")
    n = len(order)
    index = {name: j for j, name in enumerate(order)}
    full = (1 << (1 << n)) - 1

    def walk(e):
        if isinstance(e, ex.Var):
            return _var_mask(n, index[e.name])
        if isinstance(e, ex.Const):
            return full if e.value else 0
        if isinstance(e, ex.Not):
            return full ^ walk(e.child)
        if isinstance(e, ex.And):
            bits = full
            for c in e.children:
                bits &= walk(c)
            return bits
        if isinstance(e, ex.Or):
            bits = 0
            for c in e.children:
                bits |= walk(c)
            return bits
        raise TypeError(f"not an Expr: {e!r}")

    return TruthTable(order, walk(expr))


def table_from_rows(order, outputs):
    """Build a table from an iterable of 2^n output bits, row 0 first."""
    order = _check_order(order)
    outputs = list(outputs)
    if len(outputs) != 1 << len(order):
        raise ValueError(
            f"expected {1 << len(order)} outputs for {len(order)} variables, "
            f"got {len(outputs)}"
        )
    bits = 0
    for i, bit in enumerate(outputs):
        if bit not in (0, 1):
            raise ValueError(f"row {i}: output must be 0 or 1, got {bit!r}")
        bits |= bit << i
    return TruthTable(order, bits)


# ---------------------------------------------------------------------------
# Cubes


def check_cube(cube, n):
    if len(cube) != n:
        raise ValueError(f"cube {cube!r} has {len(cube)} positions, expected {n}")
    bad = set(cube) - _CUBE_CHARS
    if bad:
        raise ValueError(f"cube {cube!r} has illegal characters {sorted(bad)}")
    return cube


def cube_mask(cube, n=None):
    """Bitmask of the rows a cube covers."""
    if n is None:
        n = len(cube)
    check_cube(cube, n)
    mask = (1 << (1 << n)) - 1
    for j, c in enumerate(cube):
        if c == "1":
            mask &= _var_mask(n, j)
        elif c == "0":
            mask &= ~_var_mask(n, j)
    return mask


def cube_rows(cube):
    """Row indices a cube covers, ascending."""
    positions = [j for j, c in enumerate(cube) if c == "-"]
    n = len(cube)
    base = 0
    for j, c in enumerate(cube):
        if c == "1":
            base |= 1 << (n - 1 - j)
    rows = []
    for combo in range(1 << len(positions)):
        row = base
        for b, j in enumerate(positions):
            if (combo >> b) & 1:
                row |= 1 << (n - 1 - j)
        rows.append(row)
    rows.sort()
    return rows


def cube_contains(cube, bits):
    """Does the cube cover the input string `bits`?"""
    return all(c == "-" or c == b for c, b in zip(cube, bits, strict=True))


def minterm_cube(row, n):
    """The fully-specified cube selecting exactly row `row`."""
    if not 0 <= row < (1 << n):
        raise ValueError(f"row {row} out of range for {n} variables")
    return format(row, f"0{n}b")


# ---------------------------------------------------------------------------
# Covers


@dataclass(frozen=True)
class Cover:
    """Ordered sum-of-products cover: OR of the product terms in `cubes`."""

    order: tuple
    cubes: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "order", _check_order(self.order))
        cubes = tuple(self.cubes)
        for cube in cubes:
            check_cube(cube, len(self.order))
        object.__setattr__(self, "cubes", cubes)

    @property
    def n(self):
        return len(self.order)

    def __len__(self):
        return len(self.cubes)

    def to_table(self):
        bits = 0
        for cube in self.cubes:
            bits |= cube_mask(cube, self.n)
        return TruthTable(self.order, bits)

    def to_expr(self):
        """Expression form; the empty cover is the constant 0."""
        if not self.cubes:
            return ex.Const(0)
        terms = [_cube_to_term(cube, self.order) for cube in self.cubes]
        return terms[0] if len(terms) == 1 else ex.Or(*terms)


def _cube_to_term(cube, order):
    literals = []
    for name, c in zip(order, cube, strict=True):
        if c == "1":
            literals.append(ex.Var(name))
        elif c == "0":
            literals.append(ex.Not(ex.Var(name)))
    if not literals:
        return ex.Const(1)  # the all-'-' cube is the constant-1 product
    return literals[0] if len(literals) == 1 else ex.And(*literals)


def cover_eval(cover, bits):
    """Evaluate a cover on one input string (or sequence of 0/1)."""
    if not isinstance(bits, str):
        bits = "".join(str(b) for b in bits)
    if len(bits) != cover.n or set(bits) - {"0", "1"}:
        raise ValueError(f"input {bits!r} is not {cover.n} binary digits")
    return 1 if any(cube_contains(cube, bits) for cube in cover.cubes) else 0


def canonical_sop(table):
    """Canonical SOP cover: one fully-specified cube per on-set row, ascending."""
    n = table.n
    return Cover(table.order, tuple(minterm_cube(i, n) for i in table.on_set()))


def canonical_pos(table):
    """Canonical POS expression: one max-term (OR of literals) per off-set row.

    A variable appears complemented in a max-term exactly when it is 1 in
    the row being excluded. A table with no zeros is the constant 1; a
    table with no ones is the constant 0.
    """
    n = table.n
    zero_rows = [i for i in range(1 << n) if not (table.bits >> i) & 1]
    if not zero_rows:
        return ex.Const(1)
    if len(zero_rows) == 1 << n:
        return ex.Const(0)
    factors = []
    for row in zero_rows:
        literals = []
        for j, name in enumerate(table.order):
            bit = (row >> (n - 1 - j)) & 1
            literals.append(ex.Not(ex.Var(name)) if bit else ex.Var(name))
        factors.append(literals[0] if len(literals) == 1 else ex.Or(*literals))
    return factors[0] if len(factors) == 1 else ex.And(*factors)


def cover_from_expr(expr, order):
    """Translate an SOP-shaped expression term-for-term into a cover.

    Accepts an OR of products (or a single product) where each product is
    an AND of literals; a literal is a variable, a complemented variable,
    or a constant. Repeated literals collapse; a product containing both X
    and X' contributes nothing; a constant-1 term becomes the all-'-' cube.
    Raises ValueError when the expression is not in SOP shape.
    """
    order = _check_order(order)
    index = {name: j for j, name in enumerate(order)}
    terms = expr.children if isinstance(expr, ex.Or) else [expr]
    cubes = []
    for term in terms:
        cube = _term_to_cube(term, index, len(order))
        if cube is not None:
            cubes.append(cube)
    return Cover(order, tuple(cubes))


def _term_to_cube(term, index, n):
    factors = term.children if isinstance(term, ex.And) else [term]
    cube = ["-"] * n
    for f in factors:
        if isinstance(f, ex.Const):
            if f.value == 0:
                return None  # whole product is 0
            continue
        if isinstance(f, ex.Var):
            name, want = f.name, "1"
        elif isinstance(f, ex.Not) and isinstance(f.child, ex.Var):
            name, want = f.child.name, "0"
        else:
            raise ValueError(
                f"not a sum-of-products expression: {ex.format_expression(term)!r} "
                "is not a product of literals"
            )
        if name not in index:
            raise ValueError(f"variable {name!r} not in order")
        j = index[name]
        if cube[j] == "-":
            cube[j] = want
        elif cube[j] != want:
            return None  # X and X' in one product
    return "".join(cube)


# ---------------------------------------------------------------------------
# Equivalence


def _as_table(obj, order=None):
    if isinstance(obj, TruthTable):
        return obj
    if isinstance(obj, Cover):
        return obj.to_table()
    if isinstance(obj, ex.Expr):
        return table_from_expr(obj, order)
    raise TypeError(f"expected TruthTable, Cover, or Expr, got {obj!r}")


def _common_order(a, b):
    order_a = a.order if isinstance(a, (TruthTable, Cover)) else None
    order_b = b.order if isinstance(b, (TruthTable, Cover)) else None
    if order_a is not None and order_b is not None:
        if order_a != order_b:
            raise ValueError(
                f"variable orders differ: {order_a} vs {order_b}; "
                "compare under one order"
            )
        return order_a
    if order_a is not None:
        return order_a
    if order_b is not None:
        return order_b
    # two bare expressions: union of variables in first-appearance order
    seen = list(ex.variables(a))
    for name in ex.variables(b):
        if name not in seen:
            seen.append(name)
    return tuple(seen)


def counterexample(a, b):
    """Lowest input row (as a string) where a and b differ, or None if equal.

    Arguments may be TruthTable, Cover, or Expr in any combination, all
    over the same variable order.
    """
    order = _common_order(a, b)
    ta = _as_table(a, order)
    tb = _as_table(b, order)
    diff = ta.bits ^ tb.bits
    if diff == 0:
        return None
    row = (diff & -diff).bit_length() - 1
    return minterm_cube(row, len(order))


def equivalent(a, b):
    """Exhaustive equivalence over a shared variable order."""
    return counterexample(a, b) is None
