"""Two-level minimization: prime implicants and minimum covers.

Primes come from the classic Quine-McCluskey tabulation over the on-set
plus don't-care set. Cover selection extracts essential primes first, then
finishes with Petrick's method (exact) when the residual problem is small
enough, or a greedy set cover otherwise. The switch is size-based so small
problems -- anything a datasheet example would show -- always get the true
minimum.

Everything here is deterministic: primes are reported in a fixed sort
order, ties in cover selection break lexicographically, and the same input
always yields the same cover.
"""

import logging
from dataclasses import dataclass, field
from itertools import combinations

from .logic import Cover, TruthTable, check_cube, cube_rows

log = logging.getLogger(__name__)

QM_MAX_VARS = 16  # tabulation is exponential; past this use a different tool
PETRICK_MAX_PRIMES = 24
PETRICK_MAX_MINTERMS = 64


@dataclass(frozen=True)
class MinimizeSpec:
    """A minimization problem: required rows, optional rows, variable order."""

    order: tuple
    on_set: frozenset
    dc_set: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        object.__setattr__(self, "on_set", frozenset(self.on_set))
        object.__setattr__(self, "dc_set", frozenset(self.dc_set))
        n = len(self.order)
        if n == 0:
            raise ValueError("variable order must not be empty")
        if n > QM_MAX_VARS:
            raise ValueError(f"{n} variables exceeds the minimizer limit of {QM_MAX_VARS}")
        limit = 1 << n
        for row in self.on_set | self.dc_set:
            if not 0 <= row < limit:
                raise ValueError(f"row {row} out of range for {n} variables")
        overlap = self.on_set & self.dc_set
        if overlap:
            raise ValueError(f"rows both required and don't-care: {sorted(overlap)}")

    @property
    def n(self):
        return len(self.order)


def _sort_key(cube):
    # wider cubes (more '-') first, then plain string order; '-' < '0' < '1'
    return (-cube.count("-"), cube)


def _merge(a, b):
    """Combine two cubes differing in exactly one specified position, else None."""
    diff = None
    for j, (ca, cb) in enumerate(zip(a, b)):
        if ca == cb:
            continue
        if ca == "-" or cb == "-" or diff is not None:
            return None
        diff = j
    if diff is None:
        return None
    return a[:diff] + "-" + a[diff + 1 :]


def prime_implicants(spec):
    """All prime implicants of on_set ∪ dc_set, widest first then lexicographic.

    An empty on_set yields an empty list: the constant-0 function needs no
    implicants, whatever the don't-cares would allow.
    """
    n = spec.n
    care = spec.on_set | spec.dc_set
    if not spec.on_set:
        return []
    current = {format(row, f"0{n}b") for row in care}
    primes = set()
    while current:
        # group by count of '1' so only adjacent groups need comparing
        groups = {}
        for cube in current:
            groups.setdefault(cube.count("1"), set()).add(cube)
        merged = set()
        used = set()
        for ones in sorted(groups):
            upper = groups.get(ones + 1, ())
            for a in groups[ones]:
                for b in upper:
                    c = _merge(a, b)
                    if c is not None:
                        merged.add(c)
                        used.add(a)
                        used.add(b)
        primes |= current - used
        current = merged
    return sorted(primes, key=_sort_key)


def _petrick(chart, n_primes):
    """Minimum-cardinality column sets covering every row of the chart.

    `chart` maps each uncovered minterm to the set of usable prime indices.
    Products are bitmasks over prime indices; multiplication keeps only
    absorption-minimal terms, which caps the blowup on problems this size.
    Returns the winning bitmask (fewest primes, then lexicographically
    smallest index tuple).
    """
    products = [0]  # start with the empty product (the identity)
    for row in sorted(chart):
        sums = [1 << p for p in sorted(chart[row])]
        next_products = []
        for prod in products:
            for s in sums:
                next_products.append(prod | s)
        # absorption: drop any product that is a superset of another
        next_products.sort(key=lambda m: bin(m).count("1"))
        kept = []
        for m in next_products:
            if not any(k & m == k for k in kept):
                kept.append(m)
        products = kept
    def key(mask):
        idxs = [i for i in range(n_primes) if (mask >> i) & 1]
        return (len(idxs), idxs)
    return min(products, key=key)


def minimum_cover(primes, spec):
    """Select a cover of on_set from the prime implicants.

    Essential primes always enter the cover; the rest comes from Petrick's
    method when the chart fits PETRICK_MAX_PRIMES / PETRICK_MAX_MINTERMS
    (exact minimum cardinality) or from greedy most-uncovered-first
    selection beyond that. Ties break on the lexicographically smallest
    cube; selection is emitted in prime-list order (greedy picks in pick
    order) so output is stable.
    """
    primes = list(primes)
    for cube in primes:
        check_cube(cube, spec.n)

    rows_of = {i: set(cube_rows(cube)) & spec.on_set for i, cube in enumerate(primes)}
    covered_all = set().union(*rows_of.values()) if rows_of else set()
    missing = spec.on_set - covered_all
    if missing:
        raise ValueError(f"primes do not cover required rows {sorted(missing)}")

    # essential primes: sole coverers of some row
    coverers = {}
    for i, rows in rows_of.items():
        for row in rows:
            coverers.setdefault(row, set()).add(i)
    essential = set()
    for row, who in coverers.items():
        if len(who) == 1:
            essential |= who
    covered = set()
    for i in essential:
        covered |= rows_of[i]
    remaining = spec.on_set - covered
    selected = sorted(essential)

    if remaining:
        chart = {row: coverers[row] for row in remaining}
        if len(primes) <= PETRICK_MAX_PRIMES and len(remaining) <= PETRICK_MAX_MINTERMS:
            log.info(
                "exact cover via Petrick: %d primes, %d residual rows "
                "(thresholds %d/%d)",
                len(primes), len(remaining), PETRICK_MAX_PRIMES, PETRICK_MAX_MINTERMS,
            )
            mask = _petrick(chart, len(primes))
            selected += [
                i for i in range(len(primes)) if (mask >> i) & 1 and i not in essential
            ]
            selected.sort()
        else:
            log.info(
                "greedy cover: %d primes, %d residual rows exceed thresholds %d/%d",
                len(primes), len(remaining), PETRICK_MAX_PRIMES, PETRICK_MAX_MINTERMS,
            )
            left = set(remaining)
            while left:
                best = max(
                    range(len(primes)),
                    key=lambda i: (len(rows_of[i] & left), _inverted(primes[i])),
                )
                selected.append(best)
                left -= rows_of[best]
    return Cover(spec.order, tuple(primes[i] for i in selected))


def _inverted(cube):
    # max() tie-break helper: prefer lexicographically smaller cubes
    return tuple(-ord(c) for c in cube)


def minimize(table_or_cover, dc=None):
    """Minimize a TruthTable or Cover into a minimal SOP cover.

    `dc` is an optional iterable of don't-care row indices. The result
    covers every on-set row, may absorb don't-cares, and is exact for
    problems within the Petrick bounds.
    """
    src = table_or_cover
    table = src if isinstance(src, TruthTable) else src.to_table()
    dc_set = frozenset(dc) if dc else frozenset()
    on_set = frozenset(table.on_set()) - dc_set
    spec = MinimizeSpec(table.order, on_set, dc_set)
    return minimum_cover(prime_implicants(spec), spec)


# ---------------------------------------------------------------------------
# Multi-output covers


@dataclass(frozen=True)
class MultiOutputCover:
    """A pool of product terms shared across named outputs.

    `outputs` is an ordered tuple of (name, term_indices) where the indices
    point into `term_pool`. A product used by several outputs appears once
    in the pool -- the whole point of a shared AND plane.
    """

    order: tuple
    term_pool: tuple
    outputs: tuple

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(self.order))
        object.__setattr__(self, "term_pool", tuple(self.term_pool))
        outputs = tuple((name, tuple(sel)) for name, sel in self.outputs)
        object.__setattr__(self, "outputs", outputs)
        for cube in self.term_pool:
            check_cube(cube, len(self.order))
        names = [name for name, _ in outputs]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate output name in {names}")
        for name, sel in outputs:
            for i in sel:
                if not 0 <= i < len(self.term_pool):
                    raise ValueError(f"output {name!r} references missing term {i}")

    @property
    def names(self):
        return tuple(name for name, _ in self.outputs)

    def cover_for(self, name):
        for out_name, sel in self.outputs:
            if out_name == name:
                return Cover(self.order, tuple(self.term_pool[i] for i in sel))
        raise KeyError(name)


def share_terms(named_covers):
    """Fold single-output covers into one term pool with per-output selections.

    `named_covers` is an ordered iterable of (name, Cover), all over the
    same variable order. Identical cubes collapse to one pool entry; pool
    order is first use. Duplicate cubes within one output are dropped.
    """
    named_covers = list(named_covers)
    if not named_covers:
        raise ValueError("need at least one output")
    order = named_covers[0][1].order
    pool = []
    pool_index = {}
    outputs = []
    for name, cover in named_covers:
        if cover.order != order:
            raise ValueError(
                f"output {name!r} uses order {cover.order}, expected {order}"
            )
        sel = []
        for cube in cover.cubes:
            if cube not in pool_index:
                pool_index[cube] = len(pool)
                pool.append(cube)
            i = pool_index[cube]
            if i not in sel:
                sel.append(i)
        outputs.append((name, tuple(sel)))
    return MultiOutputCover(tuple(order), tuple(pool), tuple(outputs))
