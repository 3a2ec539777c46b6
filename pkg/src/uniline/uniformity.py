"""Two deciders for n-uniformity of a finite structure.

A structure is n-uniform when every constant-free formula with free
variables ``x1..xn`` that is satisfied by some tuple of pairwise-distinct
elements is satisfied, up to a permutation of the variables, by every tuple
of pairwise-distinct elements.

``check_uniformity_schema`` decides the depth-bounded approximation by
scanning the enumerated formula space; ``check_uniformity_orbits`` decides
the semantic criterion (a single automorphism orbit on n-subsets), which is
the depth-unbounded limit of the schema on finite structures.  Agreement of
the two is the package's central cross-check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import autgroup, tables
from .formulas import Exists, Formula, semantic_items
from .structures import FiniteStructure


@dataclass(frozen=True)
class SchemaCounterexample:
    """A formula violating the schema, with self-certifying witnesses.

    ``witness`` satisfies the formula as written; ``violating`` satisfies it
    under no permutation of its coordinates.  Both are pairwise-distinct
    element tuples.
    """

    formula: Formula
    witness: tuple[str, ...]
    violating: tuple[str, ...]


@dataclass(frozen=True)
class OrbitCounterexample:
    """Two n-subsets lying in different automorphism orbits."""

    first: tuple[str, ...]
    second: tuple[str, ...]


@dataclass(frozen=True)
class UniformityVerdict:
    mode: str  # "schema" or "orbits"
    n: int
    uniform: bool
    counterexample: SchemaCounterexample | OrbitCounterexample | None = None
    depth: int | None = None


def check_uniformity_orbits(
    structure: FiniteStructure, n: int, size_cap: int = autgroup.DEFAULT_SIZE_CAP
) -> UniformityVerdict:
    partition = autgroup.orbit_partition(structure, n, mode="subsets", size_cap=size_cap)
    if partition.class_count() <= 1:
        return UniformityVerdict("orbits", n, True)
    first = autgroup.elements_of(structure, partition.classes[0][0])
    second = autgroup.elements_of(structure, partition.classes[1][0])
    return UniformityVerdict("orbits", n, False, OrbitCounterexample(first, second))


def check_uniformity_schema(structure: FiniteStructure, n: int, depth: int) -> UniformityVerdict:
    """Scan all depth-bounded formulas for a schema violation.

    The scan walks the semantically deduplicated enumeration, so each truth
    table is tested once, at its first formula in enumeration order.  Tables
    that vary along a bound-variable axis are not schema instances and are
    skipped; tables reached first by a formula with leftover pool variables
    are tested through its existential closure when that closure still fits
    the depth bound (the closure has the same table, so the reported
    counterexample re-verifies by direct evaluation).
    """
    size = structure.size()
    if not 1 <= n <= size:
        raise ValueError(f"n must be between 1 and {size}, got {n}")
    if depth < 0:
        raise ValueError("depth must be >= 0")
    xs = tuple(f"x{i}" for i in range(1, n + 1))
    pool = tuple(f"y{i}" for i in range(1, depth + 1))
    target = frozenset(xs)
    spc = tables.space(size, n + depth)

    carrier = list(itertools.permutations(range(size), n))
    pad = (0,) * depth
    cell = {t: spc.cell_index(t + pad) for t in carrier}
    arrangements = {t: [cell[p] for p in itertools.permutations(t)] for t in carrier}

    for item in semantic_items(structure, xs, pool, depth):
        if item.open_vars:
            continue  # table still depends on a bound-pool variable
        extra = item.free - target
        if not extra:
            report: Formula = item.formula
        else:
            # leftover pool variables are vacuous; close them off for the report
            if item.depth + len(extra) > depth:
                continue
            report = item.formula
            for var in sorted(extra, reverse=True):
                report = Exists(var, report)
        table = item.table
        witness = None
        violating = None
        for t in carrier:
            if witness is None and (table >> cell[t]) & 1:
                witness = t
            if violating is None and not any((table >> c) & 1 for c in arrangements[t]):
                violating = t
        if witness is not None and violating is not None:
            counterexample = SchemaCounterexample(
                report,
                autgroup.elements_of(structure, witness),
                autgroup.elements_of(structure, violating),
            )
            return UniformityVerdict("schema", n, False, counterexample, depth)
    return UniformityVerdict("schema", n, True, None, depth)


def distinguishing_formula(
    structure: FiniteStructure,
    first: tuple[str, ...],
    second: tuple[str, ...],
    max_depth: int,
) -> Formula | None:
    """First enumerated formula true on an arrangement of ``first`` and on
    no arrangement of ``second``, or None if no such formula exists within
    the depth bound."""
    if len(first) != len(second):
        raise ValueError("subsets must have the same size")
    n = len(first)
    first_pos = tuple(structure.position(e) for e in first)
    second_pos = tuple(structure.position(e) for e in second)
    if len(set(first_pos)) != n or len(set(second_pos)) != n:
        raise ValueError("subsets must consist of distinct elements")
    if set(first_pos) == set(second_pos):
        return None
    xs = tuple(f"x{i}" for i in range(1, n + 1))
    pool = tuple(f"y{i}" for i in range(1, max_depth + 1))
    target = frozenset(xs)
    spc = tables.space(structure.size(), n + max_depth)
    pad = (0,) * max_depth
    first_cells = [spc.cell_index(p + pad) for p in itertools.permutations(first_pos)]
    second_cells = [spc.cell_index(p + pad) for p in itertools.permutations(second_pos)]

    for item in semantic_items(structure, xs, pool, max_depth):
        if item.open_vars:
            continue
        extra = item.free - target
        if extra:
            if item.depth + len(extra) > max_depth:
                continue
            report: Formula = item.formula
            for var in sorted(extra, reverse=True):
                report = Exists(var, report)
        else:
            report = item.formula
        table = item.table
        if any((table >> c) & 1 for c in first_cells) and not any(
            (table >> c) & 1 for c in second_cells
        ):
            return report
    return None
