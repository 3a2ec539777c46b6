"""Corpus of small directed graphs (one binary relation) up to isomorphism.

Graphs are encoded as bitmasks over the ordered pairs of distinct vertices;
canonical form is the minimum mask over all vertex permutations.  Sizes up to
four are enumerated directly; size five is produced by extending the size-four
canonical forms with a fifth vertex and deduplicating by canonical form, which
reaches every isomorphism class.  Permuted masks are computed via precomputed
byte lookup tables to keep size five fast.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .structures import FiniteStructure, Signature

RELATION = "e"


def _pair_index(size: int) -> dict[tuple[int, int], int]:
    pairs = [(i, j) for i in range(size) for j in range(size) if i != j]
    return {pair: k for k, pair in enumerate(pairs)}


@lru_cache(maxsize=None)
def _perm_tables(size: int) -> list[list[list[int]]]:
    """Per permutation, byte-indexed tables mapping mask chunks to permuted masks."""
    index = _pair_index(size)
    bit_count = len(index)
    tables = []
    for perm in itertools.permutations(range(size)):
        moved = [0] * bit_count
        for pair, position in index.items():
            moved[position] = index[(perm[pair[0]], perm[pair[1]])]
        chunk_tables = []
        for chunk_start in range(0, bit_count, 8):
            width = min(8, bit_count - chunk_start)
            table = [0] * (1 << width)
            for value in range(1 << width):
                out = 0
                for bit in range(width):
                    if value >> bit & 1:
                        out |= 1 << moved[chunk_start + bit]
                table[value] = out
            chunk_tables.append(table)
        tables.append(chunk_tables)
    return tables


def _canonical(mask: int, size: int) -> int:
    best = mask
    for chunk_tables in _perm_tables(size):
        image = 0
        value = mask
        for table in chunk_tables:
            image |= table[value & 0xFF]
            value >>= 8
        if image < best:
            best = image
    return best


def _mask_to_structure(mask: int, size: int) -> FiniteStructure:
    index = _pair_index(size)
    elements = [f"v{i}" for i in range(size)]
    arcs = [
        (elements[i], elements[j])
        for (i, j), position in index.items()
        if mask >> position & 1
    ]
    return FiniteStructure.build(Signature.of(e=2), elements, {RELATION: arcs})


def digraphs_up_to_iso(size: int) -> list[FiniteStructure]:
    """All loopless directed graphs on ``size`` vertices, one per isomorphism class."""
    if size < 1:
        raise ValueError("size must be >= 1")
    bit_count = size * (size - 1)
    if size <= 4:
        canonical = sorted({_canonical(mask, size) for mask in range(1 << bit_count)})
        return [_mask_to_structure(mask, size) for mask in canonical]
    smaller = _canonical_masks(size - 1)
    index = _pair_index(size)
    new_vertex = size - 1
    out_bits = [index[(new_vertex, j)] for j in range(size - 1)]
    in_bits = [index[(j, new_vertex)] for j in range(size - 1)]
    found: set[int] = set()
    for base in smaller:
        embedded = _embed(base, size - 1, size)
        for out_mask in range(1 << (size - 1)):
            partial = embedded
            for j in range(size - 1):
                if out_mask >> j & 1:
                    partial |= 1 << out_bits[j]
            for in_mask in range(1 << (size - 1)):
                extended = partial
                for j in range(size - 1):
                    if in_mask >> j & 1:
                        extended |= 1 << in_bits[j]
                found.add(_canonical(extended, size))
    return [_mask_to_structure(mask, size) for mask in sorted(found)]


@lru_cache(maxsize=None)
def _canonical_masks(size: int) -> tuple[int, ...]:
    if size <= 4:
        bit_count = size * (size - 1)
        return tuple(sorted({_canonical(mask, size) for mask in range(1 << bit_count)}))
    return tuple(
        _structure_mask(structure) for structure in digraphs_up_to_iso(size)
    )


def _structure_mask(structure: FiniteStructure) -> int:
    size = structure.size()
    index = _pair_index(size)
    position = {element: i for i, element in enumerate(structure.universe)}
    mask = 0
    for tup in structure.tuples(RELATION):
        mask |= 1 << index[(position[tup[0]], position[tup[1]])]
    return mask


def _embed(mask: int, small: int, large: int) -> int:
    small_index = _pair_index(small)
    large_index = _pair_index(large)
    out = 0
    for pair, position in small_index.items():
        if mask >> position & 1:
            out |= 1 << large_index[pair]
    return out


# --- crafted structures -----------------------------------------------------------


def chain(size: int) -> FiniteStructure:
    """Strict total order v0 < v1 < ... as the full transitive arc set."""
    elements = [f"v{i}" for i in range(size)]
    arcs = [(elements[i], elements[j]) for i in range(size) for j in range(size) if i < j]
    return FiniteStructure.build(Signature.of(e=2), elements, {RELATION: arcs})


def directed_cycle(size: int) -> FiniteStructure:
    elements = [f"v{i}" for i in range(size)]
    arcs = [(elements[i], elements[(i + 1) % size]) for i in range(size)]
    return FiniteStructure.build(Signature.of(e=2), elements, {RELATION: arcs})


def antichain(size: int) -> FiniteStructure:
    elements = [f"v{i}" for i in range(size)]
    return FiniteStructure.build(Signature.of(e=2), elements, {})


def disjoint_union(first: FiniteStructure, second: FiniteStructure) -> FiniteStructure:
    elements = [f"a_{e}" for e in first.universe] + [f"b_{e}" for e in second.universe]
    arcs = [tuple(f"a_{e}" for e in t) for t in first.tuples(RELATION)] + [
        tuple(f"b_{e}" for e in t) for t in second.tuples(RELATION)
    ]
    return FiniteStructure.build(Signature.of(e=2), elements, {RELATION: arcs})


def crafted_structures() -> list[tuple[str, FiniteStructure]]:
    """The size-6 and size-7 cases exercised beyond the exhaustive corpus.

    The union of a 3-cycle and a 4-cycle is deliberately absent: its two
    vertex orbits agree on every formula of depth three (detecting a
    triangle from a vertex takes two quantifiers over a conjunction chain,
    which is depth four), so it sits just past the depth-3 horizon.  It is
    exposed separately as :func:`beyond_depth_three` and covered by its own
    regression test.
    """
    return [
        ("chain6", chain(6)),
        ("chain7", chain(7)),
        ("cycle6", directed_cycle(6)),
        ("cycle7", directed_cycle(7)),
        ("antichain6", antichain(6)),
        ("antichain7", antichain(7)),
        ("chain3+chain3", disjoint_union(chain(3), chain(3))),
        ("cycle3+cycle3", disjoint_union(directed_cycle(3), directed_cycle(3))),
        ("cycle3+chain4", disjoint_union(directed_cycle(3), chain(4))),
        ("chain2+antichain4", disjoint_union(chain(2), antichain(4))),
    ]


def beyond_depth_three() -> FiniteStructure:
    """Orbit-non-uniform at n=1 yet schema-uniform at depth three."""
    return disjoint_union(directed_cycle(3), directed_cycle(4))


def biclique_2_3() -> FiniteStructure:
    """Complete 2x3 bipartite graph with arcs both ways.

    The unique size-5 structure whose vertex orbits (the two sides) agree on
    every formula of depth three: the sides differ only in how many
    same-side companions a vertex has, and the cheapest way to say it
    ("some y2 is the only vertex besides x and its neighbors") costs two
    quantifiers over a two-level disjunction, depth four.  See the
    uniformity tests for the explicit separator.
    """
    side_a = ["a0", "a1"]
    side_b = ["b0", "b1", "b2"]
    arcs = [(x, y) for x in side_a for y in side_b]
    arcs += [(y, x) for x in side_a for y in side_b]
    return FiniteStructure.build(Signature.of(e=2), side_a + side_b, {RELATION: arcs})
