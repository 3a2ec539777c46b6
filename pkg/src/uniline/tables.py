"""Bitmask truth tables over finite assignment spaces.

A table records the truth value of a formula at every assignment of a fixed
variable tuple into a universe of size ``m``.  Assignments are encoded as
base-``m`` digit strings: variable ``i`` is digit ``i``, so the cell for
values ``(v_0, ..., v_{k-1})`` sits at bit ``sum(v_i * m**i)``.  All logical
connectives become integer bit operations and quantifiers become folds along
one digit axis, which keeps depth-bounded formula scans tractable.
"""

from __future__ import annotations

from functools import lru_cache


@lru_cache(maxsize=None)
def space(universe_size: int, var_count: int) -> "AssignmentSpace":
    return AssignmentSpace(universe_size, var_count)


class AssignmentSpace:
    def __init__(self, universe_size: int, var_count: int):
        if universe_size < 1 or var_count < 0:
            raise ValueError("universe_size must be >= 1 and var_count >= 0")
        self.m = universe_size
        self.var_count = var_count
        self.cells = universe_size ** var_count
        self.full = (1 << self.cells) - 1
        self._strides = [universe_size ** i for i in range(var_count)]
        # axis_mask[i][v]: bits of all cells whose digit i equals v
        self._axis_masks = [self._build_axis_masks(i) for i in range(var_count)]
        # spread[i]: sum of 2**(v*stride_i); multiplying a digit-0 slice by it
        # replicates the slice across axis i
        self._spread = [
            ((1 << (self.m * s)) - 1) // ((1 << s) - 1) for s in self._strides
        ]

    def _build_axis_masks(self, axis: int) -> list[int]:
        s = self._strides[axis]
        period = self.m * s
        repeats = self.cells // period
        repeater = ((1 << (period * repeats)) - 1) // ((1 << period) - 1)
        ones = (1 << s) - 1
        return [repeater * (ones << (v * s)) for v in range(self.m)]

    def cell_index(self, values: tuple[int, ...]) -> int:
        return sum(v * s for v, s in zip(values, self._strides))

    def test(self, table: int, values: tuple[int, ...]) -> bool:
        return bool((table >> self.cell_index(values)) & 1)

    # -- primitive tables ---------------------------------------------------

    def relation_table(self, tuples: frozenset[tuple[int, ...]], axes: tuple[int, ...]) -> int:
        table = 0
        for tup in tuples:
            bits = self.full
            for axis, value in zip(axes, tup):
                bits &= self._axis_masks[axis][value]
            table |= bits
        return table

    def equality_table(self, axis_a: int, axis_b: int) -> int:
        if axis_a == axis_b:
            return self.full
        table = 0
        for v in range(self.m):
            table |= self._axis_masks[axis_a][v] & self._axis_masks[axis_b][v]
        return table

    # -- connectives ---------------------------------------------------------

    def negate(self, table: int) -> int:
        return self.full & ~table

    def conjoin(self, a: int, b: int) -> int:
        return a & b

    def disjoin(self, a: int, b: int) -> int:
        return a | b

    def implication(self, a: int, b: int) -> int:
        return (self.full & ~a) | b

    # -- quantifiers ----------------------------------------------------------

    def _slice0(self, table: int, axis: int) -> tuple[int, int]:
        """OR/AND folds of the axis slices, both expressed at digit 0."""
        s = self._strides[axis]
        mask0 = self._axis_masks[axis][0]
        any_bits = 0
        all_bits = mask0
        for v in range(self.m):
            part = (table >> (v * s)) & mask0
            any_bits |= part
            all_bits &= part
        return any_bits, all_bits

    def exists(self, table: int, axis: int) -> int:
        any_bits, _ = self._slice0(table, axis)
        return any_bits * self._spread[axis]

    def forall(self, table: int, axis: int) -> int:
        _, all_bits = self._slice0(table, axis)
        return all_bits * self._spread[axis]

    def constant_along(self, table: int, axis: int) -> bool:
        return self.exists(table, axis) == table
