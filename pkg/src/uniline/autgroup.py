"""Automorphism groups and orbit partitions of finite structures.

The optimized search backtracks over partial position maps with
relation-consistency pruning; ``brute_force_automorphisms`` filters all
``|U|!`` permutations and serves as the independent oracle in tests.  Both
return the complete group in the same deterministic order (lexicographic by
image sequence), so results are directly comparable.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable
from dataclasses import dataclass

from .structures import FiniteStructure

DEFAULT_SIZE_CAP = 10


class ResourceCapError(RuntimeError):
    """Universe too large for the configured automorphism search cap."""


@dataclass(frozen=True)
class Permutation:
    """A universe permutation stored as an image sequence over positions."""

    mapping: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ValueError(f"not a permutation: {self.mapping}")

    def __call__(self, position: int) -> int:
        return self.mapping[position]

    def apply(self, tup: tuple[int, ...]) -> tuple[int, ...]:
        return tuple(self.mapping[i] for i in tup)

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other."""
        return Permutation(tuple(self.mapping[other.mapping[i]] for i in range(len(self.mapping))))

    def inverse(self) -> "Permutation":
        inverse = [0] * len(self.mapping)
        for i, image in enumerate(self.mapping):
            inverse[image] = i
        return Permutation(tuple(inverse))

    @classmethod
    def identity(cls, size: int) -> "Permutation":
        return cls(tuple(range(size)))


def _relation_index_sets(structure: FiniteStructure) -> list[frozenset[tuple[int, ...]]]:
    position = {element: i for i, element in enumerate(structure.universe)}
    return [
        frozenset(tuple(position[e] for e in t) for t in tuples)
        for _, tuples in structure.interpretation
    ]


def is_automorphism(structure: FiniteStructure, mapping: tuple[int, ...]) -> bool:
    relations = _relation_index_sets(structure)
    return all(
        tuple(mapping[i] for i in tup) in relation
        for relation in relations
        for tup in relation
    )


def brute_force_automorphisms(structure: FiniteStructure) -> list[Permutation]:
    """All automorphisms by filtering every permutation of the universe."""
    size = structure.size()
    relations = _relation_index_sets(structure)
    found = []
    for mapping in itertools.permutations(range(size)):
        if all(tuple(mapping[i] for i in t) in rel for rel in relations for t in rel):
            found.append(Permutation(mapping))
    return found


def automorphisms(structure: FiniteStructure, size_cap: int = DEFAULT_SIZE_CAP) -> list[Permutation]:
    """The complete automorphism group, identity first, deterministic order."""
    size = structure.size()
    if size > size_cap:
        raise ResourceCapError(f"universe size {size} exceeds cap {size_cap}")
    relations = _relation_index_sets(structure)
    # tuples touching each position, for incremental consistency checks
    touching: list[list[tuple[int, frozenset, tuple[int, ...]]]] = [[] for _ in range(size)]
    for rel_id, relation in enumerate(relations):
        for tup in relation:
            for pos in set(tup):
                touching[pos].append((rel_id, relation, tup))

    image = [-1] * size
    preimage = [-1] * size
    found: list[Permutation] = []

    def consistent(pos: int) -> bool:
        for _, relation, tup in touching[pos]:
            if all(image[i] >= 0 for i in tup):
                if tuple(image[i] for i in tup) not in relation:
                    return False
        target = image[pos]
        for _, relation, tup in touching[target]:
            if all(preimage[i] >= 0 for i in tup):
                if tuple(preimage[i] for i in tup) not in relation:
                    return False
        return True

    def extend(pos: int) -> None:
        if pos == size:
            found.append(Permutation(tuple(image)))
            return
        for candidate in range(size):
            if preimage[candidate] >= 0:
                continue
            image[pos] = candidate
            preimage[candidate] = pos
            if consistent(pos):
                extend(pos + 1)
            image[pos] = -1
            preimage[candidate] = -1

    extend(0)
    return found


@dataclass(frozen=True)
class OrbitPartition:
    """Orbit classes of the automorphism action on n-tuples or n-subsets.

    In ``tuples`` mode the carrier is all n-tuples of pairwise-distinct
    positions; in ``subsets`` mode it is all n-element position sets, stored
    as sorted tuples.  Classes are sorted by least member and internally
    sorted, so the partition is canonical.
    """

    n: int
    mode: str
    classes: tuple[tuple[tuple[int, ...], ...], ...]

    def class_count(self) -> int:
        return len(self.classes)

    def class_of(self, member: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
        key = tuple(sorted(member)) if self.mode == "subsets" else tuple(member)
        for cls in self.classes:
            if key in cls:
                return cls
        raise KeyError(f"{member} is not in the partition carrier")


def orbit_partition(
    structure: FiniteStructure,
    n: int,
    mode: str = "subsets",
    size_cap: int = DEFAULT_SIZE_CAP,
) -> OrbitPartition:
    if mode not in ("tuples", "subsets"):
        raise ValueError(f"mode must be 'tuples' or 'subsets', got {mode!r}")
    size = structure.size()
    if not 1 <= n <= size:
        raise ValueError(f"n must be between 1 and {size}, got {n}")
    group = automorphisms(structure, size_cap=size_cap)
    if mode == "tuples":
        carrier = list(itertools.permutations(range(size), n))
    else:
        carrier = [tuple(c) for c in itertools.combinations(range(size), n)]
    remaining = set(carrier)
    classes: list[tuple[tuple[int, ...], ...]] = []
    for member in carrier:
        if member not in remaining:
            continue
        orbit = set()
        for g in group:
            moved = g.apply(member)
            if mode == "subsets":
                moved = tuple(sorted(moved))
            orbit.add(moved)
        remaining -= orbit
        classes.append(tuple(sorted(orbit)))
    return OrbitPartition(n, mode, tuple(classes))


def is_n_set_transitive(structure: FiniteStructure, n: int, size_cap: int = DEFAULT_SIZE_CAP) -> bool:
    """True when the group acts with a single orbit on n-subsets."""
    partition = orbit_partition(structure, n, mode="subsets", size_cap=size_cap)
    return partition.class_count() <= 1


def elements_of(structure: FiniteStructure, positions: Iterable[int]) -> tuple[str, ...]:
    return tuple(structure.universe[i] for i in positions)
