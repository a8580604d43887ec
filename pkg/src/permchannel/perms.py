"""Finite permutations, permutation groups, and their action on colored strings.

Conventions, fixed package-wide:

* ``p.images[i]`` is the image ``p(i)``.  Composition is left-to-right in the
  functional sense: ``(p * q)(i) == p(q(i))``, i.e. ``q`` acts first.  Both
  conventions exist in the wild; everything here assumes this one.
* A permutation moves the *content* of position ``j`` to position ``p(j)``:
  ``act_on_string(p, x)[i] == x[p.inverse()(i)]``.
* A length-``n`` string over ``{0..d-1}`` is identified with its base-``d``
  value, position 0 most significant.  Index order is therefore lexicographic
  order, and membership lookups are O(1).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import kernels
from .errors import DegreeMismatchError, GroupSizeLimitError, StateSpaceBoundError

DEFAULT_MAX_GROUP_ORDER = 10**6
DEFAULT_MAX_STATES = 1 << 20


@dataclass(frozen=True, order=True)
class Permutation:
    """A permutation of ``{0, ..., n-1}`` stored by its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation of 0..{len(self.images) - 1}: {self.images}")

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(n)))

    @staticmethod
    def from_cycles(cycles: Iterable[Sequence[int]], n: int) -> "Permutation":
        """Build from disjoint cycles; points not mentioned are fixed."""
        images = list(range(n))
        seen: set[int] = set()
        for cycle in cycles:
            for a in cycle:
                if a in seen:
                    raise ValueError(f"cycles are not disjoint at point {a}")
                seen.add(a)
            for a, b in zip(cycle, tuple(cycle[1:]) + (cycle[0],)):
                images[a] = b
        return Permutation(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise DegreeMismatchError(f"degree {self.degree} != {other.degree}")
        return Permutation(tuple(self.images[other.images[i]] for i in range(self.degree)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, img in enumerate(self.images):
            inv[img] = i
        return Permutation(tuple(inv))

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        for _ in range(abs(k)):
            result = base * result
        return result

    def order(self) -> int:
        return math.lcm(*(len(c) for c in cycle_decomposition(self).cycles))

    def is_identity(self) -> bool:
        return all(img == i for i, img in enumerate(self.images))

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


@dataclass(frozen=True)
class CycleDecomposition:
    """Disjoint cycles of a permutation, fixed points kept as 1-cycles."""

    cycles: tuple[tuple[int, ...], ...]
    cycle_counts: dict[int, int]
    total_cycles: int

    def count(self, k: int) -> int:
        return self.cycle_counts.get(k, 0)


def cycle_decomposition(p: Permutation) -> CycleDecomposition:
    """Unique disjoint-cycle decomposition; cycles start and are ordered by their minimum."""
    n = p.degree
    seen = [False] * n
    cycles = []
    for start in range(n):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        j = p(start)
        while j != start:
            cycle.append(j)
            seen[j] = True
            j = p(j)
        cycles.append(tuple(cycle))
    counts: dict[int, int] = {}
    for c in cycles:
        counts[len(c)] = counts.get(len(c), 0) + 1
    return CycleDecomposition(tuple(cycles), counts, len(cycles))


def cycle_count(p: Permutation) -> int:
    """c(p): number of disjoint cycles, fixed points included."""
    return cycle_decomposition(p).total_cycles


def cycle_type(p: Permutation) -> tuple[tuple[int, int], ...]:
    """Cycle type as ``((length, multiplicity), ...)`` with lengths descending."""
    counts = cycle_decomposition(p).cycle_counts
    return tuple(sorted(counts.items(), reverse=True))


@dataclass(frozen=True, order=True)
class ColoredString:
    """A length-``n`` string over the alphabet ``{0..d-1}``."""

    symbols: tuple[int, ...]
    d: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("alphabet size must be >= 1")
        if any(not 0 <= s < self.d for s in self.symbols):
            raise ValueError(f"symbols {self.symbols} out of range for d={self.d}")

    @property
    def n(self) -> int:
        return len(self.symbols)

    @property
    def index(self) -> int:
        """Base-``d`` value, position 0 most significant."""
        ix = 0
        for s in self.symbols:
            ix = ix * self.d + s
        return ix

    @staticmethod
    def from_index(ix: int, n: int, d: int) -> "ColoredString":
        symbols = [0] * n
        for i in range(n - 1, -1, -1):
            symbols[i] = ix % d
            ix //= d
        return ColoredString(tuple(symbols), d)

    @staticmethod
    def parse(text: str, d: int) -> "ColoredString":
        parts = text.split(",") if "," in text else list(text)
        return ColoredString(tuple(int(c) for c in parts), d)

    def __str__(self) -> str:
        if self.d <= 10:
            return "".join(str(s) for s in self.symbols)
        return ",".join(str(s) for s in self.symbols)


def act_on_string(p: Permutation, x: ColoredString) -> ColoredString:
    """Move the content of position j to position p(j): result[i] = x[p^-1(i)]."""
    if p.degree != x.n:
        raise DegreeMismatchError(f"permutation degree {p.degree} != string length {x.n}")
    inv = p.inverse()
    return ColoredString(tuple(x.symbols[inv(i)] for i in range(x.n)), x.d)


def act_on_index(p: Permutation, ix: int, d: int) -> int:
    """Index-space version of :func:`act_on_string`."""
    n = p.degree
    digits = [0] * n
    for i in range(n - 1, -1, -1):
        digits[i] = ix % d
        ix //= d
    inv = p.inverse()
    out = 0
    for i in range(n):
        out = out * d + digits[inv(i)]
    return out


@dataclass(frozen=True)
class PermutationGroup:
    """A finite permutation group given by its full, closed element list.

    ``elements`` is sorted by image tuple (so the identity comes first) and
    ``generators`` must span the group: orbit enumeration and conjugacy-class
    sweeps only apply generators.
    """

    degree: int
    elements: tuple[Permutation, ...]
    generators: tuple[Permutation, ...]
    kind: str = "custom"

    def __post_init__(self):
        for p in itertools.chain(self.elements, self.generators):
            if p.degree != self.degree:
                raise DegreeMismatchError(f"element degree {p.degree} != group degree {self.degree}")

    @cached_property
    def _element_set(self) -> frozenset[Permutation]:
        return frozenset(self.elements)

    @cached_property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return p in self._element_set

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)

    def validate(self) -> None:
        """Full group-axiom check (closure, identity, inverses, generator span)."""
        els = self._element_set
        if self.identity not in els:
            raise ValueError("identity missing")
        for p in self.elements:
            if p.inverse() not in els:
                raise ValueError(f"inverse of {p} missing")
            for q in self.elements:
                if p * q not in els:
                    raise ValueError(f"product {p} * {q} escapes the element set")
        span = generate_group(self.generators, degree=self.degree, max_order=len(els) + 1)
        if len(span) != len(els):
            raise ValueError("generators do not span the element set")


def _sorted_group(degree, elements, generators, kind) -> PermutationGroup:
    return PermutationGroup(degree, tuple(sorted(set(elements))), tuple(generators), kind)


def generate_group(
    generators: Iterable[Permutation],
    *,
    degree: int | None = None,
    max_order: int = DEFAULT_MAX_GROUP_ORDER,
    kind: str = "custom",
) -> PermutationGroup:
    """Smallest group containing the generators, by breadth-first saturation."""
    gens = list(generators)
    if degree is None:
        if not gens:
            raise ValueError("degree is required for an empty generator list")
        degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatchError(f"generator degree {g.degree} != {degree}")
    identity = Permutation.identity(degree)
    elements = {identity}
    frontier = [identity]
    while frontier:
        p = frontier.pop()
        for g in gens:
            q = p * g
            if q not in elements:
                if len(elements) >= max_order:
                    raise GroupSizeLimitError(f"group closure exceeded {max_order} elements")
                elements.add(q)
                frontier.append(q)
    return _sorted_group(degree, elements, gens, kind)


def make_named_group(kind: str, n: int, *, max_order: int = DEFAULT_MAX_GROUP_ORDER) -> PermutationGroup:
    """Cyclic (order n), dihedral (order 2n, n >= 3) or symmetric (order n!) group.

    The dihedral group acts faithfully on positions only for n >= 3; for
    n in {1, 2} the image of the rotation/reflection generators inside S_n is
    returned (kind "custom"), which averages to the same channel counts.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rotation = Permutation(tuple((i + 1) % n for i in range(n)))
    rotations = [Permutation.identity(n)]
    for _ in range(n - 1):
        rotations.append(rotation * rotations[-1])
    if kind == "cyclic":
        if n > max_order:
            raise GroupSizeLimitError(f"cyclic order {n} exceeds {max_order}")
        return _sorted_group(n, rotations, (rotation,), "cyclic")
    if kind == "dihedral":
        reflection = Permutation(tuple((n - i) % n for i in range(n)))
        if n < 3:
            return generate_group([rotation, reflection], degree=n, max_order=max_order)
        if 2 * n > max_order:
            raise GroupSizeLimitError(f"dihedral order {2 * n} exceeds {max_order}")
        elements = rotations + [reflection * r for r in rotations]
        return _sorted_group(n, elements, (rotation, reflection), "dihedral")
    if kind == "symmetric":
        if math.factorial(n) > max_order:
            raise GroupSizeLimitError(f"symmetric order {n}! exceeds {max_order}")
        elements = [Permutation(images) for images in itertools.permutations(range(n))]
        gens = (Permutation.from_cycles([(0, 1)], n), rotation) if n >= 2 else ()
        return _sorted_group(n, elements, gens, "symmetric")
    raise ValueError(f"unknown group kind {kind!r}")


@dataclass(frozen=True, eq=False)
class Orbit:
    """One equivalence class of strings under the group action.

    ``member_indices`` is ascending, so ``member_indices[0]`` is the
    lexicographically minimal member (the canonical representative).
    ``stabilizer_order`` is |G| / size; the explicit stabilizer subgroup is
    computed independently by :func:`stabilizer`.
    """

    index: int
    representative: ColoredString
    member_indices: np.ndarray
    n: int
    d: int
    size: int
    stabilizer_order: int
    period_factor: int | None = None

    @property
    def members(self) -> tuple[ColoredString, ...]:
        return tuple(ColoredString.from_index(int(ix), self.n, self.d) for ix in self.member_indices)

    def __repr__(self) -> str:
        return f"Orbit({self.index}, rep={self.representative}, size={self.size})"


def _inverse_generator_images(group: PermutationGroup) -> np.ndarray:
    invs = [g.inverse().images for g in group.generators]
    return np.array(invs, dtype=np.int64).reshape(len(invs), group.degree)


def orbit_rep_array(group: PermutationGroup, d: int, *, max_states: int = DEFAULT_MAX_STATES) -> np.ndarray:
    """rep[ix] = index of the minimal member of the orbit of string ix."""
    n = group.degree
    size = d**n
    if size > max_states:
        raise StateSpaceBoundError(f"d**n = {size} exceeds the bound {max_states}")
    return kernels.orbit_reps(_inverse_generator_images(group), n, d)


def orbits(group: PermutationGroup, d: int, *, max_states: int = DEFAULT_MAX_STATES) -> list[Orbit]:
    """All orbits of the group action on d**n strings, ordered by representative."""
    n = group.degree
    rep = orbit_rep_array(group, d, max_states=max_states)
    reps, inverse_map, counts = np.unique(rep, return_inverse=True, return_counts=True)
    order = np.lexsort((np.arange(rep.shape[0]), inverse_map))
    offsets = np.concatenate(([0], np.cumsum(counts)))
    result = []
    for j, (rep_ix, size) in enumerate(zip(reps.tolist(), counts.tolist())):
        members = order[offsets[j] : offsets[j + 1]]
        if len(group) % size != 0:
            raise ValueError("orbit size does not divide the group order; group is not closed")
        stab = len(group) // size
        result.append(
            Orbit(
                index=j,
                representative=ColoredString.from_index(rep_ix, n, d),
                member_indices=members,
                n=n,
                d=d,
                size=size,
                stabilizer_order=stab,
                period_factor=stab if group.kind == "cyclic" else None,
            )
        )
    return result


def stabilizer(group: PermutationGroup, x: ColoredString) -> PermutationGroup:
    """Subgroup of elements fixing the string x."""
    if group.degree != x.n:
        raise DegreeMismatchError(f"group degree {group.degree} != string length {x.n}")
    fixed = [p for p in group.elements if act_on_string(p, x) == x]
    return _sorted_group(group.degree, fixed, fixed, "custom")


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Permutation
    members: tuple[Permutation, ...]
    partition: tuple[tuple[int, int], ...]
    size: int


def conjugacy_classes(group: PermutationGroup) -> list[ConjugacyClass]:
    """Conjugacy classes, ordered by minimal member (identity class first)."""
    gens = group.generators or (group.identity,)
    assigned: set[Permutation] = set()
    classes = []
    for p in group.elements:
        if p in assigned:
            continue
        members = {p}
        frontier = [p]
        while frontier:
            q = frontier.pop()
            for g in gens:
                c = g * q * g.inverse()
                if c not in members:
                    members.add(c)
                    frontier.append(c)
        assigned |= members
        ordered = tuple(sorted(members))
        classes.append(
            ConjugacyClass(
                representative=ordered[0],
                members=ordered,
                partition=cycle_type(ordered[0]),
                size=len(ordered),
            )
        )
    return classes


def square_root_count(group: PermutationGroup, p: Permutation) -> int:
    """Number of tau in G with tau * tau == p; constant on conjugacy classes."""
    if p not in group:
        raise ValueError(f"{p} is not an element of the group")
    return sum(1 for t in group.elements if t * t == p)


def parse_group_file(text: str, *, max_order: int = DEFAULT_MAX_GROUP_ORDER) -> PermutationGroup:
    """Group from generator lines in one-line image notation.

    Each non-comment line holds "p(0) p(1) ... p(n-1)" (space-separated
    decimal); lines starting with '#' are ignored.
    """
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            images = tuple(int(tok) for tok in line.split())
            gens.append(Permutation(images))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
    if not gens:
        raise ValueError("no permutations found in group file")
    return generate_group(gens, max_order=max_order)


def load_group_file(path, *, max_order: int = DEFAULT_MAX_GROUP_ORDER) -> PermutationGroup:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_group_file(fh.read(), max_order=max_order)
