"""Character tables and representation-theoretic oracles for small groups.

This module is the independent cross-check for every counting formula in the
package: irrep multiplicities in the position representation on ``(C^d)^n``
give the ancilla-free and ancilla-assisted message counts directly, and
Frobenius-Schur indicators certify whether the squared-cycle closed form is
applicable at all.

Nonabelian tables are computed numerically by simultaneous diagonalization of
the class-sum matrices: a random real linear combination of the structure
matrices is diagonalized and its eigenvectors, normalized on the identity
class, yield the characters.  Degenerate eigenvalues trigger a retry with a
fresh combination.  Abelian groups bypass the eigensolver: cyclic groups get
exact root-of-unity characters, other abelian groups a deterministic
eigenprojector cascade over their generator list.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from . import kernels
from .errors import (
    CharacterTableError,
    GroupSizeLimitError,
    MultiplicityRoundingError,
    StateSpaceBoundError,
)
from .perms import (
    DEFAULT_MAX_STATES,
    ConjugacyClass,
    PermutationGroup,
    conjugacy_classes,
    cycle_count,
    orbits,
)

DEFAULT_MAX_GROUP_ORDER = 5040
DEFAULT_MAX_PROJECTOR_DIM = 4096
ORTHOGONALITY_TOL = 1e-9

_QUARTER_TURNS = {(0, 1): 1.0 + 0.0j, (1, 2): -1.0 + 0.0j, (1, 4): 1.0j, (3, 4): -1.0j}


def unit_root(m: int, t: int) -> complex:
    """exp(2*pi*i*t/m), exact at multiples of a quarter turn."""
    t %= m
    g = math.gcd(t, m) if t else m
    reduced = (t // g, m // g)
    if reduced in _QUARTER_TURNS:
        return _QUARTER_TURNS[reduced]
    return cmath.exp(2j * cmath.pi * t / m)


@dataclass(frozen=True)
class Irrep:
    label: str
    dim: int
    values: tuple[complex, ...]  # one character value per conjugacy class


@dataclass(frozen=True, eq=False)
class CharacterTable:
    group: PermutationGroup
    classes: tuple[ConjugacyClass, ...]
    irreps: tuple[Irrep, ...]
    group_order: int

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(ir.dim for ir in self.irreps)

    @property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(c.size for c in self.classes)

    def class_index_of(self, p) -> int:
        return self._class_lookup[p]

    @cached_property
    def _class_lookup(self) -> dict:
        return {m: i for i, c in enumerate(self.classes) for m in c.members}

    def character(self, mu: int, p) -> complex:
        return self.irreps[mu].values[self.class_index_of(p)]

    def value_matrix(self) -> np.ndarray:
        return np.array([ir.values for ir in self.irreps])


@dataclass(frozen=True)
class FSIndicators:
    """Frobenius-Schur indicators, one per irrep: +1 real, 0 complex, -1 quaternionic."""

    values: tuple[int, ...]
    max_residual: float


@dataclass(frozen=True)
class MultiplicityVector:
    """Irrep multiplicities of the position representation on (C^d)^n."""

    values: tuple[int, ...]
    by_orbit: tuple[tuple[int, ...], ...] | None = None


def _validation_residual(table: CharacterTable) -> float:
    """Max deviation from the character-table invariants (0 means perfect)."""
    k = len(table.classes)
    if len(table.irreps) != k:
        return math.inf
    if sum(d * d for d in table.dims) != table.group_order:
        return math.inf
    x = table.value_matrix()
    sizes = np.array(table.class_sizes, dtype=float)
    gram = (x * sizes) @ x.conj().T / table.group_order
    residual = float(np.abs(gram - np.eye(k)).max())
    dims = np.array(table.dims, dtype=complex)
    residual = max(residual, float(np.abs(x[:, 0] - dims).max()))
    return residual


def _abelian_character_rows(group: PermutationGroup, classes) -> np.ndarray:
    order = len(group)
    elems = group.elements
    pos = {p: i for i, p in enumerate(elems)}
    class_reps = [c.representative for c in classes]

    # Cyclic fast path: exact powers of a primitive root of unity.
    for g in group.generators:
        if g.order() == order:
            dlog = {}
            cur = group.identity
            for k in range(order):
                dlog[cur] = k
                cur = g * cur
            return np.array(
                [[unit_root(order, j * dlog[rep]) for rep in class_reps] for j in range(order)]
            )

    if order == 1:
        return np.ones((1, 1), dtype=complex)

    # Sequential splitting into joint eigenspaces of the left-translation
    # operators of the generators; each 1-dim survivor is one character.
    gens = []
    for g in group.generators:
        if not g.is_identity() and g not in gens:
            gens.append(g)
    spaces: list[tuple[np.ndarray, tuple[int, ...]]] = [(np.eye(order, dtype=complex), ())]
    for a in gens:
        m = a.order()
        translate = np.zeros((order, order), dtype=complex)
        for j, x in enumerate(elems):
            translate[pos[a * x], j] = 1.0
        refined = []
        for basis, tag in spaces:
            restricted = basis.conj().T @ (translate @ basis)
            powers = [np.eye(basis.shape[1], dtype=complex)]
            for _ in range(m - 1):
                powers.append(powers[-1] @ restricted)
            for k in range(m):
                projector = sum(unit_root(m, -k * l) * powers[l] for l in range(m)) / m
                rank = int(round(np.trace(projector).real))
                if rank == 0:
                    continue
                u, _s, _v = np.linalg.svd(basis @ projector)
                refined.append((u[:, :rank], tag + (k,)))
        spaces = refined
    spaces.sort(key=lambda item: item[1])
    if len(spaces) != order or any(b.shape[1] != 1 for b, _ in spaces):
        raise CharacterTableError("generator cascade failed to isolate the characters")
    e_idx = pos[group.identity]
    rows = []
    for basis, _tag in spaces:
        w = basis[:, 0]
        rows.append([complex(np.conj(w[pos[rep]] / w[e_idx])) for rep in class_reps])
    return np.array(rows)


def _class_structure_matrices(group: PermutationGroup, classes) -> np.ndarray:
    """a[i, j, t]: ways to write (fixed z in class t) as x*y with x in i, y in j."""
    k = len(classes)
    class_of = {m: i for i, c in enumerate(classes) for m in c.members}
    reps = [c.representative for c in classes]
    a = np.zeros((k, k, k))
    for x in group.elements:
        i = class_of[x]
        x_inv = x.inverse()
        for t, z in enumerate(reps):
            a[i, class_of[x_inv * z], t] += 1.0
    return a


def _nonabelian_character_rows(group, classes, seed: int, max_retries: int):
    order = len(group)
    k = len(classes)
    sizes = np.array([c.size for c in classes], dtype=float)
    structure = _class_structure_matrices(group, classes)
    for attempt in range(max_retries):
        rng = np.random.default_rng(seed + attempt)
        combo = np.einsum("i,ijt->jt", rng.standard_normal(k), structure)
        evals, evecs = np.linalg.eig(combo)
        scale = max(1.0, float(np.abs(evals).max()))
        gaps = np.abs(evals[:, None] - evals[None, :]) + np.eye(k) * scale
        if gaps.min() < 1e-8 * scale:
            continue
        rows = []
        ok = True
        for col in range(k):
            v = evecs[:, col]
            if abs(v[0]) < 1e-12:
                ok = False
                break
            v = v / v[0]
            weight = float(np.sum(np.abs(v) ** 2 / sizes))
            dim_f = math.sqrt(order / weight)
            dim = round(dim_f)
            if dim < 1 or abs(dim_f - dim) > 1e-6:
                ok = False
                break
            rows.append((dim, tuple(complex(dim * v[i] / sizes[i]) for i in range(k))))
        if not ok or sum(d * d for d, _ in rows) != order:
            continue
        rows.sort(key=lambda r: (r[0], tuple((-round(v.real, 6), -round(v.imag, 6)) for v in r[1])))
        return rows
    raise CharacterTableError(f"eigenvalue degeneracy not resolved after {max_retries} retries")


def character_table(
    group: PermutationGroup,
    *,
    max_order: int = DEFAULT_MAX_GROUP_ORDER,
    seed: int = 0,
    max_retries: int = 12,
) -> CharacterTable:
    """Full complex character table of the group.

    Raises CharacterTableError if the numerical construction cannot meet the
    orthogonality invariants.
    """
    order = len(group)
    if order > max_order:
        raise GroupSizeLimitError(f"group order {order} exceeds the bound {max_order}")
    classes = tuple(conjugacy_classes(group))
    if group.is_abelian():
        value_rows = _abelian_character_rows(group, classes)
        rows = [(1, tuple(map(complex, row))) for row in value_rows]
    else:
        rows = _nonabelian_character_rows(group, classes, seed, max_retries)
    irreps = tuple(Irrep(f"mu{i}", dim, values) for i, (dim, values) in enumerate(rows))
    table = CharacterTable(group=group, classes=classes, irreps=irreps, group_order=order)
    residual = _validation_residual(table)
    if residual > ORTHOGONALITY_TOL:
        raise CharacterTableError(f"character table residual {residual:.3e} exceeds 1e-9")
    return table


def frobenius_schur_indicators(
    group: PermutationGroup, table: CharacterTable | None = None, *, tol: float = 1e-9
) -> FSIndicators:
    """Indicators nu = mean over sigma of chi(sigma^2), rounded to {-1, 0, +1}."""
    if table is None:
        table = character_table(group)
    square_class = [table.class_index_of(c.representative * c.representative) for c in table.classes]
    sizes = table.class_sizes
    values = []
    worst = 0.0
    for ir in table.irreps:
        raw = sum(sizes[i] * ir.values[square_class[i]] for i in range(len(sizes)))
        raw /= table.group_order
        nearest = min((-1, 0, 1), key=lambda v: abs(raw - v))
        residual = abs(raw - nearest)
        if residual > tol:
            raise MultiplicityRoundingError(
                f"indicator for {ir.label} is {raw}, residual {residual:.3e} > {tol}"
            )
        worst = max(worst, residual)
        values.append(nearest)
    return FSIndicators(tuple(values), worst)


def is_totally_orthogonal(group: PermutationGroup, table: CharacterTable | None = None) -> bool:
    """True iff every irrep is realizable over the reals (all indicators +1)."""
    return all(v == 1 for v in frobenius_schur_indicators(group, table).values)


def ambient_multiplicities(
    group: PermutationGroup,
    d: int,
    *,
    table: CharacterTable | None = None,
    per_orbit: bool = False,
    tol: float = 1e-6,
    max_states: int = DEFAULT_MAX_STATES,
) -> MultiplicityVector:
    """Multiplicity of each irrep in the position action on all d**n strings.

    The ambient character value on sigma is d**c(sigma), the number of strings
    sigma fixes.
    """
    if table is None:
        table = character_table(group)
    sizes = table.class_sizes
    ambient = [float(d ** cycle_count(c.representative)) for c in table.classes]
    values = _project_class_function(table, ambient, tol, what="multiplicity")
    expected = d**group.degree
    total = sum(m * ir.dim for m, ir in zip(values, table.irreps))
    if total != expected:
        raise MultiplicityRoundingError(f"sum of m*dim is {total}, expected d**n = {expected}")
    by_orbit = None
    if per_orbit:
        orbit_rows = []
        for orbit in orbits(group, d, max_states=max_states):
            member_set = set(int(i) for i in orbit.member_indices)
            fixed = []
            for c in table.classes:
                t = kernels.action_table(c.representative.inverse().images, d)
                fixed.append(float(sum(1 for ix in member_set if int(t[ix]) == ix)))
            orbit_rows.append(_project_class_function(table, fixed, tol, what="orbit multiplicity"))
        by_orbit = tuple(orbit_rows)
        for mu in range(len(table.irreps)):
            if sum(row[mu] for row in by_orbit) != values[mu]:
                raise MultiplicityRoundingError("per-orbit multiplicities do not sum to the total")
    return MultiplicityVector(values, by_orbit)


def _project_class_function(table, class_values, tol, *, what) -> tuple[int, ...]:
    sizes = table.class_sizes
    out = []
    for ir in table.irreps:
        raw = sum(s * f * v.conjugate() for s, f, v in zip(sizes, class_values, ir.values))
        raw /= table.group_order
        nearest = round(raw.real)
        residual = abs(raw - nearest)
        if residual > tol or nearest < 0:
            raise MultiplicityRoundingError(
                f"{what} for {ir.label} is {raw}, residual {residual:.3e} > {tol}"
            )
        out.append(nearest)
    return tuple(out)


def nq_oracle(group: PermutationGroup, d: int, *, table: CharacterTable | None = None) -> int:
    """Ancilla-free message count as the plain sum of multiplicities."""
    return sum(ambient_multiplicities(group, d, table=table).values)


def na_oracle(group: PermutationGroup, d: int, *, table: CharacterTable | None = None) -> int:
    """Ancilla-assisted message count as the sum of squared multiplicities."""
    return sum(m * m for m in ambient_multiplicities(group, d, table=table).values)


def isotypic_projector(
    group: PermutationGroup,
    d: int,
    mu: int,
    *,
    table: CharacterTable | None = None,
    max_dim: int = DEFAULT_MAX_PROJECTOR_DIM,
) -> np.ndarray:
    """Projector onto the mu-isotypic component of the d**n-dimensional space."""
    if table is None:
        table = character_table(group)
    size = d**group.degree
    if size > max_dim:
        raise StateSpaceBoundError(f"d**n = {size} exceeds the projector bound {max_dim}")
    irrep = table.irreps[mu]
    projector = np.zeros((size, size), dtype=complex)
    identity_cols = np.arange(size)
    for p in group.elements:
        coeff = irrep.dim * irrep.values[table.class_index_of(p)].conjugate() / table.group_order
        t = kernels.action_table(p.inverse().images, d)
        projector[t, identity_cols] += coeff
    return projector


@lru_cache(maxsize=32)
def cached_character_table(group: PermutationGroup, max_order: int = DEFAULT_MAX_GROUP_ORDER) -> CharacterTable:
    return character_table(group, max_order=max_order)
