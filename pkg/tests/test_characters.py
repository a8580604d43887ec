import numpy as np
import pytest

from oracles import brute_square_roots
from permchannel import (
    Permutation,
    ambient_multiplicities,
    character_table,
    count_ancilla_polya,
    count_quantum_totally_orthogonal,
    frobenius_schur_indicators,
    generate_group,
    is_totally_orthogonal,
    isotypic_projector,
    make_named_group,
    na_oracle,
    nq_oracle,
    square_root_count,
    unit_root,
)
from permchannel.errors import (
    GroupSizeLimitError,
    MultiplicityRoundingError,
    StateSpaceBoundError,
)

# The unit quaternions acting on themselves by left multiplication; their
# 2-dimensional irrep is quaternionic, so the FS indicator -1 shows up.
QUATERNION = generate_group(
    [Permutation((2, 3, 1, 0, 6, 7, 5, 4)), Permutation((4, 5, 7, 6, 1, 0, 2, 3))]
)

KLEIN = generate_group([Permutation((1, 0, 3, 2)), Permutation((2, 3, 0, 1))])

TABLE_ZOO = [
    make_named_group("cyclic", 2),
    make_named_group("cyclic", 3),
    make_named_group("cyclic", 4),
    make_named_group("cyclic", 7),
    make_named_group("dihedral", 3),
    make_named_group("dihedral", 4),
    make_named_group("dihedral", 6),
    make_named_group("symmetric", 3),
    make_named_group("symmetric", 4),
    make_named_group("symmetric", 5),
    KLEIN,
    QUATERNION,
]


def test_unit_root_quarter_turns_are_exact():
    assert unit_root(4, 0) == 1
    assert unit_root(4, 1) == 1j
    assert unit_root(4, 2) == -1
    assert unit_root(4, 3) == -1j
    assert unit_root(8, 2) == 1j
    assert unit_root(2, 1) == -1
    assert abs(unit_root(3, 1) - complex(-0.5, np.sqrt(3) / 2)) < 1e-15


class TestCharacterTable:
    def test_cyclic_characters_are_root_powers(self):
        group = make_named_group("cyclic", 4)
        table = character_table(group)
        r = group.generators[0]
        for j, irrep in enumerate(table.irreps):
            assert irrep.dim == 1
            for k in range(4):
                assert table.character(j, r**k) == unit_root(4, j * k)

    def test_s3_dimensions(self):
        table = character_table(make_named_group("symmetric", 3))
        assert sorted(table.dims) == [1, 1, 2]

    def test_trivial_group(self):
        table = character_table(generate_group([], degree=2))
        assert table.dims == (1,)
        assert table.irreps[0].values == (1,)

    def test_quaternion_dimensions(self):
        assert sorted(character_table(QUATERNION).dims) == [1, 1, 1, 1, 2]

    @pytest.mark.parametrize("group", TABLE_ZOO, ids=lambda g: f"{g.kind}{len(g)}")
    def test_invariants(self, group):
        table = character_table(group)
        k = len(table.classes)
        assert len(table.irreps) == k
        assert sum(d * d for d in table.dims) == len(group)
        x = table.value_matrix()
        sizes = np.array(table.class_sizes, dtype=float)
        gram = (x * sizes) @ x.conj().T / len(group)
        assert np.abs(gram - np.eye(k)).max() < 1e-9
        # The identity class comes first and carries the dimensions.
        assert table.classes[0].representative == group.identity
        assert np.abs(x[:, 0] - np.array(table.dims)).max() < 1e-9

    def test_group_order_bound(self):
        with pytest.raises(GroupSizeLimitError):
            character_table(make_named_group("symmetric", 5), max_order=100)

    def test_full_permutation_group_at_default_bound(self):
        # Order 5040 is the default oracle ceiling; 15 classes, known dims.
        group = make_named_group("symmetric", 7)
        table = character_table(group)
        assert sorted(table.dims) == [1, 1, 6, 6, 14, 14, 14, 14, 15, 15, 20, 21, 21, 35, 35]
        assert is_totally_orthogonal(group, table)
        mults = ambient_multiplicities(group, 2, table=table)
        assert sum(mults.values) == 20
        assert sum(m * m for m in mults.values) == 120

    def test_deterministic_output(self):
        a = character_table(make_named_group("symmetric", 4))
        b = character_table(make_named_group("symmetric", 4))
        assert np.array_equal(a.value_matrix(), b.value_matrix())


class TestFrobeniusSchur:
    def test_s3_all_real(self):
        fs = frobenius_schur_indicators(make_named_group("symmetric", 3))
        assert fs.values == (1, 1, 1)

    def test_c4_has_complex_pair(self):
        fs = frobenius_schur_indicators(make_named_group("cyclic", 4))
        assert fs.values == (1, 0, 1, 0)

    def test_trivial_group(self):
        assert frobenius_schur_indicators(generate_group([], degree=1)).values == (1,)

    def test_quaternion_has_quaternionic_irrep(self):
        fs = frobenius_schur_indicators(QUATERNION)
        assert -1 in fs.values

    def test_c2_both_real(self):
        assert frobenius_schur_indicators(make_named_group("cyclic", 2)).values == (1, 1)

    def test_residual_is_tiny(self):
        fs = frobenius_schur_indicators(make_named_group("symmetric", 5))
        assert fs.max_residual < 1e-9


class TestTotalOrthogonality:
    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_dihedral_is_totally_orthogonal(self, n):
        assert is_totally_orthogonal(make_named_group("dihedral", n))

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_larger_cyclic_is_not(self, n):
        assert not is_totally_orthogonal(make_named_group("cyclic", n))

    def test_c2_and_klein_are(self):
        assert is_totally_orthogonal(make_named_group("cyclic", 2))
        assert is_totally_orthogonal(KLEIN)

    def test_quaternion_is_not(self):
        assert not is_totally_orthogonal(QUATERNION)


class TestMultiplicities:
    def test_cyclic_four_worked_example(self):
        mults = ambient_multiplicities(make_named_group("cyclic", 4), 2)
        assert mults.values == (6, 3, 4, 3)

    def test_trivial_group_single_block(self):
        assert ambient_multiplicities(generate_group([], degree=3), 2).values == (8,)

    def test_s3_sums(self):
        mults = ambient_multiplicities(make_named_group("symmetric", 3), 2)
        assert sum(mults.values) == 6
        assert sum(m * m for m in mults.values) == 20

    @pytest.mark.parametrize("group", TABLE_ZOO, ids=lambda g: f"{g.kind}{len(g)}")
    @pytest.mark.parametrize("d", [2, 3])
    def test_dimension_identity(self, group, d):
        table = character_table(group)
        mults = ambient_multiplicities(group, d, table=table)
        assert sum(m * ir.dim for m, ir in zip(mults.values, table.irreps)) == d**group.degree

    def test_per_orbit_breakdown_sums(self):
        group = make_named_group("cyclic", 4)
        mults = ambient_multiplicities(group, 2, per_orbit=True)
        assert mults.by_orbit is not None
        assert len(mults.by_orbit) == 6
        for mu, total in enumerate(mults.values):
            assert sum(row[mu] for row in mults.by_orbit) == total

    def test_tight_tolerance_raises(self):
        with pytest.raises(MultiplicityRoundingError):
            ambient_multiplicities(make_named_group("dihedral", 5), 2, tol=1e-18)


class TestOracles:
    def test_cyclic_four_quantum(self):
        assert nq_oracle(make_named_group("cyclic", 4), 2) == 16

    def test_cyclic_four_ancilla(self):
        assert na_oracle(make_named_group("cyclic", 4), 2) == 70

    def test_dihedral_four_matches_squared_cycle_formula(self):
        assert nq_oracle(make_named_group("dihedral", 4), 2) == 13

    @pytest.mark.parametrize("n", range(2, 9))
    def test_abelian_specialization(self, n):
        group = make_named_group("cyclic", n)
        for d in (2, 3):
            assert nq_oracle(group, d) == d**n

    @pytest.mark.parametrize("group", TABLE_ZOO, ids=lambda g: f"{g.kind}{len(g)}")
    @pytest.mark.parametrize("d", [2, 3])
    def test_ancilla_oracle_equals_group_average(self, group, d):
        assert na_oracle(group, d) == count_ancilla_polya(group, d)

    @pytest.mark.parametrize(
        "group",
        [g for g in TABLE_ZOO if len(g) <= 120],
        ids=lambda g: f"{g.kind}{len(g)}",
    )
    @pytest.mark.parametrize("d", [2, 3])
    def test_quantum_oracle_matches_formula_when_orthogonal(self, group, d):
        if is_totally_orthogonal(group):
            assert nq_oracle(group, d) == count_quantum_totally_orthogonal(group, d, certify=False)


class TestSquareRootLemma:
    @pytest.mark.parametrize(
        "group",
        [make_named_group("symmetric", 3), make_named_group("symmetric", 4), make_named_group("dihedral", 4)],
        ids=("S3", "S4", "D4"),
    )
    def test_character_sum_counts_square_roots(self, group):
        table = character_table(group)
        images = [p.images for p in group]
        for p in group.elements:
            total = sum(ir.values[table.class_index_of(p)] for ir in table.irreps)
            roots = square_root_count(group, p)
            assert roots == brute_square_roots(images, p.images)
            assert abs(total - roots) < 1e-9

    def test_cyclic_four_counterexample_at_identity(self):
        # Not totally orthogonal, so the identity must fail: 4 != 2.
        group = make_named_group("cyclic", 4)
        table = character_table(group)
        total = sum(ir.values[table.class_index_of(group.identity)] for ir in table.irreps)
        assert total == 4
        assert square_root_count(group, group.identity) == 2


class TestIsotypicProjectors:
    @pytest.mark.parametrize(
        "group,d",
        [
            (make_named_group("cyclic", 4), 2),
            (make_named_group("symmetric", 3), 2),
            (KLEIN, 2),
            (make_named_group("dihedral", 4), 2),
        ],
        ids=("C4", "S3", "Klein", "D4"),
    )
    def test_projector_algebra(self, group, d):
        table = character_table(group)
        mults = ambient_multiplicities(group, d, table=table)
        size = d**group.degree
        total = np.zeros((size, size), dtype=complex)
        trace_sum = 0.0
        for mu, irrep in enumerate(table.irreps):
            p = isotypic_projector(group, d, mu, table=table)
            assert np.abs(p @ p - p).max() < 1e-9
            assert np.abs(p - p.conj().T).max() < 1e-9
            assert abs(np.trace(p).real - mults.values[mu] * irrep.dim) < 1e-6
            trace_sum += np.trace(p).real
            total += p
        assert np.abs(total - np.eye(size)).max() < 1e-9
        assert abs(trace_sum - size) < 1e-6

    def test_trivial_group_identity_projector(self):
        group = generate_group([], degree=2)
        p = isotypic_projector(group, 2, 0)
        assert np.abs(p - np.eye(4)).max() < 1e-12

    def test_rank_one_antisymmetric_block(self):
        # Swap on two qubits: the sign sector is spanned by (|01> - |10>)/sqrt(2).
        group = generate_group([Permutation((1, 0))])
        table = character_table(group)
        sign = next(i for i, ir in enumerate(table.irreps) if ir.values[table.class_index_of(group.generators[0])] == -1)
        p = isotypic_projector(group, 2, sign, table=table)
        singlet = np.zeros(4, dtype=complex)
        singlet[0b01] = 1 / np.sqrt(2)
        singlet[0b10] = -1 / np.sqrt(2)
        assert abs(np.trace(p).real - 1) < 1e-12
        assert np.abs(p - np.outer(singlet, singlet.conj())).max() < 1e-12

    def test_dimension_bound(self):
        with pytest.raises(StateSpaceBoundError):
            isotypic_projector(make_named_group("cyclic", 4), 2, 0, max_dim=8)

    def test_cyclic_trivial_sector_rank(self):
        p = isotypic_projector(make_named_group("cyclic", 4), 2, 0)
        assert abs(np.trace(p).real - 6) < 1e-9
