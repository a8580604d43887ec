import itertools

import numpy as np
import pytest

from oracles import act_tuple, brute_orbits
from permchannel import Permutation, act_on_index, make_named_group
from permchannel import kernels


def inverse_images(p: Permutation) -> np.ndarray:
    return np.array(p.inverse().images, dtype=np.int64)


@pytest.mark.parametrize("n,d", [(1, 2), (3, 2), (4, 2), (3, 3), (2, 5), (4, 4)])
def test_action_table_matches_tuple_action(n, d):
    rng = np.random.default_rng(7)
    for _ in range(5):
        p = Permutation(tuple(rng.permutation(n).tolist()))
        table = kernels.action_table(inverse_images(p), d)
        for ix, x in enumerate(itertools.product(range(d), repeat=n)):
            image = act_tuple(p.images, x)
            expected = 0
            for s in image:
                expected = expected * d + s
            assert table[ix] == expected
            assert table[ix] == act_on_index(p, ix, d)


@pytest.mark.parametrize("n,d", [(4, 2), (5, 2), (4, 3), (6, 2)])
def test_backends_agree_on_action_tables(n, d):
    rng = np.random.default_rng(3)
    for _ in range(10):
        inv = np.array(rng.permutation(n), dtype=np.int64)
        jit_or_default = kernels.action_table(inv, d)
        fallback = kernels.action_table_numpy(inv, d)
        assert np.array_equal(jit_or_default, fallback)


def test_action_table_numpy_chunking_is_invisible():
    inv = np.array([2, 0, 1, 3, 4], dtype=np.int64)
    assert np.array_equal(
        kernels.action_table_numpy(inv, 2, chunk=4), kernels.action_table_numpy(inv, 2, chunk=1 << 16)
    )


@pytest.mark.parametrize(
    "kind,n,d", [("cyclic", 4, 2), ("cyclic", 6, 2), ("dihedral", 4, 2), ("symmetric", 4, 3), ("cyclic", 5, 3)]
)
def test_orbit_reps_match_brute_force(kind, n, d):
    group = make_named_group(kind, n)
    invs = np.array([g.inverse().images for g in group.generators], dtype=np.int64)
    rep = kernels.orbit_reps(invs, n, d)
    fallback = kernels.orbit_reps_numpy(invs, n, d)
    assert np.array_equal(rep, fallback)
    brute = brute_orbits([p.images for p in group], n, d)
    # rep must be constant on each brute-force orbit and equal its min index.
    for orbit in brute:
        indices = []
        for x in orbit:
            ix = 0
            for s in x:
                ix = ix * d + s
            indices.append(ix)
        assert {int(rep[i]) for i in indices} == {min(indices)}


def test_orbit_reps_with_no_generators_is_identity():
    rep = kernels.orbit_reps(np.empty((0, 3), dtype=np.int64), 3, 2)
    assert np.array_equal(rep, np.arange(8))


def test_rep_array_is_idempotent_labelling():
    group = make_named_group("cyclic", 8)
    invs = np.array([g.inverse().images for g in group.generators], dtype=np.int64)
    rep = kernels.orbit_reps(invs, 8, 2)
    assert np.array_equal(rep[rep], rep)
    assert (rep <= np.arange(rep.shape[0])).all()


def test_digit_powers():
    assert kernels.digit_powers(4, 3).tolist() == [27, 9, 3, 1]
