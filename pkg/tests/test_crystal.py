import time

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fockcb.actions import Word
from fockcb.combinatorics import dominance_leq, multipartitions_of, partitions_of, residue_profile
from fockcb.crystal import (
    crystal_e,
    crystal_f,
    enumerate_crystal,
    good_node,
    in_crystal,
    jacon_sets,
    jacon_word,
    signature,
)
from fockcb.errors import NotInCrystal
from fockcb.fock import FockVector
from fockcb.indexation import l_to_charged

from conftest import as_label

GOLDEN_CONTEXTS = {
    "delta_neg": (-2, 2),
    "delta_0": (0, 0),
    "delta_pos": (2, -2),
    "block_11": (0, 0),
    "block_22": (0, 0),
}
FUNDAMENTAL = [((0, 0), 2), ((1, 0), 2), ((1, 0, -1), 2), ((2, 0), 3), ((3, 1), 4), ((0, 0, 0), 3)]


def _path(word, charge, n):
    mp = ((),) * len(charge)
    for i in reversed(word):
        mp = crystal_f(mp, charge, n, i)
        if mp is None:
            return None
    return mp


def test_crystal_of_small_weight():
    assert enumerate_crystal((0, 0), 3, (1, 1, 1)) == [((), (3,)), ((), (2, 1))]
    assert _path((2, 1, 0), (0, 0), 3) == ((), (3,))
    assert _path((1, 2, 0), (0, 0), 3) == ((), (2, 1))


def test_jacon_example():
    t0 = time.perf_counter()
    mp, v = ((4, 2), (4, 1)), (3, 1)
    sets = jacon_sets(mp, v, 4)
    assert sets == {0: [(1, 4, 2)], 1: [], 2: [(1, 4, 1)], 3: []}
    word = jacon_word(mp, v, 4)
    assert str(word) == "f0 f2 f1 f3^(2) f0^(2) f2^(2) f1 f3"
    assert len(word) == 8
    assert time.perf_counter() - t0 < 1


def test_jacon_rejects_non_vertices():
    with pytest.raises(NotInCrystal):
        jacon_word(((1,), (1, 1)), (0, 2), 3)


@pytest.mark.parametrize("charge,n", FUNDAMENTAL)
def test_jacon_word_is_unitriangular(charge, n):
    for m in range(6):
        for mp in multipartitions_of(m, len(charge)):
            if not in_crystal(mp, charge, n):
                continue
            vec = jacon_word(mp, charge, n).apply(FockVector.vacuum(charge, n))
            top = l_to_charged(mp, charge, n, len(charge))
            assert vec.coefficient(top) == 1
            for key, _c in vec:
                assert dominance_leq(key.partition, top.partition)


@pytest.mark.parametrize("name", sorted(GOLDEN_CONTEXTS))
def test_starred_rows_are_crystal_vertices(golden, name):
    table = golden[name]
    charge = GOLDEN_CONTEXTS[name]
    marks = [i for i, mp in enumerate(table["labels"]) if in_crystal(as_label(mp), charge, 2)]
    assert marks == table["starred"]


@given(st.integers(0, 5), st.lists(st.integers(-3, 3), min_size=1, max_size=3), st.integers(2, 4))
def test_e_inverts_f(m, charge, n):
    charge = tuple(charge)
    for mp in multipartitions_of(m, len(charge)):
        for i in range(n):
            up = crystal_f(mp, charge, n, i)
            if up is not None:
                assert crystal_e(up, charge, n, i) == mp
            down = crystal_e(mp, charge, n, i)
            if down is not None:
                assert crystal_f(down, charge, n, i) == mp


@given(st.integers(0, 4), st.lists(st.integers(-3, 3), min_size=1, max_size=3), st.integers(2, 3))
def test_signature_is_reduced(m, charge, n):
    charge = tuple(charge)
    for mp in multipartitions_of(m, len(charge)):
        for i in range(n):
            A, R = signature(mp, charge, n, i)
            assert (good_node(mp, charge, n, i) is None) == (not A)
            assert (good_node(mp, charge, n, i, "remove") is None) == (not R)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_level_one_vertex_count(n):
    # level-one crystal vertices are counted by n-regular partitions
    for m in range(9):
        regular = sum(1 for la in partitions_of(m) if all(la.count(x) < n for x in set(la)))
        vertices = sum(1 for la in partitions_of(m) if in_crystal((la,), (0,), n))
        assert vertices == regular


def test_enumeration_matches_membership():
    charge, n = (1, 0), 2
    for profile in [(1, 1), (2, 1), (2, 2), (3, 2)]:
        listed = set(enumerate_crystal(charge, n, profile))
        members = {
            mp
            for mp in multipartitions_of(sum(profile), 2)
            if residue_profile(mp, charge, n) == profile and in_crystal(mp, charge, n)
        }
        assert listed == members


def test_word_type():
    assert isinstance(jacon_word(((1,), ()), (0, 0), 2), Word)
