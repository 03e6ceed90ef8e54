import time

import pytest

from fockcb.canonical import canonical_basis, deficits_of_size, ordered_labels
from fockcb.checks import block_problems
from fockcb.errors import InvalidInput
from fockcb.laurent import ONE, parse_poly

from conftest import as_label, table_mismatches

BLOCKS = {"delta_neg": (-2, 2), "delta_0": (0, 0), "delta_pos": (2, -2)}
NONZERO = {"delta_neg": 87, "delta_0": 86, "delta_pos": 87}


@pytest.fixture(scope="module")
def block_28():
    return canonical_basis((0, 0), 2, (7, 4), basis_sign="both")


@pytest.mark.parametrize("name", sorted(BLOCKS))
def test_sixteen_dimensional_tables(golden, name):
    table = golden[name]
    t0 = time.perf_counter()
    res = canonical_basis(BLOCKS[name], 2, (2, 2))
    assert time.perf_counter() - t0 < 30
    assert set(res.labels) == {as_label(mp) for mp in table["labels"]}
    assert table_mismatches(res.plus, table) == []
    assert res.plus.nonzero_count() == NONZERO[name]


def test_spot_vector():
    res = canonical_basis((-2, 2), 2, (2, 2))
    column = res.plus.column(((3, 1), ()))
    assert column == {((3, 1), ()): ONE, ((2, 2), ()): parse_poly("q"), ((2, 1, 1), ()): parse_poly("q^2")}


def test_twenty_eight_dimensional_block(golden, block_28):
    res = block_28
    assert len(res.labels) == 28
    l1 = [as_label(mp) for mp in golden["block_11"]["labels"]]
    l2 = [as_label(mp) for mp in golden["block_22"]["labels"]]
    assert set(res.labels) == set(l1) | set(l2)
    assert table_mismatches(res.plus, golden["block_11"], l1, l1) == []
    assert table_mismatches(res.plus, golden["block_21"], l2, l1) == []
    assert table_mismatches(res.plus, golden["block_22"], l2, l2) == []
    assert all(not res.plus[(r, c)] for r in l1 for c in l2)


def test_twenty_eight_dimensional_properties(block_28):
    assert {k: v for k, v in block_problems(block_28).items() if v} == {}


def test_basis_provenance_example():
    res = canonical_basis((3, 6), 3, (1, 1, 1))
    got = {el.describe() for el in res.basis}
    assert got == {
        "ḟ1^(3) f2 f1 f0 |∅,(6, 3)>",
        "ḟ1^(3) f1 f2 f0 |∅,(6, 3)>",
        "ḟ1^(3) B_-1 |∅,(6, 3)>",
        "ḟ1^(3) ḟ0 f2 f1 |∅,(5, 4)>",
        "ḟ1^(3) ḟ0 f1 f2 |∅,(5, 4)>",
        "ḟ1^(3) ḟ0 ḟ1 |∅,(6, 3)>",
    }
    assert len(res.labels) == 6


def test_vacuum_block_is_trivial():
    res = canonical_basis((1, 0), 2, (0, 0), basis_sign="both")
    assert res.labels == [((), ())]
    assert res.plus[(((), ()), ((), ()))] == ONE
    assert res.A.nonzero_count() == 1


def test_sixteen_element_basis():
    assert len(canonical_basis((0, 0), 2, (2, 2)).basis) == 16


@pytest.mark.parametrize("charge,n,deficit", [((0, 0), 2, (2, 2)), ((1, 0, -1), 2, (2, 1)), ((0, 1), 3, (1, 1, 1))])
def test_dotted_strategies_agree(charge, n, deficit):
    a = canonical_basis(charge, n, deficit, dotted_strategy="jacon")
    b = canonical_basis(charge, n, deficit, dotted_strategy="reflect")
    assert a.plus == b.plus


@pytest.mark.parametrize("charge,n,size", [((0, 0), 2, 3), ((1, -1), 2, 4), ((0, 0, 1), 2, 3), ((0, 2), 3, 3)])
def test_block_properties_by_size(charge, n, size):
    for deficit in deficits_of_size(charge, n, size):
        res = canonical_basis(charge, n, deficit, basis_sign="both")
        assert {k: v for k, v in block_problems(res).items() if v} == {}, deficit


def test_labels_are_sorted_descending():
    labels = ordered_labels((0, 0), 2, (2, 2))
    assert len(labels) == 16 and len(set(labels)) == 16


def test_invalid_deficits():
    with pytest.raises(InvalidInput):
        canonical_basis((0, 0), 2, (1,))
    with pytest.raises(InvalidInput):
        canonical_basis((0, 0), 2, (1, -1))
    with pytest.raises(InvalidInput):
        canonical_basis((0, 0), 2, (1, 1), dotted_strategy="guess")
