from hypothesis import given
from hypothesis import strategies as st

from fockcb.checks import indexation_problem
from fockcb.combinatorics import multipartitions_of
from fockcb.indexation import (
    ChargedPartition,
    beta_numbers,
    charged_to_l,
    charged_to_n,
    l_to_charged,
    l_to_n,
    n_to_charged,
    n_to_l,
)

partitions = st.lists(st.integers(1, 5), max_size=4).map(lambda xs: tuple(sorted(xs, reverse=True)))


def _oracle_split(la, s, n, l, side, depth=40):
    """Abacus split computed on a large finite window of beta numbers."""
    betas = {(la[i] if i < len(la) else 0) + s - i for i in range(len(la) + depth * n * l)}
    low = min(betas)
    L = l if side == "l" else n
    comps = [set() for _ in range(L)]
    for k in betas:
        m, rest = divmod(k - 1, n * l)
        b, a = divmod(rest, n)
        if side == "l":
            comps[b].add(a + 1 + n * m)
        else:
            comps[a].add(b + 1 + l * m)
    # everything below this threshold is present in every component
    M = n if side == "l" else l
    cut = (low - 1) // (n * l) * M + M
    out_parts, out_charges = [], []
    for S in comps:
        top = sorted((x for x in S if x > cut), reverse=True)
        charge = cut + len(top)
        parts = tuple(x - charge + i for i, x in enumerate(top) if x - charge + i > 0)
        out_parts.append(parts)
        out_charges.append(charge)
    return tuple(out_parts), tuple(out_charges)


def test_beta_numbers():
    assert beta_numbers((2, 1), 0, 4) == [2, 0, -2, -3]


def test_convert_example():
    mp, charges = ((1, 1), (1,)), (1, 0)
    assert l_to_n(mp, charges, 3, 2) == (((), (), ()), (2, 1, -2))
    assert l_to_charged(mp, charges, 3, 2) == ChargedPartition((3, 2, 2, 1, 1), 1)


def test_vacuum_at_level_three():
    assert l_to_n(((), (), ()), (3, 1, -4), 2, 3) == (((3, 2, 2, 1, 1), (2, 1, 1)), (1, -1))


def test_empty_multipartition_has_charge_sum():
    assert l_to_charged(((), ()), (2, -2), 2, 2).charge == 0
    assert l_to_charged(((), (), ()), (1, -1, 0), 2, 3).charge == 0


@given(partitions, st.integers(-6, 6), st.integers(1, 4), st.integers(1, 3))
def test_split_matches_window_oracle(la, s, n, l):
    assert charged_to_l((la, s), n, l) == _oracle_split(la, s, n, l, "l")
    assert charged_to_n((la, s), n, l) == _oracle_split(la, s, n, l, "n")


@given(partitions, st.integers(-6, 6), st.integers(1, 4), st.integers(1, 3))
def test_charged_round_trips(la, s, n, l):
    cp = ChargedPartition(la, s)
    assert l_to_charged(*charged_to_l(cp, n, l), n, l) == cp
    assert n_to_charged(*charged_to_n(cp, n, l), n, l) == cp


@given(st.integers(0, 4), st.lists(st.integers(-4, 4), min_size=1, max_size=3), st.integers(1, 3))
def test_multipartition_round_trips(m, charges, n):
    l = len(charges)
    charges = tuple(charges)
    for mp in multipartitions_of(m, l):
        cp = l_to_charged(mp, charges, n, l)
        assert cp.charge == sum(charges)
        assert charged_to_l(cp, n, l) == (mp, charges)
        mp_n, s_n = l_to_n(mp, charges, n, l)
        assert sum(s_n) == sum(charges)
        assert n_to_l(mp_n, s_n, n, l) == (mp, charges)


def test_round_trip_checker_up_to_six_boxes():
    assert indexation_problem((1, -1, 0), 2, 6) is None
    assert indexation_problem((0, 3), 3, 6) is None


def test_level_one_is_identity():
    for la in [(), (3, 1), (2, 2, 1)]:
        assert charged_to_l((la, 5), 3, 1) == ((la,), (5,))
