import pytest

from avdchoice import generators as gen
from avdchoice.errors import IsolatedEdgeError, OracleCapExceeded
from avdchoice.graph import ListAssignment, MultiGraph, PartialColouring, verify
from avdchoice.oracle import (_canonical_assignments, check_choosability, chromatic_avd_index,
                              connected_graphs, find_avd_colouring, naive_chromatic_avd_index)


def test_known_values():
    assert chromatic_avd_index(gen.path(2)) == 2
    assert chromatic_avd_index(gen.cycle(5)) == 5
    assert chromatic_avd_index(gen.complete(3)) == 3
    assert chromatic_avd_index(gen.cycle(4)) == 4
    assert chromatic_avd_index(gen.cycle(6)) == 3


def test_bounded_search_returns_none():
    assert chromatic_avd_index(gen.cycle(5), k_max=4) is None


def test_caps_and_isolated_edges():
    with pytest.raises(OracleCapExceeded):
        chromatic_avd_index(gen.complete(6))
    with pytest.raises(IsolatedEdgeError):
        chromatic_avd_index(gen.path(1))
    with pytest.raises(OracleCapExceeded):
        check_choosability(gen.cycle(6), 3)
    with pytest.raises(OracleCapExceeded):
        check_choosability(gen.path(2), 6)


def test_witness_colouring_is_valid():
    g = gen.complete(4)
    k = chromatic_avd_index(g)
    lists = ListAssignment.uniform(g, range(1, k + 1))
    cols = find_avd_colouring(g, lists, symmetric=True)
    assert verify(g, lists, PartialColouring.from_colours(cols)).ok


def test_multigraph_supported():
    g = MultiGraph(3, [(0, 1), (0, 1), (1, 2)])
    assert chromatic_avd_index(g) == naive_chromatic_avd_index(g) == 3


def test_corpus_size():
    assert [sum(1 for g in connected_graphs(n) if g.n == n) for n in (3, 4, 5)] == [2, 6, 21]


def test_index_at_least_max_degree():
    for g in connected_graphs(5):
        assert chromatic_avd_index(g) >= g.max_degree


def test_canonical_assignments_start_uniform_and_are_distinct():
    seen = list(_canonical_assignments(3, 2))
    assert seen[0] == ((0, 1), (0, 1), (0, 1))
    assert len(seen) == len(set(seen))


def test_choosability_examples():
    assert check_choosability(gen.path(2), 2) == (True, None)
    ok, witness = check_choosability(gen.cycle(5), 4)
    assert not ok
    assert all(witness[e] == witness[0] for e in range(5)) and len(witness[0]) == 4
    for g in (gen.path(3), gen.complete(3), MultiGraph(4, [(0, 1), (0, 2), (0, 3)])):
        assert check_choosability(g, g.max_degree - 1)[0] is False


SMALL = [g for g in connected_graphs(5) if g.m <= 3]


@pytest.mark.parametrize("g", SMALL, ids=lambda g: str(g.edges))
def test_choosability_below_index_is_false_and_monotone(g):
    chi = chromatic_avd_index(g)
    verdicts = [check_choosability(g, k)[0] for k in range(1, 5)]
    for k, v in zip(range(1, 5), verdicts):
        if k < chi:
            assert v is False
    for a, b in zip(verdicts, verdicts[1:]):
        assert b or not a
