import pytest

from broadcastnet import (
    UnknownVertex,
    VertexLabel,
    build_hypercube,
    check_schedule,
    exact_broadcast_time,
    hypercube_schedule,
)


def test_sizes():
    assert build_hypercube(0).to_graph().n == 1
    g2 = build_hypercube(2).to_graph()
    assert (g2.n, g2.num_edges) == (4, 4)
    g4 = build_hypercube(4).to_graph()
    assert (g4.n, g4.num_edges) == (16, 32)


def test_regularity():
    for m in range(1, 6):
        g = build_hypercube(m).to_graph()
        assert all(g.degree(v) == m for v in g.labels)
        assert g.num_edges == m * (1 << (m - 1))


def test_decomposition_blocks_partition_second_half():
    q = build_hypercube(5)
    second = set(q.half(first=False))
    blocks = [q.corner]
    for i in range(q.m - 1):
        blocks.extend(q.subcube(i))
    assert sorted(blocks) == sorted(second)
    assert set(q.half(first=True)) == set(q.subcube(q.m - 1))


def test_low_blocks_with_corner_form_a_cube():
    # corner + Q^0..Q^{j-1} always spans the j-dimensional prefix cube
    q = build_hypercube(5)
    coords = [q.corner]
    for j in range(4):
        coords.extend(q.subcube(j))
        assert sorted(coords) == list(range(1 << (j + 1)))


def test_cross_matching_is_perfect():
    q = build_hypercube(4)
    g = q.to_graph()
    first, second = q.half(True), q.half(False)
    partners = [q.matched(c) for c in first]
    assert sorted(partners) == sorted(second)
    for c in first:
        assert g.has_edge(q.label(c), q.label(q.matched(c)))


def test_schedule_unknown_originator():
    q = build_hypercube(2)
    with pytest.raises(UnknownVertex):
        hypercube_schedule(q, VertexLabel(tree=None, cube="101"))


def test_schedule_zero_rounds_for_point():
    s = hypercube_schedule(build_hypercube(0), build_hypercube(0).label(0))
    assert s.rounds == []


def test_schedule_two_rounds_three_calls():
    q = build_hypercube(2)
    for c in range(4):
        s = hypercube_schedule(q, q.label(c))
        assert len(s.rounds) == 2 and s.num_calls == 3
        res = check_schedule(q.to_graph(), s)
        assert res.ok and res.completion_round == 2


def test_schedule_doubles_every_round():
    q = build_hypercube(4)
    s = hypercube_schedule(q, q.label(0))
    assert [len(calls) for calls in s.rounds] == [1, 2, 4, 8]
    assert s.num_calls == 15
    res = check_schedule(q.to_graph(), s)
    assert res.ok and res.completion_round == 4


def test_all_originators_complete_in_m_rounds():
    for m in range(7):
        q = build_hypercube(m)
        g = q.to_graph()
        for c in range(q.size):
            res = check_schedule(g, hypercube_schedule(q, q.label(c)))
            assert res.ok and (res.completion_round or 0) == m


def test_schedule_matches_exact_oracle_small():
    for m in range(4):
        q = build_hypercube(m)
        g = q.to_graph()
        for c in range(q.size):
            assert exact_broadcast_time(g, q.label(c)) == m
