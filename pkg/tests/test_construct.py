import pytest

from broadcastnet import (
    ParamOutOfRange,
    audit_edges,
    bound_5a,
    build,
    build_case1,
    build_case2,
    make_params,
)
from broadcastnet.construct import remaining_closed_form


def test_case1_t7k2_totals(g72):
    params, g, layout, acc = g72
    assert g.n == 192
    assert g.num_edges == 551
    assert acc.total_edges.formula == 551
    assert acc.total_edges.delta == 0
    assert g.is_connected()


def test_case1_t8k3_totals(g83):
    params, g, layout, acc = g83
    assert (g.n, g.num_edges) == (448, 1731)
    assert acc.total_edges.delta == 0


def test_case1_tree_edge_item(g72):
    # three order-6 trees contribute 3 * 63 edges, counted directly
    _, _, _, acc = g72
    assert acc.tree_edges.measured == 3 * 63
    assert acc.tree_edges.delta == 0


def test_case1_rk_item_t7k2(g72):
    _, _, _, acc = g72
    assert acc.rk_links.measured == 62
    assert acc.rk_links.formula == 62


def test_case1_v1q2_item_closed_form_undercount(g83):
    # the closed form for this class falls short of the class actually
    # wired by the attachment rule; both are reported
    _, _, _, acc = g83
    assert acc.v1_second_half_links.measured == 188
    assert acc.v1_second_half_links.formula == 186
    assert acc.v1_second_half_links.delta == 2  # (k-2) * (2^(k-1) - 2)


def test_case1_item_sum_equals_total(g72, g83):
    for _, g, _, acc in (g72, g83):
        total = sum(item.measured for item in (
            acc.tree_edges, acc.cube_edges, acc.root_links,
            acc.rk_links, acc.v1_first_half_links, acc.v1_second_half_links))
        assert total == g.num_edges


def test_case1_degree_law(g72, g83):
    # subtree order j: degree k+j+1, or k+j when the parent is the root
    for params, g, layout, _ in (g72, g83):
        k, h = params.k, params.tree_order
        for label in g.labels:
            key = layout.key_of_label(label)
            tree, mask = key
            if mask == 0 or key == layout.w_key:
                continue
            j = h if mask == 0 else (mask & -mask).bit_length() - 1
            expect = k + j + (0 if mask & (mask - 1) == 0 else 1)
            assert g.degree(label) == expect, (label, j)


def test_case1_w_degree(g72):
    params, g, layout, _ = g72
    w = layout.label_of_key(layout.w_key)
    assert g.degree(w) == params.k + 1  # k cube edges plus the tree parent


def test_case1_requires_full_n():
    with pytest.raises(ParamOutOfRange):
        build_case1(make_params(7, 2, 191))
    with pytest.raises(ParamOutOfRange):
        build_case2(make_params(7, 2, 192))


def test_case1_log_target():
    for t, k in [(7, 2), (8, 3), (9, 3), (10, 4)]:
        params = make_params(t, k, ((1 << k) - 1) << (t + 1 - k))
        g, _, acc = build(params)
        assert g.n == params.N
        assert (g.n - 1).bit_length() == t + 1
        assert g.num_edges == bound_5a(t, k)


def test_case2_single_leaf_removed():
    params = make_params(7, 2, 191)
    g, layout, acc = build(params)
    assert (params.x, params.y) == (0, 1)
    assert g.n == 191
    assert g.num_edges == 551 - 3  # a deep leaf has k+1 edges
    assert acc.delta_remaining == 0


def test_case2_x0_matches_closed_form_even_at_extreme():
    for n in (191, 160, 136, 130, 129):
        params = make_params(7, 2, n)
        g, _, acc = build(params)
        assert g.num_edges == remaining_closed_form(params), n
        assert acc.delta_remaining == 0


def test_case2_vertex_count_and_connectivity():
    for (t, k, n) in [(7, 2, 129), (7, 3, 191), (7, 3, 129), (8, 3, 320), (8, 3, 257)]:
        params = make_params(t, k, n)
        g, layout, _ = build(params)
        assert g.n == n
        assert g.is_connected()
        assert (g.n - 1).bit_length() == t + 1


def test_case2_whole_tree_deletion_record(g73_shrunk):
    params, g, layout, acc = g73_shrunk
    assert params.x == 1 and params.p == 1
    assert layout.deleted_trees == frozenset({1})  # the tree carrying w
    assert not layout.w_alive
    assert len(layout.replacement_coords) == 2  # every unmatched one, incl. w's partner
    assert acc.replacements_added == 2


def test_case2_cross_neighbor_property(g73_shrunk):
    params, g, layout, _ = g73_shrunk
    half = layout.half
    for c in range(half, 1 << params.k):
        lab = layout.label_of_key(layout.key_of_coord(c))
        partners = [
            nb for nb in g.neighbors(lab)
            if nb.is_root and layout.coord_of_tree[nb.tree] < half
        ]
        assert partners, f"coordinate {c} lost its cross neighbor"


def test_case2_delta_remaining_constant_within_regime():
    seen = {}
    for n in (191, 189, 161, 159, 131, 129):
        params = make_params(7, 3, n)
        _, _, acc = build(params)
        seen.setdefault((params.x > 0, params.p), set()).add(acc.delta_remaining)
    assert all(len(v) == 1 for v in seen.values()), seen


def test_case2_monotone_edges_within_regime():
    prev = None
    for n in (191, 189, 187, 161):  # all x=1, p=1 at t=7,k=3
        params = make_params(7, 3, n)
        assert params.x == 1
        g, _, _ = build(params)
        if prev is not None:
            assert g.num_edges <= prev
        prev = g.num_edges


def test_case2_roots_never_pruned():
    for (t, k, n) in [(7, 2, 129), (8, 3, 257), (9, 4, 513)]:
        params = make_params(t, k, n)
        _, layout, _ = build(params)
        for tree, masks in layout.pruned_masks.items():
            assert 0 not in masks
            assert tree not in layout.deleted_trees


def test_case2_descendants_deleted_before_ancestors():
    params = make_params(8, 3, 257)
    _, layout, _ = build(params)
    for tree, masks in layout.pruned_masks.items():
        for m in masks:
            descendants = [
                q for q in range(1, params.tree_size) if q & m == m and q != m
            ]
            assert all(q in masks for q in descendants)


def test_audit_matches_build_accounting(g72, g73_shrunk):
    for params, g, layout, acc in (g72, g73_shrunk):
        again = audit_edges(g, layout, params)
        assert again.to_json_obj() == acc.to_json_obj()


def test_accounting_json_shape(g73_shrunk):
    _, _, _, acc = g73_shrunk
    obj = acc.to_json_obj()
    for name in ("tree_edges", "total_edges", "removed_tree_vertex_edges",
                 "removed_total", "remaining_edges"):
        assert set(obj[name]) == {"formula", "measured", "delta"}
