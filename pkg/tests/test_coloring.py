import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import saturated_by
from rainbowtri.coloring import (
    ColoredDigraph,
    ColoringError,
    canonical_colors,
    canonical_coloring,
    color_classes,
    color_number,
    color_profile,
    colored_canonical_key,
    delete_arc_colored,
    delete_vertex_colored,
    induced_colored,
    monochromatic_subdigraph,
    random_colored_digraph,
    recolor,
    relabel_colored,
    saturated_colors,
    saturation_degrees,
    saturators,
)
from rainbowtri.digraph import Digraph, DigraphError, complete_digraph, directed_cycle


def _instances(count=200):
    for seed in range(count):
        n = 2 + seed % 6
        yield random_colored_digraph(n, p=0.3 + 0.1 * (seed % 6), num_colors=1 + seed % 7, seed=seed)


def test_color_count_must_match_arcs():
    with pytest.raises(ColoringError):
        ColoredDigraph(directed_cycle(3), (0, 1))
    with pytest.raises(ColoringError):
        ColoredDigraph(directed_cycle(3), (0, 1, -1))


def test_from_mapping_rejects_non_arcs_and_gaps():
    C3 = directed_cycle(3)
    with pytest.raises(ColoringError):
        ColoredDigraph.from_mapping(C3, {(0, 1): 0, (1, 2): 0})
    with pytest.raises(ColoringError):
        ColoredDigraph.from_mapping(C3, {(0, 1): 0, (1, 2): 0, (2, 0): 1, (1, 0): 2})


def test_color_lookup():
    D = ColoredDigraph(directed_cycle(3), (5, 6, 5))
    assert D.color(1, 2) == 6
    with pytest.raises(DigraphError):
        D.color(1, 0)
    assert color_number(D) == 2
    assert color_classes(D) == {5: [(0, 1), (2, 0)], 6: [(1, 2)]}


def test_monochromatic_subdigraph():
    D = ColoredDigraph(directed_cycle(3), (5, 6, 5))
    assert monochromatic_subdigraph(D, 5).arcs() == ((0, 1), (2, 0))
    with pytest.raises(ColoringError):
        monochromatic_subdigraph(D, 7)


def test_saturators_shapes():
    assert saturators([(0, 1)]) == {0, 1}
    assert saturators([(0, 1), (1, 0)]) == {0, 1}
    assert saturators([(0, 1), (2, 0)]) == {0}
    assert saturators([(0, 1), (2, 3)]) == set()


def test_profile():
    D = ColoredDigraph.from_arc_colors(3, {(0, 1): 0, (1, 0): 1, (1, 2): 0, (2, 1): 2})
    p = color_profile(D, 1)
    assert p.cn_in == {0, 2} and p.cn_out == {0, 1}
    assert p.saturated == {0, 1, 2}
    assert (p.d_in_c, p.d_out_c, p.d_s) == (2, 2, 3)


def test_vertex_deletion_drops_exactly_the_saturated_colors():
    for D in _instances():
        ds = saturation_degrees(D)
        for v in range(D.n):
            assert ds[v] == len(saturated_by(D.n, D.as_dict(), v))
            assert color_number(delete_vertex_colored(D, v)) == color_number(D) - ds[v]


def test_saturation_sum_and_two_saturator_rule():
    for D in _instances():
        ds = saturation_degrees(D)
        c = color_number(D)
        assert sum(ds) <= 2 * c
        two = 0
        for col, arcs in color_classes(D).items():
            lone_or_pair = len(arcs) == 1 or (len(arcs) == 2 and arcs[0] == arcs[1][::-1])
            k = sum(col in saturated_colors(D, v) for v in range(D.n))
            assert (k == 2) == lone_or_pair
            two += k == 2
        # equality exactly when every color is a lone arc or an antiparallel pair
        assert (sum(ds) == 2 * c) == (two == c)


def test_canonical_colors_is_restricted_growth():
    assert canonical_colors([7, 7, 3, 9, 3]) == (0, 0, 1, 2, 1)
    for D in _instances(30):
        rgs = canonical_colors(D.colors)
        top = -1
        for x in rgs:
            assert x <= top + 1
            top = max(top, x)


def test_recolor_and_relabel():
    D = ColoredDigraph(directed_cycle(3), (0, 1, 2))
    assert recolor(D, {0: 4, 1: 4, 2: 5}).colors == (4, 4, 5)
    E = relabel_colored(D, [1, 2, 0])
    assert E.as_dict() == {(1, 2): 0, (2, 0): 1, (0, 1): 2}


def test_subinstances():
    D = ColoredDigraph(complete_digraph(3), (0, 1, 2, 3, 4, 5))
    assert induced_colored(D, [0, 2]).as_dict() == {(0, 1): 1, (1, 0): 4}
    assert delete_vertex_colored(D, 1).as_dict() == {(0, 1): 1, (1, 0): 4}
    assert delete_arc_colored(D, 0, 1).digraph.arc_count == 5
    with pytest.raises(DigraphError):
        delete_arc_colored(ColoredDigraph(directed_cycle(3), (0, 0, 0)), 1, 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.permutations(range(4)))
def test_colored_key_invariance(seed, perm):
    D = random_colored_digraph(4, 0.6, 3, seed)
    E = relabel_colored(D, list(perm))
    shuffled = recolor(E, {c: 10 - c for c in range(3)})
    assert colored_canonical_key(D) == colored_canonical_key(shuffled)
    assert canonical_coloring(D).colors == canonical_colors(D.colors)


def test_random_generator_is_seeded():
    assert random_colored_digraph(5, 0.5, 3, seed=11) == random_colored_digraph(5, 0.5, 3, seed=11)
    K = random_colored_digraph(4, num_colors=2, seed=1, complete=True)
    assert K.digraph == complete_digraph(4)
    assert Digraph.from_arcs(0, []).n == 0
