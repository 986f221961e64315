import random
from collections import Counter
from itertools import permutations

import pytest

from oracles import saturated_by
from rainbowtri.coloring import (
    ColoredDigraph,
    canonical_coloring,
    color_classes,
    color_number,
    color_profile,
    recolor,
    relabel_colored,
    saturation_degrees,
)
from rainbowtri.constructions import (
    A_TO_B,
    B_TO_A,
    Family,
    gen_bipartite_rainbow_complete,
    gen_g3,
    gen_g4,
    gen_g5,
    gen_gn_bipartite,
)
from rainbowtri.digraph import complete_digraph, directed_cycle
from rainbowtri.extremal import Reason, classify_extremal, mono_census, rebuild, saturation_partition
from rainbowtri.search import rainbow_free_colorings

CASES = [
    (gen_g3(), Family.G3, None),
    (gen_g4(), Family.G4, None),
    (gen_g5("I"), Family.G5_TYPE_I, None),
    (gen_g5("II", A_TO_B), Family.G5_TYPE_II, A_TO_B),
    (gen_g5("II", B_TO_A), Family.G5_TYPE_II, B_TO_A),
    (gen_g5("III"), Family.G5_TYPE_III, None),
] + [(gen_gn_bipartite(n, o), Family.GN_BIPARTITE, o) for n in range(6, 13) for o in (A_TO_B, B_TO_A)]


def _scramble(D: ColoredDigraph, seed: int) -> ColoredDigraph:
    rng = random.Random(seed)
    perm = list(range(D.n))
    rng.shuffle(perm)
    palette = sorted(D.color_set())
    shuffled = palette[:]
    rng.shuffle(shuffled)
    return recolor(relabel_colored(D, perm), {c: 50 + s for c, s in zip(palette, shuffled)})


@pytest.mark.parametrize("D,family,orientation", CASES, ids=lambda x: str(x) if isinstance(x, (Family, str)) else None)
def test_generators_round_trip(D, family, orientation):
    cls = classify_extremal(D)
    assert cls.family is family
    assert cls.orientation == orientation
    assert rebuild(cls, D.n) == canonical_coloring(D)


@pytest.mark.parametrize("D,family,orientation", CASES, ids=lambda x: str(x) if isinstance(x, (Family, str)) else None)
def test_classification_survives_relabeling(D, family, orientation):
    for seed in range(5):
        E = _scramble(D, seed)
        cls = classify_extremal(E)
        assert cls.family is family
        if orientation is not None and D.n % 2 == 1:
            # for odd order the smaller side pins the orientation
            assert cls.orientation == orientation
        assert rebuild(cls, E.n) == canonical_coloring(E)


@pytest.mark.parametrize("n", range(5, 13))
def test_lower_bound_construction_is_bipartite_extremal(n):
    cls = classify_extremal(gen_bipartite_rainbow_complete(n))
    assert cls.family in (Family.G5_TYPE_II, Family.GN_BIPARTITE)


def test_not_extremal_reasons():
    assert classify_extremal(ColoredDigraph(directed_cycle(3), (0, 0, 1))).reason is Reason.NOT_COMPLETE
    K3 = complete_digraph(3)
    assert classify_extremal(ColoredDigraph(K3, (0,) * 6)).reason is Reason.WRONG_COLOR_COUNT
    rainbow = ColoredDigraph(K3, (0, 1, 2, 3, 0, 0))
    assert color_number(rainbow) == 4
    assert classify_extremal(rainbow).reason is Reason.HAS_RAINBOW_TRIANGLE
    small = classify_extremal(ColoredDigraph(complete_digraph(2), (0, 1)))
    assert small.reason is Reason.NO_TEMPLATE_MATCH
    assert small.verdict == "NotExtremal(no-template-match)"


def test_every_extremal_small_coloring_is_recognized():
    for n, fam in ((3, Family.G3), (4, Family.G4)):
        K = complete_digraph(n)
        found = [ColoredDigraph(K, c) for c in rainbow_free_colorings(K, min_colors=n * n // 4 + 2)]
        assert found
        assert all(classify_extremal(D).family is fam for D in found)


def test_order_five_extremal_colorings_split_into_three_types():
    K = complete_digraph(5)
    found = [ColoredDigraph(K, c) for c in rainbow_free_colorings(K, min_colors=7)]
    census = Counter(classify_extremal(D).family for D in found)
    assert census == {Family.G5_TYPE_I: 15, Family.G5_TYPE_II: 20, Family.G5_TYPE_III: 90}


def test_g4_satisfies_its_defining_system():
    D = gen_g4()
    col = D.as_dict()
    solutions = []
    for v1, v2, v3, v4 in permutations(range(4)):
        a = {col[(v1, v2)], col[(v2, v3)], col[(v3, v4)], col[(v4, v1)]}
        b = {col[(v1, v4)], col[(v4, v3)], col[(v3, v2)], col[(v2, v1)]}
        rest = [col[(v1, v3)], col[(v3, v1)], col[(v2, v4)], col[(v4, v2)]]
        if len(a) == len(b) == 1 and len(a | b | set(rest)) == 6:
            solutions.append((v1, v2, v3, v4))
    # each of the 8 rotations and reflections of one 4-cycle
    assert len(solutions) == 8


def test_g4_mono_census():
    census = mono_census(gen_g4())
    assert census.counts() == (4, 0, 0, 2, 0)
    assert sorted(census.per_color.values()) == ["arc"] * 4 + ["cycle4"] * 2


def test_mono_census_shapes():
    D = ColoredDigraph.from_arc_colors(
        4, {(0, 1): 0, (1, 2): 0, (3, 0): 1, (0, 2): 1, (2, 1): 1, (1, 3): 2, (3, 1): 2, (2, 3): 3, (3, 2): 3,
           (1, 0): 3}
    )
    assert mono_census(D).per_color == {0: "path2", 1: "path3", 2: "other", 3: "other"}


def test_saturation_partition_matches_oracle():
    for seed in range(80):
        rng = random.Random(seed)
        K = complete_digraph(4)
        D = ColoredDigraph(K, tuple(rng.randrange(5) for _ in range(12)))
        part = saturation_partition(D)
        for c in D.color_set():
            k = sum(c in saturated_by(4, D.as_dict(), v) for v in range(4))
            assert c in (part.X if k == 2 else part.Y if k == 1 else part.Z)
        assert part.x + part.y + part.z == color_number(D)
        assert 2 * part.x + part.y == sum(saturation_degrees(D))


def _complete_rainbow_free_instances():
    for n in (3, 4):
        K = complete_digraph(n)
        for c in rainbow_free_colorings(K):
            yield ColoredDigraph(K, c)


def test_high_saturation_vertex_sees_its_saturated_colors_one_way():
    K4 = complete_digraph(4)
    checked = 0
    for c in rainbow_free_colorings(K4):
        D = ColoredDigraph(K4, c)
        for v in range(4):
            p = color_profile(D, v)
            if p.d_s >= 3:
                checked += 1
                assert not (p.cn_in & p.saturated) or not (p.cn_out & p.saturated)
                assert color_number(D) <= 5
    assert checked > 0


def test_some_vertex_has_small_saturation_degree():
    instances = [D for D in _complete_rainbow_free_instances() if D.n >= 4]
    instances += [gen_g5(k, o) for k, o in (("I", None), ("II", A_TO_B), ("III", None))]
    instances += [gen_gn_bipartite(n) for n in range(6, 10)]
    for D in instances:
        assert min(saturation_degrees(D)) <= D.n // 2


def test_extremal_k4_colorings_have_saturation_degree_two():
    K4 = complete_digraph(4)
    for c in rainbow_free_colorings(K4, min_colors=6):
        assert saturation_degrees(ColoredDigraph(K4, c)) == [2, 2, 2, 2]


def test_color_classes_of_bipartite_family():
    D = gen_gn_bipartite(6)
    sizes = sorted(len(a) for a in color_classes(D).values())
    assert sizes == [1] * 9 + [21]


def test_mono_census_linear_system_on_extremal_k4():
    K4 = complete_digraph(4)
    for c in rainbow_free_colorings(K4, min_colors=6):
        D = ColoredDigraph(K4, c)
        x1, x2, x3, x4, other = mono_census(D).counts()
        assert other == 0
        assert x1 + x2 + x3 + x4 == color_number(D)
        assert x1 + 2 * x2 + 3 * x3 + 4 * x4 == 12
        assert x2 + 2 * x3 + 4 * x4 == 8


def test_census_and_partition_edge_cases():
    K3, K4 = complete_digraph(3), complete_digraph(4)
    rainbow = ColoredDigraph(K3, tuple(range(6)))
    assert mono_census(rainbow).counts() == (6, 0, 0, 0, 0)
    assert mono_census(ColoredDigraph(K3, (0,) * 6)).counts() == (0, 0, 0, 0, 1)
    part = saturation_partition(rainbow)
    assert (part.x, part.y, part.z) == (6, 0, 0)
    part = saturation_partition(ColoredDigraph(K4, (0,) * 12))
    assert (part.x, part.y, part.z) == (0, 0, 1)
