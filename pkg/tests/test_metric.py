import random
from fractions import Fraction as F

from rayspace import (
    INF,
    GraphPoint,
    direction_set,
    directed_hausdorff,
    dist_point_to_set,
    distance_profile,
    hausdorff,
    is_infinite,
    is_subset,
    oracle_hausdorff,
    parse_set,
    point_distance,
    union,
)

from conftest import random_subset


def test_dist_point_to_set_examples(graphs):
    gr = graphs["G_R"]
    assert dist_point_to_set(gr, GraphPoint("R1", F(5)), parse_set("R1:{0}", gr)) == 5
    assert dist_point_to_set(gr, GraphPoint("R1", F(0)), parse_set("R1:[1,inf)", gr)) == 1
    gl = graphs["G_LOOP"]
    assert dist_point_to_set(gl, GraphPoint("E1", F(1, 2)), parse_set("E1:{0}", gl)) == F(1, 2)


def test_directed_hausdorff_examples(graphs):
    g = graphs["G_I"]
    arc, pt = parse_set("E1:[0,1]", g), parse_set("E1:{0}", g)
    assert directed_hausdorff(g, arc, pt) == 1
    assert directed_hausdorff(g, pt, arc) == 0
    gr = graphs["G_R"]
    assert is_infinite(
        directed_hausdorff(gr, parse_set("R1:[1/4,inf)", gr), parse_set("R1:[1/4,1/2]", gr))
    )


def test_hausdorff_examples(graphs):
    g = graphs["G_I"]
    assert hausdorff(g, parse_set("E1:[0,1]", g), parse_set("E1:{0}", g)) == 1
    gr = graphs["G_R"]
    assert hausdorff(gr, parse_set("R1:[1/4,1/2]", gr), parse_set("R1:[1/4,inf)", gr)) == INF


def test_hausdorff_loop_against_grid_oracle(graphs):
    g = graphs["G_LOOP"]
    loop, pt = parse_set("E1:[0,1]", g), parse_set("E1:{0}", g)
    # independent grid oracle: max over loop samples of distance to the vertex
    h = F(1, 100)
    grid_value = max(
        point_distance(g, GraphPoint("E1", k * h), GraphPoint("E1", F(0)))
        for k in range(101)
    )
    assert abs(grid_value - F(1, 2)) <= h
    assert hausdorff(g, loop, pt) == F(1, 2)
    assert abs(oracle_hausdorff(g, loop, pt, h, F(2)) - F(1, 2)) <= h


def test_shared_tails_contribute_finitely(graphs):
    gr = graphs["G_R"]
    A = parse_set("R1:[0,inf)", gr)
    B = parse_set("R1:[5,inf)", gr)
    assert hausdorff(gr, A, B) == 5
    assert directed_hausdorff(gr, B, A) == 0


def test_two_rays_with_far_pieces(graphs):
    g = graphs["G_LINE"]
    A = parse_set("R1:{2}", g)
    B = parse_set("R2:{3}", g)
    assert hausdorff(g, A, B) == 5


def test_infinite_iff_direction_mismatch_random(graphs):
    rng = random.Random(90125)
    for name in ("G_LINE", "G_NOOSE", "G_MIXED"):
        g = graphs[name]
        for _ in range(80):
            A = random_subset(g, rng)
            B = random_subset(g, rng)
            d = hausdorff(g, A, B)
            assert is_infinite(d) == (direction_set(g, A) != direction_set(g, B))


def test_metric_axioms_random(graphs):
    rng = random.Random(61331)
    for g in graphs.values():
        for _ in range(40):
            A, B, C = (random_subset(g, rng) for _ in range(3))
            dab = hausdorff(g, A, B)
            assert dab == hausdorff(g, B, A)
            assert (dab == 0) == (A == B)
            dac, dcb = hausdorff(g, A, C), hausdorff(g, C, B)
            if not is_infinite(dac) and not is_infinite(dcb):
                assert dab <= dac + dcb
            assert hausdorff(g, A, A) == 0


def test_directed_zero_iff_subset(graphs):
    rng = random.Random(5150)
    for g in graphs.values():
        for _ in range(40):
            A = random_subset(g, rng)
            B = random_subset(g, rng)
            AB = union(A, B)
            assert directed_hausdorff(g, A, AB) == 0
            d = directed_hausdorff(g, A, B)
            if not is_infinite(d):
                assert (d == 0) == is_subset(g, A, B)


def test_profile_invariants(graphs):
    rng = random.Random(777)
    for name in ("G_I", "G_LOOP", "G_MIXED"):
        g = graphs[name]
        for _ in range(20):
            B = random_subset(g, rng)
            for e in list(g.edges) + list(g.rays):
                prof = distance_profile(g, e.id, B)
                span = g.element_length(e.id) or F(4)
                xs = [F(k, 7) * span / 2 for k in range(15)]
                xs = [x for x in xs if x <= span]
                vals = {x: prof.eval(x) for x in xs}
                for x in xs:
                    p = GraphPoint(e.id, x)
                    assert vals[x] == dist_point_to_set(g, p, B)
                    assert vals[x] >= 0
                for x in xs:
                    for y in xs:
                        assert abs(vals[x] - vals[y]) <= abs(x - y)  # 1-Lipschitz


def test_oracle_agreement_on_bounded_pairs(graphs):
    rng = random.Random(424242)
    h = F(1, 50)
    for name in ("G_I", "G_LOOP", "G_LINE"):
        g = graphs[name]
        for _ in range(30):
            A = random_subset(g, rng, bounded=True)
            B = random_subset(g, rng, bounded=True)
            exact = hausdorff(g, A, B)
            approx = oracle_hausdorff(g, A, B, h, F(4))
            assert abs(approx - exact) <= h
