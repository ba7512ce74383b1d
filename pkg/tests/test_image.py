import itertools

import pytest

from digifix import (CuAdjacency, are_isomorphic, box, build_image,
                     closed_neighborhood, connected_components, cu_adjacent,
                     cube, cycle, disjoint_union, explicit, fig_sexample,
                     fig_xexample, generate, interval, open_neighborhood,
                     product, wedge, wedge_cycles_8)
from digifix.errors import BudgetExceededError


def test_cu_adjacent_examples():
    assert not cu_adjacent((0, 0), (1, 1), 1)   # 4-adjacency has no diagonals
    assert cu_adjacent((0, 0), (1, 1), 2)       # 8-adjacency does
    assert not cu_adjacent((3, 5), (3, 5), 2)   # never adjacent to itself
    assert cu_adjacent((0,), (1,), 1)
    assert not cu_adjacent((0, 0), (2, 0), 2)


def test_cu_adjacent_symmetric():
    pts = list(itertools.product(range(-1, 2), repeat=2))
    for x in pts:
        for y in pts:
            for u in (1, 2):
                assert cu_adjacent(x, y, u) == cu_adjacent(y, x, u)


def test_cu_adjacent_errors():
    with pytest.raises(ValueError):
        cu_adjacent((0, 0), (0,), 1)
    with pytest.raises(ValueError):
        cu_adjacent((0, 0), (1, 0), 3)
    with pytest.raises(ValueError):
        cu_adjacent((0, 0), (1, 0), 0)


def test_build_image_examples():
    path = build_image([(0,), (1,), (2,)], CuAdjacency(1), "path")
    assert path.edge_list() == [(0, 1), (1, 2)]
    c4 = build_image(4, explicit([(0, 1), (1, 2), (2, 3), (3, 0)]), "c4")
    assert c4.num_edges() == 4
    iso2 = build_image([(0, 0), (2, 0)], CuAdjacency(2), "gap")
    assert iso2.num_edges() == 0


def test_build_image_errors():
    with pytest.raises(ValueError):
        build_image([(0,), (0,)], CuAdjacency(1))  # duplicate points
    with pytest.raises(ValueError):
        build_image(3, explicit([(1, 1)]))  # self-loop
    with pytest.raises(ValueError):
        build_image(3, explicit([(0, 5)]))  # out of range
    with pytest.raises(ValueError):
        build_image(3, CuAdjacency(1))  # CU needs coordinates


def test_adjacency_validated():
    with pytest.raises(ValueError):
        # asymmetric rows
        from digifix import DigitalImage
        DigitalImage("bad", [0b010, 0b000, 0b000])


def test_generate_presets():
    c6 = generate("cycle", 6)
    for i in range(6):
        assert sorted(c6.neighbors(i)) == sorted({(i - 1) % 6, (i + 1) % 6})
    cb = generate("cube")
    assert cb.n == 8 and cb.num_edges() == 12
    fs = generate("fig_sexample")
    assert fs.n == 15
    assert set(fs.points) == ({(x, y) for x in range(6) for y in (0, 2)}
                              | {(0, 1), (2, 1), (5, 1)})
    fx = generate("fig_xexample")
    assert fx.n == 18
    w8 = generate("wedge_cycles_8")
    assert w8.n == 11
    # two 6-cycles joined at (0,0): all degrees 2 except the shared point
    degs = sorted(w8.degree(i) for i in range(11))
    assert degs == [2] * 10 + [4]
    with pytest.raises(ValueError):
        generate("nope")
    with pytest.raises(ValueError):
        generate("cycle")
    with pytest.raises(ValueError):
        generate("interval", 3, 1)


def test_cycle_small():
    assert cycle(1).num_edges() == 0
    assert cycle(2).num_edges() == 1


def test_product_examples():
    e = interval(0, 1)
    k4 = product([e, e], 2)
    assert k4.num_edges() == 6
    c4 = product([e, e], 1)
    assert are_isomorphic(c4, cycle(4)) is not None
    pb = product([interval(1, 3), interval(1, 3)], 2)
    assert are_isomorphic(pb, box(3, 3, 2)) is not None


def test_product_vertex_order_first_factor_slowest():
    p = product([interval(0, 2), interval(0, 1)], 1)
    assert p.points == ((0, 0), (0, 1), (1, 0), (1, 1), (2, 0), (2, 1))


@pytest.mark.parametrize("m,n", [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1)])
def test_normal_product_matches_cu(m, n):
    # NP_2(c_m, c_n) coincides with c_(m+n) on the concatenated coordinates.
    def small_box(dim):
        sides = [2, 2, 2][:dim]
        pts = list(itertools.product(*[range(s) for s in sides]))
        return build_image(pts, CuAdjacency(dim), f"b{dim}")

    a, b = small_box(m), small_box(n)
    prod = product([a, b], 2)
    direct = build_image(prod.points, CuAdjacency(m + n), "direct")
    assert prod.adj == direct.adj


def test_product_errors():
    with pytest.raises(ValueError):
        product([], 1)
    with pytest.raises(ValueError):
        product([cycle(3)], 2)


def test_wedge_examples():
    w = wedge(cycle(6), cycle(6), 0, 0)
    assert w.n == 11
    p = wedge(interval(0, 1), interval(0, 1), 0, 0)
    assert p.n == 3 and p.num_edges() == 2
    single = wedge(cycle(1), cycle(1), 0, 0)
    assert single.n == 1
    with pytest.raises(ValueError):
        wedge(cycle(3), cycle(3), 5, 0)


def test_wedge_and_union_counts():
    for a, b in [(cycle(5), interval(0, 2)), (cube(), cycle(3))]:
        assert wedge(a, b, 0, 0).n == a.n + b.n - 1
        assert disjoint_union(a, b).n == a.n + b.n


def test_disjoint_union():
    two = disjoint_union(cycle(3), cycle(3))
    assert connected_components(two) == [[0, 1, 2], [3, 4, 5]]
    pts = disjoint_union(cycle(1), cycle(1))
    assert pts.num_edges() == 0
    mixed = disjoint_union(cycle(5), interval(0, 2))
    assert len(connected_components(mixed)) == 2


def test_neighborhoods():
    c5 = cycle(5)
    assert closed_neighborhood(c5, 0) == {4, 0, 1}
    assert open_neighborhood(c5, 0) == {4, 1}
    iv = interval(1, 3)
    assert closed_neighborhood(iv, 1) == {0, 1, 2}
    lone = build_image(1, explicit([]))
    assert closed_neighborhood(lone, 0) == {0}
    with pytest.raises(ValueError):
        closed_neighborhood(c5, 9)


def test_connected_components():
    assert connected_components(cycle(7)) == [list(range(7))]
    got = connected_components(disjoint_union(cycle(3), cycle(4)))
    assert [len(c) for c in got] == [3, 4]
    empty = build_image(0, explicit([]))
    assert connected_components(empty) == []


def test_are_isomorphic_examples():
    assert are_isomorphic(cycle(4), product([interval(0, 1)] * 2, 1)) is not None
    assert are_isomorphic(cycle(5), cycle(6)) is None
    assert are_isomorphic(box(2, 3, 1), box(3, 2, 1)) is not None
    with pytest.raises(BudgetExceededError):
        are_isomorphic(cycle(30), cycle(30))


def test_are_isomorphic_witness_is_valid():
    a, b = box(2, 3, 1), box(3, 2, 1)
    phi = are_isomorphic(a, b)
    for i in range(a.n):
        for j in range(a.n):
            assert a.adjacent(i, j) == b.adjacent(phi[i], phi[j])


def test_are_isomorphic_matches_permutation_bruteforce():
    import random
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(2, 6)
        e1 = [(i, j) for i in range(n) for j in range(i + 1, n)
              if rng.random() < 0.5]
        e2 = [(i, j) for i in range(n) for j in range(i + 1, n)
              if rng.random() < 0.5]
        a = build_image(n, explicit(e1), "a")
        b = build_image(n, explicit(e2), "b")
        brute = any(all(a.adjacent(i, j) == b.adjacent(p[i], p[j])
                        for i in range(n) for j in range(i + 1, n))
                    for p in itertools.permutations(range(n)))
        assert (are_isomorphic(a, b) is not None) == brute


def test_images_immutable():
    c = cycle(4)
    with pytest.raises(AttributeError):
        c.name = "other"
